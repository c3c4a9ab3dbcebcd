#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "shiftlab/errors.hpp"
#include "shiftlab/io.hpp"

using namespace shiftlab;
using io::Json;

namespace {

const std::filesystem::path kFixtures = SHIFTLAB_FIXTURES;

Json fixture(const std::string& name) { return io::read_file(kFixtures / name); }
io::Context ctx() { return {kFixtures}; }

}  // namespace

TEST_SUITE("cli_io") {
  TEST_CASE("weights") {
    auto q = io::weight_from_json("-3/4");
    REQUIRE(q.exact);
    CHECK(*q.exact == Rational(-3, 4));
    CHECK(io::weight_from_json(2).exact);
    auto l = io::weight_from_json("log(0.3)");
    CHECK_FALSE(l.exact);
    CHECK(l.value == doctest::Approx(std::log(0.3)));
    CHECK_FALSE(io::weight_from_json(0.25).exact);
    CHECK_THROWS_AS(io::weight_from_json("x"), SchemaError);
    CHECK(io::real(INFINITY) == "inf");
  }

  TEST_CASE("graph documents round trip") {
    auto b = io::graph_from_json(fixture("gm.json"));
    CHECK(b.graph.edge_count() == 3);
    CHECK(io::graph_from_json(io::to_json(b.graph)).graph == b.graph);
    auto named = io::graph_from_json(fixture("gm2.json"));
    CHECK(named.graph.vertex_count() == 3);
  }

  TEST_CASE("unknown keys and bad versions are schema errors") {
    auto j = fixture("gm.json");
    j["colour"] = "red";
    CHECK_THROWS_AS(io::graph_from_json(j), SchemaError);
    auto v = fixture("gm.json");
    v["version"] = 2;
    CHECK_THROWS_AS(io::graph_from_json(v), SchemaError);
    CHECK_THROWS_AS(io::graph_from_json(Json{{"alphabet", {"0"}}, {"edges", {{0, 3}}}}), SchemaError);
  }

  TEST_CASE("reducible graphs carry their components") {
    CHECK_THROWS_AS(io::graph_from_json(fixture("reducible.json")), NotIrreducible);
  }

  TEST_CASE("potentials") {
    const auto g = io::graph_from_json(fixture("gm.json")).graph;
    auto f = io::potential_from_json(fixture("gm-rational.json"), g).potential;
    CHECK(f.is_exact());
    CHECK(f.exact_at(f.index({1})) == Rational(-1, 2));
    auto back = io::potential_from_json(io::to_json(f), g).potential;
    CHECK(back.values() == f.values());
    auto zero = io::potential_from_json(fixture("zero.json"), g).potential;
    CHECK(zero.upper_bound() == 0.0);
    auto full = io::graph_from_json(fixture("full2.json")).graph;
    CHECK_THROWS_AS(io::potential_from_json(fixture("gm-pair.json"), full), SchemaError);
  }

  TEST_CASE("loop documents") {
    auto ls = io::loops_from_json(fixture("renewal-6pi2.json"));
    CHECK(ls.tails.at(0).kind == LoopTail::Kind::polynomial);
    auto back = io::loops_from_json(io::to_json(ls));
    CHECK(back.tails.at(0).sequence.coefficient == ls.tails.at(0).sequence.coefficient);
    auto p = io::presentation_from_json(fixture("renewal-3pi2.json"));
    CHECK(std::holds_alternative<LoopSystem>(p));
  }

  TEST_CASE("exhaustions resolve references") {
    auto ex = io::exhaustion_from_json(fixture("exhaustion-gm.json"), ctx());
    CHECK(ex.levels.size() == 3);
    CHECK(ex.strictly_nested);
  }

  TEST_CASE("codes and almost isomorphisms") {
    auto c = io::code_from_json(fixture("collapse.json"), ctx());
    CHECK(c.map == std::vector<Symbol>{0, 0});
    auto doc = io::ai_from_json(fixture("gm-self-ai.json"), ctx());
    CHECK(doc.magic_s.depth == 8);
    auto ai = io::build_ai(doc);
    CHECK(ai.conjugacy());
    auto rt = io::ai_from_json(io::to_json(doc));
    CHECK(rt.to_s.map == doc.to_s.map);
  }

  TEST_CASE("measures and points") {
    const auto g = io::graph_from_json(fixture("gm.json")).graph;
    auto mu = equilibrium_measure(g, FiniteRangePotential::zero(g));
    auto back = io::measure_from_json(io::to_json(mu));
    CHECK((back.transition - mu.transition).cwiseAbs().maxCoeff() < 1e-15);
    auto x = io::point_from_json(Json{{"periodic", "10"}}, g);
    CHECK(x == EventuallyPeriodicPoint::periodic({1, 0}));
    EventuallyPeriodicPoint het{{0}, {1, 0}, {0, 1}, -3};
    CHECK(io::point_from_json(io::to_json(het, g), g) == het);
  }

  TEST_CASE("canonical dumps are sorted and stable") {
    Json j{{"b", 1}, {"a", {{"d", 2}, {"c", 3}}}};
    const auto text = io::dump(j);
    CHECK(text.find("\"a\"") < text.find("\"b\""));
    CHECK(text.back() == '\n');
    CHECK(io::dump(Json::parse(text)) == text);
  }
}
