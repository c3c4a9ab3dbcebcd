#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "shiftlab/cli.hpp"

namespace {

const std::string kFixtures = SHIFTLAB_FIXTURES;

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int s = shiftlab::cli::run(args, out, err);
  return {s, out.str(), err.str()};
}

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_SUITE("cli_io") {
  TEST_CASE("pressure of the golden mean") {
    auto r = run({"pressure", "--shift", fx("gm.json"), "--potential", fx("zero.json"), "--json"});
    REQUIRE(r.status == 0);
    CHECK(json_of(r)["pressure"]["value"].get<double>() == doctest::Approx(0.4812118250596).epsilon(1e-12));
  }

  TEST_CASE("zeta of the full shift") {
    auto r = run({"--json", "zeta", "--shift", fx("full2.json"), "--order", "4"});
    REQUIRE(r.status == 0);
    CHECK(json_of(r)["coefficients"] == nlohmann::json({1, 2, 4, 8, 16}));
  }

  TEST_CASE("classify the critical renewal system") {
    auto r = run({"classify", "--loops", fx("renewal-6pi2.json"), "--json"});
    REQUIRE(r.status == 0);
    auto j = json_of(r);
    CHECK(j["verdict"] == "null_recurrent");
    CHECK(j["dF_at_radius"]["lo"] == "inf");
  }

  TEST_CASE("zn csv") {
    auto r = run({"zn", "--shift", fx("full2.json"), "--word", "0", "--n-max", "3", "--csv"});
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("n,Z_n,ratio\n1,1,", 0) == 0);
  }

  TEST_CASE("exit statuses") {
    CHECK(run({}).status == 2);
    CHECK(run({"entropy"}).status == 2);
    CHECK(run({"entropy", "--shift", fx("missing.json")}).status == 2);
    CHECK(run({"entropy", "--shift", fx("reducible.json")}).status == 2);
    CHECK(run({"transport", "--ai", fx("gm-self-ai.json")}).status == 2);
    auto refuted = run({"verify-magic", "--code", fx("collapse.json"), "--word", "a", "--json"});
    CHECK(refuted.status == 1);
    CHECK(json_of(refuted)["status"] == "refuted");
    CHECK(run({"verify-magic", "--code", fx("gm2-label.json"), "--word", "10"}).status == 0);
    CHECK(run({"--help"}).status == 0);
  }

  TEST_CASE("correspondence and transport") {
    auto c = run({"verify-correspondence", "--ai", fx("gm-recode-ai.json"), "--potential", fx("gm-rational.json"),
                  "--pushforward", "--json"});
    REQUIRE(c.status == 0);
    CHECK(json_of(c)["passed"] == true);
    auto t = run({"transport", "--ai", fx("gm-self-ai.json"), "--potential", fx("zero.json"), "--seed", "42",
                  "--sample", "--json"});
    REQUIRE(t.status == 0);
    CHECK(json_of(t)["seed"] == 42);
  }

  TEST_CASE("induce reports coincidence") {
    auto r = run({"induce", "--shift", fx("gm.json"), "--word", "1", "--maxlen", "8", "--potential",
                  fx("gm-rational.json"), "--json"});
    REQUIRE(r.status == 0);
    CHECK(json_of(r)["coincidence"]["holds"] == true);
  }

  TEST_CASE("reports do not depend on the thread count") {
    auto one = run({"--threads", "1", "zn", "--shift", fx("full2.json"), "--potential", fx("bernoulli.json"), "--n-max", "12", "--json"});
    auto four = run({"--threads", "4", "zn", "--shift", fx("full2.json"), "--potential", fx("bernoulli.json"), "--n-max", "12", "--json"});
    REQUIRE(one.status == 0);
    CHECK(one.out == four.out);
  }

  TEST_CASE("seeded reports are byte identical") {
    const std::vector<std::string> args{"transport", "--ai", fx("gm-self-ai.json"), "--potential", fx("gm-rational.json"),
                                        "--seed", "9", "--samples", "20000", "--sample", "--json"};
    auto a = run(args), b = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("identity almost isomorphism") {
    auto r = run({"transport", "--ai", fx("full2-identity-ai.json"), "--measure", fx("full2-half.json"), "--seed", "1",
                  "--order", "1", "--json"});
    REQUIRE(r.status == 0);
    CHECK(json_of(r)["entropy_gap"]["value"] == 0.0);
  }
}
