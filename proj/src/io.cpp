#include "shiftlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "shiftlab/errors.hpp"

namespace shiftlab::io {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw SchemaError(what + ": unknown key '" + key + "'");
}

const Json& require(const Json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(what + ": missing key '" + key + "'");
  return *it;
}

void check_header(const Json& j, const char* kind, const std::string& what) {
  if (j.contains("kind") && j.at("kind") != kind)
    throw SchemaError(what + ": expected kind '" + kind + "'");
  if (j.contains("version") && j.at("version") != kSchemaVersion)
    throw SchemaError(what + ": unsupported schema version");
}

template <class T>
T get(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

double get_real(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (auto q = parse_rational(s)) return to_double(*q);
  }
  throw SchemaError(what + ": expected a number");
}

std::size_t get_count(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(what + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

// Inline object or a path string relative to ctx.
Json resolve(const Json& j, const Context& ctx, const std::string& what) {
  if (j.is_object()) return j;
  if (j.is_string()) return read_file(ctx.base_dir / j.get<std::string>());
  throw SchemaError(what + ": expected an object or a file reference");
}

Context nested(const Json& ref, const Context& ctx) {
  if (!ref.is_string()) return ctx;
  return {(ctx.base_dir / ref.get<std::string>()).parent_path()};
}

Word parse_word(const FiniteGraph& g, const Json& j, const std::string& what) {
  try {
    return g.parse_word(get<std::string>(j, what));
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + ": expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = get_real(j[i], what);
  return v;
}

Eigen::MatrixXd matrix_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + ": expected an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto row = vector_from(j[static_cast<std::size_t>(r)], what);
    if (row.size() != n) throw SchemaError(what + ": matrix must be square");
    m.row(r) = row.transpose();
  }
  return m;
}

SequenceTail sequence_from(const Json& j, const std::string& kind, const std::string& what) {
  if (kind == "geometric")
    return SequenceTail::geometric(get_real(require(j, "coefficient", what), what),
                                   get_real(require(j, "ratio", what), what));
  return SequenceTail::polynomial(get_real(require(j, "coefficient", what), what),
                                  get_real(require(j, "exponent", what), what),
                                  j.contains("offset") ? get_real(j.at("offset"), what) : 0.0);
}

Json sequence_json(const SequenceTail& s) {
  Json j;
  j["coefficient"] = s.coefficient;
  if (s.kind == SequenceTail::Kind::geometric) {
    j["ratio"] = s.ratio;
  } else if (s.kind == SequenceTail::Kind::polynomial) {
    j["exponent"] = s.exponent;
    if (s.offset != 0.0) j["offset"] = s.offset;
  }
  return j;
}

LoopTail tail_from(const Json& j) {
  const std::string what = "loop tail";
  const auto kind = get<std::string>(require(j, "kind", what), what);
  LoopTail t;
  if (kind == "zero") {
    check_keys(j, {"kind"}, what);
    return t;
  }
  t.start = get_count(require(j, "start", what), what);
  if (t.start < 1) throw SchemaError(what + ": start must be at least 1");
  if (kind == "geometric") {
    check_keys(j, {"kind", "start", "coefficient", "ratio"}, what);
    t.kind = LoopTail::Kind::geometric;
    t.sequence = sequence_from(j, kind, what);
  } else if (kind == "polynomial") {
    check_keys(j, {"kind", "start", "coefficient", "exponent", "offset"}, what);
    t.kind = LoopTail::Kind::polynomial;
    t.sequence = sequence_from(j, kind, what);
  } else if (kind == "transfer") {
    check_keys(j, {"kind", "start", "entry", "body", "exit"}, what);
    t.kind = LoopTail::Kind::transfer;
    t.transfer.entry = vector_from(require(j, "entry", what), what);
    t.transfer.body = matrix_from(require(j, "body", what), what);
    t.transfer.exit = vector_from(require(j, "exit", what), what);
  } else {
    throw SchemaError(what + ": unknown kind '" + kind + "'");
  }
  return t;
}

Json tail_json(const LoopTail& t) {
  Json j;
  j["kind"] = to_string(t.kind);
  if (t.kind == LoopTail::Kind::zero) return j;
  j["start"] = t.start;
  if (t.kind == LoopTail::Kind::transfer) {
    j["entry"] = vector_json(t.transfer.entry);
    j["exit"] = vector_json(t.transfer.exit);
    Json body = Json::array();
    for (Eigen::Index r = 0; r < t.transfer.body.rows(); ++r)
      body.push_back(vector_json(t.transfer.body.row(r).transpose()));
    j["body"] = body;
  } else {
    j.update(sequence_json(t.sequence));
  }
  return j;
}

Json word_json(const FiniteGraph& g, const Word& w) { return g.format(w); }

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Weight weight_from_json(const Json& j) {
  if (j.is_number_integer()) return Weight::of(Rational(j.get<long long>()));
  if (j.is_number()) return Weight::approx(j.get<double>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (auto q = parse_rational(s)) return Weight::of(*q);
    bool negate = false;
    if (!s.empty() && s[0] == '-') negate = true, s.erase(0, 1);
    if (s.rfind("log(", 0) == 0 && s.back() == ')') {
      const std::string arg = s.substr(4, s.size() - 5);
      double x = 0.0;
      if (auto q = parse_rational(arg)) {
        x = to_double(*q);
      } else {
        std::istringstream in(arg);
        if (!(in >> x) || !in.eof()) throw SchemaError("bad log argument '" + arg + "'");
      }
      if (!(x > 0.0)) throw SchemaError("log argument must be positive");
      if (x == 1.0) return Weight::of(0);
      return Weight::approx(negate ? -std::log(x) : std::log(x));
    }
  }
  throw SchemaError("weight must be a number, \"p/q\" or \"log(x)\"");
}

Json to_json(const Weight& w) {
  if (w.exact) {
    if (denominator(*w.exact) == 1 && abs(numerator(*w.exact)) < BigInt(1) << 53)
      return numerator(*w.exact).convert_to<long long>();
    return to_string(*w.exact);
  }
  return real(w.value);
}

Json real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

Json estimate(double value, double error) { return {{"value", real(value)}, {"error", real(error)}}; }

GraphBuild graph_from_json(const Json& j, const Context& ctx) {
  (void)ctx;
  const std::string what = "graph document";
  check_keys(j, {"kind", "version", "alphabet", "edges"}, what);
  check_header(j, "graph", what);
  const auto names = get<std::vector<std::string>>(require(j, "alphabet", what), what);
  const Alphabet alphabet(names);
  std::vector<Edge> edges;
  for (const auto& e : require(j, "edges", what)) {
    if (!e.is_array() || e.size() != 2) throw SchemaError(what + ": edges are pairs");
    Symbol ends[2];
    for (int k = 0; k < 2; ++k) {
      const auto& v = e[static_cast<std::size_t>(k)];
      if (v.is_number_integer()) {
        const auto i = v.get<long long>();
        if (i < 0 || static_cast<std::size_t>(i) >= names.size()) throw SchemaError(what + ": edge endpoint out of range");
        ends[k] = static_cast<Symbol>(i);
      } else if (v.is_string()) {
        auto s = alphabet.find(v.get<std::string>());
        if (!s) throw SchemaError(what + ": unknown vertex '" + v.get<std::string>() + "'");
        ends[k] = *s;
      } else {
        throw SchemaError(what + ": edge endpoints are indices or names");
      }
    }
    edges.emplace_back(ends[0], ends[1]);
  }
  return build_graph(names, std::move(edges));
}

Json to_json(const FiniteGraph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"kind", "graph"}, {"version", kSchemaVersion}, {"alphabet", g.alphabet().names()}, {"edges", edges}};
}

LoopSystem loops_from_json(const Json& j) {
  const std::string what = "loop document";
  check_keys(j, {"kind", "version", "base", "alphabet", "loops", "tail", "tails", "truncated"}, what);
  check_header(j, "loops", what);
  LoopSystem ls;
  ls.base = get<std::vector<std::string>>(require(j, "base", what), what);
  const auto b = ls.base.size();
  if (b != 1 && b != 2) throw SchemaError(what + ": base has one or two vertices");
  std::optional<FiniteGraph> labels;
  if (j.contains("alphabet")) {
    ls.labels = Alphabet(get<std::vector<std::string>>(j.at("alphabet"), what));
    labels = FiniteGraph(*ls.labels, {});
  }
  for (const auto& l : require(j, "loops", what)) {
    check_keys(l, {"len", "label", "count", "log_weight", "from", "to"}, what + " loop");
    Loop loop;
    loop.length = get_count(require(l, "len", what), what);
    if (l.contains("label")) {
      if (!labels) throw SchemaError(what + ": labels need an alphabet");
      loop.label = ls.labels->parse_word(get<std::string>(l.at("label"), what));
    }
    if (l.contains("count")) loop.count = get_count(l.at("count"), what);
    if (l.contains("from")) loop.from = static_cast<unsigned>(get_count(l.at("from"), what));
    if (l.contains("to")) loop.to = static_cast<unsigned>(get_count(l.at("to"), what));
    if (l.contains("log_weight")) {
      const Weight w = weight_from_json(l.at("log_weight"));
      loop.log_weight = w.value;
      loop.exact_log_weight = w.exact;
    }
    ls.loops.push_back(std::move(loop));
  }
  if (j.contains("tail") && j.contains("tails")) throw SchemaError(what + ": give either tail or tails");
  if (j.contains("tails")) {
    for (const auto& t : j.at("tails")) ls.tails.push_back(tail_from(t));
  } else if (j.contains("tail")) {
    if (b != 1) throw SchemaError(what + ": two-vertex systems list tails");
    ls.tails.push_back(tail_from(j.at("tail")));
  } else {
    ls.tails.assign(b * b, LoopTail::zero());
  }
  if (j.contains("truncated")) ls.truncated = get<bool>(j.at("truncated"), what);
  try {
    validate(ls);
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(what + ": " + e.what());
  }
  return ls;
}

Json to_json(const LoopSystem& ls) {
  Json j;
  j["kind"] = "loops";
  j["version"] = kSchemaVersion;
  j["base"] = ls.base;
  if (ls.labels) j["alphabet"] = ls.labels->names();
  Json loops = Json::array();
  for (const auto& l : ls.loops) {
    Json o;
    o["len"] = l.length;
    if (l.label) o["label"] = ls.labels->format(*l.label);
    if (l.count != 1) o["count"] = l.count;
    if (ls.base.size() > 1) o["from"] = l.from, o["to"] = l.to;
    const Weight w{l.log_weight, l.exact_log_weight};
    if (!(w.exact && *w.exact == 0)) o["log_weight"] = to_json(w);
    loops.push_back(o);
  }
  j["loops"] = loops;
  if (ls.base.size() == 1) {
    j["tail"] = tail_json(ls.tails.at(0));
  } else {
    Json tails = Json::array();
    for (const auto& t : ls.tails) tails.push_back(tail_json(t));
    j["tails"] = tails;
  }
  if (ls.truncated) j["truncated"] = true;
  return j;
}

Exhaustion exhaustion_from_json(const Json& j, const Context& ctx) {
  const std::string what = "exhaustion document";
  check_keys(j, {"kind", "version", "levels"}, what);
  check_header(j, "exhaustion", what);
  std::vector<FiniteGraph> levels;
  for (const auto& level : require(j, "levels", what))
    levels.push_back(graph_from_json(resolve(level, ctx, what), nested(level, ctx)).graph);
  return make_exhaustion(std::move(levels));
}

Json to_json(const Exhaustion& ex) {
  Json levels = Json::array();
  for (const auto& g : ex.levels) levels.push_back(to_json(g));
  return {{"kind", "exhaustion"}, {"version", kSchemaVersion}, {"levels", levels}};
}

ShiftPresentation presentation_from_json(const Json& j, const Context& ctx) {
  if (!j.is_object()) throw SchemaError("shift document: expected an object");
  const std::string kind = j.contains("kind") ? get<std::string>(j.at("kind"), "shift document") : "graph";
  if (kind == "graph") return graph_from_json(j, ctx).graph;
  if (kind == "loops") return loops_from_json(j);
  if (kind == "exhaustion") return exhaustion_from_json(j, ctx);
  throw SchemaError("shift document: unknown kind '" + kind + "'");
}

Json to_json(const ShiftPresentation& p) {
  return std::visit([](const auto& v) { return to_json(v); }, p);
}

VariationCertificate certificate_from_json(const Json& j, const FiniteGraph& g) {
  const std::string what = "certificate";
  check_keys(j, {"prefix", "tail", "p", "words", "regularity"}, what);
  VariationCertificate c;
  if (j.contains("prefix"))
    for (const auto& v : j.at("prefix")) c.prefix.push_back(get_real(v, what));
  if (j.contains("tail")) {
    const auto& t = j.at("tail");
    const auto kind = get<std::string>(require(t, "kind", what), what);
    if (kind == "zero") {
      check_keys(t, {"kind"}, what);
    } else if (kind == "geometric") {
      check_keys(t, {"kind", "coefficient", "ratio"}, what);
      c.tail = sequence_from(t, kind, what);
    } else if (kind == "polynomial") {
      check_keys(t, {"kind", "coefficient", "exponent", "offset"}, what);
      c.tail = sequence_from(t, kind, what);
    } else {
      throw SchemaError(what + ": unknown tail kind '" + kind + "'");
    }
  }
  if (j.contains("p")) c.p = get_real(j.at("p"), what);
  if (j.contains("words"))
    for (const auto& w : j.at("words")) c.words.push_back(parse_word(g, w, what));
  if (j.contains("regularity")) {
    const auto r = get<std::string>(j.at("regularity"), what);
    if (r == "E1") {
      c.regularity = RegularityClass::E1;
    } else if (r == "E0+") {
      c.regularity = RegularityClass::E0plus;
    } else {
      throw SchemaError(what + ": regularity is E1 or E0+");
    }
  }
  return c;
}

Json to_json(const VariationCertificate& c, const FiniteGraph& g) {
  Json j;
  j["prefix"] = c.prefix;
  Json tail;
  switch (c.tail.kind) {
    case SequenceTail::Kind::zero:
      tail["kind"] = "zero";
      break;
    case SequenceTail::Kind::geometric:
      tail = sequence_json(c.tail);
      tail["kind"] = "geometric";
      break;
    case SequenceTail::Kind::polynomial:
      tail = sequence_json(c.tail);
      tail["kind"] = "polynomial";
      break;
  }
  j["tail"] = tail;
  j["p"] = c.p;
  Json words = Json::array();
  for (const auto& w : c.words) words.push_back(word_json(g, w));
  j["words"] = words;
  j["regularity"] = c.regularity == RegularityClass::E1 ? "E1" : "E0+";
  return j;
}

PotentialDocument potential_from_json(const Json& j, const FiniteGraph& g) {
  const std::string what = "potential document";
  check_keys(j, {"kind", "version", "left_range", "right_range", "weights", "default", "certificate"}, what);
  check_header(j, "potential", what);
  const auto left = static_cast<unsigned>(j.contains("left_range") ? get_count(j.at("left_range"), what) : 0);
  const auto right = static_cast<unsigned>(j.contains("right_range") ? get_count(j.at("right_range"), what) : 1);
  std::map<Word, Weight> weights;
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (!w.is_object()) throw SchemaError(what + ": weights is an object");
    for (const auto& [key, value] : w.items()) {
      Word word;
      try {
        word = g.parse_word(key);
      } catch (const InputError& e) {
        throw SchemaError(what + ": " + e.what());
      }
      if (!weights.emplace(word, weight_from_json(value)).second)
        throw SchemaError(what + ": duplicate weight for '" + key + "'");
    }
  }
  std::optional<Weight> fallback;
  if (j.contains("default")) fallback = weight_from_json(j.at("default"));
  PotentialDocument doc;
  try {
    doc.potential = FiniteRangePotential::from_table(g, left, right, weights, fallback);
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(what + ": " + e.what());
  }
  if (j.contains("certificate")) {
    doc.certificate = certificate_from_json(j.at("certificate"), g);
    validate_certificate_for(doc.potential, *doc.certificate);
  }
  return doc;
}

Json to_json(const FiniteRangePotential& f, const std::optional<VariationCertificate>& cert) {
  Json j;
  j["kind"] = "potential";
  j["version"] = kSchemaVersion;
  j["left_range"] = f.left_range();
  j["right_range"] = f.right_range();
  Json weights = Json::object();
  for (std::size_t i = 0; i < f.windows().size(); ++i) {
    const Weight w{f.values()[i], f.is_exact() ? std::optional<Rational>(f.exact_at(i)) : std::nullopt};
    weights[f.graph().format(f.windows()[i])] = to_json(w);
  }
  j["weights"] = weights;
  if (cert) j["certificate"] = to_json(*cert, f.graph());
  return j;
}

OneBlockCode code_from_json(const Json& j, const Context& ctx) {
  const std::string what = "code document";
  check_keys(j, {"kind", "version", "phi", "source", "target"}, what);
  check_header(j, "code", what);
  const auto& sref = require(j, "source", what);
  const auto& tref = require(j, "target", what);
  auto source = graph_from_json(resolve(sref, ctx, what), nested(sref, ctx)).graph;
  auto target = graph_from_json(resolve(tref, ctx, what), nested(tref, ctx)).graph;
  const auto& phi = require(j, "phi", what);
  if (!phi.is_object()) throw SchemaError(what + ": phi maps source names to target names");
  std::vector<Symbol> map(source.vertex_count(), 0);
  std::vector<char> seen(source.vertex_count(), 0);
  for (const auto& [key, value] : phi.items()) {
    auto s = source.alphabet().find(key);
    if (!s) throw SchemaError(what + ": unknown source symbol '" + key + "'");
    auto t = target.alphabet().find(get<std::string>(value, what));
    if (!t) throw SchemaError(what + ": unknown target symbol '" + value.get<std::string>() + "'");
    map[*s] = *t;
    seen[*s] = 1;
  }
  for (Symbol s = 0; s < seen.size(); ++s)
    if (!seen[s]) throw SchemaError(what + ": no image for source symbol '" + source.alphabet().name(s) + "'");
  return make_code(std::move(source), std::move(target), std::move(map));
}

Json to_json(const OneBlockCode& c) {
  Json phi = Json::object();
  for (Symbol s = 0; s < c.map.size(); ++s) phi[c.source.alphabet().name(s)] = c.target.alphabet().name(c.map[s]);
  return {{"kind", "code"}, {"version", kSchemaVersion}, {"phi", phi}, {"source", to_json(c.source)},
          {"target", to_json(c.target)}};
}

namespace {

MagicSpec magic_from(const Json& j, const FiniteGraph& target, const std::string& what) {
  check_keys(j, {"word", "I", "depth"}, what);
  MagicSpec m;
  m.word = parse_word(target, require(j, "word", what), what);
  if (j.contains("I")) m.I = get<long>(j.at("I"), what);
  m.depth = j.contains("depth") ? get_count(j.at("depth"), what) : 8;
  return m;
}

Json magic_json(const MagicSpec& m, const FiniteGraph& target) {
  return {{"word", target.format(m.word)}, {"I", m.I}, {"depth", m.depth}};
}

}  // namespace

AiDocument ai_from_json(const Json& j, const Context& ctx) {
  const std::string what = "almost-isomorphism document";
  check_keys(j, {"kind", "version", "to_s", "to_t", "magic_s", "magic_t"}, what);
  check_header(j, "ai", what);
  const auto& sref = require(j, "to_s", what);
  const auto& tref = require(j, "to_t", what);
  AiDocument doc{code_from_json(resolve(sref, ctx, what), nested(sref, ctx)),
                 code_from_json(resolve(tref, ctx, what), nested(tref, ctx)),
                 {},
                 {}};
  doc.magic_s = magic_from(require(j, "magic_s", what), doc.to_s.target, what);
  doc.magic_t = magic_from(require(j, "magic_t", what), doc.to_t.target, what);
  return doc;
}

Json to_json(const AiDocument& doc) {
  return {{"kind", "ai"},
          {"version", kSchemaVersion},
          {"to_s", to_json(doc.to_s)},
          {"to_t", to_json(doc.to_t)},
          {"magic_s", magic_json(doc.magic_s, doc.to_s.target)},
          {"magic_t", magic_json(doc.magic_t, doc.to_t.target)}};
}

AlmostIsomorphism build_ai(const AiDocument& doc) {
  auto ms = verify_magic(doc.to_s, doc.magic_s.word, doc.magic_s.I, doc.magic_s.depth);
  auto mt = verify_magic(doc.to_t, doc.magic_t.word, doc.magic_t.I, doc.magic_t.depth);
  return assemble_ai(doc.to_s, doc.to_t, std::move(ms), std::move(mt));
}

MarkovMeasure measure_from_json(const Json& j, const Context& ctx) {
  const std::string what = "measure document";
  check_keys(j, {"kind", "version", "graph", "order", "states", "transition", "stationary"}, what);
  check_header(j, "measure", what);
  const auto& gref = require(j, "graph", what);
  const auto g = graph_from_json(resolve(gref, ctx, what), nested(gref, ctx)).graph;
  const auto order = static_cast<unsigned>(j.contains("order") ? get_count(j.at("order"), what) : 1);
  const auto p = matrix_from(require(j, "transition", what), what);
  MarkovMeasure mu;
  try {
    mu = make_markov_measure(g, order, p);
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(what + ": " + e.what());
  }
  if (j.contains("states")) {
    const auto& states = j.at("states");
    if (!states.is_array() || states.size() != mu.states.size()) throw SchemaError(what + ": states disagree with the graph");
    for (std::size_t i = 0; i < states.size(); ++i)
      if (parse_word(g, states[i], what) != mu.states[i]) throw SchemaError(what + ": states must be the blocks in lexicographic order");
  }
  return mu;
}

Json to_json(const MarkovMeasure& mu) {
  Json states = Json::array();
  for (const auto& s : mu.states) states.push_back(mu.graph.format(s));
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < mu.transition.rows(); ++r) rows.push_back(vector_json(mu.transition.row(r).transpose()));
  return {{"kind", "measure"},          {"version", kSchemaVersion}, {"graph", to_json(mu.graph)},
          {"order", mu.order},          {"states", states},          {"transition", rows},
          {"stationary", vector_json(mu.stationary)}};
}

EventuallyPeriodicPoint point_from_json(const Json& j, const FiniteGraph& g) {
  const std::string what = "point";
  check_keys(j, {"left", "core", "right", "core_start", "periodic"}, what);
  EventuallyPeriodicPoint x;
  if (j.contains("periodic")) {
    x = EventuallyPeriodicPoint::periodic(parse_word(g, j.at("periodic"), what));
  } else {
    x.left = parse_word(g, require(j, "left", what), what);
    x.right = parse_word(g, require(j, "right", what), what);
    if (j.contains("core")) x.core = parse_word(g, j.at("core"), what);
    if (j.contains("core_start")) x.core_start = get<long>(j.at("core_start"), what);
  }
  if (!x.admissible(g)) throw SchemaError(what + ": not an admissible point");
  return x;
}

Json to_json(const EventuallyPeriodicPoint& x, const FiniteGraph& g) {
  return {{"left", g.format(x.left)},
          {"core", g.format(x.core)},
          {"right", g.format(x.right)},
          {"core_start", x.core_start}};
}

Json to_json(const PressureEstimate& p) {
  Json j = estimate(p.value, p.error);
  j["method"] = to_string(p.method);
  j["iterations"] = p.iterations;
  if (p.method == PressureMethod::exhaustion_sup) {
    Json levels = Json::array();
    for (double v : p.levels) levels.push_back(real(v));
    j["levels"] = levels;
    j["monotone"] = p.monotone;
  }
  return j;
}

Json to_json(const PartitionFunctionTable& t, const FiniteGraph& g, std::optional<double> pressure) {
  Json rows = Json::array();
  for (const auto& e : t.entries) {
    Json r = estimate(e.value, e.error);
    r["n"] = e.n;
    r["points"] = e.points;
    if (e.exact) {
      r["exact"] = e.exact->to_string();
      r["error"] = 0.0;
    }
    if (pressure) r["ratio"] = real(e.value * std::exp(-static_cast<double>(e.n) * *pressure));
    rows.push_back(r);
  }
  Json j{{"base", g.format(t.base)}, {"n_max", t.n_max}, {"entries", rows}, {"truncated", t.truncated},
         {"base_admissible", t.base_admissible}};
  if (pressure) j["pressure"] = real(*pressure);
  return j;
}

std::string zn_csv(const PartitionFunctionTable& t, double pressure) {
  std::ostringstream out;
  out << "n,Z_n,ratio\n";
  out << std::setprecision(17);
  for (const auto& e : t.entries)
    out << e.n << ',' << e.value << ',' << e.value * std::exp(-static_cast<double>(e.n) * pressure) << '\n';
  return out.str();
}

namespace {

Json interval_json(const Interval& i) { return {{"lo", real(i.lo)}, {"hi", real(i.hi)}}; }

}  // namespace

Json to_json(const RecurrenceClass& rc) {
  Json j;
  j["verdict"] = to_string(rc.verdict);
  j["radius"] = real(rc.radius);
  j["F_at_radius"] = interval_json(rc.f_at_radius);
  j["dF_at_radius"] = interval_json(rc.df_at_radius);
  if (rc.root) j["root"] = interval_json(*rc.root);
  if (rc.df_at_root) j["dF_at_root"] = interval_json(*rc.df_at_root);
  if (rc.lambda) {
    j["lambda"] = interval_json(*rc.lambda);
    j["log_lambda"] = estimate(std::log(rc.lambda->mid()), 0.5 * (std::log(rc.lambda->hi) - std::log(rc.lambda->lo)));
  }
  if (!rc.note.empty()) j["note"] = rc.note;
  return j;
}

Json to_json(const RecurrenceWitness& w) {
  return {{"min_ratio", real(w.min_ratio)}, {"max_ratio", real(w.max_ratio)}, {"slope", real(w.slope)},
          {"first", w.first},               {"last", w.last},               {"trend", to_string(w.trend)},
          {"disclaimer", w.disclaimer}};
}

Json to_json(const ZetaSeries& z) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    if (z.exact) {
      coeffs.push_back(to_json(Weight::of((*z.exact)[i])));
    } else {
      coeffs.push_back(real(z.values[i]));
    }
  }
  return {{"coefficients", coeffs}, {"exact", z.exact.has_value()}};
}

Json to_json(const MagicWordCertificate& c, const OneBlockCode& code) {
  Json j;
  j["word"] = code.target.format(c.word);
  j["I"] = c.I;
  j["depth"] = c.depth;
  j["depth_reached"] = c.depth_reached;
  j["status"] = to_string(c.status);
  j["words_checked"] = c.words_checked;
  j["paths_checked"] = c.paths_checked;
  j["periodic_cap"] = c.periodic_cap;
  j["injective_on_periodic"] = c.injective_on_periodic;
  if (c.refutation) {
    const auto& r = *c.refutation;
    Json w;
    w["condition"] = r.condition;
    w["presented"] = code.target.format(r.presented);
    if (!r.x.empty()) {
      w["span_start"] = r.span_start;
      w["x"] = code.source.format(r.x);
      w["x_prime"] = code.source.format(r.x_prime);
    }
    if (!r.window_x.empty()) {
      w["window_x"] = code.source.format(r.window_x);
      w["window_x_prime"] = code.source.format(r.window_x_prime);
    }
    if (r.periodic_x) w["periodic_x"] = code.source.format(*r.periodic_x);
    if (r.periodic_x_prime) w["periodic_x_prime"] = code.source.format(*r.periodic_x_prime);
    j["refutation"] = w;
  }
  return j;
}

Json to_json(const TransportResult& r) {
  Json j;
  j["measure"] = to_json(r.measure);
  j["closed_form"] = r.closed_form;
  j["entropy_source"] = estimate(r.entropy_source, 0.0);
  j["entropy_target"] = estimate(r.entropy_target, r.entropy_halfwidth);
  j["entropy_gap"] = estimate(r.entropy_gap, r.entropy_halfwidth);
  if (r.closed_form) j["block_tv"] = real(r.block_tv);
  if (r.seed) j["seed"] = *r.seed;
  if (!r.closed_form) {
    j["samples"] = r.samples;
    j["decoded"] = r.decoded;
  }
  return j;
}

Json to_json(const CorrespondenceReport& r, const AlmostIsomorphism& ai) {
  Json j;
  j["passed"] = r.passed();
  j["potentials_match"] = r.potentials_match;
  j["points_checked"] = r.points_checked;
  j["max_defect"] = real(r.max_defect);
  if (r.witness) {
    j["witness"] = to_json(*r.witness, ai.s());
    j["witness_index"] = r.witness_index;
  }
  j["pressure_s"] = to_json(r.pressure_s);
  j["pressure_t"] = to_json(r.pressure_t);
  j["pressure_gap"] = real(r.pressure_gap);
  j["pressures_match"] = r.pressures_match;
  j["measure_gap"] = real(r.measure_gap);
  j["measures_match"] = r.measures_match;
  j["closed_form"] = r.closed_form;
  return j;
}

Json to_json(const CoincidenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o{{"n", row.n}, {"left", real(row.left)}, {"right", real(row.right)}, {"holds", row.holds}};
    if (row.left_exact) o["left_exact"] = row.left_exact->to_string();
    if (row.right_exact) o["right_exact"] = row.right_exact->to_string();
    if (row.lower_bound) o["lower_bound"] = true;
    rows.push_back(o);
  }
  Json j{{"holds", r.holds}, {"rows", rows}};
  if (r.first_mismatch) j["first_mismatch"] = *r.first_mismatch;
  return j;
}

Json to_json(const InjectivityReport& r, const FiniteGraph& g) {
  Json j{{"injective", r.injective}, {"points_checked", r.points_checked}};
  if (r.collision) j["collision"] = g.format(*r.collision);
  return j;
}

Json to_json(const CertificateCheck& c) {
  Json j{{"accepted", c.accepted}, {"sum", interval_json(c.sum)}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

}  // namespace shiftlab::io
