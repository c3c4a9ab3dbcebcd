#include "shiftlab/api.hpp"

#include <cmath>

#include "shiftlab/errors.hpp"
#include "shiftlab/induction.hpp"
#include "shiftlab/recurrence.hpp"
#include "shiftlab/thermo.hpp"

namespace shiftlab::api {

namespace {

struct Loaded {
  Json json;
  io::Context ctx;
};

Loaded load(const Json& doc, const io::Context& ctx) {
  if (doc.is_string()) {
    const auto path = ctx.base_dir / doc.get<std::string>();
    return {io::read_file(path), {path.parent_path()}};
  }
  if (!doc.is_object()) throw SchemaError("expected a document object or a file path");
  return {doc, ctx};
}

struct Shift {
  ShiftPresentation presentation;
  std::vector<std::string> pruned;
  unsigned period = 0;
};

Shift load_shift(const Json& doc, const io::Context& ctx) {
  const auto [j, here] = load(doc, ctx);
  Shift s;
  if (!j.contains("kind") || j.at("kind") == "graph") {
    auto built = io::graph_from_json(j, here);
    s.presentation = built.graph;
    s.pruned = built.pruned;
    s.period = built.period;
  } else {
    s.presentation = io::presentation_from_json(j, here);
    s.period = presentation_period(s.presentation);
  }
  return s;
}

const FiniteGraph& finite(const Shift& s, const char* what) {
  if (auto g = std::get_if<FiniteGraph>(&s.presentation)) return *g;
  throw InputError(std::string(what) + " needs a finite graph presentation");
}

io::PotentialDocument load_potential(const OptionalDoc& doc, const FiniteGraph& g, const io::Context& ctx) {
  if (!doc) return {FiniteRangePotential::zero(g), std::nullopt};
  return io::potential_from_json(load(*doc, ctx).json, g);
}

AlmostIsomorphism load_ai(const Json& doc, const io::Context& ctx) {
  const auto [j, here] = load(doc, ctx);
  return io::build_ai(io::ai_from_json(j, here));
}

Json header(const Shift& s) {
  Json j;
  j["period"] = s.period;
  if (!s.pruned.empty()) j["pruned"] = s.pruned;
  return j;
}

EnumerationOptions enumeration(const EnumerationRequest& req) {
  EnumerationOptions o;
  o.point_budget = req.budget;
  o.threads = req.threads == 0 ? 1 : req.threads;
  return o;
}

// Gurevich pressure of a loop system from its first-return series.
Report loop_pressure(const LoopSystem& ls) {
  const auto rc = recurrence_classify(ls);
  Report r;
  r.json["classification"] = io::to_json(rc);
  if (rc.lambda) {
    const double lo = std::log(rc.lambda->lo), hi = std::log(rc.lambda->hi);
    r.json["pressure"] = io::estimate(0.5 * (lo + hi), 0.5 * (hi - lo));
  } else if (rc.verdict == Recurrence::transient) {
    r.json["pressure"] = io::estimate(-std::log(rc.radius), 0.0);
  }
  r.json["method"] = "first-return";
  r.ok = rc.verdict != Recurrence::indeterminate;
  return r;
}

}  // namespace

Report entropy(const Json& shift, const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  Report r{header(s), true};
  if (auto g = std::get_if<FiniteGraph>(&s.presentation)) {
    r.json["entropy"] = io::to_json(pressure_spectral(*g, FiniteRangePotential::zero(*g)));
  } else if (auto ex = std::get_if<Exhaustion>(&s.presentation)) {
    r.json["entropy"] = io::to_json(pressure_exhaustion(*ex, FiniteRangePotential::zero(ex->levels.back())));
  } else {
    auto ls = std::get<LoopSystem>(s.presentation);
    for (auto& l : ls.loops) l.log_weight = 0.0, l.exact_log_weight = Rational(0);
    auto lp = loop_pressure(ls);
    r.json["entropy"] = lp.json;
    r.ok = lp.ok;
  }
  return r;
}

Report pressure(const Json& shift, const OptionalDoc& potential, const PressureRequest& req,
                const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  Report r{header(s), true};
  if (auto ls = std::get_if<LoopSystem>(&s.presentation)) {
    if (potential) throw InputError("loop systems carry their weights; no potential document is taken");
    auto lp = loop_pressure(*ls);
    r.json.update(lp.json);
    r.ok = lp.ok;
    return r;
  }
  if (auto ex = std::get_if<Exhaustion>(&s.presentation)) {
    const auto f = load_potential(potential, ex->levels.back(), ctx).potential;
    r.json["pressure"] = io::to_json(pressure_exhaustion(*ex, f));
    return r;
  }
  const auto& g = std::get<FiniteGraph>(s.presentation);
  const auto f = load_potential(potential, g, ctx).potential;
  if (req.method != "spectral" && req.method != "table" && req.method != "both")
    throw InputError("pressure method is spectral, table or both");
  if (req.method != "table") r.json["pressure"] = io::to_json(pressure_spectral(g, f));
  if (req.method != "spectral") {
    const auto t = partition_function(g, f, g.parse_word(req.word), req.n_max, enumeration(req));
    r.json[req.method == "table" ? "pressure" : "pressure_table"] = io::to_json(pressure_from_table(t, s.period));
  }
  return r;
}

ZnReport partition_function(const Json& shift, const OptionalDoc& potential, const ZnRequest& req,
                            const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  const auto& g = finite(s, "the partition function");
  const auto f = load_potential(potential, g, ctx).potential;
  if (req.n_max == 0) throw InputError("n_max must be positive");
  const auto t = shiftlab::partition_function(g, f, g.parse_word(req.word), req.n_max, enumeration(req));
  const double p = req.pressure ? *req.pressure : pressure_spectral(g, f).value;
  ZnReport r;
  r.json = io::to_json(t, g, p);
  r.csv = io::zn_csv(t, p);
  r.ok = t.base_admissible;
  return r;
}

Report classify(const Json& shift, const OptionalDoc& potential, const ClassifyRequest& req,
                const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  Report r;
  LoopSystem ls;
  if (auto l = std::get_if<LoopSystem>(&s.presentation)) {
    if (potential) throw InputError("loop systems carry their weights; no potential document is taken");
    ls = *l;
  } else {
    const auto& g = finite(s, "classification");
    if (req.word.empty()) throw InputError("classifying a finite graph needs a word to induce on");
    const auto f = load_potential(potential, g, ctx).potential;
    const Word w = g.parse_word(req.word);
    const auto ind = shiftlab::induce(g, w, req.word2.empty() ? w : g.parse_word(req.word2), req.maxlen);
    ls = lift_potential(ind, f).loops;
    r.json["spectral_pressure"] = io::to_json(pressure_spectral(g, f));
  }
  const auto rc = recurrence_classify(ls);
  r.json.update(io::to_json(rc));
  r.ok = rc.verdict != Recurrence::indeterminate;
  return r;
}

Report zeta(const Json& shift, std::size_t order, const EnumerationRequest& req, const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  const auto& g = finite(s, "the zeta function");
  if (order == 0) throw InputError("order must be positive");
  const auto t = shiftlab::partition_function(g, FiniteRangePotential::zero(g), {}, order, enumeration(req));
  if (t.truncated) throw InputError("enumeration budget exceeded");
  return {io::to_json(zeta_series(t, order)), true};
}

Report equilibrium(const Json& shift, const OptionalDoc& potential, const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  const auto& g = finite(s, "the equilibrium measure");
  const auto f = load_potential(potential, g, ctx).potential;
  const auto mu = equilibrium_measure(g, f);
  const auto p = pressure_spectral(g, f);
  Report r;
  r.json["measure"] = io::to_json(mu);
  r.json["pressure"] = io::to_json(p);
  r.json["entropy"] = io::estimate(measure_entropy(mu), 0.0);
  r.json["integral"] = io::estimate(measure_integral(mu, f), 0.0);
  const double mp = measure_pressure(mu, f);
  r.json["measure_pressure"] = io::estimate(mp, std::abs(mp - p.value));
  r.json["row_defect"] = mu.row_defect();
  r.json["stationarity_defect"] = mu.stationarity_defect();
  return r;
}

Report induce(const Json& shift, const OptionalDoc& potential, const InduceRequest& req, const io::Context& ctx) {
  const auto s = load_shift(shift, ctx);
  const auto& g = finite(s, "induction");
  const auto doc = load_potential(potential, g, ctx);
  const Word w1 = g.parse_word(req.word);
  const Word w2 = req.word2.empty() ? w1 : g.parse_word(req.word2);
  Report r;
  InducedPresentation ind;
  if (req.from_words) {
    const auto words = choose_source_words(g, w1, w2);
    ind = induce_from_words(g, words, req.maxlen);
    r.json["source_words"] = {g.format(words.W1), g.format(words.W2)};
  } else {
    ind = shiftlab::induce(g, w1, w2, req.maxlen);
  }
  r.json["N"] = ind.N;
  r.json["L"] = ind.L;
  r.json["M"] = ind.M;
  const auto lifted = lift_potential(ind, doc.potential, doc.certificate);
  r.json["loops"] = io::to_json(lifted.loops);
  r.json["shift"] = lifted.shift;
  if (lifted.certificate) r.json["certificate"] = io::to_json(*lifted.certificate, g);
  const std::size_t n_max = req.n_max ? req.n_max : std::min<std::size_t>(req.maxlen, 10);
  const auto coincidence = verify_zn_coincidence(g, doc.potential, ind, lifted.loops, n_max);
  r.json["coincidence"] = io::to_json(coincidence);
  const auto inj = check_injectivity(ind, std::min(n_max, ind.maxlen));
  r.json["injectivity"] = io::to_json(inj, g);
  r.ok = coincidence.holds && inj.injective;
  return r;
}

Report verify_magic(const Json& code, const std::string& word, long I, std::size_t depth, const io::Context& ctx) {
  const auto [j, here] = load(code, ctx);
  const auto c = io::code_from_json(j, here);
  const auto cert = shiftlab::verify_magic(c, c.target.parse_word(word), I, depth);
  return {io::to_json(cert, c), cert.status == MagicStatus::certified};
}

Report transport(const Json& ai_doc, const OptionalDoc& measure, const OptionalDoc& potential,
                 const TransportRequest& req, const io::Context& ctx) {
  const auto ai = load_ai(ai_doc, ctx);
  MarkovMeasure mu;
  if (measure) {
    if (potential) throw InputError("give either a measure or a potential");
    const auto [j, here] = load(*measure, ctx);
    mu = io::measure_from_json(j, here);
  } else {
    mu = equilibrium_measure(ai.s(), load_potential(potential, ai.s(), ctx).potential);
  }
  return {io::to_json(transport_measure(ai, mu, req.order, req.transport)), true};
}

Report verify_correspondence(const Json& ai_doc, const OptionalDoc& potential, const OptionalDoc& potential_t,
                             const CorrespondenceRequest& req, const io::Context& ctx) {
  const auto ai = load_ai(ai_doc, ctx);
  const auto f = load_potential(potential, ai.s(), ctx).potential;
  FiniteRangePotential g;
  if (req.pushforward) {
    if (potential_t) throw InputError("give either a potential on T or ask for the pushforward");
    g = pushforward_potential(ai, f);
  } else {
    g = load_potential(potential_t, ai.t(), ctx).potential;
  }
  CorrespondenceOptions co;
  co.order = req.order;
  co.transport = req.transport;
  const auto rep = shiftlab::verify_correspondence(ai, f, g, req.n_max, co);
  return {io::to_json(rep, ai), rep.passed()};
}

}  // namespace shiftlab::api
