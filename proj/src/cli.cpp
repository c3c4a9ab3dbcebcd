#include "shiftlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "shiftlab/api.hpp"
#include "shiftlab/errors.hpp"

namespace shiftlab::cli {

namespace {

using io::Json;

std::string render(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(std::ostream& out, const Json& report, bool json) {
  if (json) {
    out << io::dump(report);
    return;
  }
  for (const auto& [key, value] : report.items()) out << key << ": " << render(value) << '\n';
}

unsigned thread_count(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SHIFTLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InputError("SHIFTLAB_THREADS must be a positive integer");
  }
  return 1;
}

api::OptionalDoc path_doc(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return Json(path);
}

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << io::dump(doc);
}

struct Options {
  unsigned threads = 0;
  bool json = false;
  std::string shift, potential, potential_t, loops, code, ai, measure, word, word2, out_path, method = "spectral";
  std::size_t n_max = 0, order = 0, maxlen = 10, depth = 8, samples = 100000;
  std::uint64_t budget = 100'000'000;
  long offset = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> pressure;
  bool csv = false, from_words = false, sample = false, pushforward = false;

  TransportOptions transport() const {
    TransportOptions t;
    t.seed = seed;
    t.samples = samples;
    t.force_sampling = sample;
    return t;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Thermodynamic formalism for countable-state Markov shifts", "shiftlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "worker threads (default: $SHIFTLAB_THREADS or 1)");
  app.add_flag("--json", o.json, "emit the JSON report");

  auto shift_opt = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--shift", o.shift, "shift document (graph, loops or exhaustion)");
    if (required) opt->required();
  };
  auto potential_opt = [&](CLI::App* c) { c->add_option("--potential", o.potential, "potential document"); };

  auto* entropy = app.add_subcommand("entropy", "Gurevich entropy");
  shift_opt(entropy);
  auto* pressure = app.add_subcommand("pressure", "pressure of a potential");
  shift_opt(pressure);
  potential_opt(pressure);
  pressure->add_option("--method", o.method, "spectral | table | both");
  pressure->add_option("--n-max", o.n_max, "table length for the table method");
  pressure->add_option("--word", o.word, "base word for the table method");
  pressure->add_option("--budget", o.budget, "periodic point budget");
  auto* zn = app.add_subcommand("zn", "local partition functions Z_n");
  shift_opt(zn);
  potential_opt(zn);
  zn->add_option("--word", o.word, "base word (default: empty)");
  zn->add_option("--n-max", o.n_max, "largest n")->required();
  zn->add_option("--pressure", o.pressure, "pressure for the ratio column (default: spectral)");
  zn->add_option("--budget", o.budget, "periodic point budget");
  zn->add_flag("--csv", o.csv, "emit CSV: n, Z_n, Z_n exp(-nP)");
  auto* classify = app.add_subcommand("classify", "recurrence class from first returns");
  classify->add_option("--loops", o.loops, "loop document");
  shift_opt(classify, false);
  potential_opt(classify);
  classify->add_option("--word", o.word, "induce the finite shift on this word");
  classify->add_option("--word2", o.word2, "second distinguished word");
  classify->add_option("--maxlen", o.maxlen, "explicit return length");
  auto* zeta = app.add_subcommand("zeta", "Artin-Mazur zeta coefficients");
  shift_opt(zeta);
  zeta->add_option("--order", o.order, "number of coefficients after the constant")->required();
  auto* equilibrium = app.add_subcommand("equilibrium", "equilibrium Markov measure");
  shift_opt(equilibrium);
  potential_opt(equilibrium);
  equilibrium->add_option("--out", o.out_path, "write the measure document here");
  auto* ind = app.add_subcommand("induce", "first-return presentation on source words");
  shift_opt(ind);
  potential_opt(ind);
  ind->add_option("--word", o.word, "first source word")->required();
  ind->add_option("--word2", o.word2, "second source word (default: the first)");
  ind->add_option("--maxlen", o.maxlen, "longest return listed explicitly");
  ind->add_option("--n-max", o.n_max, "Z_n coincidence check up to this n");
  ind->add_flag("--from-words", o.from_words, "build source words w a w b from the given words");
  ind->add_option("--out", o.out_path, "write the loop document here");
  auto* magic = app.add_subcommand("verify-magic", "certify or refute a magic word");
  magic->add_option("--code", o.code, "code document")->required();
  magic->add_option("--word", o.word, "target word")->required();
  magic->add_option("--offset", o.offset, "window offset I");
  magic->add_option("--depth", o.depth, "largest |C| checked");
  auto* transport = app.add_subcommand("transport", "push a measure through gamma");
  transport->add_option("--ai", o.ai, "almost-isomorphism document")->required();
  transport->add_option("--measure", o.measure, "measure document on S");
  potential_opt(transport);
  transport->add_option("--order", o.order, "output block order (default 2)");
  transport->add_option("--seed", o.seed, "generator seed")->required();
  transport->add_option("--samples", o.samples, "orbit length when sampling");
  transport->add_flag("--sample", o.sample, "sample even when a closed form exists");
  auto* corr = app.add_subcommand("verify-correspondence", "check g o gamma = f and the induced correspondences");
  corr->add_option("--ai", o.ai, "almost-isomorphism document")->required();
  potential_opt(corr);
  corr->add_option("--potential-t", o.potential_t, "potential document on T");
  corr->add_flag("--pushforward", o.pushforward, "use g = f o gamma^-1");
  corr->add_option("--n-max", o.n_max, "largest period checked (default 10)");
  corr->add_option("--order", o.order, "block order for the measure comparison (default 2)");
  corr->add_option("--seed", o.seed, "generator seed when transport samples");
  corr->add_option("--samples", o.samples, "orbit length when sampling");
  corr->add_flag("--sample", o.sample, "sample even when a closed form exists");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const unsigned threads = thread_count(o.threads);
    api::Report report;
    if (entropy->parsed()) {
      report = api::entropy(Json(o.shift));
    } else if (pressure->parsed()) {
      api::PressureRequest req;
      req.method = o.method;
      if (o.n_max) req.n_max = o.n_max;
      req.word = o.word;
      req.budget = o.budget;
      req.threads = threads;
      report = api::pressure(Json(o.shift), path_doc(o.potential), req);
    } else if (zn->parsed()) {
      api::ZnRequest req;
      req.word = o.word;
      req.n_max = o.n_max;
      req.pressure = o.pressure;
      req.budget = o.budget;
      req.threads = threads;
      auto z = api::partition_function(Json(o.shift), path_doc(o.potential), req);
      if (o.csv) {
        out << z.csv;
        return z.ok ? kOk : kFailed;
      }
      report = z;
    } else if (classify->parsed()) {
      if (o.loops.empty() == o.shift.empty()) throw InputError("classify needs one of --loops or --shift");
      api::ClassifyRequest req{o.word, o.word2, o.maxlen};
      report = api::classify(Json(o.loops.empty() ? o.shift : o.loops), path_doc(o.potential), req);
    } else if (zeta->parsed()) {
      api::EnumerationRequest req;
      req.budget = o.budget;
      req.threads = threads;
      report = api::zeta(Json(o.shift), o.order, req);
    } else if (equilibrium->parsed()) {
      report = api::equilibrium(Json(o.shift), path_doc(o.potential));
      if (!o.out_path.empty()) write_file(o.out_path, report.json["measure"]);
    } else if (ind->parsed()) {
      api::InduceRequest req{o.word, o.word2, o.maxlen, o.n_max, o.from_words};
      report = api::induce(Json(o.shift), path_doc(o.potential), req);
      if (!o.out_path.empty()) write_file(o.out_path, report.json["loops"]);
    } else if (magic->parsed()) {
      report = api::verify_magic(Json(o.code), o.word, o.offset, o.depth);
    } else if (transport->parsed()) {
      api::TransportRequest req{static_cast<unsigned>(o.order ? o.order : 2), o.transport()};
      report = api::transport(Json(o.ai), path_doc(o.measure), path_doc(o.potential), req);
    } else if (corr->parsed()) {
      api::CorrespondenceRequest req;
      req.n_max = o.n_max ? o.n_max : 10;
      req.order = static_cast<unsigned>(o.order ? o.order : 2);
      req.pushforward = o.pushforward;
      req.transport = o.transport();
      report = api::verify_correspondence(Json(o.ai), path_doc(o.potential), path_doc(o.potential_t), req);
    }
    emit(out, report.json, o.json);
    if (!report.ok) {
      err << "verification failed\n";
      return kFailed;
    }
    return kOk;
  } catch (const NotIrreducible& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& c : e.components()) {
      err << "  component:";
      for (const auto& v : c) err << ' ' << v;
      err << '\n';
    }
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace shiftlab::cli
