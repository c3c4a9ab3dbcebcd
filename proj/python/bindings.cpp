#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shiftlab/api.hpp"
#include "shiftlab/cli.hpp"
#include "shiftlab/errors.hpp"

namespace py = pybind11;
using namespace shiftlab;
using api::Json;

namespace {

// Documents arrive as JSON text: an object, or a string holding a path.
Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

api::OptionalDoc optional(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return parse(*text);
}

io::Context context(const std::string& base_dir) { return {base_dir.empty() ? "." : base_dir}; }

using Result = std::pair<std::string, bool>;

Result result(const api::Report& r) { return {r.json.dump(), r.ok}; }

TransportOptions transport_options(std::optional<std::uint64_t> seed, std::uint64_t samples, bool sample) {
  TransportOptions t;
  t.seed = seed;
  t.samples = samples;
  t.force_sampling = sample;
  return t;
}

}  // namespace

PYBIND11_MODULE(_shiftlab, m) {
  m.doc() = "Thermodynamic formalism for countable-state Markov shifts (JSON in, JSON out).";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<SchemaError> schema_error(m, "SchemaError", input_error.ptr());
  static py::exception<NotIrreducible> not_irreducible(m, "NotIrreducible", input_error.ptr());
  static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SchemaError& e) {
      PyErr_SetString(schema_error.ptr(), e.what());
    } catch (const NotIrreducible& e) {
      PyErr_SetString(not_irreducible.ptr(), e.what());
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const ConvergenceError& e) {
      PyErr_SetString(convergence_error.ptr(), e.what());
    }
  });

  const auto release = py::call_guard<py::gil_scoped_release>();

  m.def(
      "entropy", [](const std::string& shift, const std::string& base) { return result(api::entropy(parse(shift), context(base))); },
      py::arg("shift"), py::arg("base_dir") = "", release);

  m.def(
      "pressure",
      [](const std::string& shift, std::optional<std::string> potential, const std::string& method, std::size_t n_max,
         const std::string& word, unsigned threads, const std::string& base) {
        api::PressureRequest req;
        req.method = method;
        req.n_max = n_max;
        req.word = word;
        req.threads = threads;
        return result(api::pressure(parse(shift), optional(potential), req, context(base)));
      },
      py::arg("shift"), py::arg("potential") = py::none(), py::arg("method") = "spectral", py::arg("n_max") = 12,
      py::arg("word") = "", py::arg("threads") = 1, py::arg("base_dir") = "", release);

  m.def(
      "partition_function",
      [](const std::string& shift, std::optional<std::string> potential, std::size_t n_max, const std::string& word,
         std::optional<double> pressure, unsigned threads, const std::string& base) {
        api::ZnRequest req;
        req.word = word;
        req.n_max = n_max;
        req.pressure = pressure;
        req.threads = threads;
        auto r = api::partition_function(parse(shift), optional(potential), req, context(base));
        return std::make_tuple(r.json.dump(), r.ok, r.csv);
      },
      py::arg("shift"), py::arg("potential") = py::none(), py::arg("n_max") = 10, py::arg("word") = "",
      py::arg("pressure") = py::none(), py::arg("threads") = 1, py::arg("base_dir") = "", release);

  m.def(
      "classify",
      [](const std::string& shift, std::optional<std::string> potential, const std::string& word,
         const std::string& word2, std::size_t maxlen, const std::string& base) {
        api::ClassifyRequest req{word, word2, maxlen};
        return result(api::classify(parse(shift), optional(potential), req, context(base)));
      },
      py::arg("shift"), py::arg("potential") = py::none(), py::arg("word") = "", py::arg("word2") = "",
      py::arg("maxlen") = 10, py::arg("base_dir") = "", release);

  m.def(
      "zeta",
      [](const std::string& shift, std::size_t order, const std::string& base) {
        return result(api::zeta(parse(shift), order, {}, context(base)));
      },
      py::arg("shift"), py::arg("order"), py::arg("base_dir") = "", release);

  m.def(
      "equilibrium",
      [](const std::string& shift, std::optional<std::string> potential, const std::string& base) {
        return result(api::equilibrium(parse(shift), optional(potential), context(base)));
      },
      py::arg("shift"), py::arg("potential") = py::none(), py::arg("base_dir") = "", release);

  m.def(
      "induce",
      [](const std::string& shift, std::optional<std::string> potential, const std::string& word,
         const std::string& word2, std::size_t maxlen, std::size_t n_max, bool from_words, const std::string& base) {
        api::InduceRequest req{word, word2, maxlen, n_max, from_words};
        return result(api::induce(parse(shift), optional(potential), req, context(base)));
      },
      py::arg("shift"), py::arg("potential") = py::none(), py::arg("word"), py::arg("word2") = "",
      py::arg("maxlen") = 10, py::arg("n_max") = 0, py::arg("from_words") = false, py::arg("base_dir") = "", release);

  m.def(
      "verify_magic",
      [](const std::string& code, const std::string& word, long offset, std::size_t depth, const std::string& base) {
        return result(api::verify_magic(parse(code), word, offset, depth, context(base)));
      },
      py::arg("code"), py::arg("word"), py::arg("offset") = 0, py::arg("depth") = 8, py::arg("base_dir") = "", release);

  m.def(
      "transport",
      [](const std::string& ai, std::optional<std::string> measure, std::optional<std::string> potential,
         unsigned order, std::optional<std::uint64_t> seed, std::uint64_t samples, bool sample,
         const std::string& base) {
        api::TransportRequest req{order, transport_options(seed, samples, sample)};
        return result(api::transport(parse(ai), optional(measure), optional(potential), req, context(base)));
      },
      py::arg("ai"), py::arg("measure") = py::none(), py::arg("potential") = py::none(), py::arg("order") = 2,
      py::arg("seed") = py::none(), py::arg("samples") = 100000, py::arg("sample") = false, py::arg("base_dir") = "",
      release);

  m.def(
      "verify_correspondence",
      [](const std::string& ai, std::optional<std::string> potential, std::optional<std::string> potential_t,
         bool pushforward, std::size_t n_max, unsigned order, std::optional<std::uint64_t> seed, std::uint64_t samples,
         bool sample, const std::string& base) {
        api::CorrespondenceRequest req;
        req.n_max = n_max;
        req.order = order;
        req.pushforward = pushforward;
        req.transport = transport_options(seed, samples, sample);
        return result(
            api::verify_correspondence(parse(ai), optional(potential), optional(potential_t), req, context(base)));
      },
      py::arg("ai"), py::arg("potential") = py::none(), py::arg("potential_t") = py::none(),
      py::arg("pushforward") = false, py::arg("n_max") = 10, py::arg("order") = 2, py::arg("seed") = py::none(),
      py::arg("samples") = 100000, py::arg("sample") = false, py::arg("base_dir") = "", release);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return std::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), release);
}
