#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "shiftlab/codes.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/induction.hpp"
#include "shiftlab/loops.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/presentation.hpp"
#include "shiftlab/recurrence.hpp"
#include "shiftlab/thermo.hpp"
#include "shiftlab/variation.hpp"

namespace shiftlab::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Referenced documents (strings in place of inline objects) resolve
// relative to base_dir.
struct Context {
  std::filesystem::path base_dir = ".";
};

Json read_file(const std::filesystem::path& path);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

// Reals: JSON integers and "p/q" strings are exact, "log(x)" and floats are not.
Weight weight_from_json(const Json& j);
Json to_json(const Weight& w);
// Infinite values are written as the strings "inf" / "-inf".
Json real(double v);
Json estimate(double value, double error);

GraphBuild graph_from_json(const Json& j, const Context& ctx = {});
Json to_json(const FiniteGraph& g);

LoopSystem loops_from_json(const Json& j);
Json to_json(const LoopSystem& ls);

Exhaustion exhaustion_from_json(const Json& j, const Context& ctx = {});
Json to_json(const Exhaustion& ex);

// Dispatches on "kind" (graph when absent).
ShiftPresentation presentation_from_json(const Json& j, const Context& ctx = {});
Json to_json(const ShiftPresentation& p);

struct PotentialDocument {
  FiniteRangePotential potential;
  std::optional<VariationCertificate> certificate;
};

PotentialDocument potential_from_json(const Json& j, const FiniteGraph& g);
Json to_json(const FiniteRangePotential& f, const std::optional<VariationCertificate>& cert = std::nullopt);

VariationCertificate certificate_from_json(const Json& j, const FiniteGraph& g);
Json to_json(const VariationCertificate& c, const FiniteGraph& g);

OneBlockCode code_from_json(const Json& j, const Context& ctx = {});
Json to_json(const OneBlockCode& c);

struct MagicSpec {
  Word word;
  long I = 0;
  std::size_t depth = 0;
};

struct AiDocument {
  OneBlockCode to_s;
  OneBlockCode to_t;
  MagicSpec magic_s;
  MagicSpec magic_t;
};

AiDocument ai_from_json(const Json& j, const Context& ctx = {});
Json to_json(const AiDocument& doc);
// Verifies both magic words and assembles; throws InputError on refutation.
AlmostIsomorphism build_ai(const AiDocument& doc);

MarkovMeasure measure_from_json(const Json& j, const Context& ctx = {});
Json to_json(const MarkovMeasure& mu);

EventuallyPeriodicPoint point_from_json(const Json& j, const FiniteGraph& g);
Json to_json(const EventuallyPeriodicPoint& x, const FiniteGraph& g);

// Reports.
Json to_json(const PressureEstimate& p);
Json to_json(const PartitionFunctionTable& t, const FiniteGraph& g, std::optional<double> pressure = std::nullopt);
std::string zn_csv(const PartitionFunctionTable& t, double pressure);
Json to_json(const RecurrenceClass& rc);
Json to_json(const RecurrenceWitness& w);
Json to_json(const ZetaSeries& z);
Json to_json(const MagicWordCertificate& c, const OneBlockCode& code);
Json to_json(const TransportResult& r);
Json to_json(const CorrespondenceReport& r, const AlmostIsomorphism& ai);
Json to_json(const CoincidenceReport& r);
Json to_json(const InjectivityReport& r, const FiniteGraph& g);
Json to_json(const CertificateCheck& c);

}  // namespace shiftlab::io
