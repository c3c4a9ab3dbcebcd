#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "shiftlab/codes.hpp"
#include "shiftlab/io.hpp"

namespace shiftlab::api {

using io::Json;

/// A JSON report; ok is false when a verification ran and failed.
struct Report {
  Json json;
  bool ok = true;
};

// Potential documents are optional everywhere; absent means f = 0.
using OptionalDoc = std::optional<Json>;

struct EnumerationRequest {
  std::uint64_t budget = 100'000'000;
  unsigned threads = 1;
};

Report entropy(const Json& shift, const io::Context& ctx = {});

struct PressureRequest : EnumerationRequest {
  std::string method = "spectral";  // spectral | table | both
  std::size_t n_max = 12;
  std::string word;
};

Report pressure(const Json& shift, const OptionalDoc& potential, const PressureRequest& req = {},
                const io::Context& ctx = {});

struct ZnRequest : EnumerationRequest {
  std::string word;
  std::size_t n_max = 10;
  std::optional<double> pressure;  // for the ratio column; spectral when absent
};

// report.json is the table; csv holds n, Z_n, ratio rows.
struct ZnReport : Report {
  std::string csv;
};

ZnReport partition_function(const Json& shift, const OptionalDoc& potential, const ZnRequest& req,
                            const io::Context& ctx = {});

struct ClassifyRequest {
  std::string word;  // finite graphs are induced on this word
  std::string word2;
  std::size_t maxlen = 10;
};

// `shift` is a loop document or a graph to induce on.
Report classify(const Json& shift, const OptionalDoc& potential, const ClassifyRequest& req = {},
                const io::Context& ctx = {});

Report zeta(const Json& shift, std::size_t order, const EnumerationRequest& req = {}, const io::Context& ctx = {});

Report equilibrium(const Json& shift, const OptionalDoc& potential, const io::Context& ctx = {});

struct InduceRequest {
  std::string word;
  std::string word2;
  std::size_t maxlen = 10;
  std::size_t n_max = 0;  // default min(maxlen, 10)
  bool from_words = false;
};

Report induce(const Json& shift, const OptionalDoc& potential, const InduceRequest& req, const io::Context& ctx = {});

Report verify_magic(const Json& code, const std::string& word, long I, std::size_t depth,
                    const io::Context& ctx = {});

struct TransportRequest {
  unsigned order = 2;
  TransportOptions transport;
};

// The measure defaults to the equilibrium measure of `potential` on S.
Report transport(const Json& ai, const OptionalDoc& measure, const OptionalDoc& potential,
                 const TransportRequest& req, const io::Context& ctx = {});

struct CorrespondenceRequest {
  std::size_t n_max = 10;
  unsigned order = 2;
  bool pushforward = false;  // g = f o gamma^-1 instead of potential_t
  TransportOptions transport;
};

Report verify_correspondence(const Json& ai, const OptionalDoc& potential, const OptionalDoc& potential_t,
                             const CorrespondenceRequest& req, const io::Context& ctx = {});

}  // namespace shiftlab::api
