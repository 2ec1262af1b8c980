#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "suborb/scene.hpp"

namespace suborb {

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const RatMatrix& m);
nlohmann::json to_json(const AffineSubspace& v);
nlohmann::json to_json(const Fingerprint& f);
/// Order, plus the element matrices for small subgroups.
nlohmann::json to_json(const Subgroup& s);
/// Witness elements are written as matrices of `group`.
nlohmann::json to_json(const ClassificationReport& r, const FiniteMatrixGroup& group);
nlohmann::json to_json(const MetricReport& r);

struct RunOptions {
  bool parallel = false;
  /// Overrides for metric probes.
  std::optional<std::size_t> depth;
  std::optional<double> tolerance;
};

/// One result object: id, command, location, status ("ok" or "error"), the command's
/// fields, and a "timing" member.
nlohmann::json run_query(const Scene& scene, const Query& query, const RunOptions& options = {});

/// {"results": [...], "timing": {...}}. With options.parallel the queries run concurrently;
/// results keep query order.
nlohmann::json run_queries(const Scene& scene, const std::vector<Query>& queries, const RunOptions& options = {});

/// Copy without any member named "timing", at any depth.
nlohmann::json strip_timing(const nlohmann::json& report);

/// Machine-readable form: two-space indented JSON with a trailing newline.
std::string machine_format(const nlohmann::json& report);
/// Human-readable summary of a scene or corpus report.
std::string text_format(const nlohmann::json& report);

/// 0 when every query succeeded, else the highest exit status among the failed queries.
int report_exit_status(const nlohmann::json& report);

/// Verdict booleans keyed by JSON pointer, and witness objects keyed by pointer.
struct VerdictDigest {
  std::map<std::string, bool> verdicts;
  std::map<std::string, nlohmann::json> witnesses;

  friend bool operator==(const VerdictDigest&, const VerdictDigest&) = default;
};

VerdictDigest digest_verdicts(const nlohmann::json& report);

struct ReplaySummary {
  std::size_t replayed = 0;
  std::vector<std::string> failures;
};

/// Parses every saturation and fullness witness in a scene report exactly and feeds it back
/// through the predicate it refutes.
ReplaySummary replay_report_witnesses(const Scene& scene, const nlohmann::json& report);

}  // namespace suborb
