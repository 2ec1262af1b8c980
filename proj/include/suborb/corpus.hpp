#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suborb/report.hpp"

namespace suborb {

/// A scene with the verdicts its queries must produce, keyed by JSON pointer into the scene report.
struct CorpusEntry {
  std::string name;
  std::string summary;
  std::string scene;
  std::vector<std::pair<std::string, nlohmann::json>> expectations;
};

const std::vector<CorpusEntry>& builtin_corpus();

struct CorpusOptions {
  /// Entry names to run; unset runs everything, an empty list runs nothing.
  std::optional<std::vector<std::string>> only;
  /// "entry:pointer" items whose boolean expectation is negated (for exercising the mismatch path).
  std::vector<std::string> flip;
  RunOptions run;
  SceneOptions scene;
};

/// {"corpus": [{"entry", "summary", "passed", "mismatches", "report"}], "passed", "passed_entries", "timing"}.
nlohmann::json run_corpus(const CorpusOptions& options = {});

/// Throws CorpusMismatch listing every differing verdict.
void require_corpus_passed(const nlohmann::json& corpus_report);

}  // namespace suborb
