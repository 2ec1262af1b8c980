#include "suborb/corpus.hpp"

#include <algorithm>
#include <chrono>

#include "suborb/error.hpp"

namespace suborb {

using nlohmann::json;

namespace {

// Rotation by π/2 on the plane; the line is the x-axis with Δ generated by the half turn.
const char* kQuarterTurnLine = R"({
  "groups": {"Q": {"generators": [[["0", "-1"], ["1", "0"]]]}},
  "candidates": {
    "line": {"group": "Q", "subgroup": {"generated_by": [[["-1", "0"], ["0", "-1"]]]}, "subspace": {"basis": [["1", "0"]]}}
  },
  "probes": {
    "line": {
      "group": "Q",
      "subgroup": {"generated_by": [[["-1", "0"], ["0", "-1"]]]},
      "subspace": {"basis": [["1", "0"]]},
      "pairs": [
        [["1", "0"], ["-2", "0"]], [["1/2", "0"], ["1/3", "0"]], [["3", "0"], ["-1/4", "0"]],
        [["0", "0"], ["5/2", "0"]], [["-1", "0"], ["-1", "0"]], [["7/3", "0"], ["-7/5", "0"]],
        [["-3/2", "0"], ["2", "0"]], [["1/8", "0"], ["-5/8", "0"]], [["4", "0"], ["9/2", "0"]],
        [["-2/3", "0"], ["0", "0"]]
      ]
    }
  },
  "queries": [
    {"command": "classify", "candidate": "line", "points": [["0", "0"], ["1", "0"]]},
    {"command": "isotropy", "candidate": "line", "point": ["0", "0"]},
    {"command": "metric-check", "probe": "line"}
  ]
})";

// One point per chart, each with its full stabilizer as Δ.
const char* kPoints = R"({
  "groups": {
    "Q": {"generators": [[["0", "-1"], ["1", "0"]]]},
    "K": {"generators": [[["-1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]]]},
    "S": {"generators": [[["0", "1", "0"], ["1", "0", "0"], ["0", "0", "1"]],
                         [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]]]}
  },
  "candidates": {
    "origin": {"group": "Q", "subgroup": {"stabilizer": ["0", "0"]}, "subspace": {"base": ["0", "0"]}},
    "axis_point": {"group": "K", "subgroup": {"stabilizer": ["1", "0"]}, "subspace": {"base": ["1", "0"]}},
    "mirror_point": {"group": "S", "subgroup": {"stabilizer": ["1", "1", "0"]}, "subspace": {"base": ["1", "1", "0"]}}
  },
  "queries": [
    {"command": "classify", "candidate": "origin"},
    {"command": "classify", "candidate": "axis_point"},
    {"command": "classify", "candidate": "mirror_point"}
  ]
})";

const char* kWholeSpace = R"({
  "groups": {
    "Q": {"generators": [[["0", "-1"], ["1", "0"]]]},
    "K": {"generators": [[["-1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]]]},
    "S": {"generators": [[["0", "1", "0"], ["1", "0", "0"], ["0", "0", "1"]],
                         [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]]]}
  },
  "candidates": {
    "plane_mod_rotation": {"group": "Q", "subspace": {"whole": true}},
    "plane_mod_signs": {"group": "K", "subspace": {"whole": true}},
    "space_mod_permutations": {"group": "S", "subspace": {"whole": true}}
  },
  "queries": [
    {"command": "classify", "candidate": "plane_mod_rotation"},
    {"command": "classify", "candidate": "plane_mod_signs"},
    {"command": "classify", "candidate": "space_mod_permutations"}
  ]
})";

// Diagonals in products of a chart with itself, and graphs of two maps.
const char* kDiagonal = R"({
  "groups": {
    "Q": {"generators": [[["0", "-1"], ["1", "0"]]]},
    "QQ": {"product": ["Q", "Q"]},
    "P": {"generators": [[["-1"]]]},
    "PP": {"product": ["P", "P"]},
    "T": {"dim": 1, "generators": []}
  },
  "candidates": {
    "rotation_diagonal": {
      "group": "QQ", "subgroup": {"diagonal": true},
      "subspace": {"basis": [["1", "0", "1", "0"], ["0", "1", "0", "1"]]}
    },
    "sign_diagonal": {"group": "PP", "subgroup": {"diagonal": true}, "subspace": {"basis": [["1", "1"]]}}
  },
  "maps": {
    "identity": {"domain": "Q", "codomain": "Q", "matrix": [["1", "0"], ["0", "1"]]},
    "shifted_line": {"domain": "T", "codomain": "Q", "matrix": [["1"], ["0"]], "offset": ["0", "1"]}
  },
  "queries": [
    {"command": "classify", "candidate": "rotation_diagonal"},
    {"command": "classify", "candidate": "sign_diagonal"},
    {"command": "graph", "map": "identity"},
    {"command": "graph", "map": "shifted_line"}
  ]
})";

// Sign changes on the plane, the line x = y, and H = {±I}.
const char* kSignDiagonal = R"({
  "groups": {"K": {"generators": [[["-1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]]]}},
  "subgroups": {"H": {"group": "K", "generated_by": [[["-1", "0"], ["0", "-1"]]]}},
  "candidates": {"diagonal": {"group": "K", "subgroup": "H", "subspace": {"basis": [["1", "1"]]}}},
  "probes": {
    "diagonal": {
      "group": "K", "subgroup": "H", "subspace": {"basis": [["1", "1"]]},
      "pairs": [
        [["1", "1"], ["-2", "-2"]], [["1/2", "1/2"], ["1/3", "1/3"]], [["3", "3"], ["-1/4", "-1/4"]],
        [["0", "0"], ["5/2", "5/2"]], [["-1", "-1"], ["-1", "-1"]], [["7/3", "7/3"], ["-7/5", "-7/5"]],
        [["-3/2", "-3/2"], ["2", "2"]], [["1/8", "1/8"], ["-5/8", "-5/8"]], [["4", "4"], ["9/2", "9/2"]],
        [["-2/3", "-2/3"], ["0", "0"]]
      ]
    }
  },
  "queries": [
    {"command": "classify", "candidate": "diagonal"},
    {"command": "isotropy", "candidate": "diagonal", "point": ["0", "0"]},
    {"command": "metric-check", "probe": "diagonal"}
  ]
})";

// diag(i, -1) on C^2 acting on the second coordinate axis.
const char* kComplexOrderFour = R"({
  "groups": {"C": {"field": "complex", "generators": [[["i", "0"], ["0", "-1"]]]}},
  "candidates": {"axis": {"group": "C", "subspace": {"field": "complex", "basis": [["0", "1"]]}}},
  "queries": [
    {"command": "classify", "candidate": "axis", "search_all_delta": true, "points": [["0", "0"], ["0", "1"]]}
  ]
})";

// A full line times a chart against a chart times a full point.
const char* kTransverseProducts = R"({
  "groups": {
    "K": {"generators": [[["-1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]]]},
    "P": {"generators": [[["-1"]]]},
    "KP": {"product": ["K", "P"]}
  },
  "candidates": {
    "line_times_chart": {
      "group": "KP",
      "subgroup": {"generated_by": [[["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]],
                                    [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]]},
      "subspace": {"base": ["1", "0", "0"], "basis": [["0", "1", "0"], ["0", "0", "1"]]}
    },
    "chart_times_point": {"group": "KP", "subspace": {"basis": [["1", "0", "0"], ["0", "1", "0"]]}}
  },
  "queries": [
    {"command": "classify", "candidate": "line_times_chart"},
    {"command": "classify", "candidate": "chart_times_point"},
    {"command": "intersect", "candidates": ["line_times_chart", "chart_times_point"]}
  ]
})";

// Submersions into the line, their fibered product, and a point preimage.
const char* kSubmersions = R"({
  "groups": {
    "A": {"generators": [[["1", "0"], ["0", "-1"]]]},
    "B": {"generators": [[["-1", "0"], ["0", "1"]]]},
    "T": {"dim": 1, "generators": []}
  },
  "maps": {
    "first": {"domain": "A", "codomain": "T", "matrix": [["1", "0"]]},
    "second": {"domain": "B", "codomain": "T", "matrix": [["0", "1"]], "offset": ["1/2"]}
  },
  "queries": [
    {"command": "fibered", "maps": ["first", "second"]},
    {"command": "preimage", "map": "first", "value": ["2"]},
    {"command": "preimage", "map": "second", "value": ["-3"]}
  ]
})";

json matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = json::array();
    for (const char* e : r) row.push_back(e);
    out.push_back(row);
  }
  return out;
}

std::vector<CorpusEntry> make_corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"quarter-turn-line",
               "x-axis under the half turn inside the quarter-turn chart: saturated and embedded, not full",
               kQuarterTurnLine,
               {{"/results/0/saturated", true},
                {"/results/0/embedded", true},
                {"/results/0/full", false},
                {"/results/0/fullness_witness/element/matrix", matrix({{"0", "-1"}, {"1", "0"}})},
                {"/results/0/fullness_witness/point", json::array({"0", "0"})},
                {"/results/1/sub_isotropy/name", "Z2"},
                {"/results/1/paths_agree", true},
                {"/results/2/passed", true}}});
  c.push_back({"point-candidates", "single points with their stabilizers are full and embedded", kPoints,
               {{"/results/0/full", true},
                {"/results/0/embedded", true},
                {"/results/1/full", true},
                {"/results/1/embedded", true},
                {"/results/2/full", true},
                {"/results/2/embedded", true}}});
  c.push_back({"whole-space", "whole-space candidates are full and embedded", kWholeSpace,
               {{"/results/0/full", true},
                {"/results/0/embedded", true},
                {"/results/1/full", true},
                {"/results/1/embedded", true},
                {"/results/2/full", true},
                {"/results/2/embedded", true}}});
  c.push_back({"diagonal", "diagonals of product charts are saturated and embedded", kDiagonal,
               {{"/results/0/saturated", true},
                {"/results/0/embedded", true},
                {"/results/0/dim", 2},
                {"/results/1/saturated", true},
                {"/results/1/embedded", true},
                {"/results/2/saturated", true},
                {"/results/2/embedded", true},
                {"/results/2/full", false},
                {"/results/2/image_in_regular_part", false},
                {"/results/3/saturated", true},
                {"/results/3/embedded", true},
                {"/results/3/full", true},
                {"/results/3/image_in_regular_part", true}}});
  c.push_back({"sign-diagonal", "line x = y under {±I} inside the sign-change chart: saturated, not full",
               kSignDiagonal,
               {{"/results/0/saturated", true},
                {"/results/0/full", false},
                {"/results/1/sub_isotropy/name", "Z2"},
                {"/results/1/omega_isotropy/name", "Z2xZ2"},
                {"/results/1/obstruction", true},
                {"/results/2/passed", true}}});
  c.push_back({"complex-order-four", "second axis of C^2 under diag(i, -1): full but not embedded",
               kComplexOrderFour,
               {{"/results/0/saturated", true},
                {"/results/0/full", true},
                {"/results/0/embedded", false},
                {"/results/0/embedding/searched_all_delta", true},
                {"/results/0/embedding/no_complement/delta_order", 4},
                {"/results/0/embedding/no_complement/kernel_order", 2},
                {"/results/0/embedding/subgroups_searched", 3}}});
  c.push_back({"transverse-products", "a full suborbifold times a chart meets a chart times a full point",
               kTransverseProducts,
               {{"/results/0/full", true},
                {"/results/1/full", true},
                {"/results/2/transverse", true},
                {"/results/2/dim", 1},
                {"/results/2/expected_dim", 1},
                {"/results/2/full", true}}});
  c.push_back({"submersions", "fibered product over the line and point preimages", kSubmersions,
               {{"/results/0/dim", 3},
                {"/results/0/expected_dim", 3},
                {"/results/0/full", true},
                {"/results/1/dim", 1},
                {"/results/1/full", true},
                {"/results/2/dim", 1},
                {"/results/2/full", true}}});
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = make_corpus();
  return corpus;
}

json run_corpus(const CorpusOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  json entries = json::array();
  std::size_t passed_entries = 0;
  for (const CorpusEntry& entry : builtin_corpus()) {
    if (options.only &&
        std::find(options.only->begin(), options.only->end(), entry.name) == options.only->end()) {
      continue;
    }
    const Scene scene = parse_scene(entry.scene, options.scene);
    json report = run_queries(scene, scene.queries, options.run);
    json mismatches = json::array();
    for (auto [pointer, expected] : entry.expectations) {
      if (std::find(options.flip.begin(), options.flip.end(), entry.name + ":" + pointer) != options.flip.end()) {
        if (expected.is_boolean()) expected = !expected.get<bool>();
      }
      const json::json_pointer ptr(pointer);
      const json actual = report.contains(ptr) ? report.at(ptr) : json();
      if (actual != expected) mismatches.push_back({{"pointer", pointer}, {"expected", expected}, {"actual", actual}});
    }
    for (const json& r : report["results"]) {
      if (r["status"] != "ok") {
        mismatches.push_back({{"pointer", "/results/" + r["id"].get<std::string>()},
                              {"expected", "ok"},
                              {"actual", r["error"]}});
      }
    }
    const bool passed = mismatches.empty();
    passed_entries += passed;
    entries.push_back({{"entry", entry.name},
                       {"summary", entry.summary},
                       {"passed", passed},
                       {"mismatches", mismatches},
                       {"report", report}});
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {{"corpus", entries},
          {"passed", passed_entries == entries.size()},
          {"passed_entries", passed_entries},
          {"timing", {{"total_ms", ms}}}};
}

void require_corpus_passed(const json& corpus_report) {
  std::string listing;
  for (const json& e : corpus_report.at("corpus")) {
    for (const json& m : e.at("mismatches")) {
      listing += "\n  " + e["entry"].get<std::string>() + " " + m["pointer"].get<std::string>() + ": expected " +
                 m["expected"].dump() + ", got " + m["actual"].dump();
    }
  }
  require(listing.empty(), ErrorCode::CorpusMismatch, "differing verdicts:" + listing);
}

}  // namespace suborb
