// Command-line front end: loads a scene, runs queries or the built-in corpus, prints a report.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "suborb/corpus.hpp"
#include "suborb/error.hpp"
#include "suborb/report.hpp"

namespace {

struct Common {
  std::string scene;
  std::string report_path;
  std::string format = "text";
  bool parallel = false;
  std::size_t max_order = suborb::kDefaultMaxOrder;
  std::optional<std::size_t> depth;
  std::optional<double> tol;
};

struct QueryArgs {
  std::vector<std::string> candidates;
  std::vector<std::string> maps;
  std::string probe;
  std::string point;
  std::string value;
  std::vector<std::string> points;
  bool search_all_delta = false;
};

void emit(const Common& c, const nlohmann::json& report) {
  if (!c.report_path.empty()) {
    std::ofstream out(c.report_path, std::ios::binary);
    if (!out) suborb::fail(suborb::ErrorCode::ParseError, "cannot write report to " + c.report_path);
    out << suborb::machine_format(report);
  }
  if (c.format == "machine") {
    std::cout << suborb::machine_format(report);
  } else {
    std::cout << suborb::text_format(report);
  }
}

suborb::RunOptions run_options(const Common& c) {
  suborb::RunOptions o;
  o.parallel = c.parallel;
  o.depth = c.depth;
  o.tolerance = c.tol;
  return o;
}

suborb::Query build_query(const std::string& command, const QueryArgs& a) {
  suborb::Query q;
  q.command = command;
  q.id = command;
  auto need = [&](bool ok, const std::string& what) {
    suborb::require(ok, suborb::ErrorCode::ParseError, command + " needs " + what);
  };
  if (command == "classify" || command == "isotropy" || command == "image") {
    need(a.candidates.size() == 1, "one --candidate");
    q.candidate = a.candidates[0];
  }
  if (command == "graph" || command == "image" || command == "preimage") {
    need(a.maps.size() == 1, "one --map");
    q.map = a.maps[0];
  }
  if (command == "classify") {
    q.search_all_delta = a.search_all_delta;
    for (const std::string& p : a.points) q.points.push_back(suborb::parse_point_list(p));
  } else if (command == "isotropy") {
    need(!a.point.empty(), "--point");
    q.point = suborb::parse_point_list(a.point);
  } else if (command == "intersect") {
    need(a.candidates.size() == 2, "two --candidate options");
    q.candidate = a.candidates[0];
    q.other_candidate = a.candidates[1];
  } else if (command == "preimage") {
    need(a.candidates.size() == 1 || !a.value.empty(), "--candidate or --value");
    need(a.candidates.empty() || a.value.empty(), "only one of --candidate and --value");
    if (!a.value.empty()) {
      q.point = suborb::parse_point_list(a.value);
    } else {
      q.candidate = a.candidates[0];
    }
  } else if (command == "fibered") {
    need(a.maps.size() == 2, "two --map options");
    q.map = a.maps[0];
    q.other_map = a.maps[1];
  } else if (command == "metric-check") {
    need(!a.probe.empty(), "--probe");
    q.probe = a.probe;
  }
  return q;
}

// The scene parser resolves names; command-line queries are checked when they run.
int run_scene_command(const Common& c, const std::optional<suborb::Query>& single) {
  suborb::require(!c.scene.empty(), suborb::ErrorCode::ParseError, "--scene is required");
  const suborb::Scene scene = suborb::load_scene(c.scene, {c.max_order});
  const std::vector<suborb::Query> queries = single ? std::vector<suborb::Query>{*single} : scene.queries;
  const nlohmann::json report = suborb::run_queries(scene, queries, run_options(c));
  emit(c, report);
  return suborb::report_exit_status(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suborbifold classification of finite linear group actions"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  QueryArgs args;
  std::vector<std::string> only_list;
  std::vector<std::string> flips;

  app.add_option("--scene", common.scene, "Scene file (JSON)");
  app.add_option("--report", common.report_path, "Also write the machine-readable report to this file");
  app.add_option("--format", common.format, "Output format on stdout")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--parallel", common.parallel, "Run independent queries concurrently");
  app.add_option("--max-order", common.max_order, "Largest group order to enumerate")->check(CLI::PositiveNumber);
  app.add_option("--depth", common.depth, "Partition depth for metric checks")->check(CLI::Range(0, 20));
  app.add_option("--tol", common.tol, "Tolerance for metric checks")->check(CLI::NonNegativeNumber);

  const std::vector<std::string> commands{"classify", "isotropy", "intersect", "preimage",
                                          "fibered",  "graph",    "image",     "metric-check"};
  std::vector<CLI::App*> query_subs;
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name, "Run one " + name + " query against the scene");
    if (name == "classify" || name == "isotropy" || name == "intersect" || name == "preimage" || name == "image") {
      sub->add_option("--candidate", args.candidates, "Candidate name (repeat for intersect)");
    }
    if (name == "preimage" || name == "fibered" || name == "graph" || name == "image") {
      sub->add_option("--map", args.maps, "Map name (repeat for fibered)");
    }
    if (name == "classify") {
      sub->add_flag("--search-all-delta", args.search_all_delta, "Search every subgroup for an effective Δ");
      sub->add_option("--point", args.points, "Isotropy point, comma-separated rationals");
    }
    if (name == "isotropy") sub->add_option("--point", args.point, "Point, comma-separated rationals")->required();
    if (name == "preimage") sub->add_option("--value", args.value, "Point value for a point preimage");
    if (name == "metric-check") sub->add_option("--probe", args.probe, "Probe name")->required();
    query_subs.push_back(sub);
  }
  CLI::App* run = app.add_subcommand("run", "Run every query listed in the scene");
  CLI::App* corpus = app.add_subcommand("corpus", "Run the built-in example corpus against its expected verdicts");
  corpus->add_option("--only", only_list, "Run only the named entries");
  corpus->add_option("--flip", flips, "Negate the expectation ENTRY:POINTER (exercises the mismatch path)");
  corpus->add_flag("--list", "List entry names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return run_scene_command(common, std::nullopt);
    if (corpus->parsed()) {
      if (corpus->count("--list")) {
        for (const suborb::CorpusEntry& e : suborb::builtin_corpus()) std::cout << e.name << "  " << e.summary << "\n";
        return 0;
      }
      suborb::CorpusOptions opts;
      if (corpus->count("--only")) opts.only = only_list;
      opts.flip = flips;
      opts.run = run_options(common);
      opts.scene.max_order = common.max_order;
      const nlohmann::json report = suborb::run_corpus(opts);
      emit(common, report);
      suborb::require_corpus_passed(report);
      return 0;
    }
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (query_subs[i]->parsed()) return run_scene_command(common, build_query(commands[i], args));
    }
  } catch (const suborb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return suborb::exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
