#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "suborb/error.hpp"
#include "suborb/maps.hpp"
#include "suborb/metric.hpp"

namespace suborb {

struct SceneOptions {
  std::size_t max_order = kDefaultMaxOrder;
};

/// One command invocation against the named objects of a scene.
struct Query {
  /// classify | isotropy | intersect | preimage | fibered | graph | image | metric-check
  std::string command;
  std::string id;
  std::string candidate;
  /// Second candidate of `intersect`.
  std::string other_candidate;
  std::string map;
  /// Second map of `fibered`.
  std::string other_map;
  std::string probe;
  /// Isotropy point, or the value of a point preimage.
  std::optional<Vector> point;
  /// Extra isotropy points for `classify`.
  std::vector<Vector> points;
  bool search_all_delta = false;
  /// JSON pointer of the query in its scene, empty for queries built on the command line.
  std::string location;
};

struct Scene {
  std::map<std::string, ChartModel> groups;
  std::map<std::string, Subgroup> subgroups;
  std::map<std::string, AffineSubspace> subspaces;
  std::map<std::string, SuborbifoldCandidate> candidates;
  std::map<std::string, EquivariantAffineMap> maps;
  std::map<std::string, MetricProbe> probes;
  std::vector<Query> queries;
};

/// Syntax errors report line and column; semantic errors report the JSON pointer of the
/// offending value. Throws ParseError, UnresolvedName, DimensionMismatch, or the module
/// error raised while building an object (prefixed with its pointer).
Scene parse_scene(std::string_view text, const SceneOptions& options = {});
Scene load_scene(const std::filesystem::path& path, const SceneOptions& options = {});

/// "p/q" strings or JSON integers.
Rational rational_from_json(const nlohmann::json& j, const std::string& pointer);
Vector vector_from_json(const nlohmann::json& j, const std::string& pointer);
RatMatrix matrix_from_json(const nlohmann::json& j, const std::string& pointer);

/// "1/2,0,-3" as typed on the command line.
Vector parse_point_list(std::string_view text);

/// Looks up a name and throws UnresolvedName naming the section when it is missing.
template <class T>
const T& lookup(const std::map<std::string, T>& section, const std::string& name, std::string_view what) {
  auto it = section.find(name);
  if (it == section.end()) fail(ErrorCode::UnresolvedName, "no " + std::string(what) + " named '" + name + "'");
  return it->second;
}

}  // namespace suborb
