#include "suborb/scene.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "suborb/error.hpp"
#include "suborb/realify.hpp"

namespace suborb {

using nlohmann::json;

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + escape_token(key); }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

[[noreturn]] void bad(ErrorCode code, const std::string& pointer, const std::string& message) {
  fail(code, "at " + (pointer.empty() ? std::string("/") : pointer) + ": " + message);
}

void allow_keys(const json& j, const std::string& pointer, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(ErrorCode::ParseError, pointer, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      bad(ErrorCode::ParseError, child(pointer, k), "unknown key '" + k + "'");
    }
  }
}

const json& member(const json& j, const std::string& pointer, const char* key) {
  if (!j.contains(key)) bad(ErrorCode::ParseError, pointer, std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string name_at(const json& j, const std::string& pointer) {
  if (!j.is_string()) bad(ErrorCode::ParseError, pointer, "expected a name");
  return j.get<std::string>();
}

std::size_t count_at(const json& j, const std::string& pointer) {
  if (!j.is_number_unsigned()) bad(ErrorCode::ParseError, pointer, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

bool flag_at(const json& j, const std::string& pointer) {
  if (!j.is_boolean()) bad(ErrorCode::ParseError, pointer, "expected true or false");
  return j.get<bool>();
}

const json& array_at(const json& j, const std::string& pointer) {
  if (!j.is_array()) bad(ErrorCode::ParseError, pointer, "expected an array");
  return j;
}

GaussianRational gaussian_from_json(const json& j, const std::string& pointer) {
  if (j.is_number_integer()) return {Rational(j.get<long>()), Rational()};
  if (!j.is_string()) bad(ErrorCode::ParseError, pointer, "expected a complex number string such as \"1/2-i\"");
  try {
    return GaussianRational::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(ErrorCode::ParseError, pointer, e.detail());
  }
}

// Re-raises module errors with the pointer of the object being built.
template <class F>
auto at_pointer(const std::string& pointer, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.detail().rfind("at /", 0) == 0) throw;
    bad(e.code(), pointer, e.detail());
  }
}

std::size_t line_of(std::string_view text, std::size_t byte, std::size_t* column) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  *column = col;
  return line;
}

class SceneParser {
 public:
  SceneParser(const json& root, const SceneOptions& options) : root_(root), options_(options) {}

  Scene parse() {
    allow_keys(root_, "", {"description", "ambient_dim", "groups", "subgroups", "subspaces", "candidates", "maps",
                           "probes", "queries"});
    if (root_.contains("ambient_dim")) ambient_dim_ = count_at(root_["ambient_dim"], "/ambient_dim");
    for (const char* section : {"groups", "subgroups", "subspaces", "candidates", "maps", "probes"}) {
      if (root_.contains(section) && !root_[section].is_object()) {
        bad(ErrorCode::ParseError, std::string("/") + section, "expected an object of named entries");
      }
    }
    if (root_.contains("groups")) {
      for (const auto& [name, spec] : root_["groups"].items()) group(name);
    }
    if (root_.contains("subgroups")) {
      for (const auto& [name, spec] : root_["subgroups"].items()) {
        const std::string p = child("/subgroups", name);
        auto [s, owner] = subgroup(spec, p, std::nullopt);
        scene_.subgroups.emplace(name, std::move(s));
        subgroup_group_[name] = owner;
      }
    }
    if (root_.contains("subspaces")) {
      for (const auto& [name, spec] : root_["subspaces"].items()) {
        scene_.subspaces.emplace(name, subspace(spec, child("/subspaces", name), std::nullopt));
      }
    }
    if (root_.contains("candidates")) {
      for (const auto& [name, spec] : root_["candidates"].items()) candidate(name, spec);
    }
    if (root_.contains("maps")) {
      for (const auto& [name, spec] : root_["maps"].items()) map(name, spec);
    }
    if (root_.contains("probes")) {
      for (const auto& [name, spec] : root_["probes"].items()) probe(name, spec);
    }
    if (root_.contains("queries")) {
      const json& qs = array_at(root_["queries"], "/queries");
      for (std::size_t i = 0; i < qs.size(); ++i) scene_.queries.push_back(query(qs[i], child("/queries", i)));
    }
    return std::move(scene_);
  }

 private:
  struct GroupInfo {
    bool complex = false;
    std::optional<ProductChart> product;
  };

  // ------------------------------------------------------------------ values

  Vector point(const json& j, const std::string& pointer, bool complex) const {
    if (!complex) return vector_from_json(j, pointer);
    array_at(j, pointer);
    Vector out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const GaussianRational z = gaussian_from_json(j[i], child(pointer, i));
      out.push_back(z.re);
      out.push_back(z.im);
    }
    return out;
  }

  RatMatrix matrix(const json& j, const std::string& pointer, bool complex) const {
    if (!complex) return matrix_from_json(j, pointer);
    array_at(j, pointer);
    ComplexMatrix m;
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string rp = child(pointer, r);
      array_at(j[r], rp);
      if (j[r].size() != j.size()) bad(ErrorCode::DimensionMismatch, rp, "complex matrices must be square");
      std::vector<GaussianRational> row;
      for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(gaussian_from_json(j[r][c], child(rp, c)));
      m.push_back(std::move(row));
    }
    return realify(m);
  }

  bool field_is_complex(const json& spec, const std::string& pointer) const {
    if (!spec.contains("field")) return false;
    const std::string f = name_at(spec["field"], child(pointer, "field"));
    if (f == "real") return false;
    if (f == "complex") return true;
    bad(ErrorCode::ParseError, child(pointer, "field"), "field must be \"real\" or \"complex\"");
  }

  // ------------------------------------------------------------------ groups

  const ChartModel& group(const std::string& name) {
    if (auto it = scene_.groups.find(name); it != scene_.groups.end()) return it->second;
    const std::string p = child("/groups", name);
    if (!root_.contains("groups") || !root_["groups"].contains(name)) {
      fail(ErrorCode::UnresolvedName, "no group named '" + name + "'");
    }
    if (resolving_.count(name)) bad(ErrorCode::ParseError, p, "group definitions form a cycle");
    resolving_.insert(name);
    const json& spec = root_["groups"][name];
    allow_keys(spec, p, {"dim", "field", "generators", "product"});

    GroupInfo info;
    ChartModel chart;
    if (spec.contains("product")) {
      const json& parts = array_at(spec["product"], child(p, "product"));
      if (parts.size() != 2) bad(ErrorCode::ParseError, child(p, "product"), "a product names exactly two groups");
      const ChartModel left = resolve_group(parts[0], child(child(p, "product"), 0));
      const ChartModel right = resolve_group(parts[1], child(child(p, "product"), 1));
      info.product = at_pointer(p, [&] { return product_chart(left, right, options_.max_order); });
      chart = info.product->combined;
    } else {
      info.complex = field_is_complex(spec, p);
      const json& gens = array_at(member(spec, p, "generators"), child(p, "generators"));
      std::vector<RatMatrix> mats;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        mats.push_back(matrix(gens[i], child(child(p, "generators"), i), info.complex));
      }
      std::size_t dim = 0;
      if (spec.contains("dim")) {
        dim = count_at(spec["dim"], child(p, "dim")) * (info.complex ? 2 : 1);
      } else if (!mats.empty()) {
        dim = mats.front().rows();
      } else if (ambient_dim_) {
        dim = *ambient_dim_;
      } else {
        bad(ErrorCode::ParseError, p, "a group without generators needs 'dim'");
      }
      chart.group = at_pointer(p, [&] { return generate_group(mats, dim, options_.max_order); });
    }
    resolving_.erase(name);
    info_[name] = std::move(info);
    return scene_.groups.emplace(name, std::move(chart)).first->second;
  }

  ChartModel resolve_group(const json& j, const std::string& pointer) {
    const std::string name = name_at(j, pointer);
    return at_pointer(pointer, [&] { return group(name); });
  }

  // --------------------------------------------------------------- subgroups

  // Inline subgroup objects inherit the group of their enclosing candidate or probe.
  std::pair<Subgroup, std::string> subgroup(const json& spec, const std::string& p,
                                            const std::optional<std::string>& outer_group) {
    if (spec.is_string()) {
      const std::string name = spec.get<std::string>();
      const Subgroup& s = at_pointer(p, [&]() -> const Subgroup& { return lookup(scene_.subgroups, name, "subgroup"); });
      return {s, subgroup_group_.at(name)};
    }
    allow_keys(spec, p, {"group", "whole", "trivial", "generated_by", "members", "stabilizer", "diagonal"});
    std::string gname;
    if (spec.contains("group")) {
      gname = name_at(spec["group"], child(p, "group"));
    } else if (outer_group) {
      gname = *outer_group;
    } else {
      bad(ErrorCode::ParseError, p, "missing key 'group'");
    }
    const ChartModel chart = at_pointer(child(p, "group"), [&] { return group(gname); });
    const GroupInfo& info = info_.at(gname);

    int forms = 0;
    for (const char* k : {"whole", "trivial", "generated_by", "members", "stabilizer", "diagonal"}) forms += spec.contains(k);
    if (forms != 1) {
      bad(ErrorCode::ParseError, p,
          "give exactly one of whole, trivial, generated_by, members, stabilizer, diagonal");
    }

    Subgroup out = at_pointer(p, [&]() -> Subgroup {
      if (spec.contains("whole")) {
        flag_at(spec["whole"], child(p, "whole"));
        return chart.whole();
      }
      if (spec.contains("trivial")) {
        flag_at(spec["trivial"], child(p, "trivial"));
        return Subgroup::trivial(chart.group);
      }
      if (spec.contains("stabilizer")) {
        const Vector x = point(spec["stabilizer"], child(p, "stabilizer"), info.complex);
        if (x.size() != chart.dim()) bad(ErrorCode::DimensionMismatch, child(p, "stabilizer"), "point has wrong length");
        return stabilizer(chart.whole(), x);
      }
      if (spec.contains("diagonal")) {
        flag_at(spec["diagonal"], child(p, "diagonal"));
        if (!info.product || !same_chart(info.product->left, info.product->right)) {
          bad(ErrorCode::ParseError, child(p, "diagonal"), "diagonal needs a product of a group with itself");
        }
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < info.product->left.group->order(); ++i) {
          members.push_back(info.product->index_of(i, i));
        }
        return Subgroup::from_members(chart.group, std::move(members));
      }
      if (spec.contains("members")) {
        const std::string mp = child(p, "members");
        const json& ms = array_at(spec["members"], mp);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ms.size(); ++i) {
          const std::size_t idx = count_at(ms[i], child(mp, i));
          if (idx >= chart.group->order()) bad(ErrorCode::ParseError, child(mp, i), "index out of range");
          members.push_back(idx);
        }
        return Subgroup::from_members(chart.group, std::move(members));
      }
      const std::string gp = child(p, "generated_by");
      const json& gens = array_at(spec["generated_by"], gp);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string ep = child(gp, i);
        if (gens[i].is_number_unsigned()) {
          // Index into the group's generator list.
          const std::size_t k = gens[i].get<std::size_t>();
          if (k >= chart.group->generators().size()) bad(ErrorCode::ParseError, ep, "generator index out of range");
          idx.push_back(*chart.group->index_of(chart.group->generators()[k]));
        } else {
          const RatMatrix m = matrix(gens[i], ep, info.complex);
          auto found = chart.group->index_of(m);
          if (!found) bad(ErrorCode::NotSubgroup, ep, m.to_string() + " is not an element of " + gname);
          idx.push_back(*found);
        }
      }
      return Subgroup::generated_by(chart.group, idx);
    });
    return {std::move(out), gname};
  }

  // --------------------------------------------------------------- subspaces

  AffineSubspace subspace(const json& spec, const std::string& p, const std::optional<std::string>& outer_group) {
    if (spec.is_string()) {
      const std::string name = spec.get<std::string>();
      return at_pointer(p, [&] { return lookup(scene_.subspaces, name, "subspace"); });
    }
    allow_keys(spec, p, {"dim", "field", "base", "basis", "whole"});
    bool complex = field_is_complex(spec, p);
    if (!spec.contains("field") && outer_group) complex = info_.at(*outer_group).complex;
    const std::size_t factor = complex ? 2 : 1;

    std::optional<std::size_t> dim;
    if (spec.contains("dim")) dim = count_at(spec["dim"], child(p, "dim")) * factor;
    Vector base;
    if (spec.contains("base")) {
      base = point(spec["base"], child(p, "base"), complex);
      if (dim && base.size() != *dim) bad(ErrorCode::DimensionMismatch, child(p, "base"), "base point has wrong length");
      dim = base.size();
    }
    if (!dim && outer_group) dim = scene_.groups.at(*outer_group).dim();
    if (!dim && ambient_dim_) dim = *ambient_dim_;
    if (!dim && spec.contains("basis") && !spec["basis"].empty()) {
      dim = point(spec["basis"][0], child(child(p, "basis"), 0), complex).size();
    }
    if (!dim) bad(ErrorCode::ParseError, p, "cannot infer the ambient dimension; give 'dim'");
    if (base.empty()) base = zero_vector(*dim);

    if (spec.contains("whole")) {
      flag_at(spec["whole"], child(p, "whole"));
      if (spec.contains("basis")) bad(ErrorCode::ParseError, p, "whole and basis are exclusive");
      return AffineSubspace::whole(*dim);
    }
    std::vector<Vector> directions;
    if (spec.contains("basis")) {
      const std::string bp = child(p, "basis");
      const json& basis = array_at(spec["basis"], bp);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        Vector v = point(basis[i], child(bp, i), complex);
        if (v.size() != *dim) bad(ErrorCode::DimensionMismatch, child(bp, i), "direction has wrong length");
        if (complex) {
          // Real span of a complex line: v and i v.
          Vector iv(v.size());
          for (std::size_t k = 0; k < v.size(); k += 2) {
            iv[k] = -v[k + 1];
            iv[k + 1] = v[k];
          }
          directions.push_back(std::move(iv));
        }
        directions.push_back(std::move(v));
      }
    }
    return AffineSubspace(std::move(base), directions);
  }

  // -------------------------------------------------------------- candidates

  void candidate(const std::string& name, const json& spec) {
    const std::string p = child("/candidates", name);
    allow_keys(spec, p, {"group", "subgroup", "subspace"});
    const std::string gname = name_at(member(spec, p, "group"), child(p, "group"));
    const ChartModel chart = at_pointer(child(p, "group"), [&] { return group(gname); });
    Subgroup delta = chart.whole();
    if (spec.contains("subgroup")) {
      auto [s, owner] = subgroup(spec["subgroup"], child(p, "subgroup"), gname);
      if (owner != gname && !same_chart(scene_.groups.at(owner), chart)) {
        bad(ErrorCode::ChartMismatch, child(p, "subgroup"), "subgroup of '" + owner + "', not of '" + gname + "'");
      }
      delta = rebase(s, chart);
    }
    AffineSubspace v = subspace(member(spec, p, "subspace"), child(p, "subspace"), gname);
    if (v.ambient_dim() != chart.dim()) {
      bad(ErrorCode::DimensionMismatch, child(p, "subspace"),
          "subspace lives in R^" + std::to_string(v.ambient_dim()) + " but the group acts on R^" +
              std::to_string(chart.dim()));
    }
    scene_.candidates.emplace(name, at_pointer(p, [&] { return SuborbifoldCandidate(chart, delta, v); }));
    candidate_group_[name] = gname;
  }

  // -------------------------------------------------------------------- maps

  void map(const std::string& name, const json& spec) {
    const std::string p = child("/maps", name);
    allow_keys(spec, p, {"domain", "codomain", "matrix", "offset", "theta"});
    const std::string dname = name_at(member(spec, p, "domain"), child(p, "domain"));
    const std::string cname = name_at(member(spec, p, "codomain"), child(p, "codomain"));
    const ChartModel dom = at_pointer(child(p, "domain"), [&] { return group(dname); });
    const ChartModel cod = at_pointer(child(p, "codomain"), [&] { return group(cname); });
    const bool complex_cod = info_.at(cname).complex;

    const RatMatrix a = matrix_from_json(member(spec, p, "matrix"), child(p, "matrix"));
    if (a.rows() != cod.dim() || a.cols() != dom.dim()) {
      bad(ErrorCode::DimensionMismatch, child(p, "matrix"),
          "expected " + std::to_string(cod.dim()) + "x" + std::to_string(dom.dim()) + ", got " +
              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    Vector b = zero_vector(cod.dim());
    if (spec.contains("offset")) {
      b = vector_from_json(spec["offset"], child(p, "offset"));
      if (b.size() != cod.dim()) bad(ErrorCode::DimensionMismatch, child(p, "offset"), "offset has wrong length");
    }
    const bool automatic = !spec.contains("theta") || (spec["theta"].is_string() && spec["theta"] == "auto");
    if (automatic) {
      scene_.maps.emplace(name, at_pointer(p, [&] { return EquivariantAffineMap::with_inferred_theta(dom, cod, a, b); }));
    } else {
      const std::string tp = child(p, "theta");
      const json& imgs = array_at(spec["theta"], tp);
      std::vector<RatMatrix> images;
      for (std::size_t i = 0; i < imgs.size(); ++i) images.push_back(matrix(imgs[i], child(tp, i), complex_cod));
      scene_.maps.emplace(name,
                          at_pointer(p, [&] { return EquivariantAffineMap::from_generator_images(dom, cod, a, b, images); }));
    }
    map_codomain_[name] = cname;
  }

  // ------------------------------------------------------------------ probes

  void probe(const std::string& name, const json& spec) {
    const std::string p = child("/probes", name);
    allow_keys(spec, p, {"group", "subgroup", "subspace", "pairs", "depth", "tolerance"});
    const std::string gname = name_at(member(spec, p, "group"), child(p, "group"));
    const ChartModel chart = at_pointer(child(p, "group"), [&] { return group(gname); });
    Subgroup h = chart.whole();
    if (spec.contains("subgroup")) h = rebase(subgroup(spec["subgroup"], child(p, "subgroup"), gname).first, chart);
    AffineSubspace n = subspace(member(spec, p, "subspace"), child(p, "subspace"), gname);
    std::vector<std::pair<Vector, Vector>> pairs;
    const std::string pp = child(p, "pairs");
    const json& ps = array_at(member(spec, p, "pairs"), pp);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string ip = child(pp, i);
      if (!ps[i].is_array() || ps[i].size() != 2) bad(ErrorCode::ParseError, ip, "expected a pair [x, y]");
      pairs.emplace_back(point(ps[i][0], child(ip, 0), info_.at(gname).complex),
                         point(ps[i][1], child(ip, 1), info_.at(gname).complex));
    }
    std::size_t depth = kDefaultPartitionDepth;
    double tol = kDefaultMetricTolerance;
    if (spec.contains("depth")) depth = count_at(spec["depth"], child(p, "depth"));
    if (depth > 20) bad(ErrorCode::ParseError, child(p, "depth"), "depth above 20 is not supported");
    if (spec.contains("tolerance")) {
      if (!spec["tolerance"].is_number() || spec["tolerance"].get<double>() < 0) {
        bad(ErrorCode::ParseError, child(p, "tolerance"), "expected a nonnegative number");
      }
      tol = spec["tolerance"].get<double>();
    }
    scene_.probes.emplace(name, at_pointer(p, [&] { return MetricProbe(chart, h, n, pairs, depth, tol); }));
  }

  // ----------------------------------------------------------------- queries

  std::string ref(const json& spec, const std::string& p, const char* key, const auto& section, const char* what) {
    const std::string name = name_at(member(spec, p, key), child(p, key));
    if (!section.count(name)) bad(ErrorCode::UnresolvedName, child(p, key), std::string("no ") + what + " named '" + name + "'");
    return name;
  }

  Query query(const json& spec, const std::string& p) {
    allow_keys(spec, p, {"command", "id", "candidate", "candidates", "map", "maps", "probe", "point", "value",
                         "points", "search_all_delta"});
    Query q;
    q.location = p;
    q.command = name_at(member(spec, p, "command"), child(p, "command"));
    q.id = spec.contains("id") ? name_at(spec["id"], child(p, "id")) : p.substr(1);
    auto candidate_point = [&](const char* key) {
      const bool complex = info_.at(candidate_group_.at(q.candidate)).complex;
      Vector x = point(spec[key], child(p, key), complex);
      if (x.size() != scene_.candidates.at(q.candidate).chart().dim()) {
        bad(ErrorCode::DimensionMismatch, child(p, key), "point has wrong length");
      }
      return x;
    };
    auto two_names = [&](const char* key, const auto& section, const char* what) {
      const std::string kp = child(p, key);
      const json& arr = array_at(member(spec, p, key), kp);
      if (arr.size() != 2) bad(ErrorCode::ParseError, kp, std::string("expected two ") + what + " names");
      std::array<std::string, 2> out;
      for (std::size_t i = 0; i < 2; ++i) {
        out[i] = name_at(arr[i], child(kp, i));
        if (!section.count(out[i])) bad(ErrorCode::UnresolvedName, child(kp, i), std::string("no ") + what + " named '" + out[i] + "'");
      }
      return out;
    };

    if (q.command == "classify") {
      q.candidate = ref(spec, p, "candidate", scene_.candidates, "candidate");
      if (spec.contains("search_all_delta")) q.search_all_delta = flag_at(spec["search_all_delta"], child(p, "search_all_delta"));
      if (spec.contains("points")) {
        const json& pts = array_at(spec["points"], child(p, "points"));
        const bool complex = info_.at(candidate_group_.at(q.candidate)).complex;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          q.points.push_back(point(pts[i], child(child(p, "points"), i), complex));
        }
      }
    } else if (q.command == "isotropy") {
      q.candidate = ref(spec, p, "candidate", scene_.candidates, "candidate");
      member(spec, p, "point");
      q.point = candidate_point("point");
    } else if (q.command == "intersect") {
      const auto names = two_names("candidates", scene_.candidates, "candidate");
      q.candidate = names[0];
      q.other_candidate = names[1];
    } else if (q.command == "preimage") {
      q.map = ref(spec, p, "map", scene_.maps, "map");
      if (spec.contains("candidate") == spec.contains("value")) {
        bad(ErrorCode::ParseError, p, "preimage needs exactly one of 'candidate' and 'value'");
      }
      if (spec.contains("candidate")) {
        q.candidate = ref(spec, p, "candidate", scene_.candidates, "candidate");
      } else {
        q.point = point(spec["value"], child(p, "value"), info_.at(map_codomain_.at(q.map)).complex);
      }
    } else if (q.command == "fibered") {
      const auto names = two_names("maps", scene_.maps, "map");
      q.map = names[0];
      q.other_map = names[1];
    } else if (q.command == "graph") {
      q.map = ref(spec, p, "map", scene_.maps, "map");
    } else if (q.command == "image") {
      q.map = ref(spec, p, "map", scene_.maps, "map");
      q.candidate = ref(spec, p, "candidate", scene_.candidates, "candidate");
    } else if (q.command == "metric-check") {
      q.probe = ref(spec, p, "probe", scene_.probes, "probe");
    } else {
      bad(ErrorCode::ParseError, child(p, "command"), "unknown command '" + q.command + "'");
    }
    return q;
  }

  const json& root_;
  SceneOptions options_;
  std::optional<std::size_t> ambient_dim_;
  Scene scene_;
  std::map<std::string, GroupInfo> info_;
  std::map<std::string, std::string> subgroup_group_;
  std::map<std::string, std::string> candidate_group_;
  std::map<std::string, std::string> map_codomain_;
  std::set<std::string> resolving_;
};

}  // namespace

Rational rational_from_json(const json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(ErrorCode::ParseError, pointer, "expected a rational string \"p/q\" or an integer");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(ErrorCode::ParseError, pointer, e.detail());
  }
}

Vector vector_from_json(const json& j, const std::string& pointer) {
  array_at(j, pointer);
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], child(pointer, i)));
  return v;
}

RatMatrix matrix_from_json(const json& j, const std::string& pointer) {
  array_at(j, pointer);
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) rows.push_back(vector_from_json(j[r], child(pointer, r)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) bad(ErrorCode::DimensionMismatch, child(pointer, r), "ragged matrix row");
  }
  return RatMatrix::from_rows(rows, cols);
}

Vector parse_point_list(std::string_view text) {
  Vector out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    out.push_back(Rational::parse(item));
  }
  return out;
}

Scene parse_scene(std::string_view text, const SceneOptions& options) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t column = 0;
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1, &column);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
  }
  return SceneParser(root, options).parse();
}

Scene load_scene(const std::filesystem::path& path, const SceneOptions& options) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot read scene file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), options);
}

}  // namespace suborb
