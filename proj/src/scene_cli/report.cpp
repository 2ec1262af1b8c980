#include "suborb/report.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <set>
#include <sstream>

#include "suborb/error.hpp"

namespace suborb {

using nlohmann::json;

namespace {

constexpr std::size_t kListedSubgroupOrder = 64;

json witness_element(const FiniteMatrixGroup& g, std::size_t idx) {
  return {{"index", idx}, {"matrix", to_json(g.element(idx))}};
}

json fullness_witness_json(const FullnessVerdict& v, const FiniteMatrixGroup& g) {
  if (!v.witness) return nullptr;
  return {{"element", witness_element(g, v.witness->element)}, {"point", to_json(v.witness->point)}};
}

json candidate_summary(const SuborbifoldCandidate& c) {
  return {{"ambient_dim", c.chart().dim()},
          {"dim", c.dim()},
          {"subgroup", to_json(c.delta())},
          {"subspace", to_json(c.v())}};
}

const SuborbifoldCandidate& candidate_of(const Scene& s, const std::string& name) {
  return lookup(s.candidates, name, "candidate");
}

const EquivariantAffineMap& map_of(const Scene& s, const std::string& name) { return lookup(s.maps, name, "map"); }

json classify_query(const Scene& scene, const Query& q) {
  const SuborbifoldCandidate& cand = candidate_of(scene, q.candidate);
  ClassifyOptions opts;
  opts.search_all_delta = q.search_all_delta;
  opts.isotropy_points = q.points;
  json out = to_json(classify(cand, opts), *cand.chart().group);
  out["candidate"] = q.candidate;
  out["ambient_dim"] = cand.chart().dim();
  out["dim"] = cand.dim();
  out["group_order"] = cand.chart().group->order();
  out["subgroup_order"] = cand.delta().order();
  return out;
}

json isotropy_query(const Scene& scene, const Query& q) {
  const SuborbifoldCandidate& cand = candidate_of(scene, q.candidate);
  const Vector& x = *q.point;
  const AbstractGroup via_quotient = sub_isotropy_via_quotient(cand, x);
  const AbstractGroup via_chart = sub_isotropy_via_induced_chart(cand, x);
  json out{{"candidate", q.candidate},
           {"point", to_json(x)},
           {"ambient_isotropy", to_json(isotropy_point(cand.chart(), x))},
           {"via_quotient", to_json(iso_fingerprint(via_quotient))},
           {"via_induced_chart", to_json(iso_fingerprint(via_chart))},
           {"paths_agree", same_isomorphism_class(via_quotient, via_chart)},
           {"sub_isotropy", to_json(isotropy_sub_point(cand, x))}};
  if (cand.chart().group->table().is_abelian()) {
    const ObstructionProbe probe = full_obstruction_probe(cand, x);
    out["omega_isotropy"] = to_json(probe.omega_isotropy);
    out["obstruction"] = probe.obstruction;
  } else {
    out["omega_isotropy"] = nullptr;
    out["obstruction"] = nullptr;
  }
  return out;
}

json intersect_query(const Scene& scene, const Query& q) {
  const SuborbifoldCandidate& a = candidate_of(scene, q.candidate);
  const SuborbifoldCandidate& b = candidate_of(scene, q.other_candidate);
  json out{{"candidates", {q.candidate, q.other_candidate}}};
  out["transverse"] = transverse_candidates(a.chart(), a, b);
  if (!out["transverse"].get<bool>()) return out;
  const SuborbifoldCandidate meet = intersect_full(a, b);
  out["expected_dim"] = a.dim() + b.dim() - a.chart().dim();
  out["full"] = check_full(meet).full;
  out.update(candidate_summary(meet));
  return out;
}

json preimage_query(const Scene& scene, const Query& q) {
  const EquivariantAffineMap& f = map_of(scene, q.map);
  json out{{"map", q.map}};
  std::optional<SuborbifoldCandidate> pre;
  if (q.point) {
    out["value"] = to_json(*q.point);
    pre = regular_value_preimage(f, *q.point);
    out["expected_dim"] = f.domain().dim() - f.codomain().dim();
  } else {
    const SuborbifoldCandidate& target = candidate_of(scene, q.candidate);
    out["candidate"] = q.candidate;
    pre = preimage_suborbifold(f, target);
    out["expected_dim"] = f.domain().dim() + target.dim() - f.codomain().dim();
  }
  out["empty"] = !pre.has_value();
  if (!pre) return out;
  out["full"] = check_full(*pre).full;
  out.update(candidate_summary(*pre));
  return out;
}

json fibered_query(const Scene& scene, const Query& q) {
  const EquivariantAffineMap& f1 = map_of(scene, q.map);
  const EquivariantAffineMap& f2 = map_of(scene, q.other_map);
  const FiberedProduct fp = fibered_product(f1, f2);
  json out{{"maps", {q.map, q.other_map}},
           {"expected_dim", f1.domain().dim() + f2.domain().dim() - f1.codomain().dim()},
           {"full", check_full(fp.candidate).full}};
  out.update(candidate_summary(fp.candidate));
  return out;
}

json graph_query(const Scene& scene, const Query& q) {
  const GraphSuborbifold g = graph_suborbifold(map_of(scene, q.map));
  json out{{"map", q.map},
           {"saturated", g.report.saturated.saturated},
           {"embedded", g.report.embedded && g.report.embedded->embedded},
           {"full", g.report.full.full},
           {"fullness_witness", fullness_witness_json(g.report.full, *g.candidate.chart().group)},
           {"image_in_regular_part", g.image_in_regular_part}};
  out.update(candidate_summary(g.candidate));
  return out;
}

json image_query(const Scene& scene, const Query& q) {
  const EquivariantAffineMap& f = map_of(scene, q.map);
  const SuborbifoldCandidate img = image_suborbifold(f, candidate_of(scene, q.candidate));
  json out{{"map", q.map},
           {"candidate", q.candidate},
           {"saturated", check_saturated(img).saturated},
           {"full", check_full(img).full},
           {"embedded", check_embedded(img, false).embedded}};
  out.update(candidate_summary(img));
  return out;
}

json metric_query(const Scene& scene, const Query& q, const RunOptions& options) {
  const MetricProbe& stored = lookup(scene.probes, q.probe, "probe");
  const MetricProbe probe(stored.chart(), stored.subgroup(), stored.subspace(), stored.sample_pairs(),
                          options.depth.value_or(stored.partition_depth()),
                          options.tolerance.value_or(stored.tolerance()));
  json out = to_json(lemma_metrics_check(probe));
  out["probe"] = q.probe;
  return out;
}

json dispatch(const Scene& scene, const Query& q, const RunOptions& options) {
  if (q.command == "classify") return classify_query(scene, q);
  if (q.command == "isotropy") return isotropy_query(scene, q);
  if (q.command == "intersect") return intersect_query(scene, q);
  if (q.command == "preimage") return preimage_query(scene, q);
  if (q.command == "fibered") return fibered_query(scene, q);
  if (q.command == "graph") return graph_query(scene, q);
  if (q.command == "image") return image_query(scene, q);
  if (q.command == "metric-check") return metric_query(scene, q, options);
  fail(ErrorCode::ParseError, "unknown command '" + q.command + "'");
}

json error_json(ErrorCode code, const std::string& message) {
  return {{"code", std::string(error_code_name(code))}, {"message", message}, {"exit_status", exit_status(code)}};
}

// Fields printed by the text format, in this order.
const std::vector<std::string>& text_fields() {
  static const std::vector<std::string> fields{
      "candidate", "candidates", "map", "maps", "probe", "point", "value", "ambient_dim", "dim", "expected_dim",
      "group_order", "subgroup_order", "saturated", "saturation_witness", "full", "fullness_witness", "embedded",
      "embedding", "kernel", "transverse", "empty", "image_in_regular_part", "ambient_isotropy", "via_quotient",
      "via_induced_chart", "paths_agree", "sub_isotropy", "omega_isotropy", "obstruction", "isotropy", "passed",
      "max_deviation", "increase_depth", "depth", "tolerance", "subgroup", "subspace"};
  return fields;
}

std::string brief(const json& v) {
  if (v.is_object() && v.contains("name") && v.contains("order")) return v["name"].get<std::string>();
  if (v.is_object() && v.contains("order") && v.size() <= 2) return "order " + std::to_string(v["order"].get<std::size_t>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_result(std::ostringstream& os, const json& r, const std::string& indent) {
  os << indent << "[" << r.value("id", "") << "] " << r.value("command", "") << ": " << r.value("status", "") << "\n";
  if (r.value("status", "") == "error") {
    os << indent << "  error: " << r["error"]["code"].get<std::string>() << ": "
       << r["error"]["message"].get<std::string>() << "\n";
    return;
  }
  for (const std::string& k : text_fields()) {
    if (!r.contains(k) || r[k].is_null()) continue;
    if (k == "isotropy") {
      for (const json& e : r[k]) os << indent << "  isotropy at " << e["point"].dump() << ": " << brief(e["fingerprint"]) << "\n";
      continue;
    }
    os << indent << "  " << k << ": " << brief(r[k]) << "\n";
  }
  if (r.contains("pairs")) {
    for (const json& p : r["pairs"]) {
      os << indent << "  pair " << p["x"].dump() << " " << p["y"].dump() << ": quotient " << p["quotient"].get<double>()
         << ", intrinsic " << p["intrinsic"].get<double>() << (p["passed"].get<bool>() ? "" : "  FAILED") << "\n";
    }
  }
}

void collect(const json& j, const std::string& pointer, VerdictDigest& d) {
  static const std::set<std::string> verdict_keys{"saturated", "full",  "embedded",      "transverse",
                                                  "passed",    "empty", "obstruction",   "paths_agree",
                                                  "image_in_regular_part", "increase_depth", "searched_all_delta"};
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "timing") continue;
      const std::string p = pointer + "/" + k;
      if (v.is_boolean() && verdict_keys.count(k)) d.verdicts[p] = v.get<bool>();
      if (k.size() > 8 && k.ends_with("_witness") && !v.is_null()) d.witnesses[p] = v;
      collect(v, p, d);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect(j[i], pointer + "/" + std::to_string(i), d);
  }
}

std::size_t element_from_json(const FiniteMatrixGroup& g, const json& w, const std::string& pointer) {
  const RatMatrix m = matrix_from_json(w.at("element").at("matrix"), pointer + "/element/matrix");
  auto idx = g.index_of(m);
  require(idx.has_value(), ErrorCode::ParseError, pointer + ": witness element is not in the group");
  return *idx;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

json to_json(const Rational& r) { return r.to_string(); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(r.to_string());
  return out;
}

json to_json(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

json to_json(const AffineSubspace& v) {
  json basis = json::array();
  for (const Vector& b : v.basis()) basis.push_back(to_json(b));
  return {{"ambient_dim", v.ambient_dim()}, {"dim", v.dim()}, {"base", to_json(v.base_point())}, {"basis", basis}};
}

json to_json(const Fingerprint& f) {
  return {{"name", f.describe()}, {"order", f.order}, {"abelian", f.abelian}, {"element_orders", f.element_orders}};
}

json to_json(const Subgroup& s) {
  json out{{"order", s.order()}};
  if (s.order() <= kListedSubgroupOrder) {
    json elems = json::array();
    for (std::size_t i : s.members()) elems.push_back(to_json(s.matrix(i)));
    out["elements"] = elems;
  }
  return out;
}

json to_json(const ClassificationReport& r, const FiniteMatrixGroup& group) {
  json out;
  out["saturated"] = r.saturated.saturated;
  out["saturation_witness"] = nullptr;
  if (r.saturated.witness) {
    const SaturationWitness& w = *r.saturated.witness;
    out["saturation_witness"] = {
        {"element", witness_element(group, w.element)}, {"point", to_json(w.point)}, {"image", to_json(w.image)}};
  }
  out["full"] = r.full.full;
  out["fullness_witness"] = fullness_witness_json(r.full, group);
  out["kernel"] = to_json(r.kernel);
  if (r.embedded) {
    const EmbeddingVerdict& e = *r.embedded;
    out["embedded"] = e.embedded;
    json emb{{"searched_all_delta", e.searched_all_delta},
             {"subgroups_searched", e.subgroups_searched},
             {"complement", nullptr},
             {"no_complement", nullptr},
             {"effective_delta", nullptr}};
    if (e.complement) emb["complement"] = to_json(*e.complement);
    if (e.no_complement) {
      emb["no_complement"] = {{"delta_order", e.no_complement->delta_order},
                              {"kernel_order", e.no_complement->kernel_order},
                              {"subgroups_examined", e.no_complement->subgroups_examined},
                              {"candidates_of_complement_order", e.no_complement->candidates_of_complement_order}};
    }
    if (e.effective_delta) emb["effective_delta"] = to_json(*e.effective_delta);
    out["embedding"] = emb;
  } else {
    out["embedded"] = nullptr;
    out["embedding"] = nullptr;
  }
  json iso = json::array();
  for (const auto& [x, f] : r.induced_isotropy_at) iso.push_back({{"point", to_json(x)}, {"fingerprint", to_json(f)}});
  out["isotropy"] = iso;
  return out;
}

json to_json(const MetricReport& r) {
  json pairs = json::array();
  for (const MetricPairResult& p : r.pairs) {
    pairs.push_back({{"x", to_json(p.x)},
                     {"y", to_json(p.y)},
                     {"quotient", p.quotient},
                     {"intrinsic", p.intrinsic},
                     {"deviation", p.deviation},
                     {"passed", p.passed}});
  }
  return {{"passed", r.passed},           {"max_deviation", r.max_deviation}, {"increase_depth", r.increase_depth},
          {"depth", r.partition_depth}, {"tolerance", r.tolerance},         {"pairs", pairs}};
}

json run_query(const Scene& scene, const Query& query, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  json out{{"id", query.id}, {"command", query.command}, {"location", query.location}};
  try {
    json body = dispatch(scene, query, options);
    out["status"] = "ok";
    out.update(body);
  } catch (const Error& e) {
    out["status"] = "error";
    out["error"] = error_json(e.code(), e.detail());
  } catch (const std::exception& e) {
    out["status"] = "error";
    out["error"] = error_json(ErrorCode::InternalInvariant, e.what());
  }
  out["timing"] = {{"ms", millis_since(start)}};
  return out;
}

json run_queries(const Scene& scene, const std::vector<Query>& queries, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  json results = json::array();
  if (options.parallel && queries.size() > 1) {
    std::vector<std::future<json>> pending;
    for (const Query& q : queries) {
      pending.push_back(std::async(std::launch::async, [&scene, &q, &options] { return run_query(scene, q, options); }));
    }
    for (auto& f : pending) results.push_back(f.get());
  } else {
    for (const Query& q : queries) results.push_back(run_query(scene, q, options));
  }
  return {{"results", results}, {"timing", {{"total_ms", millis_since(start)}}}};
}

json strip_timing(const json& report) {
  if (report.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : report.items()) {
      if (k != "timing") out[k] = strip_timing(v);
    }
    return out;
  }
  if (report.is_array()) {
    json out = json::array();
    for (const json& v : report) out.push_back(strip_timing(v));
    return out;
  }
  return report;
}

std::string machine_format(const json& report) { return report.dump(2) + "\n"; }

std::string text_format(const json& report) {
  std::ostringstream os;
  if (report.contains("corpus")) {
    for (const json& e : report["corpus"]) {
      os << (e["passed"].get<bool>() ? "PASS " : "FAIL ") << e["entry"].get<std::string>() << ": "
         << e["summary"].get<std::string>() << "\n";
      for (const json& m : e["mismatches"]) {
        os << "  mismatch at " << m["pointer"].get<std::string>() << ": expected " << m["expected"].dump() << ", got "
           << m["actual"].dump() << "\n";
      }
      for (const json& r : e["report"]["results"]) render_result(os, r, "  ");
    }
    os << "corpus: " << report["passed_entries"].get<std::size_t>() << "/" << report["corpus"].size()
       << " entries passed\n";
    return os.str();
  }
  for (const json& r : report.value("results", json::array())) render_result(os, r, "");
  return os.str();
}

int report_exit_status(const json& report) {
  int status = 0;
  for (const json& r : report.value("results", json::array())) {
    if (r.value("status", "") == "error") status = std::max(status, r["error"]["exit_status"].get<int>());
  }
  return status;
}

VerdictDigest digest_verdicts(const json& report) {
  VerdictDigest d;
  collect(report, "", d);
  return d;
}

ReplaySummary replay_report_witnesses(const Scene& scene, const json& report) {
  ReplaySummary summary;
  const json& results = report.at("results");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const json& r = results[i];
    if (r.value("status", "") != "ok") continue;
    const std::string p = "/results/" + std::to_string(i);
    std::optional<SuborbifoldCandidate> cand;
    if (r["command"] == "classify") {
      cand = candidate_of(scene, r["candidate"].get<std::string>());
    } else if (r["command"] == "graph") {
      cand = graph_suborbifold(map_of(scene, r["map"].get<std::string>())).candidate;
    } else {
      continue;
    }
    const FiniteMatrixGroup& g = *cand->chart().group;
    if (r.contains("saturation_witness") && !r["saturation_witness"].is_null()) {
      const json& w = r["saturation_witness"];
      const std::string wp = p + "/saturation_witness";
      const SaturationWitness sw{element_from_json(g, w, wp), vector_from_json(w.at("point"), wp + "/point"),
                                 vector_from_json(w.at("image"), wp + "/image")};
      ++summary.replayed;
      if (!replay_saturation_witness(*cand, sw)) summary.failures.push_back(wp);
    }
    if (r.contains("fullness_witness") && !r["fullness_witness"].is_null()) {
      const json& w = r["fullness_witness"];
      const std::string wp = p + "/fullness_witness";
      const FullnessWitness fw{element_from_json(g, w, wp), vector_from_json(w.at("point"), wp + "/point")};
      ++summary.replayed;
      if (!replay_fullness_witness(*cand, fw)) summary.failures.push_back(wp);
    }
  }
  return summary;
}

}  // namespace suborb
