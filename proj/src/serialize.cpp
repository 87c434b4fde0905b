#include "mog/serialize.hpp"

#include <unordered_map>

#include "mog/error.hpp"

namespace mog {

namespace {

template <typename T>
T field(const Json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorKind::parse, std::string(what) + " is missing \"" + key + "\"");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorKind::parse, std::string(what) + " has an invalid \"" + key + "\"");
  }
}

Json labels_of(const NodeSet& s, const WeightedGraph& g) {
  Json out = Json::array();
  for (NodeIndex v : s) out.push_back(g.label(v));
  return out;
}

NodeSet intern(const Json& members, std::vector<std::string>& labels,
               std::unordered_map<std::string, NodeIndex>& index) {
  std::vector<NodeIndex> out;
  for (const auto& m : members) {
    const std::string label = m.is_string() ? m.get<std::string>() : m.dump();
    auto [it, inserted] = index.try_emplace(label, static_cast<NodeIndex>(labels.size()));
    if (inserted) labels.push_back(label);
    out.push_back(it->second);
  }
  return NodeSet(std::move(out));
}

}  // namespace

Json cover_to_json(const Cover& cover) {
  Json intervals = Json::array();
  for (const auto& iv : cover.intervals()) {
    intervals.push_back({{"id", iv.id}, {"lo", iv.lo}, {"hi", iv.hi}});
  }
  Json out = {{"provenance", cover.provenance() == CoverProvenance::uniform ? "uniform" : "manual"},
              {"intervals", std::move(intervals)}};
  if (cover.resolution()) out["n"] = *cover.resolution();
  if (cover.overlap()) out["epsilon"] = *cover.overlap();
  return out;
}

Cover cover_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::parse, "cover must be a JSON object");
  const auto provenance = doc.value("provenance", std::string("manual"));
  if (provenance != "uniform" && provenance != "manual") {
    throw Error(ErrorKind::parse, "cover provenance must be \"uniform\" or \"manual\"");
  }
  if (!doc.contains("intervals")) {
    // Shorthand: {"n":..,"epsilon":..} builds the uniform cover.
    if (doc.contains("n")) {
      return uniform_cover(field<int>(doc, "n", "cover"), doc.value("epsilon", 0.0));
    }
    throw Error(ErrorKind::parse, "cover is missing \"intervals\"");
  }
  if (!doc["intervals"].is_array()) throw Error(ErrorKind::parse, "\"intervals\" must be an array");
  std::vector<Interval> intervals;
  for (const auto& iv : doc["intervals"]) {
    intervals.push_back({field<int>(iv, "id", "interval"), field<double>(iv, "lo", "interval"),
                         field<double>(iv, "hi", "interval")});
  }
  if (provenance == "uniform") {
    std::optional<int> n;
    std::optional<double> eps;
    if (doc.contains("n")) n = field<int>(doc, "n", "cover");
    if (doc.contains("epsilon")) eps = field<double>(doc, "epsilon", "cover");
    return Cover(std::move(intervals), CoverProvenance::uniform, n, eps);
  }
  return Cover(std::move(intervals), CoverProvenance::manual);
}

Json coverage_to_json(const Coverage& c) {
  Json gaps = Json::array();
  for (const auto& [lo, hi] : c.gaps) gaps.push_back({lo, hi});
  return {{"total", c.total()}, {"gaps", std::move(gaps)}};
}

Json lens_values_to_json(const LensField& f, const WeightedGraph& g) {
  Json out = Json::array();
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out.push_back({{"node", g.label(v)}, {"raw", f.raw[v]}, {"normalized", f.normalized[v]}});
  }
  return out;
}

Json histogram_to_json(const LensHistogram& h) {
  return {{"bin_count", h.bin_count()}, {"edges", h.edges}, {"counts", h.counts}};
}

Json lens_params_to_json(LensKind kind, const LensParams& p) {
  switch (kind) {
    case LensKind::density: return {{"delta", p.delta}};
    case LensKind::laplacian_l2:
    case LensKind::laplacian_l3: return {{"tol", p.eigen_tol}};
    case LensKind::pagerank_log:
      return {{"damping", p.damping}, {"tol", p.pagerank_tol}, {"max_iter", p.max_iter}};
    default: return Json::object();
  }
}

LensParams lens_params_from_json(const Json& doc, LensParams p) {
  if (doc.is_null()) return p;
  if (!doc.is_object()) throw Error(ErrorKind::parse, "lens parameters must be an object");
  try {
    if (doc.contains("delta")) p.delta = doc["delta"].get<double>();
    if (doc.contains("damping")) p.damping = doc["damping"].get<double>();
    if (doc.contains("max_iter")) p.max_iter = doc["max_iter"].get<std::size_t>();
    if (doc.contains("tol")) {
      // One "tol" key serves both solvers.
      p.pagerank_tol = doc["tol"].get<double>();
      p.eigen_tol = doc["tol"].get<double>();
    }
    if (doc.contains("pagerank_tol")) p.pagerank_tol = doc["pagerank_tol"].get<double>();
    if (doc.contains("eigen_tol")) p.eigen_tol = doc["eigen_tol"].get<double>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string("invalid lens parameter: ") + e.what());
  }
  return p;
}

Json lens_to_json(const LensField& f, const WeightedGraph& g, std::size_t bins) {
  Json out = {{"kind", to_string(f.kind)},
              {"params", lens_params_to_json(f.kind, f.params)},
              {"values", lens_values_to_json(f, g)},
              {"histogram", histogram_to_json(histogram(f, bins))},
              {"constant", f.constant}};
  if (f.eigenvalue) {
    out["eigenvalue"] = *f.eigenvalue;
    out["residual"] = f.residual;
  }
  if (!f.scores.empty()) {
    out["scores"] = f.scores;
    out["iterations"] = f.iterations;
    out["residual"] = f.residual;
  }
  return out;
}

Json summary_to_json(const MogSummary& s, const WeightedGraph& g) {
  Json nodes = Json::array();
  for (const auto& n : s.nodes) {
    nodes.push_back({{"id", n.id},
                     {"interval", n.interval_id},
                     {"size", n.size()},
                     {"mean_lens", n.mean_lens},
                     {"members", labels_of(n.members, g)}});
  }
  Json edges = Json::array();
  for (const auto& e : s.edges) {
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"weight", e.weight()},
                     {"intersection", labels_of(e.intersection, g)}});
  }
  Json meta = {{"lens", to_string(s.meta.lens)},
               {"lens_params", lens_params_to_json(s.meta.lens, s.meta.lens_params)},
               {"cover", cover_to_json(s.meta.cover)},
               {"graph_nodes", s.meta.graph_nodes},
               {"graph_edges", s.meta.graph_edges},
               {"restricted_to_largest_component", s.meta.restricted_to_largest_component},
               {"uncovered", labels_of(s.meta.uncovered, g)}};
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"filter", {{"min_size", s.filter.min_size}, {"largest_only", s.filter.largest_only}}},
          {"meta", std::move(meta)}};
}

MogSummary summary_from_json(const Json& doc, std::vector<std::string>& labels) {
  if (!doc.is_object()) throw Error(ErrorKind::parse, "summary must be a JSON object");
  std::unordered_map<std::string, NodeIndex> index;
  for (NodeIndex i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  MogSummary s;
  for (const auto& n : doc.value("nodes", Json::array())) {
    MogNode node;
    node.id = field<int>(n, "id", "summary node");
    node.interval_id = n.value("interval", 0);
    node.mean_lens = n.value("mean_lens", 0.0);
    node.members = intern(n.value("members", Json::array()), labels, index);
    s.nodes.push_back(std::move(node));
  }
  for (const auto& e : doc.value("edges", Json::array())) {
    MogEdge edge;
    edge.source = field<int>(e, "source", "summary edge");
    edge.target = field<int>(e, "target", "summary edge");
    edge.intersection = intern(e.value("intersection", Json::array()), labels, index);
    s.edges.push_back(std::move(edge));
  }
  if (doc.contains("filter")) {
    s.filter.min_size = doc["filter"].value("min_size", std::size_t{0});
    s.filter.largest_only = doc["filter"].value("largest_only", false);
  }
  if (doc.contains("meta")) {
    const auto& meta = doc["meta"];
    if (meta.contains("lens")) s.meta.lens = parse_lens_kind(meta["lens"].get<std::string>());
    if (meta.contains("cover")) s.meta.cover = cover_from_json(meta["cover"]);
    s.meta.graph_nodes = meta.value("graph_nodes", std::size_t{0});
    s.meta.graph_edges = meta.value("graph_edges", std::size_t{0});
    s.meta.restricted_to_largest_component =
        meta.value("restricted_to_largest_component", false);
    if (meta.contains("uncovered")) s.meta.uncovered = intern(meta["uncovered"], labels, index);
  }
  return s;
}

Json positions_to_json(std::span<const Point2> positions) {
  Json out = Json::array();
  for (const auto& p : positions) out.push_back({p.x, p.y});
  return out;
}

std::vector<Point2> positions_from_json(const Json& doc) {
  std::vector<Point2> out;
  for (const auto& p : doc) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return out;
}

}  // namespace mog
