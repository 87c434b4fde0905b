#include "mog/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include <json.hpp>

#include "mog/error.hpp"
#include "mog/kernels.hpp"
#include "mog/mapper.hpp"

namespace mog {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

BenchReport run_bench(const WeightedGraph& input, std::string dataset, const BenchOptions& o) {
  if (o.repeats == 0) throw Error(ErrorKind::parameter, "repeats must be at least 1");
  WeightedGraph restricted;
  const WeightedGraph* g = &input;
  if (requires_connectivity(o.lens) && input.node_count() > 1 && !is_connected(input)) {
    restricted = induced_subgraph(input, largest_component(input));
    g = &restricted;
  }
  const Cover cover = uniform_cover(o.n, o.epsilon);
  BenchReport r;
  r.dataset = std::move(dataset);
  r.nodes = g->node_count();
  r.edges = g->edge_count();
  r.n = o.n;
  r.epsilon = o.epsilon;
  r.lens = o.lens;
  r.repeats = o.repeats;
  r.threads = kernels::thread_count();
  using clock = std::chrono::steady_clock;
  for (std::size_t i = 0; i < o.repeats; ++i) {
    const auto t0 = clock::now();
    const LensField field = compute_lens(*g, o.lens, o.params);
    const auto t1 = clock::now();
    const MogSummary s = compute_mog(*g, field, cover);
    const auto t2 = clock::now();
    r.lens_samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    r.mog_samples.push_back(std::chrono::duration<double>(t2 - t1).count());
    r.summary_nodes = s.nodes.size();
    r.summary_edges = s.edges.size();
  }
  r.lens_seconds = median(r.lens_samples);
  r.mog_seconds = median(r.mog_samples);
  return r;
}

namespace {

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace

std::string bench_table_header() {
  return format("%-24s %10s %10s %3s %6s %12s %12s\n", "Graph", "|V|", "|E|", "n", "eps",
                "lens (s)", "MOG (s)");
}

std::string bench_table_row(const BenchReport& r) {
  return format("%-24s %10zu %10zu %3d %6.3g %12.4f %12.4f\n", r.dataset.c_str(), r.nodes, r.edges,
                r.n, r.epsilon, r.lens_seconds, r.mog_seconds);
}

std::string bench_csv_header() {
  return "graph,nodes,edges,n,epsilon,lens,lens_seconds,mog_seconds,repeats,statistic,threads\n";
}

std::string bench_csv_row(const BenchReport& r) {
  return format("%s,%zu,%zu,%d,%.17g,%s,%.6f,%.6f,%zu,median,%d\n", r.dataset.c_str(), r.nodes,
                r.edges, r.n, r.epsilon, to_string(r.lens), r.lens_seconds, r.mog_seconds,
                r.repeats, r.threads);
}

std::string bench_json(const BenchReport& r) {
  nlohmann::json j{{"graph", r.dataset},
                   {"nodes", r.nodes},
                   {"edges", r.edges},
                   {"n", r.n},
                   {"epsilon", r.epsilon},
                   {"lens", to_string(r.lens)},
                   {"lens_seconds", r.lens_seconds},
                   {"mog_seconds", r.mog_seconds},
                   {"lens_samples", r.lens_samples},
                   {"mog_samples", r.mog_samples},
                   {"summary_nodes", r.summary_nodes},
                   {"summary_edges", r.summary_edges},
                   {"meta", {{"statistic", "median"},
                             {"repeats", r.repeats},
                             {"threads", r.threads},
                             {"note", "medians over repeats; published timings are means"}}}};
  return j.dump(2) + "\n";
}

}  // namespace mog
