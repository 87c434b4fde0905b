#pragma once

#include <string>
#include <vector>

#include "mog/cover.hpp"
#include "mog/graph.hpp"
#include "mog/lens.hpp"

namespace mog {

// One row in the layout of the published timing table: dataset, |V|, |E|,
// n, eps, lens seconds, MOG seconds. Times are medians over `repeats` runs.
struct BenchReport {
  std::string dataset;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int n = 5;
  double epsilon = 0.15;
  LensKind lens = LensKind::pagerank_log;
  std::size_t repeats = 1;
  double lens_seconds = 0.0;  // median
  double mog_seconds = 0.0;   // median
  std::vector<double> lens_samples;
  std::vector<double> mog_samples;
  std::size_t summary_nodes = 0;
  std::size_t summary_edges = 0;
  int threads = 1;
};

struct BenchOptions {
  LensKind lens = LensKind::pagerank_log;
  LensParams params;
  int n = 5;
  double epsilon = 0.15;
  std::size_t repeats = 5;
};

// Times the lens and, separately, pullback + nerve on the lens it produced.
// Connectivity-requiring lenses run on the largest component, as in
// compute_mog; |V| and |E| describe the graph that was timed.
BenchReport run_bench(const WeightedGraph& g, std::string dataset, const BenchOptions& options);

double median(std::vector<double> xs);

std::string bench_table_header();
std::string bench_table_row(const BenchReport& r);
std::string bench_csv_header();
std::string bench_csv_row(const BenchReport& r);
std::string bench_json(const BenchReport& r);

}  // namespace mog
