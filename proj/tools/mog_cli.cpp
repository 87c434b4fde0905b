#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include <json.hpp>

#include "mog/bench.hpp"
#include "mog/cover.hpp"
#include "mog/datasets.hpp"
#include "mog/error.hpp"
#include "mog/generators.hpp"
#include "mog/io.hpp"
#include "mog/kernels.hpp"
#include "mog/layout.hpp"
#include "mog/lens.hpp"
#include "mog/mapper.hpp"
#include "mog/render.hpp"
#include "mog/serialize.hpp"
#include "mog/service.hpp"

namespace fs = std::filesystem;
using namespace mog;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string config;
};

// Defaults that the config file may override for non-service commands.
struct Defaults {
  std::size_t layout_iterations = 200;
  double theta = 0.5;
  std::size_t histogram_bins = 50;
};

Defaults load_defaults(const std::string& path) {
  Defaults d;
  if (path.empty()) return d;
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
  try {
    if (doc.contains("layout")) {
      d.layout_iterations = doc["layout"].value("iterations", d.layout_iterations);
      d.theta = doc["layout"].value("theta", d.theta);
    }
    d.histogram_bins = doc.value("histogram_bins", d.histogram_bins);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
  return d;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

WeightedGraph load(const std::string& path, const std::string& format) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return parse_graph(text, format.empty() ? GraphFormat::edge_list : parse_graph_format(format));
  }
  return load_graph(path, format.empty() ? guess_graph_format(path) : parse_graph_format(format));
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
}

struct LensOptions {
  std::string kind = "l2";
  double delta = 2.0;
  double damping = 0.85;
  std::optional<double> tol;
  std::size_t max_iter = 1000;

  void add(CLI::App* app, bool required_kind) {
    auto* k = app->add_option("--kind,--lens", kind,
                              "Lens: agd, density, l2, l3, pagerank, index");
    if (required_kind) k->required();
    else k->capture_default_str();
    app->add_option("--delta", delta, "Density bandwidth")->capture_default_str();
    app->add_option("--damping", damping, "PageRank damping factor")->capture_default_str();
    app->add_option("--tol", tol,
                    "Solver tolerance (default 1e-10 L1 for PageRank, 1e-8 residual for l2/l3)");
    app->add_option("--max-iter", max_iter, "PageRank sweep cap")->capture_default_str();
  }

  LensParams params() const {
    LensParams p;
    p.delta = delta;
    p.damping = damping;
    if (tol) p.pagerank_tol = p.eigen_tol = *tol;
    p.max_iter = max_iter;
    return p;
  }
};

struct CoverOptions {
  int n = 5;
  double eps = 0.1;
  std::string file;

  void add(CLI::App* app, double default_eps) {
    eps = default_eps;
    app->add_option("--n", n, "Cover resolution (number of intervals)")->capture_default_str();
    app->add_option("--eps,--epsilon", eps, "Cover overlap, absolute on [0,1]")->capture_default_str();
    app->add_option("--cover", file, "Cover JSON file (overrides --n/--eps)");
  }

  Cover build() const { return file.empty() ? uniform_cover(n, eps) : cover_from_json(load_json(file)); }
};

std::vector<Point2> summary_layout(const MogSummary& s, std::uint64_t seed, std::size_t iterations,
                                   double theta) {
  LayoutParams p;
  p.seed = seed;
  p.iterations = iterations;
  p.theta = theta;
  return layout_fr(summary_graph(s), p).positions;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mapper on graphs: lenses, covers, summaries, layouts and a service."};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for generators and layouts")->capture_default_str();
  app.add_option("--threads", globals.threads, "OpenMP threads for lens kernels (0 = runtime default)")
      ->capture_default_str();
  app.add_option("--config", globals.config, "JSON config file (service settings, layout defaults)");
  app.fallthrough();

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic graph");
  std::string gen_kind, gen_params, gen_out, gen_format;
  gen->add_option("--kind", gen_kind,
                  "path, cycle, grid, balanced_tree, connected_caveman, torus_mesh, lollipop, "
                  "barbell, random_geometric, complete_bipartite")
      ->required();
  gen->add_option("--params", gen_params, "Comma-separated key=value parameters");
  gen->add_option("--format", gen_format, "graph-json or edge-list (default from --out extension)");
  gen->add_option("--out,-o", gen_out, "Output file (default stdout)");

  // lens
  auto* lens = app.add_subcommand("lens", "Compute a lens and print {node, raw, normalized}");
  std::string lens_graph, lens_format, lens_out;
  LensOptions lens_opts;
  bool lens_restrict = false;
  std::size_t lens_hist = 0;
  lens->add_option("--graph,-g", lens_graph, "Input graph (edge list or .json)")->required();
  lens->add_option("--format", lens_format, "Input format override");
  lens_opts.add(lens, true);
  lens->add_flag("--largest-component", lens_restrict, "Compute on the largest component");
  lens->add_option("--histogram", lens_hist,
                   "Emit the full lens object with a histogram of this many bins");
  lens->add_option("--out,-o", lens_out, "Output file (default stdout)");

  // cover
  auto* cov = app.add_subcommand("cover", "Build or edit an interval cover");
  CoverOptions cov_opts;
  std::vector<std::string> cov_edits;
  std::string cov_out;
  cov_opts.add(cov, 0.1);
  cov->add_option("--modify", cov_edits, "Replace an interval: id:lo:hi (repeatable)");
  cov->add_option("--out,-o", cov_out, "Output file (default stdout)");

  // mog
  auto* mogc = app.add_subcommand("mog", "Compute a MOG summary");
  std::string mog_graph, mog_format, mog_out;
  LensOptions mog_lens;
  CoverOptions mog_cover;
  std::size_t mog_min = 0;
  bool mog_largest = false;
  mogc->add_option("--graph,-g", mog_graph, "Input graph")->required();
  mogc->add_option("--format", mog_format, "Input format override");
  mog_lens.add(mogc, false);
  mog_cover.add(mogc, 0.1);
  mogc->add_option("--min-size", mog_min, "Drop summary nodes with fewer members")->capture_default_str();
  mogc->add_flag("--largest-only", mog_largest, "Keep only the largest summary component");
  mogc->add_option("--out,-o", mog_out, "Output file (default stdout)");

  // layout
  auto* lay = app.add_subcommand("layout", "Force-directed layout of a graph or summary");
  std::string lay_graph, lay_summary, lay_format, lay_out;
  std::optional<std::size_t> lay_iter;
  std::optional<double> lay_theta;
  bool lay_exact = false;
  auto* lay_g = lay->add_option("--graph,-g", lay_graph, "Input graph");
  auto* lay_s = lay->add_option("--summary,-s", lay_summary, "MOG summary JSON");
  lay_g->excludes(lay_s);
  lay->add_option("--format", lay_format, "Input format override");
  lay->add_option("--iterations", lay_iter, "FR iterations (default 200)");
  lay->add_option("--theta", lay_theta, "Barnes-Hut opening criterion in (0,1] (default 0.5)");
  lay->add_flag("--exact", lay_exact, "Exact O(n^2) repulsion");
  lay->add_option("--out,-o", lay_out, "Output graph-json with x,y (default stdout)");

  // render
  auto* ren = app.add_subcommand("render", "Render a summary or graph to SVG");
  std::string ren_summary, ren_graph, ren_format, ren_lens, ren_out;
  auto* ren_s = ren->add_option("--summary,-s", ren_summary, "MOG summary JSON");
  auto* ren_g = ren->add_option("--graph,-g", ren_graph, "Graph (positions from x,y if present)");
  ren_s->excludes(ren_g);
  ren->add_option("--format", ren_format, "Graph format override");
  ren->add_option("--lens", ren_lens, "Colour graph nodes by this lens");
  ren->add_option("--out,-o", ren_out, "Output SVG (default stdout)")->required();

  // bench
  auto* ben = app.add_subcommand("bench", "Time a lens and the MOG construction");
  std::string ben_graph, ben_format, ben_gen, ben_params, ben_name, ben_out, ben_report = "table";
  LensOptions ben_lens;
  ben_lens.kind = "pagerank";
  CoverOptions ben_cover;
  std::size_t ben_repeats = 5;
  bool ben_lcc = false;
  auto* bg = ben->add_option("--graph,-g", ben_graph, "Input graph file");
  auto* bk = ben->add_option("--generate", ben_gen, "Generator kind instead of a file");
  bg->excludes(bk);
  ben->add_option("--params", ben_params, "Generator parameters");
  ben->add_option("--format", ben_format, "Input format override");
  ben->add_option("--name", ben_name, "Dataset name for the report");
  ben_lens.add(ben, false);
  ben_cover.add(ben, 0.15);
  ben->add_option("--repeats", ben_repeats, "Runs per measurement (median reported)")->capture_default_str();
  ben->add_flag("--largest-component", ben_lcc, "Time the largest component only");
  ben->add_option("--report", ben_report, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  ben->add_option("--out,-o", ben_out, "Output file (default stdout)");

  // serve
  auto* srv = app.add_subcommand("serve", "Run the HTTP service");
  std::optional<int> srv_port;
  std::optional<std::string> srv_host;
  srv->add_option("--port", srv_port, "Port (overrides config and MOG_PORT)");
  srv->add_option("--host", srv_host, "Bind address (overrides config and MOG_HOST)");

  // fetch-datasets
  auto* fet = app.add_subcommand("fetch-datasets", "Download public datasets and convert to edge lists");
  std::string fet_dest = "data", fet_manifest, fet_url;
  std::vector<std::string> fet_names;
  bool fet_list = false, fet_force = false;
  fet->add_option("--dest", fet_dest, "Output directory")->capture_default_str();
  fet->add_option("--name", fet_names, "Dataset(s) to fetch (default: all)");
  fet->add_option("--manifest", fet_manifest, "Checksum manifest (default <dest>/checksums.json)");
  fet->add_option("--url", fet_url, "Override the download URL (single --name only)");
  fet->add_flag("--list", fet_list, "List known datasets and exit");
  fet->add_flag("--force", fet_force, "Download even if the converted file exists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    kernels::set_thread_count(globals.threads);
    const Defaults defaults = load_defaults(globals.config);

    if (*gen) {
      GeneratorSpec spec{parse_generator_kind(gen_kind), parse_generator_params(gen_params),
                         globals.seed};
      const auto g = generate(spec);
      GraphFormat fmt = GraphFormat::graph_json;
      if (!gen_format.empty()) fmt = parse_graph_format(gen_format);
      else if (!gen_out.empty() && gen_out != "-") fmt = guess_graph_format(gen_out);
      emit(gen_out, serialize_graph(g, fmt));
    } else if (*lens) {
      WeightedGraph g = load(lens_graph, lens_format);
      if (lens_restrict) g = induced_subgraph(g, largest_component(g));
      const auto field = compute_lens(g, parse_lens_kind(lens_opts.kind), lens_opts.params());
      const Json out = lens_hist ? lens_to_json(field, g, lens_hist) : lens_values_to_json(field, g);
      emit(lens_out, out.dump(2) + "\n");
    } else if (*cov) {
      Cover c = cov_opts.build();
      Coverage cv = coverage(c);
      for (const auto& edit : cov_edits) {
        int id = 0;
        double lo = 0, hi = 0;
        char tail = 0;
        if (std::sscanf(edit.c_str(), "%d:%lf:%lf%c", &id, &lo, &hi, &tail) != 3) {
          throw Error(ErrorKind::parameter, "--modify expects id:lo:hi, got '" + edit + "'");
        }
        auto e = modify_interval(c, id, lo, hi);
        c = std::move(e.cover);
        cv = std::move(e.coverage);
      }
      for (const auto& [lo, hi] : cv.gaps) {
        std::cerr << "warning: cover leaves (" << lo << ", " << hi << ") uncovered\n";
      }
      emit(cov_out, cover_to_json(c).dump(2) + "\n");
    } else if (*mogc) {
      const auto g = load(mog_graph, mog_format);
      MogSpec spec;
      spec.lens = parse_lens_kind(mog_lens.kind);
      spec.lens_params = mog_lens.params();
      spec.cover = mog_cover.build();
      spec.filter = {mog_min, mog_largest};
      const auto r = compute_mog(g, spec);
      if (!r.summary.meta.uncovered.empty()) {
        std::cerr << "warning: " << r.summary.meta.uncovered.size()
                  << " node(s) fall in cover gaps and are listed under meta.uncovered\n";
      }
      emit(mog_out, summary_to_json(r.summary, r.graph(g)).dump(2) + "\n");
    } else if (*lay) {
      if (lay_graph.empty() == lay_summary.empty()) {
        throw CLI::RequiredError("exactly one of --graph or --summary");
      }
      LayoutParams p;
      p.seed = globals.seed;
      p.iterations = lay_iter.value_or(defaults.layout_iterations);
      p.theta = lay_theta.value_or(defaults.theta);
      p.barnes_hut = !lay_exact;
      WeightedGraph g;
      if (!lay_graph.empty()) {
        g = load(lay_graph, lay_format);
      } else {
        std::vector<std::string> labels;
        g = summary_graph(summary_from_json(load_json(lay_summary), labels));
      }
      const auto r = layout_fr(g, p);
      emit(lay_out, serialize_graph(g, GraphFormat::graph_json, &r.positions));
    } else if (*ren) {
      std::string svg;
      if (!ren_summary.empty()) {
        std::vector<std::string> labels;
        const auto s = summary_from_json(load_json(ren_summary), labels);
        svg = render_summary_svg(
            s, summary_layout(s, globals.seed, defaults.layout_iterations, defaults.theta));
      } else if (!ren_graph.empty()) {
        const auto g = load(ren_graph, ren_format);
        std::vector<Point2> pos;
        const bool json_input = ren_graph != "-" && (ren_format.empty()
                                                         ? guess_graph_format(ren_graph)
                                                         : parse_graph_format(ren_format)) ==
                                                        GraphFormat::graph_json;
        if (auto embedded = json_input ? parse_graph_positions(read_file(ren_graph)) : std::nullopt) {
          pos = *embedded;
        } else {
          LayoutParams p;
          p.seed = globals.seed;
          p.iterations = defaults.layout_iterations;
          p.theta = defaults.theta;
          pos = layout_fr(g, p).positions;
        }
        std::vector<double> values;
        LensKind kind = LensKind::index;
        if (!ren_lens.empty()) {
          kind = parse_lens_kind(ren_lens);
          values = compute_lens(g, kind).normalized;
        }
        svg = render_graph_svg(g, pos, values, kind);
      } else {
        throw CLI::RequiredError("one of --summary or --graph");
      }
      emit(ren_out, svg);
    } else if (*ben) {
      WeightedGraph g;
      std::string name = ben_name;
      if (!ben_graph.empty()) {
        g = load(ben_graph, ben_format);
        if (name.empty()) name = fs::path(ben_graph).stem().string();
      } else if (!ben_gen.empty()) {
        g = generate({parse_generator_kind(ben_gen), parse_generator_params(ben_params), globals.seed});
        if (name.empty()) name = ben_gen;
      } else {
        throw CLI::RequiredError("one of --graph or --generate");
      }
      if (ben_lcc) g = induced_subgraph(g, largest_component(g));
      BenchOptions o;
      o.lens = parse_lens_kind(ben_lens.kind);
      o.params = ben_lens.params();
      o.n = ben_cover.n;
      o.epsilon = ben_cover.eps;
      o.repeats = ben_repeats;
      const auto r = run_bench(g, name, o);
      if (ben_report == "json") emit(ben_out, bench_json(r));
      else if (ben_report == "csv") emit(ben_out, bench_csv_header() + bench_csv_row(r));
      else emit(ben_out, bench_table_header() + bench_table_row(r));
    } else if (*srv) {
      ServiceConfig cfg = load_service_config(
          globals.config.empty() ? std::nullopt : std::optional<fs::path>(globals.config));
      if (srv_port) cfg.port = *srv_port;
      if (srv_host) cfg.host = *srv_host;
      Service service(cfg);
      std::cerr << "listening on " << cfg.host << ":" << cfg.port << "\n";
      if (!service.listen()) {
        std::cerr << "error: cannot listen on " << cfg.host << ":" << cfg.port << "\n";
        return 1;
      }
    } else if (*fet) {
      if (fet_list) {
        for (const auto& d : datasets::registry()) {
          std::cout << d.name << "\t" << d.published_nodes << "\t" << d.published_edges << "\t"
                    << d.url << "\n";
        }
        return 0;
      }
      std::vector<datasets::DatasetInfo> todo;
      if (fet_names.empty()) todo = datasets::registry();
      for (const auto& n : fet_names) todo.push_back(datasets::find(n));
      if (!fet_url.empty()) {
        if (todo.size() != 1) throw CLI::ValidationError("--url", "needs exactly one --name");
        todo[0].url = fet_url;
      }
      const fs::path manifest = fet_manifest.empty() ? fs::path(fet_dest) / "checksums.json"
                                                     : fs::path(fet_manifest);
      for (const auto& d : todo) {
        const auto r = datasets::fetch(d, fet_dest, manifest, fet_force);
        std::cout << r.name << "\t" << r.nodes << " nodes\t" << r.edges << " edges\t" << r.path.string()
                  << "\tsha256 " << r.sha256 << (r.recorded ? " (recorded)" : " (verified)") << "\n";
      }
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::parameter || e.kind() == ErrorKind::spec ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
