#include "mog/service.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <list>
#include <sstream>
#include <unordered_map>

#include <httplib.h>

#include "mog/cover.hpp"
#include "mog/error.hpp"
#include "mog/layout.hpp"
#include "mog/mapper.hpp"
#include "mog/serialize.hpp"

namespace mog {

namespace {

std::string dump(const Json& j) { return j.dump() + "\n"; }

Response json_response(int status, const Json& body) { return {status, dump(body)}; }

Response error_response(int status, const std::string& kind, const std::string& message) {
  return json_response(status, {{"error", {{"kind", kind}, {"message", message}}}});
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::validation:
    case ErrorKind::convergence:
      return 422;
    case ErrorKind::lookup:
      return 404;
    case ErrorKind::disconnected:
      return 409;
    case ErrorKind::parameter:
    case ErrorKind::spec:
      return 400;
  }
  return 500;
}

Response error_response(const Error& e, const std::string& hint = {}) {
  Json err{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (e.line()) err["line"] = *e.line();
  if (!e.stage().empty()) err["stage"] = e.stage();
  if (e.value()) err["value"] = *e.value();
  if (!hint.empty()) err["hint"] = hint;
  return json_response(status_for(e.kind()), {{"error", err}});
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(path);
  while (std::getline(in, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

double query_number(const std::map<std::string, std::string>& q, const std::string& key,
                    double fallback) {
  auto it = q.find(key);
  if (it == q.end()) return fallback;
  const std::string& s = it->second;
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw Error(ErrorKind::parameter, "query parameter '" + key + "' is not a number: " + s);
  }
  return v;
}

std::size_t query_count(const std::map<std::string, std::string>& q, const std::string& key,
                        std::size_t fallback) {
  const double v = query_number(q, key, static_cast<double>(fallback));
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw Error(ErrorKind::parameter, "query parameter '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

// Small LRU of shared futures. A computation is inserted before it runs, so
// concurrent requests for the same key wait on one result.
template <class T>
class ComputeCache {
 public:
  using Value = std::shared_ptr<const T>;

  explicit ComputeCache(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

  // Returns the cached value, computing it with `fn` on a miss. `computed`
  // is set when this call ran `fn`.
  Value get(const std::string& key, const std::function<T()>& fn, bool* computed = nullptr) {
    std::shared_future<Value> fut;
    std::promise<Value> promise;
    bool owner = false;
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) {
        order_.splice(order_.begin(), order_, it->second.second);
        fut = it->second.first;
      } else {
        owner = true;
        fut = promise.get_future().share();
        order_.push_front(key);
        map_.emplace(key, std::pair{fut, order_.begin()});
        while (map_.size() > capacity_) {
          map_.erase(order_.back());
          order_.pop_back();
        }
      }
    }
    if (owner) {
      if (computed) *computed = true;
      try {
        promise.set_value(std::make_shared<const T>(fn()));
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end()) {
          order_.erase(it->second.second);
          map_.erase(it);
        }
      }
    }
    return fut.get();
  }

  bool ready(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    return it != map_.end() &&
           it->second.first.wait_for(std::chrono::seconds(0)) == std::future_status::ready;
  }

 private:
  using Order = std::list<std::string>;
  std::size_t capacity_;
  mutable std::mutex mu_;
  Order order_;
  std::unordered_map<std::string, std::pair<std::shared_future<Value>, Order::iterator>> map_;
};

struct StoredGraph {
  std::string id;
  WeightedGraph graph;
  std::size_t components = 0;

  // Lazily built induced largest component, shared by all lenses that need it.
  const WeightedGraph& largest() const {
    std::call_once(largest_once, [&] {
      largest_graph = components <= 1 ? graph : induced_subgraph(graph, largest_component(graph));
    });
    return largest_graph;
  }

 private:
  mutable std::once_flag largest_once;
  mutable WeightedGraph largest_graph;
};

const char* const kDisconnectedHint =
    "restrict to the largest component: add ?restrict=largest, or use POST "
    "/graphs/{id}/mog, which restricts automatically";

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string graph_id(const WeightedGraph& g) {
  return sha256_hex(serialize_graph(g, GraphFormat::graph_json));
}

ServiceConfig load_service_config(const std::optional<std::filesystem::path>& file,
                                  const std::function<const char*(const char*)>& env) {
  ServiceConfig c;
  if (file) {
    Json doc;
    try {
      doc = Json::parse(read_file(*file));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::parse, file->string() + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::parse, file->string() + ": expected an object");
    try {
      c.host = doc.value("host", c.host);
      c.port = doc.value("port", c.port);
      c.max_upload_bytes = doc.value("max_upload_bytes", c.max_upload_bytes);
      c.cache_capacity = doc.value("cache_capacity", c.cache_capacity);
      c.job_threshold = doc.value("job_threshold", c.job_threshold);
      c.histogram_bins = doc.value("histogram_bins", c.histogram_bins);
      c.http_threads = doc.value("http_threads", c.http_threads);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse, file->string() + ": " + e.what());
    }
  }
  auto get = env ? env : [](const char* name) -> const char* { return std::getenv(name); };
  auto number = [&](const char* name, auto& field) {
    if (const char* v = get(name)) {
      std::uint64_t x = 0;
      const std::string_view s(v);
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw Error(ErrorKind::parameter, std::string(name) + " is not a non-negative integer: " + v);
      }
      field = static_cast<std::remove_reference_t<decltype(field)>>(x);
    }
  };
  if (const char* v = get("MOG_HOST")) c.host = v;
  number("MOG_PORT", c.port);
  number("MOG_MAX_UPLOAD_BYTES", c.max_upload_bytes);
  number("MOG_CACHE_CAPACITY", c.cache_capacity);
  number("MOG_JOB_THRESHOLD", c.job_threshold);
  number("MOG_HISTOGRAM_BINS", c.histogram_bins);
  number("MOG_HTTP_THREADS", c.http_threads);
  if (c.port < 0 || c.port > 65535) throw Error(ErrorKind::parameter, "port out of range");
  if (c.histogram_bins == 0) throw Error(ErrorKind::parameter, "histogram_bins must be positive");
  return c;
}

struct Service::Impl {
  explicit Impl(const ServiceConfig& c)
      : config(c), lenses(c.cache_capacity), layouts(c.cache_capacity) {}

  const ServiceConfig& config;
  ComputeCache<LensField> lenses;
  ComputeCache<std::vector<Point2>> layouts;
  std::atomic<std::size_t> lens_runs{0};

  std::mutex graphs_mu;
  std::unordered_map<std::string, std::shared_ptr<const StoredGraph>> graphs;

  std::mutex jobs_mu;
  std::unordered_map<std::string, std::shared_future<Response>> jobs;

  std::shared_ptr<const StoredGraph> find_graph(const std::string& id) {
    std::lock_guard lock(graphs_mu);
    auto it = graphs.find(id);
    if (it == graphs.end()) throw Error(ErrorKind::lookup, "unknown graph id: " + id);
    return it->second;
  }


  std::string lens_key(const StoredGraph& sg, bool restricted, LensKind kind,
                       const LensParams& params) const {
    return sg.id + (restricted ? "|largest|" : "|") + lens_cache_key(kind, params);
  }

  std::shared_ptr<const LensField> lens_field(const StoredGraph& sg, bool restricted,
                                              LensKind kind, const LensParams& params) {
    const WeightedGraph& g = restricted ? sg.largest() : sg.graph;
    return lenses.get(lens_key(sg, restricted, kind, params), [&] {
      ++lens_runs;
      return compute_lens(g, kind, params);
    });
  }

  // Long computations on big graphs run as jobs; the id is derived from the
  // request so resubmitting returns the same job.
  std::optional<Response> maybe_defer(const Request& req, std::size_t nodes, bool cached,
                                      const std::function<Response()>& run) {
    if (nodes <= config.job_threshold || cached) return std::nullopt;
    std::string fingerprint = req.method + " " + req.path + "?";
    for (const auto& [k, v] : req.query) fingerprint += k + "=" + v + "&";
    fingerprint += "\n" + req.body;
    const std::string id = sha256_hex(fingerprint).substr(0, 32);
    std::shared_future<Response> fut;
    {
      std::lock_guard lock(jobs_mu);
      auto it = jobs.find(id);
      if (it == jobs.end()) {
        fut = std::async(std::launch::async, run).share();
        jobs.emplace(id, fut);
      } else {
        fut = it->second;
      }
    }
    if (fut.wait_for(std::chrono::seconds(0)) == std::future_status::ready) return fut.get();
    return json_response(202, {{"job", id}, {"status", "pending"}, {"poll", "/jobs/" + id}});
  }

  Response get_job(const std::string& id) {
    std::shared_future<Response> fut;
    {
      std::lock_guard lock(jobs_mu);
      auto it = jobs.find(id);
      if (it == jobs.end()) return error_response(404, "lookup", "unknown job id: " + id);
      fut = it->second;
    }
    if (fut.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
      return json_response(202, {{"job", id}, {"status", "pending"}, {"poll", "/jobs/" + id}});
    }
    return fut.get();
  }

  Response upload(const Request& req) {
    if (req.body.size() > config.max_upload_bytes) {
      return error_response(413, "validation",
                            "graph exceeds the upload limit of " +
                                std::to_string(config.max_upload_bytes) + " bytes");
    }
    GraphFormat format;
    if (auto it = req.query.find("format"); it != req.query.end()) {
      format = parse_graph_format(it->second);
    } else {
      const auto first = req.body.find_first_not_of(" \t\r\n");
      format = first != std::string::npos && req.body[first] == '{' ? GraphFormat::graph_json
                                                                    : GraphFormat::edge_list;
    }
    auto stored = std::make_shared<StoredGraph>();
    stored->graph = parse_graph(req.body, format);
    stored->id = graph_id(stored->graph);
    stored->components = connected_components(stored->graph).size();
    {
      std::lock_guard lock(graphs_mu);
      auto [it, inserted] = graphs.emplace(stored->id, stored);
      stored = std::const_pointer_cast<StoredGraph>(it->second);
    }
    return json_response(200, {{"id", stored->id},
                               {"nodes", stored->graph.node_count()},
                               {"edges", stored->graph.edge_count()},
                               {"components", stored->components}});
  }

  Response get_graph(const std::string& id) {
    const auto sg = find_graph(id);
    Json doc = Json::parse(serialize_graph(sg->graph, GraphFormat::graph_json));
    doc["id"] = sg->id;
    doc["stats"] = {{"nodes", sg->graph.node_count()},
                    {"edges", sg->graph.edge_count()},
                    {"components", sg->components}};
    return json_response(200, doc);
  }

  Response get_layout(const Request& req, const std::string& id) {
    const auto sg = find_graph(id);
    LayoutParams p;
    p.seed = static_cast<std::uint64_t>(query_count(req.query, "seed", p.seed));
    p.iterations = query_count(req.query, "iterations", p.iterations);
    p.theta = query_number(req.query, "theta", p.theta);
    if (!(p.theta > 0.0 && p.theta <= 1.0)) throw Error(ErrorKind::parameter, "theta must be in (0, 1]");
    const std::string key = sg->id + "|layout|" + std::to_string(p.seed) + "|" +
                            std::to_string(p.iterations) + "|" + Json(p.theta).dump();
    auto run = [this, sg, p, key] {
      const auto pos = layouts.get(key, [&] { return layout_fr(sg->graph, p).positions; });
      Json doc = Json::parse(serialize_graph(sg->graph, GraphFormat::graph_json, pos.get()));
      doc["id"] = sg->id;
      doc["seed"] = p.seed;
      doc["iterations"] = p.iterations;
      return json_response(200, doc);
    };
    if (auto deferred = maybe_defer(req, sg->graph.node_count(), layouts.ready(key), guarded(run))) {
      return *deferred;
    }
    return run();
  }

  static LensParams lens_params_from_query(const std::map<std::string, std::string>& q) {
    LensParams p;
    p.delta = query_number(q, "delta", p.delta);
    p.damping = query_number(q, "damping", p.damping);
    if (q.count("tol")) p.pagerank_tol = p.eigen_tol = query_number(q, "tol", 0);
    p.max_iter = query_count(q, "max_iter", p.max_iter);
    return p;
  }

  Response get_lens(const Request& req, const std::string& id, const std::string& kind_name) {
    const auto sg = find_graph(id);
    const LensKind kind = parse_lens_kind(kind_name);
    const LensParams params = lens_params_from_query(req.query);
    const std::size_t bins = query_count(req.query, "bins", config.histogram_bins);
    if (bins == 0) throw Error(ErrorKind::parameter, "bins must be positive");
    bool restricted = false;
    if (auto it = req.query.find("restrict"); it != req.query.end()) {
      if (it->second != "largest" && it->second != "none") {
        throw Error(ErrorKind::parameter, "restrict must be 'largest' or 'none'");
      }
      restricted = it->second == "largest";
    }
    auto run = [this, sg, kind, params, bins, restricted] {
      try {
        const auto field = lens_field(*sg, restricted, kind, params);
        const WeightedGraph& g = restricted ? sg->largest() : sg->graph;
        Json doc = lens_to_json(*field, g, bins);
        doc["graph"] = sg->id;
        doc["restricted_to_largest_component"] = restricted;
        return json_response(200, doc);
      } catch (const Error& e) {
        return error_response(e.kind() == ErrorKind::disconnected ? e.with_stage("lens") : e,
                              e.kind() == ErrorKind::disconnected ? kDisconnectedHint : "");
      }
    };
    const std::size_t n = restricted ? sg->largest().node_count() : sg->graph.node_count();
    if (auto deferred = maybe_defer(req, n, lenses.ready(lens_key(*sg, restricted, kind, params)),
                                    guarded(run))) {
      return *deferred;
    }
    return run();
  }

  Response post_mog(const Request& req, const std::string& id) {
    const auto sg = find_graph(id);
    Json body;
    try {
      body = req.body.empty() ? Json::object() : Json::parse(req.body);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::parse, std::string("request body is not JSON: ") + e.what());
    }
    if (!body.is_object()) throw Error(ErrorKind::parse, "request body must be a JSON object");

    LensKind kind = LensKind::laplacian_l2;
    LensParams params;
    try {
      if (body.contains("lens")) {
        const Json& lens = body["lens"];
        if (lens.is_string()) {
          kind = parse_lens_kind(lens.get<std::string>());
        } else if (lens.is_object()) {
          kind = parse_lens_kind(lens.at("kind").get<std::string>());
          if (lens.contains("params")) params = lens_params_from_json(lens["params"]);
        } else {
          throw Error(ErrorKind::parse, "lens must be a string or an object");
        }
      }
      if (body.contains("lens_params")) params = lens_params_from_json(body["lens_params"], params);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse, std::string("bad lens: ") + e.what());
    }
    const Cover cover = body.contains("cover") ? cover_from_json(body["cover"]) : uniform_cover(5, 0.1);
    FilterState filter;
    LayoutParams lp;
    try {
      if (body.contains("filter")) {
        const Json& f = body["filter"];
        filter.min_size = f.value("min_size", std::size_t{0});
        filter.largest_only = f.value("largest_only", false);
      }
      if (body.contains("layout")) {
        lp.seed = body["layout"].value("seed", lp.seed);
        lp.iterations = body["layout"].value("iterations", lp.iterations);
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse, std::string("bad filter or layout: ") + e.what());
    }

    const bool restricted = requires_connectivity(kind) && sg->components > 1;
    auto run = [this, sg, kind, params, cover, filter, lp, restricted] {
      try {
        const WeightedGraph& g = restricted ? sg->largest() : sg->graph;
        std::shared_ptr<const LensField> field;
        try {
          field = lens_field(*sg, restricted, kind, params);
        } catch (const Error& e) {
          throw e.with_stage("lens");
        }
        MogSummary s = compute_mog(g, *field, cover, filter);
        s.meta.graph_nodes = sg->graph.node_count();
        s.meta.graph_edges = sg->graph.edge_count();
        s.meta.restricted_to_largest_component = restricted;
        const auto positions = layout_fr(summary_graph(s), lp).positions;
        Json doc{{"graph", sg->id},
                 {"summary", summary_to_json(s, g)},
                 {"coverage", coverage_to_json(coverage(cover))},
                 {"layout", {{"seed", lp.seed},
                             {"iterations", lp.iterations},
                             {"positions", positions_to_json(positions)}}}};
        return json_response(200, doc);
      } catch (const Error& e) {
        return error_response(e);
      }
    };
    const std::size_t n = restricted ? sg->largest().node_count() : sg->graph.node_count();
    if (auto deferred = maybe_defer(req, n, lenses.ready(lens_key(*sg, restricted, kind, params)),
                                    guarded(run))) {
      return *deferred;
    }
    return run();
  }

  // Jobs outlive the request; anything they throw becomes a response.
  static std::function<Response()> guarded(std::function<Response()> fn) {
    return [fn = std::move(fn)] {
      try {
        return fn();
      } catch (const Error& e) {
        return error_response(e);
      } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
      }
    };
  }

  Response dispatch(const Request& req) {
    const auto parts = split_path(req.path);
    const auto& m = req.method;
    const std::size_t n = parts.size();
    if (n == 1 && parts[0] == "healthz") {
      if (m != "GET") return error_response(405, "method", "use GET");
      return json_response(200, {{"status", "ok"}});
    }
    if (n >= 1 && parts[0] == "graphs") {
      if (n == 1) {
        if (m != "POST") return error_response(405, "method", "use POST");
        return upload(req);
      }
      if (n == 2) {
        if (m != "GET") return error_response(405, "method", "use GET");
        return get_graph(parts[1]);
      }
      if (n == 3 && parts[2] == "layout") {
        if (m != "GET") return error_response(405, "method", "use GET");
        return get_layout(req, parts[1]);
      }
      if (n == 4 && parts[2] == "lens") {
        if (m != "GET") return error_response(405, "method", "use GET");
        return get_lens(req, parts[1], parts[3]);
      }
      if (n == 3 && parts[2] == "mog") {
        if (m != "POST") return error_response(405, "method", "use POST");
        return post_mog(req, parts[1]);
      }
    }
    if (n == 2 && parts[0] == "jobs") {
      if (m != "GET") return error_response(405, "method", "use GET");
      return get_job(parts[1]);
    }
    return error_response(404, "lookup", "no route for " + m + " " + req.path);
  }
};

Service::Service(ServiceConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>(config_)) {}

Service::~Service() {
  stop();
}

std::size_t Service::lens_computations() const noexcept { return impl_->lens_runs.load(); }

Response Service::handle(const Request& request) {
  return Impl::guarded([&] { return impl_->dispatch(request); })();
}

namespace {

void install_routes(httplib::Server& server, Service& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    const Response out = service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string any = R"(/.*)";
  server.Get(any, forward);
  server.Post(any, forward);
  server.Put(any, forward);
  server.Delete(any, forward);
  server.Options(any, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
}

}  // namespace

bool Service::listen() {
  if (!server_) {
    server_ = std::make_unique<httplib::Server>();
    install_routes(*server_, *this);
  }
  const std::size_t threads = std::max<std::size_t>(config_.http_threads, 1);
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  server_->set_payload_max_length(config_.max_upload_bytes + 1);
  return server_->listen(config_.host, config_.port);
}

int Service::bind_ephemeral() {
  if (!server_) {
    server_ = std::make_unique<httplib::Server>();
    install_routes(*server_, *this);
  }
  const std::size_t threads = std::max<std::size_t>(config_.http_threads, 1);
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  server_->set_payload_max_length(config_.max_upload_bytes + 1);
  return server_->bind_to_any_port(config_.host);
}

bool Service::listen_after_bind() { return server_ && server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace mog
