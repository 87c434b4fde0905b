#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "mog/graph.hpp"
#include "mog/io.hpp"
#include "mog/lens.hpp"

namespace httplib {
class Server;
}

namespace mog {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_upload_bytes = 64u << 20;
  std::size_t cache_capacity = 256;     // lens and layout entries
  std::size_t job_threshold = 20000;    // graphs above this many nodes get 202 + job id
  std::size_t histogram_bins = 50;
  std::size_t http_threads = 8;
};

// Reads an optional JSON config file, then applies MOG_HOST, MOG_PORT,
// MOG_MAX_UPLOAD_BYTES, MOG_CACHE_CAPACITY, MOG_JOB_THRESHOLD,
// MOG_HISTOGRAM_BINS and MOG_HTTP_THREADS from `env` (defaults to getenv).
ServiceConfig load_service_config(
    const std::optional<std::filesystem::path>& file,
    const std::function<const char*(const char*)>& env = nullptr);

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Graph ids are the SHA-256 of the canonical graph-json form, so the same
// graph uploaded as an edge list or as JSON gets the same id.
std::string graph_id(const WeightedGraph& g);

class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Transport-independent entry point; thread-safe.
  Response handle(const Request& request);

  // Blocking HTTP server on config.host:config.port. Returns when stop() is
  // called or the socket cannot be bound (then false).
  bool listen();
  // Binds to an ephemeral port and returns it; serve with listen_after_bind().
  int bind_ephemeral();
  bool listen_after_bind();
  void stop();

  const ServiceConfig& config() const noexcept { return config_; }

  // Number of lens computations actually run (cache misses that computed).
  std::size_t lens_computations() const noexcept;

 private:
  struct Impl;
  ServiceConfig config_;
  std::unique_ptr<Impl> impl_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace mog
