#include "mog/datasets.hpp"

#include <curl/curl.h>
#include <zlib.h>

#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mog/error.hpp"
#include "mog/io.hpp"
#include "mog/service.hpp"

namespace mog::datasets {

const std::vector<DatasetInfo>& registry() {
  static const std::vector<DatasetInfo> kAll{
      {"amazon0302", "https://snap.stanford.edu/data/amazon0302.txt.gz", SourceFormat::snap, 262111,
       1234877},
      {"ca-CondMat", "https://snap.stanford.edu/data/ca-CondMat.txt.gz", SourceFormat::snap, 23133,
       93497},
      {"com-amazon", "https://snap.stanford.edu/data/bigdata/communities/com-amazon.ungraph.txt.gz",
       SourceFormat::snap, 334863, 925872},
      {"com-youtube", "https://snap.stanford.edu/data/bigdata/communities/com-youtube.ungraph.txt.gz",
       SourceFormat::snap, 1134890, 2987624},
      {"soc-Epinions1", "https://snap.stanford.edu/data/soc-Epinions1.txt.gz", SourceFormat::snap,
       75879, 508837},
      {"USAir97", "http://vlado.fmf.uni-lj.si/pub/networks/data/mix/USAir97.net",
       SourceFormat::pajek, 332, 2126},
  };
  return kAll;
}

const DatasetInfo& find(std::string_view name) {
  for (const auto& d : registry()) {
    if (d.name == name) return d;
  }
  throw Error(ErrorKind::lookup, "unknown dataset: " + std::string(name));
}

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    if (line[i] == '"') {
      j = line.find('"', i + 1);
      if (j == std::string_view::npos) j = line.size();
      out.push_back(line.substr(i + 1, j - i - 1));
      i = j + 1;
      continue;
    }
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

WeightedGraph import_snap(std::istream& in) {
  GraphBuilder b;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    const auto t = tokens(line);
    if (t.empty()) continue;
    if (t.size() < 2) throw Error(ErrorKind::parse, "expected 'u v'", line_no);
    const NodeIndex u = b.add_node(t[0]);
    const NodeIndex v = b.add_node(t[1]);
    if (u == v || !seen.insert(pair_key(u, v)).second) continue;
    b.add_edge(u, v, 1.0, line_no);
  }
  return std::move(b).build();
}

WeightedGraph import_pajek(std::istream& in) {
  GraphBuilder b;
  std::unordered_map<std::string, NodeIndex> by_number;
  std::unordered_set<std::uint64_t> seen;
  enum { none, vertices, edges } section = none;
  std::string line;
  std::size_t line_no = 0;
  auto node_for = [&](std::string_view number) {
    auto it = by_number.find(std::string(number));
    if (it != by_number.end()) return it->second;
    const NodeIndex idx = b.add_node(number);
    by_number.emplace(std::string(number), idx);
    return idx;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = tokens(line);
    if (t.empty() || t[0].starts_with("%")) continue;
    if (t[0].starts_with("*")) {
      std::string head(t[0]);
      for (auto& c : head) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (head == "*vertices") {
        section = vertices;
      } else if (head == "*edges" || head == "*arcs" || head == "*edgeslist" || head == "*arcslist") {
        section = edges;
      } else {
        section = none;
      }
      continue;
    }
    if (section == vertices) {
      const std::string label = t.size() >= 2 ? std::string(t[1]) : std::string(t[0]);
      const NodeIndex idx = b.add_node(label);
      by_number.emplace(std::string(t[0]), idx);
    } else if (section == edges) {
      if (t.size() < 2) throw Error(ErrorKind::parse, "expected 'u v [w]'", line_no);
      double w = 1.0;
      if (t.size() >= 3) {
        auto [p, ec] = std::from_chars(t[2].data(), t[2].data() + t[2].size(), w);
        if (ec != std::errc{} || p != t[2].data() + t[2].size()) {
          throw Error(ErrorKind::parse, "bad weight '" + std::string(t[2]) + "'", line_no);
        }
      }
      const NodeIndex u = node_for(t[0]);
      const NodeIndex v = node_for(t[1]);
      if (u == v || !seen.insert(pair_key(u, v)).second) continue;
      b.add_edge(u, v, w, line_no);
    }
  }
  return std::move(b).build();
}

std::string maybe_gunzip(std::string data) {
  if (data.size() < 2 || static_cast<unsigned char>(data[0]) != 0x1f ||
      static_cast<unsigned char>(data[1]) != 0x8b) {
    return data;
  }
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw Error(ErrorKind::parse, "zlib init failed");
  zs.next_in = reinterpret_cast<Bytef*>(data.data());
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buf[1 << 16];
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error(ErrorKind::parse, "corrupt gzip data");
    }
    out.append(buf, sizeof buf - zs.avail_out);
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

std::string download(const std::string& url) {
  static std::once_flag init;
  std::call_once(init, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
  CURL* curl = curl_easy_init();
  if (!curl) throw Error(ErrorKind::lookup, "curl init failed");
  std::string body;
  auto write = +[](char* ptr, std::size_t size, std::size_t n, void* user) -> std::size_t {
    static_cast<std::string*>(user)->append(ptr, size * n);
    return size * n;
  };
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) {
    throw Error(ErrorKind::lookup, "download failed for " + url + ": " + curl_easy_strerror(rc));
  }
  return body;
}

FetchResult fetch(const DatasetInfo& info, const std::filesystem::path& dest,
                  const std::filesystem::path& manifest, bool force) {
  using nlohmann::json;
  std::filesystem::create_directories(dest);
  json checksums = json::object();
  if (std::filesystem::exists(manifest)) {
    try {
      checksums = json::parse(read_file(manifest));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::parse, manifest.string() + ": " + e.what());
    }
  }
  FetchResult r;
  r.name = info.name;
  r.path = dest / (info.name + ".txt");
  if (!force && std::filesystem::exists(r.path) && checksums.contains(info.name)) {
    const auto g = load_graph(r.path, GraphFormat::edge_list);
    r.sha256 = checksums[info.name].get<std::string>();
    r.nodes = g.node_count();
    r.edges = g.edge_count();
    return r;
  }
  const std::string raw = download(info.url);
  r.sha256 = sha256_hex(raw);
  if (checksums.contains(info.name)) {
    if (checksums[info.name].get<std::string>() != r.sha256) {
      throw Error(ErrorKind::validation, "checksum mismatch for " + info.name + ": expected " +
                                             checksums[info.name].get<std::string>() + ", got " +
                                             r.sha256);
    }
  } else {
    checksums[info.name] = r.sha256;
    r.recorded = true;
    write_file(manifest, checksums.dump(2) + "\n");
  }
  std::istringstream text(maybe_gunzip(raw));
  const WeightedGraph g = info.format == SourceFormat::snap ? import_snap(text) : import_pajek(text);
  write_file(r.path, serialize_graph(g, GraphFormat::edge_list));
  r.nodes = g.node_count();
  r.edges = g.edge_count();
  return r;
}

}  // namespace mog::datasets
