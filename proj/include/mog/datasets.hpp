#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mog/graph.hpp"

namespace mog::datasets {

enum class SourceFormat { snap, pajek };

struct DatasetInfo {
  std::string name;
  std::string url;
  SourceFormat format = SourceFormat::snap;
  std::size_t published_nodes = 0;  // as reported for the original experiments
  std::size_t published_edges = 0;
};

// The large SNAP graphs timed with the PageRank lens, plus USAir97 (Pajek).
const std::vector<DatasetInfo>& registry();
const DatasetInfo& find(std::string_view name);  // Error{lookup}

// SNAP edge lists: "# comments", then "u<ws>v" per line. Directed pairs are
// symmetrized, duplicates collapsed and self-loops dropped; unit weights.
WeightedGraph import_snap(std::istream& in);

// Pajek .net: *Vertices n with optional quoted labels, then *Edges or *Arcs
// with "u v [w]". Duplicate pairs keep the first weight; self-loops dropped.
WeightedGraph import_pajek(std::istream& in);

// Inflates gzip data; passes anything without the gzip magic through.
std::string maybe_gunzip(std::string data);

// Downloads a URL (http, https or file) into memory with libcurl.
std::string download(const std::string& url);

struct FetchResult {
  std::string name;
  std::filesystem::path path;  // converted edge list
  std::string sha256;          // of the downloaded bytes
  bool recorded = false;       // checksum newly written to the manifest
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

// Downloads, verifies against the manifest (recording the checksum on first
// fetch) and writes <dest>/<name>.txt in edge-list form. Skips the download
// when the converted file exists unless `force`. Throws Error{validation} on a
// checksum mismatch.
FetchResult fetch(const DatasetInfo& info, const std::filesystem::path& dest,
                  const std::filesystem::path& manifest, bool force = false);

}  // namespace mog::datasets
