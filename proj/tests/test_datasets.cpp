#include <doctest.h>

#include <zlib.h>

#include <sstream>

#include "mog/datasets.hpp"
#include "mog/error.hpp"
#include "mog/io.hpp"
#include "mog/service.hpp"

using namespace mog;
namespace fs = std::filesystem;

namespace {

std::string gzip(const std::string& text) {
  z_stream zs{};
  REQUIRE(deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) == Z_OK);
  std::string out(compressBound(static_cast<uLong>(text.size())) + 64, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(text.data()));
  zs.avail_in = static_cast<uInt>(text.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  REQUIRE(deflate(&zs, Z_FINISH) == Z_STREAM_END);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mog_ds_" + std::to_string(std::hash<std::string>{}(
                                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)))));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kSnap =
    "# Directed graph: toy\n"
    "# FromNodeId\tToNodeId\n"
    "0\t1\n1\t0\n1\t2\n2\t2\n3\t1\n0\t1\n";

}  // namespace

TEST_CASE("SNAP import symmetrizes and deduplicates") {
  std::istringstream in(kSnap);
  const auto g = datasets::import_snap(in);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.label(3) == "3");
  CHECK(g.degree(g.index_of("1")) == 3);
}

TEST_CASE("Pajek import") {
  std::istringstream in(
      "*Vertices 4\n"
      "1 \"Atlanta GA\" 0.1 0.2 0.5\n"
      "2 \"Boston MA\"\n"
      "3 \"Chicago IL\"\n"
      "4 \"Denver CO\"\n"
      "*Arcs\n"
      "*Edges\n"
      "1 2 0.25\n"
      "2 1 0.5\n"
      "2 3 1\n"
      "3 3 1\n");
  const auto g = datasets::import_pajek(in);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.label(0) == "Atlanta GA");
  CHECK(g.edges()[0].weight == 0.25);
  CHECK(g.degree(g.index_of("Denver CO")) == 0);
  std::istringstream bad("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Edges\n1 2 heavy\n");
  CHECK_THROWS_AS(datasets::import_pajek(bad), Error);
}

TEST_CASE("gzip passthrough and inflate") {
  CHECK(datasets::maybe_gunzip("plain text") == "plain text");
  CHECK(datasets::maybe_gunzip(gzip(kSnap)) == kSnap);
  std::string corrupt = gzip(kSnap);
  corrupt.resize(corrupt.size() / 2);
  CHECK_THROWS_AS(datasets::maybe_gunzip(corrupt), Error);
}

TEST_CASE("registry") {
  CHECK(datasets::find("ca-CondMat").published_nodes == 23133);
  CHECK(datasets::find("ca-CondMat").published_edges == 93497);
  CHECK_THROWS_AS(datasets::find("nope"), Error);
}

TEST_CASE("fetch records then verifies checksums") {
  TempDir tmp;
  const auto source = tmp.path / "toy.txt.gz";
  const std::string bytes = gzip(kSnap);
  write_file(source, bytes);
  datasets::DatasetInfo info{"toy", "file://" + source.string(), datasets::SourceFormat::snap, 4, 3};
  const auto manifest = tmp.path / "out" / "checksums.json";

  const auto first = datasets::fetch(info, tmp.path / "out", manifest);
  CHECK(first.recorded);
  CHECK(first.sha256 == sha256_hex(bytes));
  CHECK(first.nodes == 4);
  CHECK(first.edges == 3);
  CHECK(load_graph(first.path, GraphFormat::edge_list).edge_count() == 3);

  const auto again = datasets::fetch(info, tmp.path / "out", manifest, true);
  CHECK_FALSE(again.recorded);
  CHECK(again.sha256 == first.sha256);

  write_file(source, gzip(std::string(kSnap) + "4\t0\n"));
  try {
    datasets::fetch(info, tmp.path / "out", manifest, true);
    FAIL("expected checksum mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
    CHECK(std::string(e.what()).find("checksum") != std::string::npos);
  }

  info.url = "file://" + (tmp.path / "absent.gz").string();
  CHECK_THROWS_AS(datasets::fetch(info, tmp.path / "other", tmp.path / "other.json"), Error);
}
