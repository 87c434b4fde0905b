#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mog/cover.hpp"
#include "mog/layout.hpp"
#include "mog/lens.hpp"
#include "mog/mapper.hpp"

namespace mog {

using Json = nlohmann::json;

// {"provenance":"uniform","n":5,"epsilon":0.1,"intervals":[{"id":0,"lo":..,"hi":..}]}
// Manual covers omit n and epsilon.
Json cover_to_json(const Cover& cover);
// Intervals are taken verbatim; throws Error{parse|validation}.
Cover cover_from_json(const Json& doc);

Json coverage_to_json(const Coverage& c);

// [{"node":label,"raw":..,"normalized":..}, ...]
Json lens_values_to_json(const LensField& field, const WeightedGraph& g);
Json histogram_to_json(const LensHistogram& h);
// Values, histogram and solver diagnostics; PageRank adds pre-log "scores".
Json lens_to_json(const LensField& field, const WeightedGraph& g, std::size_t bins);

LensParams lens_params_from_json(const Json& doc, LensParams base = {});
Json lens_params_to_json(LensKind kind, const LensParams& p);

// {"nodes":[{"id","interval","size","mean_lens","members"}],
//  "edges":[{"source","target","weight","intersection"}], "filter":{..}, "meta":{..}}
// Member lists carry node labels of `g`.
Json summary_to_json(const MogSummary& s, const WeightedGraph& g);

// Rebuilds a summary from JSON. Member labels are interned into `labels` in
// first-appearance order and NodeSets index that table.
MogSummary summary_from_json(const Json& doc, std::vector<std::string>& labels);

Json positions_to_json(std::span<const Point2> positions);
std::vector<Point2> positions_from_json(const Json& doc);

}  // namespace mog
