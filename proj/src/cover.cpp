#include "mog/cover.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mog/error.hpp"

namespace mog {

Cover::Cover(std::vector<Interval> intervals, CoverProvenance provenance,
             std::optional<int> resolution, std::optional<double> overlap)
    : intervals_(std::move(intervals)),
      provenance_(provenance),
      resolution_(resolution),
      overlap_(overlap) {
  std::set<int> ids;
  for (const auto& iv : intervals_) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      throw Error(ErrorKind::validation,
                  "interval " + std::to_string(iv.id) + " needs finite lo < hi");
    }
    if (!ids.insert(iv.id).second) {
      throw Error(ErrorKind::validation, "duplicate interval id " + std::to_string(iv.id));
    }
  }
  std::stable_sort(intervals_.begin(), intervals_.end(), [](const Interval& a, const Interval& b) {
    if (a.midpoint() != b.midpoint()) return a.midpoint() < b.midpoint();
    return a.id < b.id;
  });
}

const Interval& Cover::find(int id) const {
  for (const auto& iv : intervals_) {
    if (iv.id == id) return iv;
  }
  throw Error(ErrorKind::lookup, "no interval with id " + std::to_string(id));
}

Cover uniform_cover(int n, double epsilon) {
  if (n < 1) throw Error(ErrorKind::parameter, "resolution n must be >= 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::parameter, "overlap epsilon must lie in [0, 1)");
  }
  std::vector<Interval> intervals;
  intervals.reserve(static_cast<std::size_t>(n));
  const double count = static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const double left = static_cast<double>(i) / count;
    const double right = static_cast<double>(i + 1) / count;
    intervals.push_back({i, left - epsilon, right + epsilon});
  }
  return Cover(std::move(intervals), CoverProvenance::uniform, n, epsilon);
}

Coverage coverage(const Cover& cover) {
  // Closures are unioned: a point that only touches an interval boundary is
  // still assigned by the fallback rule, so only open runs can be gaps.
  std::vector<std::pair<double, double>> spans;
  for (const auto& iv : cover.intervals()) {
    if (iv.hi < 0.0 || iv.lo > 1.0) continue;
    spans.emplace_back(std::max(iv.lo, 0.0), std::min(iv.hi, 1.0));
  }
  std::sort(spans.begin(), spans.end());
  Coverage out;
  double reach = 0.0;
  for (const auto& [lo, hi] : spans) {
    if (lo > reach) out.gaps.emplace_back(reach, lo);
    reach = std::max(reach, hi);
  }
  if (reach < 1.0) out.gaps.emplace_back(reach, 1.0);
  return out;
}

CoverEdit modify_interval(const Cover& cover, int id, double new_lo, double new_hi) {
  cover.find(id);
  if (!(new_lo < new_hi)) {
    throw Error(ErrorKind::validation, "interval bounds inverted: lo must be < hi");
  }
  std::vector<Interval> intervals = cover.intervals();
  for (auto& iv : intervals) {
    if (iv.id == id) {
      iv.lo = new_lo;
      iv.hi = new_hi;
    }
  }
  Cover edited(std::move(intervals), CoverProvenance::manual);
  Coverage cov = coverage(edited);
  return {std::move(edited), std::move(cov)};
}

Assignment assign_nodes(const Cover& cover, std::span<const double> normalized) {
  const auto& intervals = cover.intervals();
  std::vector<std::vector<NodeIndex>> members(intervals.size());
  std::vector<NodeIndex> uncovered;
  for (NodeIndex v = 0; v < normalized.size(); ++v) {
    const double x = normalized[v];
    const bool extreme = x == 0.0 || x == 1.0;
    bool placed = false;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const auto& iv = intervals[i];
      const bool open = iv.lo < x && x < iv.hi;
      const bool closed = iv.lo <= x && x <= iv.hi;
      if (open || (extreme && closed)) {
        members[i].push_back(v);
        placed = true;
      }
    }
    if (!placed) {
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].lo <= x && x <= intervals[i].hi) {
          members[i].push_back(v);
          placed = true;
        }
      }
    }
    if (!placed) uncovered.push_back(v);
  }
  Assignment out;
  out.preimages.reserve(members.size());
  for (auto& m : members) out.preimages.push_back(NodeSet::from_sorted(std::move(m)));
  out.uncovered = NodeSet::from_sorted(std::move(uncovered));
  return out;
}

}  // namespace mog
