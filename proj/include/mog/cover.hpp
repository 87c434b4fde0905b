#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mog/node_set.hpp"

namespace mog {

// Open interval (lo, hi) over normalized lens values.
struct Interval {
  int id = 0;
  double lo = 0.0;
  double hi = 1.0;

  double midpoint() const noexcept { return 0.5 * (lo + hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class CoverProvenance { uniform, manual };

// Ordered (by midpoint, then id) list of intervals with stable ids.
class Cover {
 public:
  Cover() = default;
  // Validates lo < hi and unique ids, then sorts. Throws Error{validation}.
  Cover(std::vector<Interval> intervals, CoverProvenance provenance,
        std::optional<int> resolution = std::nullopt,
        std::optional<double> overlap = std::nullopt);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  CoverProvenance provenance() const noexcept { return provenance_; }
  // Set only for uniform covers.
  std::optional<int> resolution() const noexcept { return resolution_; }
  std::optional<double> overlap() const noexcept { return overlap_; }

  // Throws Error{lookup}.
  const Interval& find(int id) const;

  friend bool operator==(const Cover&, const Cover&) = default;

 private:
  std::vector<Interval> intervals_;
  CoverProvenance provenance_ = CoverProvenance::manual;
  std::optional<int> resolution_;
  std::optional<double> overlap_;
};

// n intervals (c_i - eps, c_{i+1} + eps) with c_i = i / n, ids 0..n-1.
// eps is an absolute length on [0,1]. Throws Error{parameter} unless n >= 1
// and 0 <= eps < 1.
Cover uniform_cover(int n, double epsilon);

// Uncovered open sub-ranges of [0,1].
struct Coverage {
  std::vector<std::pair<double, double>> gaps;
  bool total() const noexcept { return gaps.empty(); }
};

Coverage coverage(const Cover& cover);

struct CoverEdit {
  Cover cover;
  Coverage coverage;
};

// Replaces interval `id` with (new_lo, new_hi); provenance becomes manual.
// Throws Error{lookup} for an unknown id, Error{validation} for new_lo >= new_hi.
CoverEdit modify_interval(const Cover& cover, int id, double new_lo, double new_hi);

// Membership of a normalized value in an interval:
//   lo < x < hi, or
//   x is 0 or 1 and lo <= x <= hi, or
//   x lies in no open interval of the cover and lo <= x <= hi.
struct Assignment {
  std::vector<NodeSet> preimages;  // aligned with cover.intervals()
  NodeSet uncovered;
};

Assignment assign_nodes(const Cover& cover, std::span<const double> normalized);

}  // namespace mog
