#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mog {

using NodeIndex = std::uint32_t;

// Sorted, duplicate-free set of node indices over one WeightedGraph.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeIndex> members) : members_(members) { normalize(); }
  explicit NodeSet(std::vector<NodeIndex> members) : members_(std::move(members)) { normalize(); }

  // Caller guarantees `members` is strictly increasing.
  static NodeSet from_sorted(std::vector<NodeIndex> members) {
    NodeSet s;
    s.members_ = std::move(members);
    return s;
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeIndex v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }
  NodeIndex front() const { return members_.front(); }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  std::span<const NodeIndex> view() const noexcept { return members_; }
  const std::vector<NodeIndex>& indices() const noexcept { return members_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<NodeIndex> members_;
};

NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
NodeSet set_union(const NodeSet& a, const NodeSet& b);

}  // namespace mog
