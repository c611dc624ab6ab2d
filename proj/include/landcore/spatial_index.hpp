#pragma once

#include "landcore/geometry.hpp"

#include <cstdint>
#include <vector>

namespace landcore {

// Static packed R-tree (sort-tile-recursive) over item bounding boxes.
class BoxIndex {
public:
  BoxIndex() = default;
  explicit BoxIndex(std::vector<Box2> boxes, std::size_t node_capacity = 16);

  // Ids of items whose box overlaps `window` (closed), ascending.
  std::vector<std::size_t> query(const Box2& window) const;

  std::size_t size() const noexcept { return boxes_.size(); }
  const Box2& box(std::size_t id) const { return boxes_.at(id); }

private:
  struct Node {
    Box2 box;
    std::uint32_t first = 0; // into the level below, or into order_ for leaves
    std::uint32_t count = 0;
  };

  std::vector<Box2> boxes_;
  std::vector<std::uint32_t> order_;
  // levels_[0] are leaves; levels_.back() holds the single root.
  std::vector<std::vector<Node>> levels_;
};

} // namespace landcore
