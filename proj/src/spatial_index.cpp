#include "landcore/spatial_index.hpp"

#include "landcore/error.hpp"

#include <algorithm>
#include <cmath>

namespace landcore {

namespace {

// Sort-tile-recursive grouping of `items` (indices into `centers`) into
// runs of at most `capacity`, returned as consecutive slices of `items`.
void str_order(std::vector<std::uint32_t>& items, const std::vector<Point2>& centers,
               std::size_t capacity) {
  const std::size_t n = items.size();
  const std::size_t leaves = (n + capacity - 1) / capacity;
  const std::size_t slices = static_cast<std::size_t>(std::ceil(std::sqrt(double(leaves))));
  const std::size_t per_slice = slices * capacity;
  auto by_x = [&](std::uint32_t a, std::uint32_t b) {
    if (centers[a].x != centers[b].x) return centers[a].x < centers[b].x;
    return a < b;
  };
  auto by_y = [&](std::uint32_t a, std::uint32_t b) {
    if (centers[a].y != centers[b].y) return centers[a].y < centers[b].y;
    return a < b;
  };
  std::sort(items.begin(), items.end(), by_x);
  for (std::size_t start = 0; start < n; start += per_slice) {
    const auto end = items.begin() + std::min(n, start + per_slice);
    std::sort(items.begin() + start, end, by_y);
  }
}

} // namespace

BoxIndex::BoxIndex(std::vector<Box2> boxes, std::size_t node_capacity)
    : boxes_(std::move(boxes)) {
  if (node_capacity < 2) throw ValidationError("index node capacity must be >= 2");
  if (boxes_.empty()) return;

  std::vector<Point2> centers;
  centers.reserve(boxes_.size());
  for (const Box2& b : boxes_) centers.push_back(b.center());
  order_.resize(boxes_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
  str_order(order_, centers, node_capacity);

  std::vector<Node> level;
  for (std::size_t start = 0; start < order_.size(); start += node_capacity) {
    Node node;
    node.first = static_cast<std::uint32_t>(start);
    node.count = static_cast<std::uint32_t>(std::min(node_capacity, order_.size() - start));
    node.box = boxes_[order_[start]];
    for (std::uint32_t k = 1; k < node.count; ++k) node.box.expand(boxes_[order_[start + k]]);
    level.push_back(node);
  }
  levels_.push_back(std::move(level));

  while (levels_.back().size() > 1) {
    std::vector<Node>& below = levels_.back();
    std::vector<Point2> node_centers;
    for (const Node& n : below) node_centers.push_back(n.box.center());
    std::vector<std::uint32_t> idx(below.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    str_order(idx, node_centers, node_capacity);
    std::vector<Node> reordered;
    reordered.reserve(below.size());
    for (std::uint32_t i : idx) reordered.push_back(below[i]);
    below = std::move(reordered);

    std::vector<Node> parents;
    for (std::size_t start = 0; start < below.size(); start += node_capacity) {
      Node node;
      node.first = static_cast<std::uint32_t>(start);
      node.count = static_cast<std::uint32_t>(std::min(node_capacity, below.size() - start));
      node.box = below[start].box;
      for (std::uint32_t k = 1; k < node.count; ++k) node.box.expand(below[start + k].box);
      parents.push_back(node);
    }
    levels_.push_back(std::move(parents));
  }
}

std::vector<std::size_t> BoxIndex::query(const Box2& window) const {
  std::vector<std::size_t> hits;
  if (levels_.empty()) return hits;
  struct Frame {
    std::size_t level;
    std::size_t node;
  };
  std::vector<Frame> stack{{levels_.size() - 1, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const Node& node = levels_[f.level][f.node];
    if (!boxes_overlap(node.box, window)) continue;
    if (f.level == 0) {
      for (std::uint32_t k = 0; k < node.count; ++k) {
        const std::uint32_t id = order_[node.first + k];
        if (boxes_overlap(boxes_[id], window)) hits.push_back(id);
      }
    } else {
      for (std::uint32_t k = 0; k < node.count; ++k) stack.push_back({f.level - 1, node.first + k});
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

} // namespace landcore
