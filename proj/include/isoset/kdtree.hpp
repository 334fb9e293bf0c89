#ifndef ISOSET_KDTREE_HPP
#define ISOSET_KDTREE_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "isoset/types.hpp"

namespace isoset {

/// Exact nearest-neighbor index for small point sets in dimension <= 3.
/// Queries support an upper cutoff: once the nearest distance provably
/// exceeds the cutoff the search stops and the cutoff is returned.
class KdTree {
 public:
  KdTree() = default;

  explicit KdTree(std::vector<Vec> points, int dim)
      : dim_(dim), points_(std::move(points)) {
    nodes_.reserve(points_.size());
    index_.resize(points_.size());
    for (size_t i = 0; i < index_.size(); ++i) index_[i] = static_cast<int>(i);
    if (!points_.empty()) root_ = build(0, static_cast<int>(points_.size()), 0);
  }

  bool empty() const { return points_.empty(); }
  size_t size() const { return points_.size(); }

  /// Distance from q to its nearest stored point, or cutoff if no point is
  /// closer than cutoff.
  double nearestDistance(const Vec& q, double cutoff = std::numeric_limits<double>::infinity()) const {
    if (points_.empty()) return cutoff;
    double best = cutoff;
    search(root_, q, best);
    return best;
  }

 private:
  struct Node {
    int point = -1;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(int lo, int hi, int depth) {
    const int axis = depth % dim_;
    const int mid = (lo + hi) / 2;
    std::nth_element(index_.begin() + lo, index_.begin() + mid, index_.begin() + hi,
                     [&](int a, int b) { return points_[static_cast<size_t>(a)][axis] < points_[static_cast<size_t>(b)][axis]; });
    Node node;
    node.point = index_[static_cast<size_t>(mid)];
    node.axis = axis;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (lo < mid) nodes_[static_cast<size_t>(id)].left = build(lo, mid, depth + 1);
    if (mid + 1 < hi) nodes_[static_cast<size_t>(id)].right = build(mid + 1, hi, depth + 1);
    return id;
  }

  void search(int id, const Vec& q, double& best) const {
    const Node& node = nodes_[static_cast<size_t>(id)];
    const Vec& p = points_[static_cast<size_t>(node.point)];
    best = std::min(best, (p - q).norm());
    const double delta = q[node.axis] - p[node.axis];
    const int near = delta < 0 ? node.left : node.right;
    const int far = delta < 0 ? node.right : node.left;
    if (near >= 0) search(near, q, best);
    if (far >= 0 && std::abs(delta) < best) search(far, q, best);
  }

  int dim_ = 1;
  int root_ = -1;
  std::vector<Vec> points_;
  std::vector<int> index_;
  std::vector<Node> nodes_;
};

}  // namespace isoset

#endif
