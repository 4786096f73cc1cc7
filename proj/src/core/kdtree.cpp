#include "core/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace lcorrupt {

namespace {

struct Candidate {
  double dist2;
  int index;

  // Worse-than ordering for the bounded result set: larger distance first,
  // ties resolved toward the larger index so that equal-distance points with
  // lower indices win.
  bool worse_than(const Candidate& other) const {
    if (dist2 != other.dist2) return dist2 > other.dist2;
    return index > other.index;
  }
};

}  // namespace

KdTree::KdTree(const PointCloud& cloud) {
  points_.reserve(cloud.size());
  for (const Point& p : cloud.points) points_.push_back(p.position());
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  if (!points_.empty()) root_ = build(0, static_cast<int>(points_.size()));
}

KdTree::KdTree(std::vector<Eigen::Vector3d> points) : points_(std::move(points)) {
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  if (!points_.empty()) root_ = build(0, static_cast<int>(points_.size()));
}

int KdTree::build(int begin, int end) {
  Node node;
  if (end - begin <= kLeafSize) {
    node.begin = begin;
    node.end = end;
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  Eigen::Vector3d lo = points_[order_[begin]];
  Eigen::Vector3d hi = lo;
  for (int i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);

  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });

  node.axis = axis;
  node.split = points_[order_[mid]][axis];
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

std::vector<int> KdTree::knn(const Eigen::Vector3d& query, int k) const {
  if (k < 1) throw invalid_argument_error("knn: k must be >= 1");
  if (points_.empty()) throw empty_input_error("knn: empty point set");

  const int want = std::min<int>(k, static_cast<int>(points_.size()));
  // Max-heap keyed by worse_than: top() is the current worst kept candidate.
  std::vector<Candidate> heap;
  heap.reserve(static_cast<std::size_t>(want) + 1);
  const auto heap_cmp = [](const Candidate& a, const Candidate& b) { return b.worse_than(a); };

  const auto consider = [&](int point_index) {
    const Candidate c{(points_[point_index] - query).squaredNorm(), point_index};
    if (static_cast<int>(heap.size()) < want) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), heap_cmp);
    } else if (heap.front().worse_than(c)) {
      std::pop_heap(heap.begin(), heap.end(), heap_cmp);
      heap.back() = c;
      std::push_heap(heap.begin(), heap.end(), heap_cmp);
    }
  };

  // Depth-first descent, nearer child first; prune a subtree only when the
  // splitting plane is strictly farther than the current worst candidate so
  // that equal-distance, lower-index points are still reached.
  std::vector<int> stack;
  stack.push_back(root_);
  while (!stack.empty()) {
    const int node_index = stack.back();
    stack.pop_back();
    const Node& node = nodes_[node_index];
    if (node.axis < 0) {
      for (int i = node.begin; i < node.end; ++i) consider(order_[i]);
      continue;
    }
    const double delta = query[node.axis] - node.split;
    const int near_child = delta < 0.0 ? node.left : node.right;
    const int far_child = delta < 0.0 ? node.right : node.left;
    const bool full = static_cast<int>(heap.size()) == want;
    if (!full || delta * delta <= heap.front().dist2) {
      stack.push_back(far_child);
    }
    stack.push_back(near_child);
  }

  std::sort(heap.begin(), heap.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
    return a.index < b.index;
  });
  std::vector<int> result(heap.size());
  for (std::size_t i = 0; i < heap.size(); ++i) result[i] = heap[i].index;
  return result;
}

std::vector<int> KdTree::radius_search(const Eigen::Vector3d& query, double radius) const {
  if (radius < 0.0) throw invalid_argument_error("radius_search: negative radius");
  std::vector<int> result;
  if (points_.empty()) return result;
  const double r2 = radius * radius;

  std::vector<int> stack;
  stack.push_back(root_);
  while (!stack.empty()) {
    const int node_index = stack.back();
    stack.pop_back();
    const Node& node = nodes_[node_index];
    if (node.axis < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int idx = order_[i];
        if ((points_[idx] - query).squaredNorm() <= r2) result.push_back(idx);
      }
      continue;
    }
    const double delta = query[node.axis] - node.split;
    const int near_child = delta < 0.0 ? node.left : node.right;
    const int far_child = delta < 0.0 ? node.right : node.left;
    if (delta * delta <= r2) stack.push_back(far_child);
    stack.push_back(near_child);
  }
  std::sort(result.begin(), result.end());
  return result;
}

int KdTree::nearest_within(const Eigen::Vector3d& query, double max_dist,
                           double* dist_out) const {
  if (points_.empty()) return -1;
  double best2 = max_dist * max_dist;
  int best = -1;

  std::vector<int> stack;
  stack.push_back(root_);
  while (!stack.empty()) {
    const int node_index = stack.back();
    stack.pop_back();
    const Node& node = nodes_[node_index];
    if (node.axis < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int idx = order_[i];
        const double d2 = (points_[idx] - query).squaredNorm();
        if (d2 < best2 || (d2 == best2 && (best < 0 || idx < best))) {
          best2 = d2;
          best = idx;
        }
      }
      continue;
    }
    const double delta = query[node.axis] - node.split;
    const int near_child = delta < 0.0 ? node.left : node.right;
    const int far_child = delta < 0.0 ? node.right : node.left;
    if (delta * delta <= best2) stack.push_back(far_child);
    stack.push_back(near_child);
  }
  if (best >= 0 && dist_out) *dist_out = std::sqrt(best2);
  return best;
}

std::vector<int> knn(const PointCloud& cloud, const Point& query, int k) {
  if (cloud.empty()) throw empty_input_error("knn: empty cloud");
  KdTree tree(cloud);
  return tree.knn(query.position(), k);
}

}  // namespace lcorrupt
