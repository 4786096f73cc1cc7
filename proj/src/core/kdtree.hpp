#pragma once

#include <Eigen/Core>
#include <vector>

#include "core/types.hpp"

namespace lcorrupt {

// Static kd-tree over a fixed point set. Built once, then read-only; queries
// are const and safe to run from several threads at once.
//
// knn ordering contract: ascending distance, ties broken by lower index.
class KdTree {
 public:
  explicit KdTree(const PointCloud& cloud);
  explicit KdTree(std::vector<Eigen::Vector3d> points);

  std::size_t size() const { return points_.size(); }
  const Eigen::Vector3d& point(int i) const { return points_[static_cast<std::size_t>(i)]; }

  // Indices of the min(k, N) nearest points, ascending (distance, index).
  std::vector<int> knn(const Eigen::Vector3d& query, int k) const;

  // Indices of all points within radius (inclusive), ascending index order.
  std::vector<int> radius_search(const Eigen::Vector3d& query, double radius) const;

  // Index of the nearest point with distance <= max_dist, or -1 if none.
  // When found and dist_out is non-null, the distance is written to it.
  int nearest_within(const Eigen::Vector3d& query, double max_dist,
                     double* dist_out = nullptr) const;

 private:
  struct Node {
    int axis = -1;       // -1 marks a leaf
    double split = 0.0;  // split coordinate along axis
    int left = -1;
    int right = -1;
    int begin = 0;  // leaf range into order_
    int end = 0;
  };

  int build(int begin, int end);

  std::vector<Eigen::Vector3d> points_;
  std::vector<int> order_;  // permutation of point indices, grouped per leaf
  std::vector<Node> nodes_;
  int root_ = -1;

  static constexpr int kLeafSize = 16;
};

// One-shot k-nearest-neighbour query against a cloud. Throws on an empty
// cloud or k < 1.
std::vector<int> knn(const PointCloud& cloud, const Point& query, int k);

}  // namespace lcorrupt
