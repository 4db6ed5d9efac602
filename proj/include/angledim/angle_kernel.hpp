#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "angledim/point_cloud.hpp"

namespace angledim {

// Points closer to the center than this (relative to max(1, |center|)) are
// treated as coincident with it and never become neighbours: their
// direction is undefined.
inline constexpr double kCoincidenceTol = 1e-12;

// The k nearest non-coincident neighbours of a center, with unit direction
// vectors (X_i - p) / |X_i - p|.
struct NeighborSet {
  std::vector<double> center;
  std::vector<std::size_t> indices;    // into the source cloud, sorted by distance
  std::vector<double> distances;       // nondecreasing
  std::vector<double> directions;      // k x dim, row i is the i-th unit direction

  std::size_t k() const noexcept { return indices.size(); }
  std::size_t dim() const noexcept { return center.size(); }
  std::span<const double> direction(std::size_t i) const {
    return {directions.data() + i * center.size(), center.size()};
  }
};

// U-statistic of the angular deviation kernel over one neighbourhood.
struct AngleStat {
  double u_value = 0.0;    // mean of (angle - pi/2)^2 over all pairs
  double mean_angle = 0.0; // mean pairwise angle, radians
  std::size_t k = 0;
};

// Distance ties are broken by lower point index, so results do not depend
// on the order partial sorting happens to leave equal keys in.
NeighborSet knn(const PointCloud& cloud, std::span<const double> center, std::size_t k);

// Kernel h(u, v) = (arccos<u, v> - pi/2)^2 for unit vectors. The inner
// product is clamped to [-1, 1] before arccos; without the clamp, rounding
// pushes antipodal pairs outside the arccos domain.
double angle_h(std::span<const double> u, std::span<const double> v);

AngleStat u_statistic(const NeighborSet& neighbors);

}  // namespace angledim
