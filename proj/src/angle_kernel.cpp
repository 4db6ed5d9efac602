#include "angledim/angle_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "angledim/errors.hpp"

namespace angledim {

NeighborSet knn(const PointCloud& cloud, std::span<const double> center, std::size_t k) {
  if (center.size() != cloud.dim()) {
    throw validation_error("knn: center has " + std::to_string(center.size()) +
                           " coordinates, cloud has " + std::to_string(cloud.dim()));
  }
  if (k == 0) throw std::domain_error("knn: k must be positive");

  const double scale = std::max(1.0, norm(center));
  const double tol = kCoincidenceTol * scale;

  std::vector<std::pair<double, std::size_t>> cands;
  cands.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double dist = std::sqrt(squared_distance(cloud.point(i), center));
    if (dist <= tol) continue;  // coincident with the center
    cands.emplace_back(dist, i);
  }
  if (cands.size() < k) {
    throw insufficient_sample_error("knn: need " + std::to_string(k) +
                                    " non-coincident neighbours, cloud offers " +
                                    std::to_string(cands.size()));
  }

  const auto by_dist_then_index = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  };
  std::nth_element(cands.begin(), cands.begin() + (k - 1), cands.end(), by_dist_then_index);
  std::sort(cands.begin(), cands.begin() + k, by_dist_then_index);

  NeighborSet ns;
  ns.center.assign(center.begin(), center.end());
  ns.indices.reserve(k);
  ns.distances.reserve(k);
  ns.directions.resize(k * cloud.dim());
  for (std::size_t i = 0; i < k; ++i) {
    const auto [dist, idx] = cands[i];
    ns.indices.push_back(idx);
    ns.distances.push_back(dist);
    const auto point = cloud.point(idx);
    double* dir = ns.directions.data() + i * cloud.dim();
    for (std::size_t j = 0; j < cloud.dim(); ++j) dir[j] = (point[j] - center[j]) / dist;
  }
  return ns;
}

double angle_h(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw validation_error("angle_h: dimension mismatch");
  const double nu = norm(u);
  const double nv = norm(v);
  if (std::abs(nu - 1.0) > 1e-9 || std::abs(nv - 1.0) > 1e-9) {
    throw std::domain_error("angle_h: arguments must be unit vectors");
  }
  const double c = std::clamp(dot(u, v), -1.0, 1.0);
  const double t = std::acos(c) - std::numbers::pi / 2.0;
  return t * t;
}

AngleStat u_statistic(const NeighborSet& neighbors) {
  const std::size_t k = neighbors.k();
  if (k < 2) {
    throw insufficient_neighbors_error("u_statistic: needs at least 2 neighbours, got " +
                                       std::to_string(k));
  }
  const std::size_t dim = neighbors.dim();
  const double* dirs = neighbors.directions.data();
  double sum_h = 0.0;
  double sum_angle = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double* a = dirs + i * dim;
    for (std::size_t j = i + 1; j < k; ++j) {
      const double* b = dirs + j * dim;
      double c = 0.0;
      for (std::size_t t = 0; t < dim; ++t) c += a[t] * b[t];
      c = std::clamp(c, -1.0, 1.0);
      const double angle = std::acos(c);
      const double dev = angle - std::numbers::pi / 2.0;
      sum_h += dev * dev;
      sum_angle += angle;
    }
  }
  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  return {sum_h / pairs, sum_angle / pairs, k};
}

}  // namespace angledim
