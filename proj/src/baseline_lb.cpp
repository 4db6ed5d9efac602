#include "angledim/baseline_lb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "angledim/errors.hpp"
#include "angledim/parallel.hpp"

namespace angledim {

namespace {

// Sorted distances from point `index` to its k nearest neighbours (self
// excluded by index, ties by lower index).
std::vector<double> neighbor_distances(const PointCloud& cloud, std::size_t index,
                                       std::size_t k) {
  const std::size_t n = cloud.size();
  if (index >= n) throw std::domain_error("lb_local: point index out of range");
  if (n < k + 1) {
    throw insufficient_sample_error("lb_local: need " + std::to_string(k) +
                                    " neighbours, cloud has " + std::to_string(n) +
                                    " points");
  }
  std::vector<std::pair<double, std::size_t>> cands;
  cands.reserve(n - 1);
  const auto center = cloud.point(index);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == index) continue;
    cands.emplace_back(squared_distance(cloud.point(i), center), i);
  }
  const auto by_dist_then_index = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  };
  std::nth_element(cands.begin(), cands.begin() + (k - 1), cands.end(), by_dist_then_index);
  std::sort(cands.begin(), cands.begin() + k, by_dist_then_index);
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::sqrt(cands[i].first);
  return out;
}

double lb_from_distances(const std::vector<double>& dist, std::size_t k) {
  if (dist[0] == 0.0) {
    throw degenerate_data_error("lb_local: zero neighbour distance (duplicate points)");
  }
  const double lk = dist[k - 1];
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < k; ++j) sum += std::log(lk / dist[j]);
  if (sum <= 0.0) {
    throw degenerate_data_error("lb_local: neighbour distances have zero spread");
  }
  return static_cast<double>(k - 2) / sum;
}

}  // namespace

double lb_local(const PointCloud& cloud, std::size_t index, std::size_t k) {
  if (k < 3) throw std::domain_error("lb_local: k must be >= 3");
  return lb_from_distances(neighbor_distances(cloud, index, k), k);
}

LBEstimate lb_global(const PointCloud& cloud, const LBConfig& cfg, int threads) {
  if (cfg.k1 < 3 || cfg.k1 > cfg.k2) {
    throw config_error("lb_global: need 3 <= k1 <= k2");
  }
  const std::size_t n = cloud.size();
  if (n < cfg.k2 + 1) {
    throw insufficient_sample_error("lb_global: cloud has " + std::to_string(n) +
                                    " points, k2 = " + std::to_string(cfg.k2) +
                                    " needs more");
  }

  const std::size_t spread = cfg.k2 - cfg.k1 + 1;
  std::vector<double> per_point_sums(n, 0.0);  // sum over k of m_hat_k(i)
  parallel_for(n, threads, [&](std::size_t i) {
    const std::vector<double> dist = neighbor_distances(cloud, i, cfg.k2);
    double s = 0.0;
    for (std::size_t k = cfg.k1; k <= cfg.k2; ++k) s += lb_from_distances(dist, k);
    per_point_sums[i] = s;
  });

  double total = 0.0;
  for (const double s : per_point_sums) total += s;
  const double value = total / (static_cast<double>(n) * static_cast<double>(spread));

  const double fl = std::floor(value);
  const int rounded = value - fl > 0.5 ? static_cast<int>(fl) + 1 : static_cast<int>(fl);
  return {value, rounded};
}

}  // namespace angledim
