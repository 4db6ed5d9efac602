#pragma once

#include <cstddef>

#include "angledim/point_cloud.hpp"

namespace angledim {

// Maximum-likelihood intrinsic dimension baseline built from log ratios of
// nearest-neighbour distances, averaged over a range of neighbourhood
// sizes.
struct LBConfig {
  std::size_t k1 = 10;
  std::size_t k2 = 20;
};

// Per-point estimate with k neighbours (k >= 3):
//   m_hat = (k - 2) / sum_{j=1}^{k-1} log(L_k / L_j),
// where L_1 <= ... <= L_k are the distances from point i to its nearest
// neighbours, the point itself excluded by index. A zero distance among
// them (duplicate points) is a degenerate-data error.
double lb_local(const PointCloud& cloud, std::size_t index, std::size_t k);

struct LBEstimate {
  double value = 0.0;  // mean over k in [k1, k2] of the mean over points
  int rounded = 0;     // nearest integer, half rounds toward the smaller
};

LBEstimate lb_global(const PointCloud& cloud, const LBConfig& cfg, int threads = 1);

}  // namespace angledim
