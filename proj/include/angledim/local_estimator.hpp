#pragma once

#include <cstddef>
#include <span>

#include "angledim/angle_kernel.hpp"
#include "angledim/calibration.hpp"
#include "angledim/moments.hpp"
#include "angledim/point_cloud.hpp"

namespace angledim {

enum class LocalMethod { basic, discriminant, kernel };

struct LocalConfig {
  std::size_t k = 0;   // 0: default_k(n)
  int d_max = 0;       // 0: ambient dimension
  LocalMethod method = LocalMethod::basic;
};

struct LocalEstimate {
  int d_hat = 0;
  double u_value = 0.0;
  double mean_angle = 0.0;
  std::ptrdiff_t center_index = -1;  // row in the cloud, or -1 for an external center
  std::size_t k = 0;
};

// Default neighbourhood size: round(10 * log10(n)), at least 2.
std::size_t default_k(std::size_t n);

// Nearest moment: argmin_d |beta_d - u| over d = 1..d_max, ties to the
// smaller dimension. d_max = 0 means the full table range.
int estimate_basic(double u_value, const MomentTable& table, int d_max = 0);

// Cutoff rule. The boundary between deciding d and d-1 is
//   eta_d = beta_d + sigma_d / (sigma_d + sigma_{d+1}) * (beta_{d-1} - beta_d),
// which splits each interval (beta_d, beta_{d-1}) in proportion to the null
// standard deviations on either side. The estimate is the smallest d whose
// lower boundary eta_{d+1} does not exceed u; values above eta_2 give 1 and
// values below every boundary give d_max.
int estimate_discriminant(double u_value, const MomentTable& table, int d_max = 0);

// Pseudo-likelihood rule: argmax_d of the cached null density of
// k * (E_n - beta_d) evaluated at k * (u - beta_d), ties to the smaller
// dimension. Throws calibration_mismatch_error if the cache was built for a
// different k or lacks an entry for some d <= d_max.
int estimate_kernel(double u_value, std::size_t k, const CalibrationCache& cache,
                    const MomentTable& table, int d_max = 0);

// Full local pipeline: k nearest neighbours of `center`, angle statistic,
// then the configured decision rule. The table must cover the resolved
// d_max. A kernel-method call requires a cache.
LocalEstimate estimate_local(const PointCloud& cloud, std::span<const double> center,
                             const LocalConfig& cfg, const MomentTable& table,
                             const CalibrationCache* cache = nullptr);

// Same, centered on a cloud row; the row itself is excluded by coincidence.
LocalEstimate estimate_local_at(const PointCloud& cloud, std::size_t center_index,
                                const LocalConfig& cfg, const MomentTable& table,
                                const CalibrationCache* cache = nullptr);

}  // namespace angledim
