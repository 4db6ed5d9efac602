#include "angledim/local_estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "angledim/errors.hpp"

namespace angledim {

namespace {

int resolve_d_max(const MomentTable& table, int d_max, const char* who) {
  if (d_max == 0) return table.d_max;
  if (d_max < 1 || d_max > table.d_max) {
    throw config_error(std::string(who) + ": d_max " + std::to_string(d_max) +
                       " outside table range 1.." + std::to_string(table.d_max));
  }
  return d_max;
}

}  // namespace

std::size_t default_k(std::size_t n) {
  if (n < 2) throw std::domain_error("default_k: cloud must have at least 2 points");
  const double k = std::floor(10.0 * std::log10(static_cast<double>(n)) + 0.5);
  return std::max<std::size_t>(2, static_cast<std::size_t>(k));
}

int estimate_basic(double u_value, const MomentTable& table, int d_max) {
  const int top = resolve_d_max(table, d_max, "estimate_basic");
  int best = 1;
  double best_diff = std::abs(table.beta_at(1) - u_value);
  for (int d = 2; d <= top; ++d) {
    const double diff = std::abs(table.beta_at(d) - u_value);
    if (diff < best_diff) {
      best = d;
      best_diff = diff;
    }
  }
  return best;
}

int estimate_discriminant(double u_value, const MomentTable& table, int d_max) {
  const int top = resolve_d_max(table, d_max, "estimate_discriminant");
  for (int d = 1; d < top; ++d) {
    // eta_{d+1}; sigma_{d_max+1} may fall outside the table, so the closed
    // forms are used directly.
    const double s_lo = std::sqrt(sigma_sq(d + 1));
    const double s_hi = std::sqrt(sigma_sq(d + 2));
    const double eta =
        beta(d + 1) + s_lo / (s_lo + s_hi) * (table.beta_at(d) - table.beta_at(d + 1));
    if (u_value >= eta) return d;
  }
  return top;
}

int estimate_kernel(double u_value, std::size_t k, const CalibrationCache& cache,
                    const MomentTable& table, int d_max) {
  const int top = resolve_d_max(table, d_max, "estimate_kernel");
  if (cache.k != k) {
    throw calibration_mismatch_error("estimate_kernel: cache built for k = " +
                                     std::to_string(cache.k) + ", estimate uses k = " +
                                     std::to_string(k));
  }
  int best = 0;
  double best_density = -1.0;
  for (int d = 1; d <= top; ++d) {
    const CalibrationEntry* entry = cache.find(d);
    if (entry == nullptr) {
      throw calibration_mismatch_error("estimate_kernel: cache has no entry for d = " +
                                       std::to_string(d));
    }
    const double y = static_cast<double>(k) * (u_value - table.beta_at(d));
    const double density = kde_eval(entry->samples, y);
    if (density > best_density) {
      best = d;
      best_density = density;
    }
  }
  return best;
}

LocalEstimate estimate_local(const PointCloud& cloud, std::span<const double> center,
                             const LocalConfig& cfg, const MomentTable& table,
                             const CalibrationCache* cache) {
  const std::size_t k = cfg.k != 0 ? cfg.k : default_k(cloud.size());
  const int d_max =
      cfg.d_max != 0 ? cfg.d_max : static_cast<int>(cloud.dim());
  if (d_max > table.d_max) {
    throw config_error("estimate_local: table covers d <= " + std::to_string(table.d_max) +
                       ", need " + std::to_string(d_max));
  }
  const NeighborSet ns = knn(cloud, center, k);
  const AngleStat stat = u_statistic(ns);

  LocalEstimate est;
  est.u_value = stat.u_value;
  est.mean_angle = stat.mean_angle;
  est.k = k;
  switch (cfg.method) {
    case LocalMethod::basic:
      est.d_hat = estimate_basic(stat.u_value, table, d_max);
      break;
    case LocalMethod::discriminant:
      est.d_hat = estimate_discriminant(stat.u_value, table, d_max);
      break;
    case LocalMethod::kernel:
      if (cache == nullptr) {
        throw calibration_mismatch_error(
            "estimate_local: kernel method requires a calibration cache");
      }
      est.d_hat = estimate_kernel(stat.u_value, k, *cache, table, d_max);
      break;
  }
  return est;
}

LocalEstimate estimate_local_at(const PointCloud& cloud, std::size_t center_index,
                                const LocalConfig& cfg, const MomentTable& table,
                                const CalibrationCache* cache) {
  if (center_index >= cloud.size()) {
    throw std::domain_error("estimate_local_at: center index out of range");
  }
  LocalEstimate est = estimate_local(cloud, cloud.point(center_index), cfg, table, cache);
  est.center_index = static_cast<std::ptrdiff_t>(center_index);
  return est;
}

}  // namespace angledim
