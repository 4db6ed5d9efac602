#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "angledim/rng.hpp"

namespace angledim {

// Null-distribution samples for one dimension d: values of k * (E_n - beta_d)
// where E_n is the angle-variance statistic of k exact uniform directions on
// S^{d-1}. Raw samples are stored so caches stay valid if downstream
// smoothing parameters change.
struct CalibrationEntry {
  int d = 0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;   // stream seed this entry was drawn from
  std::vector<double> samples;
};

struct CalibrationCache {
  int format_version = 1;
  std::size_t k = 0;
  std::vector<CalibrationEntry> entries;  // ascending d, contiguous from 1

  const CalibrationEntry* find(int d) const;
  int d_max() const;
};

// `count` points uniform on S^{d-1}, flat row-major, via normalized
// Gaussians.
std::vector<double> sample_uniform_sphere(int d, std::size_t count, RngStream& rng);

// One draw of E_n: the angle-variance U-statistic of k uniform directions.
// The directions themselves play the role of the unit vectors; no centering
// is involved.
double sample_en(int d, std::size_t k, RngStream& rng);

// `count` independent draws of E_n. Sample i always comes from the derived
// stream mix_seed(seed, i), so the output is one fixed vector regardless of
// thread count.
std::vector<double> en_samples(int d, std::size_t k, std::size_t count, std::uint64_t seed,
                               int threads = 1);

// Cache of k * (E_n - beta_d) samples for d = 1..d_max. Entry d uses stream
// seed mix_seed(seed, d).
CalibrationCache build_cache(int d_max, std::size_t k, std::size_t sample_count,
                             std::uint64_t seed, int threads = 1);

// Gaussian-kernel density estimate with the fixed reference bandwidth
// (4 / (3 M))^{1/5}.
double kde_bandwidth(std::size_t sample_count);
double kde_eval(std::span<const double> samples, double y);

double normal_pdf(double x);
double normal_cdf(double x);

// Inverse standard normal CDF: piecewise rational approximation refined by
// one Halley step, good to ~1e-15 over (0, 1).
double normal_quantile(double p);

// Paired quantiles for a normal probability plot of the standardized null
// statistic. sample_quantile[i] is the i-th order statistic of
// k * (E_n - beta_d) divided by its exact standard deviation
// k * sigma_d / sqrt(C(k,2)); normal_quantile[i] is the Gaussian quantile at
// (i + 0.5) / count.
struct QQData {
  int d = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<double> normal_quantiles;
  std::vector<double> sample_quantiles;
};

QQData qq_data(int d, std::size_t k, std::size_t count, std::uint64_t seed, int threads = 1);

}  // namespace angledim
