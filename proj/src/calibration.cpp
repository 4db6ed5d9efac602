#include "angledim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "angledim/errors.hpp"
#include "angledim/moments.hpp"
#include "angledim/parallel.hpp"

namespace angledim {

const CalibrationEntry* CalibrationCache::find(int d) const {
  for (const auto& e : entries) {
    if (e.d == d) return &e;
  }
  return nullptr;
}

int CalibrationCache::d_max() const {
  int top = 0;
  for (const auto& e : entries) top = std::max(top, e.d);
  return top;
}

std::vector<double> sample_uniform_sphere(int d, std::size_t count, RngStream& rng) {
  if (d < 1) throw std::domain_error("sample_uniform_sphere: d must be >= 1");
  std::vector<double> out(count * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < count; ++i) {
    double* row = out.data() + i * d;
    double nsq = 0.0;
    do {
      nsq = 0.0;
      for (int j = 0; j < d; ++j) {
        row[j] = rng.normal();
        nsq += row[j] * row[j];
      }
    } while (nsq < 1e-280);  // all-zero draw is astronomically unlikely but fatal
    const double inv = 1.0 / std::sqrt(nsq);
    for (int j = 0; j < d; ++j) row[j] *= inv;
  }
  return out;
}

double sample_en(int d, std::size_t k, RngStream& rng) {
  if (k < 2) throw std::domain_error("sample_en: k must be >= 2");
  const std::vector<double> z = sample_uniform_sphere(d, k, rng);
  constexpr double half_pi = std::numbers::pi / 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double* a = z.data() + i * d;
    for (std::size_t j = i + 1; j < k; ++j) {
      const double* b = z.data() + j * d;
      double c = 0.0;
      for (int t = 0; t < d; ++t) c += a[t] * b[t];
      c = std::clamp(c, -1.0, 1.0);
      const double dev = std::acos(c) - half_pi;
      sum += dev * dev;
    }
  }
  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  return sum / pairs;
}

std::vector<double> en_samples(int d, std::size_t k, std::size_t count, std::uint64_t seed,
                               int threads) {
  if (d < 1) throw std::domain_error("en_samples: d must be >= 1");
  if (k < 2) throw std::domain_error("en_samples: k must be >= 2");
  std::vector<double> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    RngStream stream(mix_seed(seed, i));
    out[i] = sample_en(d, k, stream);
  });
  return out;
}

CalibrationCache build_cache(int d_max, std::size_t k, std::size_t sample_count,
                             std::uint64_t seed, int threads) {
  if (d_max < 1) throw std::domain_error("build_cache: d_max must be >= 1");
  if (k < 2) throw std::domain_error("build_cache: k must be >= 2");
  if (sample_count < 2) throw std::domain_error("build_cache: sample_count must be >= 2");
  CalibrationCache cache;
  cache.k = k;
  cache.entries.reserve(d_max);
  for (int d = 1; d <= d_max; ++d) {
    CalibrationEntry entry;
    entry.d = d;
    entry.sample_count = sample_count;
    entry.seed = mix_seed(seed, static_cast<std::uint64_t>(d));
    entry.samples = en_samples(d, k, sample_count, entry.seed, threads);
    const double b = beta(d);
    for (double& v : entry.samples) v = static_cast<double>(k) * (v - b);
    cache.entries.push_back(std::move(entry));
  }
  return cache;
}

double kde_bandwidth(std::size_t sample_count) {
  if (sample_count == 0) throw std::domain_error("kde_bandwidth: sample_count must be >= 1");
  return std::pow(4.0 / (3.0 * static_cast<double>(sample_count)), 0.2);
}

double kde_eval(std::span<const double> samples, double y) {
  if (samples.empty()) throw std::domain_error("kde_eval: empty sample set");
  const double b = kde_bandwidth(samples.size());
  double sum = 0.0;
  for (const double s : samples) sum += normal_pdf((y - s) / b);
  return sum / (static_cast<double>(samples.size()) * b);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  // Rational approximations (central part and tails), then a Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

QQData qq_data(int d, std::size_t k, std::size_t count, std::uint64_t seed, int threads) {
  if (count < 2) throw std::domain_error("qq_data: count must be >= 2");
  if (k < 2) throw std::domain_error("qq_data: k must be >= 2");
  const double b = beta(d);
  const double sigma = std::sqrt(sigma_sq(d));
  if (sigma <= 0.0) {
    throw degenerate_data_error("qq_data: sigma_d is zero for d = " + std::to_string(d));
  }
  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  // Exact null standard deviation of k * (E_n - beta_d); standardizing with
  // it (rather than the empirical moments) keeps the plot an honest check of
  // both spread and shape.
  const double sd = static_cast<double>(k) * sigma / std::sqrt(pairs);

  QQData qq;
  qq.d = d;
  qq.k = k;
  qq.seed = seed;
  qq.sample_quantiles = en_samples(d, k, count, seed, threads);
  for (double& v : qq.sample_quantiles) v = static_cast<double>(k) * (v - b) / sd;
  std::sort(qq.sample_quantiles.begin(), qq.sample_quantiles.end());
  qq.normal_quantiles.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    qq.normal_quantiles[i] =
        normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(count));
  }
  return qq;
}

}  // namespace angledim
