#include "angledim/global_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "angledim/errors.hpp"
#include "angledim/parallel.hpp"
#include "angledim/rng.hpp"

namespace angledim {

namespace {

// Per-point (score, total rank deviation from the median rank) for one
// cloud; the deviation is the score tie-breaker in pick_centers.
struct CentralityDetail {
  std::vector<double> scores;
  std::vector<double> rank_deviation;
};

CentralityDetail centrality_detail(const PointCloud& cloud, CentralityWeight weight) {
  const std::size_t n = cloud.size();
  const std::size_t m = cloud.dim();
  CentralityDetail out;
  out.scores.assign(n, 0.0);
  out.rank_deviation.assign(n, 0.0);
  const double mid_rank = 0.5 * static_cast<double>(n + 1);
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < m; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = cloud.point(a)[j];
      const double vb = cloud.point(b)[j];
      if (va != vb) return va < vb;
      return a < b;
    });
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t rank = r + 1;
      out.scores[order[r]] += centrality_weight(weight, rank, n);
      out.rank_deviation[order[r]] += std::abs(static_cast<double>(rank) - mid_rank);
    }
  }
  return out;
}

}  // namespace

std::size_t default_c(std::size_t n) {
  if (n < 1) throw std::domain_error("default_c: empty cloud");
  const double c = std::floor(2.0 * std::log(static_cast<double>(n)) + 0.5);
  return std::max<std::size_t>(1, static_cast<std::size_t>(c));
}

double centrality_weight(CentralityWeight weight, std::size_t rank, std::size_t n) {
  if (n == 0 || rank < 1 || rank > n) {
    throw std::domain_error("centrality_weight: rank must lie in 1..n");
  }
  // |1/2 - (rank-1)/n| evaluated as |n - 2(rank-1)| / (2n): the integer
  // numerator keeps weights of symmetric ranks bit-identical, so score ties
  // the rule relies on actually occur.
  const auto r = static_cast<long long>(rank);
  const auto nn = static_cast<long long>(n);
  const double folded = static_cast<double>(std::abs(nn - 2 * (r - 1))) /
                        (2.0 * static_cast<double>(n));
  return weight == CentralityWeight::centered ? 0.5 - folded : folded;
}

std::vector<double> centrality_scores(const PointCloud& cloud, CentralityWeight weight) {
  return centrality_detail(cloud, weight).scores;
}

std::vector<std::vector<std::size_t>> partition_indices(std::size_t n, std::size_t c,
                                                        std::uint64_t seed) {
  if (c < 1) throw config_error("partition_indices: c must be >= 1");
  if (c > n) {
    throw config_error("partition_indices: c = " + std::to_string(c) +
                       " exceeds cloud size " + std::to_string(n));
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  RngStream rng(seed);
  rng.shuffle(idx);
  std::vector<std::vector<std::size_t>> blocks(c);
  const std::size_t base = n / c;
  const std::size_t extra = n % c;
  std::size_t at = 0;
  for (std::size_t b = 0; b < c; ++b) {
    const std::size_t len = base + (b < extra ? 1 : 0);
    blocks[b].assign(idx.begin() + at, idx.begin() + at + len);
    at += len;
  }
  return blocks;
}

std::vector<std::size_t> pick_centers(const PointCloud& cloud, std::size_t c,
                                      std::uint64_t seed, CentralityWeight weight) {
  const auto blocks = partition_indices(cloud.size(), c, seed);
  std::vector<std::size_t> centers;
  centers.reserve(c);
  for (const auto& block : blocks) {
    PointCloud sub(block.size(), cloud.dim());
    for (std::size_t i = 0; i < block.size(); ++i) {
      const auto src = cloud.point(block[i]);
      std::copy(src.begin(), src.end(), sub.point(i).begin());
    }
    const CentralityDetail detail = centrality_detail(sub, weight);
    std::size_t best = 0;
    for (std::size_t i = 1; i < block.size(); ++i) {
      const bool better =
          detail.scores[i] > detail.scores[best] ||
          (detail.scores[i] == detail.scores[best] &&
           (detail.rank_deviation[i] < detail.rank_deviation[best] ||
            (detail.rank_deviation[i] == detail.rank_deviation[best] &&
             block[i] < block[best])));
      if (better) best = i;
    }
    centers.push_back(block[best]);
  }
  return centers;
}

DiscardOutcome mean_angle_discard(const std::vector<LocalEstimate>& estimates,
                                  double fraction) {
  if (estimates.empty()) throw std::domain_error("mean_angle_discard: empty estimate list");
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw std::domain_error("mean_angle_discard: fraction must lie in [0, 1)");
  }
  const std::size_t count = estimates.size();
  std::size_t ndrop = fraction == 0.0
                          ? 0
                          : static_cast<std::size_t>(
                                std::ceil(fraction * static_cast<double>(count)));
  ndrop = std::min(ndrop, count - 1);  // at least one estimate survives

  std::vector<std::size_t> pos(count);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  constexpr double half_pi = std::numbers::pi / 2.0;
  const auto deviation = [&](std::size_t i) {
    return std::abs(estimates[i].mean_angle - half_pi);
  };
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    const double da = deviation(a);
    const double db = deviation(b);
    if (da != db) return da > db;
    return a > b;
  });

  std::vector<bool> dropped(count, false);
  DiscardOutcome out;
  out.discarded.reserve(ndrop);
  for (std::size_t r = 0; r < ndrop; ++r) {
    const std::size_t i = pos[r];
    dropped[i] = true;
    out.discarded.push_back({i, estimates[i].center_index, deviation(i)});
  }
  std::sort(out.discarded.begin(), out.discarded.end(),
            [](const DiscardedCenter& a, const DiscardedCenter& b) {
              return a.center_pos < b.center_pos;
            });
  out.kept.reserve(count - ndrop);
  for (std::size_t i = 0; i < count; ++i) {
    if (!dropped[i]) out.kept.push_back(estimates[i]);
  }
  return out;
}

GlobalEstimate estimate_global(const PointCloud& cloud, const GlobalConfig& cfg,
                               const MomentTable& table, std::uint64_t seed,
                               const CalibrationCache* cache) {
  const std::size_t n = cloud.size();
  if (n < 2) throw insufficient_sample_error("estimate_global: cloud too small");
  const std::size_t c = cfg.c != 0 ? cfg.c : default_c(n);
  if (c > n) {
    throw config_error("estimate_global: c = " + std::to_string(c) +
                       " exceeds cloud size " + std::to_string(n));
  }

  LocalConfig local = cfg.local;
  if (local.k == 0) local.k = default_k(n);
  if (local.d_max == 0) local.d_max = static_cast<int>(cloud.dim());
  if (local.method == LocalMethod::kernel && cache == nullptr) {
    throw calibration_mismatch_error(
        "estimate_global: kernel method requires a calibration cache");
  }

  GlobalEstimate result;
  result.centers = pick_centers(cloud, c, seed, cfg.weight);
  result.per_center.resize(result.centers.size());
  parallel_for(result.centers.size(), cfg.threads, [&](std::size_t i) {
    result.per_center[i] =
        estimate_local_at(cloud, result.centers[i], local, table, cache);
  });

  DiscardOutcome outcome = mean_angle_discard(result.per_center, cfg.discard_fraction);
  result.discarded = std::move(outcome.discarded);

  std::vector<int> values;
  values.reserve(outcome.kept.size());
  for (const auto& est : outcome.kept) values.push_back(est.d_hat);
  std::sort(values.begin(), values.end());
  const std::size_t s = values.size();
  result.d_hat = s % 2 == 1 ? values[s / 2] : (values[s / 2 - 1] + values[s / 2]) / 2;
  return result;
}

}  // namespace angledim
