#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "angledim/local_estimator.hpp"
#include "angledim/point_cloud.hpp"

namespace angledim {

// Coordinate-wise centrality. For rank x in 1..n (per coordinate, ascending,
// ties by point index), the weight of the default `centered` form is
//   w(x) = 1/2 - |1/2 - (x - 1) / n|,
// a tent peaking near the median rank. The `folded` form drops the leading
// 1/2 and rewards extreme ranks instead; it is kept selectable because both
// appear in practice, but `centered` is what every default path uses.
enum class CentralityWeight { centered, folded };

struct GlobalConfig {
  std::size_t c = 0;             // number of subsamples / centers; 0: default_c(n)
  double discard_fraction = 0.0; // fraction of centers dropped by mean-angle deviation
  LocalConfig local;
  CentralityWeight weight = CentralityWeight::centered;
  int threads = 1;
};

struct DiscardedCenter {
  std::size_t center_pos = 0;        // position in the per_center list
  std::ptrdiff_t cloud_index = -1;   // row of the discarded center
  double deviation = 0.0;            // |mean_angle - pi/2|
};

struct GlobalEstimate {
  int d_hat = 0;
  std::vector<std::size_t> centers;        // cloud rows chosen as centers
  std::vector<LocalEstimate> per_center;   // one per center, pre-discard
  std::vector<DiscardedCenter> discarded;
};

// Default subsample count: round(2 * ln(n)), at least 1.
std::size_t default_c(std::size_t n);

double centrality_weight(CentralityWeight weight, std::size_t rank, std::size_t n);

// Sum over coordinates of the rank weight of each point.
std::vector<double> centrality_scores(const PointCloud& cloud,
                                      CentralityWeight weight = CentralityWeight::centered);

// Shuffles 0..n-1 with the stream for `seed` and cuts the result into c
// contiguous blocks; block sizes differ by at most one (n mod c blocks get
// the extra point).
std::vector<std::vector<std::size_t>> partition_indices(std::size_t n, std::size_t c,
                                                        std::uint64_t seed);

// Most central row of each block. Score ties are broken by smaller total
// rank deviation from the median rank, then by lower cloud index.
std::vector<std::size_t> pick_centers(const PointCloud& cloud, std::size_t c,
                                      std::uint64_t seed,
                                      CentralityWeight weight = CentralityWeight::centered);

struct DiscardOutcome {
  std::vector<LocalEstimate> kept;       // original order
  std::vector<DiscardedCenter> discarded;
};

// Drops the ceil(fraction * count) estimates whose mean angle deviates most
// from pi/2, but always keeps at least one. Deviation ties discard the
// later center.
DiscardOutcome mean_angle_discard(const std::vector<LocalEstimate>& estimates,
                                  double fraction);

// Full pipeline: partition, centers, local estimates against the whole
// cloud, optional discard, median (even count: lower-rounded mean of the two
// middle values).
GlobalEstimate estimate_global(const PointCloud& cloud, const GlobalConfig& cfg,
                               const MomentTable& table, std::uint64_t seed,
                               const CalibrationCache* cache = nullptr);

}  // namespace angledim
