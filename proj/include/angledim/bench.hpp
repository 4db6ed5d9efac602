#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "angledim/baseline_lb.hpp"
#include "angledim/calibration.hpp"
#include "angledim/manifolds.hpp"

namespace angledim {

// Estimators compared by the benchmark. The +H variants rerun the same
// global pipeline with the mean-angle discard heuristic switched on.
enum class EstimatorKind { basic, bh, kernel, kh, lb };

const char* estimator_name(EstimatorKind kind);     // "basic", "bh", ...
const char* estimator_label(EstimatorKind kind);    // "Basic", "B+H", ...
EstimatorKind parse_estimator(const std::string& text);

struct BenchConfig {
  std::vector<ManifoldId> manifolds;
  std::vector<EstimatorKind> estimators;
  int trials = 50;
  std::size_t n = 2500;
  std::uint64_t seed = 0;
  double heuristic_discard_fraction = 0.25;
  LBConfig lb;
  const CalibrationCache* cache = nullptr;  // required iff kernel/kh present
  int threads = 1;
};

struct BenchCell {
  ManifoldId manifold;
  EstimatorKind estimator;
  int true_d = 0;
  std::vector<int> estimates;  // one per trial, trial order
  double mse = 0.0;
  double mpe = 0.0;            // mean percentage error, in percent
};

struct BenchReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::size_t n = 0;
  double heuristic_discard_fraction = 0.0;
  std::vector<ManifoldId> manifolds;
  std::vector<EstimatorKind> estimators;
  std::vector<BenchCell> cells;  // manifold-major, estimator order within

  const BenchCell& cell(ManifoldId m, EstimatorKind e) const;
};

// MSE and mean percentage error of a trial series against the true
// dimension, or against per-trial truths of the same length.
std::pair<double, double> mse_mpe(const std::vector<int>& estimates, int true_d);
std::pair<double, double> mse_mpe(const std::vector<int>& estimates,
                                  const std::vector<int>& truths);

// Runs the benchmark. Trial t of manifold mu draws its cloud from the
// stream (seed, mu, t); all estimators of a trial share that cloud. With
// threads > 1, (manifold, trial) pairs run concurrently and results are
// unchanged.
BenchReport run_bench(const BenchConfig& cfg);

enum class ReportFormat { csv, json, markdown };

std::string render_report(const BenchReport& report, ReportFormat format);
BenchReport report_from_json(const std::string& text);

}  // namespace angledim
