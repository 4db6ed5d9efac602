#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "angledim/errors.hpp"
#include "angledim/local_estimator.hpp"
#include "angledim/manifolds.hpp"

using namespace angledim;

TEST_CASE("default_k anchors") {
  CHECK(default_k(2500) == 34);
  CHECK(default_k(10) == 10);
  CHECK(default_k(100000) == 50);
  CHECK(default_k(2) == 3);  // 10*log10(2) = 3.01
  CHECK_THROWS_AS((void)default_k(1), std::domain_error);
}

TEST_CASE("estimate_basic fixed points and anchors") {
  const MomentTable table = MomentTable::build(20);
  for (int d = 1; d <= 20; ++d) {
    CAPTURE(d);
    CHECK(estimate_basic(table.beta_at(d), table) == d);
  }
  CHECK(estimate_basic(0.82, table) == 2);
  // 0.10 sits between beta_10 = 0.11066 and beta_11 = 0.09967; the latter is
  // closer by a factor of 30.
  CHECK(estimate_basic(0.10, table) == 11);
  CHECK(estimate_basic(0.0, table) == 20);
  CHECK(estimate_basic(10.0, table) == 1);
}

TEST_CASE("estimate_basic is monotone nonincreasing in u") {
  const MomentTable table = MomentTable::build(30);
  int prev = 30;
  for (int step = 0; step <= 1300; ++step) {
    const double u = 0.002 * step;
    const int d = estimate_basic(u, table);
    CHECK(d >= 1);
    CHECK(d <= prev);  // larger u never yields a larger dimension
    prev = d;
  }
  CHECK(prev == 1);
}

TEST_CASE("estimate_basic tie goes to the smaller dimension") {
  const MomentTable table = MomentTable::build(5);
  const double mid = 0.5 * (table.beta_at(2) + table.beta_at(3));
  CHECK(estimate_basic(mid, table) == 2);
}

TEST_CASE("estimate_discriminant anchors") {
  const MomentTable table = MomentTable::build(20);
  CHECK(estimate_discriminant(beta(1), table) == 1);
  CHECK(estimate_discriminant(beta(5), table) == 5);
  CHECK(estimate_discriminant(0.0, table) == 20);
  // boundary sits strictly between adjacent betas
  for (int d = 2; d <= 20; ++d) {
    CAPTURE(d);
    const double s_lo = std::sqrt(sigma_sq(d));
    const double s_hi = std::sqrt(sigma_sq(d + 1));
    const double eta =
        beta(d) + s_lo / (s_lo + s_hi) * (beta(d - 1) - beta(d));
    CHECK(eta > beta(d));
    CHECK(eta < beta(d - 1));
  }
  // every exact beta_d classifies to d
  for (int d = 1; d <= 20; ++d) {
    CAPTURE(d);
    CHECK(estimate_discriminant(table.beta_at(d), table) == d);
  }
}

TEST_CASE("estimate_kernel picks the dimension whose null law covers u") {
  const MomentTable table = MomentTable::build(10);
  const std::size_t k = 34;
  const CalibrationCache cache = build_cache(10, k, 400, 777);
  CHECK(cache.entries.size() == 10);
  CHECK(estimate_kernel(table.beta_at(7), k, cache, table) == 7);
  CHECK(estimate_kernel(table.beta_at(3), k, cache, table) == 3);
}

TEST_CASE("kernel bandwidth anchor") {
  CHECK(kde_bandwidth(5000) == doctest::Approx(0.192837).epsilon(1e-5));
}

TEST_CASE("degenerate single-sample cache reduces to the basic rule") {
  const MomentTable table = MomentTable::build(12);
  const std::size_t k = 20;
  CalibrationCache cache;
  cache.k = k;
  for (int d = 1; d <= 12; ++d) {
    CalibrationEntry e;
    e.d = d;
    e.sample_count = 1;
    e.samples = {0.0};
    cache.entries.push_back(e);
  }
  for (double u : {0.03, 0.011, 0.125, 0.5, 1.3, 2.2, 0.0}) {
    CAPTURE(u);
    CHECK(estimate_kernel(u, k, cache, table) == estimate_basic(u, table));
  }
}

TEST_CASE("estimate_kernel rejects mismatched caches") {
  const MomentTable table = MomentTable::build(5);
  const CalibrationCache cache = build_cache(3, 10, 50, 1);
  CHECK_THROWS_AS((void)estimate_kernel(0.3, 12, cache, table),
                  calibration_mismatch_error);
  // same k, but entries stop at d = 3 < d_max = 5
  CHECK_THROWS_AS((void)estimate_kernel(0.3, 10, cache, table),
                  calibration_mismatch_error);
}

TEST_CASE("estimate_local on a sphere sample lands near the true dimension") {
  const MomentTable table = MomentTable::build(10);
  int in_window = 0;
  const int runs = 20;
  for (int s = 0; s < runs; ++s) {
    const PointCloud cloud = generate(ManifoldId::M1, 2500, 8800 + s);
    const LocalConfig cfg;  // auto k = 34, d_max = ambient 10
    const LocalEstimate est = estimate_local_at(cloud, 0, cfg, table);
    CHECK(est.k == 34);
    if (est.d_hat >= 8 && est.d_hat <= 10) ++in_window;
  }
  CHECK(in_window >= 18);  // >= 90% of seeded runs
}

TEST_CASE("estimate_local on an affine 3-plane sample is exact") {
  const MomentTable table = MomentTable::build(5);
  const PointCloud cloud = generate(ManifoldId::M2, 2500, 31);
  const LocalConfig cfg;
  const LocalEstimate est = estimate_local_at(cloud, 17, cfg, table);
  CHECK(est.d_hat == 3);
  CHECK(est.center_index == 17);
}

TEST_CASE("zero statistic maps to the largest candidate dimension") {
  // two orthogonal neighbors around the origin
  const PointCloud cloud =
      PointCloud::from_rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const MomentTable table = MomentTable::build(3);
  LocalConfig cfg;
  cfg.k = 2;
  const std::vector<double> center = {0.0, 0.0, 0.0};
  const LocalEstimate est = estimate_local(cloud, center, cfg, table);
  CHECK(est.u_value == doctest::Approx(0.0));
  CHECK(est.d_hat == 3);
  CHECK(est.center_index == -1);
}

TEST_CASE("kernel method requires a cache") {
  const MomentTable table = MomentTable::build(3);
  const PointCloud cloud = generate(ManifoldId::M7, 200, 5);
  LocalConfig cfg;
  cfg.method = LocalMethod::kernel;
  CHECK_THROWS_AS((void)estimate_local_at(cloud, 0, cfg, table),
                  calibration_mismatch_error);
}

TEST_CASE("table must cover the requested candidate range") {
  const MomentTable table = MomentTable::build(2);
  const PointCloud cloud = generate(ManifoldId::M7, 200, 5);  // ambient 3
  const LocalConfig cfg;
  CHECK_THROWS_AS((void)estimate_local_at(cloud, 0, cfg, table), config_error);
}
