#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "angledim/baseline_lb.hpp"
#include "angledim/errors.hpp"
#include "angledim/manifolds.hpp"
#include "angledim/rng.hpp"

using namespace angledim;

TEST_CASE("lb_local on a hand-computed line") {
  // points 0, 1, 3, 7; from point 0 the sorted distances are 1, 3, 7,
  // so m = (3 - 2) / (ln(7/1) + ln(7/3))
  const PointCloud cloud = PointCloud::from_rows({{0.0}, {1.0}, {3.0}, {7.0}});
  const double want = 1.0 / (std::log(7.0) + std::log(7.0 / 3.0));
  CHECK(lb_local(cloud, 0, 3) == doctest::Approx(want).epsilon(1e-12));
  CHECK(lb_local(cloud, 0, 3) == doctest::Approx(0.3581).epsilon(1e-3));
}

TEST_CASE("lb_local with log-spaced distances has a closed form") {
  // L_j = r^j: sum_j ln(L_k / L_j) = ln(r) * k (k - 1) / 2, so
  // m = (k - 2) / (ln(r) * k (k - 1) / 2) with the j = k term contributing 0.
  const double r = 1.5;
  const std::size_t k = 6;
  std::vector<std::vector<double>> rows = {{0.0}};
  for (std::size_t j = 1; j <= k; ++j) rows.push_back({std::pow(r, static_cast<double>(j))});
  const PointCloud cloud = PointCloud::from_rows(rows);
  double logsum = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    logsum += std::log(std::pow(r, static_cast<double>(k)) / std::pow(r, static_cast<double>(j)));
  }
  const double want = (static_cast<double>(k) - 2.0) / logsum;
  CHECK(lb_local(cloud, 0, k) == doctest::Approx(want).epsilon(1e-12));
  const double closed = (static_cast<double>(k) - 2.0) /
                        (std::log(r) * 0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
  CHECK(lb_local(cloud, 0, k) == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("lb_local argument validation") {
  const PointCloud cloud = PointCloud::from_rows({{0.0}, {1.0}, {2.0}, {4.0}});
  CHECK_THROWS_AS((void)lb_local(cloud, 0, 2), std::domain_error);
  CHECK_THROWS_AS((void)lb_local(cloud, 9, 3), std::domain_error);
  CHECK_THROWS_AS((void)lb_local(cloud, 0, 4), insufficient_sample_error);
}

TEST_CASE("duplicate points are degenerate for the baseline") {
  const PointCloud cloud =
      PointCloud::from_rows({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  CHECK_THROWS_AS((void)lb_local(cloud, 0, 3), degenerate_data_error);
}

TEST_CASE("baseline on a uniform segment is close to one") {
  RngStream rng(314);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 2000; ++i) rows.push_back({rng.uniform01()});
  const PointCloud cloud = PointCloud::from_rows(rows);
  const LBEstimate est = lb_global(cloud, LBConfig{});
  CHECK(est.value == doctest::Approx(1.0).epsilon(0.08));
  CHECK(est.rounded == 1);
}

TEST_CASE("baseline rounding is half toward the smaller integer") {
  // exercised through lb_global on clouds is brittle; the rule itself is
  // value - floor(value) > 0.5 rounds up, otherwise down
  RngStream rng(3);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1500; ++i) rows.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
  const PointCloud cloud = PointCloud::from_rows(rows);
  const LBEstimate est = lb_global(cloud, LBConfig{});
  CHECK(est.rounded == static_cast<int>(std::floor(est.value)) +
                           ((est.value - std::floor(est.value)) > 0.5 ? 1 : 0));
}

TEST_CASE("baseline config validation") {
  const PointCloud cloud = generate(ManifoldId::M7, 100, 1);
  CHECK_THROWS_AS((void)lb_global(cloud, LBConfig{2, 20}), config_error);
  CHECK_THROWS_AS((void)lb_global(cloud, LBConfig{15, 10}), config_error);
  CHECK_THROWS_AS((void)lb_global(cloud, LBConfig{10, 200}), insufficient_sample_error);
}

TEST_CASE("baseline is invariant under isometry and scaling") {
  const PointCloud base = generate(ManifoldId::M7, 600, 77);
  const double ct = std::cos(1.1);
  const double st = std::sin(1.1);
  std::vector<std::vector<double>> iso_rows;
  std::vector<std::vector<double>> scaled_rows;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto p = base.point(i);
    iso_rows.push_back({ct * p[0] - st * p[1] + 3.0, st * p[0] + ct * p[1] - 1.0, p[2] + 0.5});
    scaled_rows.push_back({2.5 * p[0], 2.5 * p[1], 2.5 * p[2]});
  }
  const LBEstimate plain = lb_global(base, LBConfig{});
  const LBEstimate iso = lb_global(PointCloud::from_rows(iso_rows), LBConfig{});
  const LBEstimate scaled = lb_global(PointCloud::from_rows(scaled_rows), LBConfig{});
  CHECK(iso.value == doctest::Approx(plain.value).epsilon(1e-10));
  CHECK(scaled.value == doctest::Approx(plain.value).epsilon(1e-10));
}

TEST_CASE("baseline recovers the affine patch dimension") {
  const PointCloud cloud = generate(ManifoldId::M2, 2500, 21);
  const LBEstimate est = lb_global(cloud, LBConfig{});
  CHECK(est.rounded == 3);
}

TEST_CASE("thread count does not change the baseline") {
  const PointCloud cloud = generate(ManifoldId::M7, 500, 10);
  const LBEstimate one = lb_global(cloud, LBConfig{}, 1);
  const LBEstimate four = lb_global(cloud, LBConfig{}, 4);
  CHECK(one.value == four.value);
  CHECK(one.rounded == four.rounded);
}
