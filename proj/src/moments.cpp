#include "angledim/moments.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace angledim {

namespace {

constexpr double kPi = std::numbers::pi;

// Partial sums accumulated smallest term first to limit rounding error.
double sum_odd_pow(int k_max, int power) {
  double s = 0.0;
  for (int j = k_max; j >= 0; --j) {
    const double t = 2.0 * j + 1.0;
    s += 1.0 / std::pow(t, power);
  }
  return s;
}

double sum_even_pow(int k_max, int power) {
  double s = 0.0;
  for (int j = k_max; j >= 1; --j) {
    const double t = 2.0 * j;
    s += 1.0 / std::pow(t, power);
  }
  return s;
}

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 48);
}

void check_dim(int d, int min_d, const char* who) {
  if (d < min_d) {
    throw std::domain_error(std::string(who) + ": dimension must be >= " +
                            std::to_string(min_d) + ", got " + std::to_string(d));
  }
}

}  // namespace

double beta(int d) {
  check_dim(d, 1, "beta");
  if (d == 1) return kPi * kPi / 4.0;
  if (d % 2 == 1) {
    // d - 2 odd, d - 2 = 2k + 1.
    const int k = (d - 3) / 2;
    return kPi * kPi / 4.0 - 2.0 * sum_odd_pow(k, 2);
  }
  // d - 2 even, d - 2 = 2k.
  const int k = (d - 2) / 2;
  return kPi * kPi / 12.0 - 2.0 * sum_even_pow(k, 2);
}

double sigma_sq(int d) {
  check_dim(d, 1, "sigma_sq");
  if (d == 1) return 0.0;
  const double b = beta(d);
  const double pi4 = kPi * kPi * kPi * kPi;
  if (d % 2 == 1) {
    const int k = (d - 3) / 2;
    return -pi4 / 8.0 + 12.0 * sum_odd_pow(k, 4) + 2.0 * b * b;
  }
  const int k = (d - 2) / 2;
  return -pi4 / 120.0 + 12.0 * sum_even_pow(k, 4) + 2.0 * b * b;
}

double theta_cdf(int d, double alpha) {
  check_dim(d, 2, "theta_cdf");
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw std::domain_error("theta_cdf: alpha must lie in [0, pi]");
  }
  if (alpha == 0.0) return 0.0;
  const auto density = [d](double phi) { return std::pow(std::sin(phi), d - 2); };
  const double total = integrate(density, 0.0, kPi, 1e-13);
  if (alpha == kPi) return 1.0;
  return integrate(density, 0.0, alpha, 1e-13) / total;
}

double theta_mgf(int d, double s) {
  check_dim(d, 2, "theta_mgf");
  const int q = d - 2;
  double value;
  if (q % 2 == 0) {
    value = s == 0.0 ? 1.0 : std::expm1(s * kPi) / (s * kPi);
    const int k = q / 2;
    for (int j = 1; j <= k; ++j) {
      const double ev = 2.0 * j;
      value *= ev * ev / (ev * ev + s * s);
    }
  } else {
    value = (std::exp(s * kPi) + 1.0) / (2.0 * (s * s + 1.0));
    const int k = (q - 1) / 2;
    for (int j = 1; j <= k; ++j) {
      const double od = 2.0 * j + 1.0;
      value *= od * od / (od * od + s * s);
    }
  }
  return value;
}

MomentTable MomentTable::build(int d_max) {
  check_dim(d_max, 1, "MomentTable::build");
  MomentTable table;
  table.d_max = d_max;
  table.beta_values.resize(d_max + 1, 0.0);
  table.sigma_sq_values.resize(d_max + 1, 0.0);
  for (int d = 1; d <= d_max; ++d) {
    table.beta_values[d] = beta(d);
    table.sigma_sq_values[d] = sigma_sq(d);
  }
  return table;
}

double MomentTable::beta_at(int d) const {
  if (d < 1 || d > d_max) throw std::domain_error("MomentTable: d out of range");
  return beta_values[d];
}

double MomentTable::sigma_sq_at(int d) const {
  if (d < 1 || d > d_max) throw std::domain_error("MomentTable: d out of range");
  return sigma_sq_values[d];
}

}  // namespace angledim
