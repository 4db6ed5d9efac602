#pragma once

#include <vector>

namespace angledim {

// Moments of the angle Theta_d between two independent uniform directions
// on the sphere S^{d-1}. E[Theta_d] = pi/2 for every d; the variance and
// the variance of the squared deviation admit closed forms built from
// partial sums of 1/odd^2, 1/even^2 and their fourth-power analogues.
//
// d = 1 is the two-point sphere {-1, +1}: the angle is 0 or pi with equal
// probability, so beta_1 = pi^2/4 and sigma_1^2 = 0.

// Var(Theta_d). Strictly decreasing in d; beta_{d+2} = beta_d - 2/d^2.
double beta(int d);

// Var((Theta_d - pi/2)^2).
double sigma_sq(int d);

// P(Theta_d <= alpha) for d >= 2 and alpha in [0, pi], by adaptive
// quadrature of the sin^{d-2} density. Absolute error <= 1e-10.
double theta_cdf(int d, double alpha);

// E[exp(s * Theta_d)] for d >= 2. The closed form has a removable
// singularity at s = 0, where the value is exactly 1.
double theta_mgf(int d, double s);

// beta / sigma_sq tabulated for d = 1..d_max. Index 0 is unused padding so
// that values[d] corresponds to dimension d.
struct MomentTable {
  int d_max = 0;
  std::vector<double> beta_values;
  std::vector<double> sigma_sq_values;

  static MomentTable build(int d_max);

  double beta_at(int d) const;
  double sigma_sq_at(int d) const;
};

}  // namespace angledim
