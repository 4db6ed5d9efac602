#include "angledim/manifolds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "angledim/errors.hpp"
#include "angledim/rng.hpp"

namespace angledim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Swiss roll parameter window and strip height.
constexpr double kRollLo = 1.5 * kPi;
constexpr double kRollHi = 4.5 * kPi;
constexpr double kRollHeight = 21.0;

// Helicoid: (v cos u, v sin u, u) with one unit of pitch per radian.
constexpr double kHelicoidTurns = 4.0 * kPi;

constexpr std::array<ManifoldSpec, 13> kTable = {{
    {ManifoldId::M1, 9, 10, "M1", "unit sphere in R^10"},
    {ManifoldId::M2, 3, 5, "M2", "affine 3-cube in R^5"},
    {ManifoldId::M3, 4, 6, "M3", "product of two cylinders in R^6"},
    {ManifoldId::M4, 4, 8, "M4", "flat 4-torus in R^8"},
    {ManifoldId::M5, 2, 3, "M5", "helicoid strip"},
    {ManifoldId::M6, 6, 36, "M6", "6-torus traced by three harmonic blocks"},
    {ManifoldId::M7, 2, 3, "M7", "swiss roll"},
    {ManifoldId::M8, 12, 72, "M8", "12-torus traced by three harmonic blocks"},
    {ManifoldId::M9, 20, 20, "M9", "unit 20-cube"},
    {ManifoldId::M10, 9, 10, "M10", "rotated 9-cube in R^10"},
    {ManifoldId::M11, 2, 3, "M11", "ten-twist Moebius band"},
    {ManifoldId::M12, 10, 10, "M12", "standard Gaussian in R^10"},
    {ManifoldId::M13, 1, 10, "M13", "closed harmonic curve in R^10"},
}};

// Orthonormalizes the columns of a row-major rows x cols matrix in place.
void gram_schmidt(std::vector<double>& a, std::size_t rows, std::size_t cols) {
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      double proj = 0.0;
      for (std::size_t r = 0; r < rows; ++r) proj += a[r * cols + c] * a[r * cols + p];
      for (std::size_t r = 0; r < rows; ++r) a[r * cols + c] -= proj * a[r * cols + p];
    }
    double nsq = 0.0;
    for (std::size_t r = 0; r < rows; ++r) nsq += a[r * cols + c] * a[r * cols + c];
    if (nsq < 1e-12) throw std::logic_error("gram_schmidt: rank-deficient frame");
    const double inv = 1.0 / std::sqrt(nsq);
    for (std::size_t r = 0; r < rows; ++r) a[r * cols + c] *= inv;
  }
}

// Fixed orthonormal 5x3 frame and offset for the affine 3-cube.
const std::vector<double>& cube3_frame() {
  static const std::vector<double> frame = [] {
    std::vector<double> a = {
        // columns: (1,1,0,1,0), (1,0,1,-1,1), (0,1,1,1,-1)
        1.0, 1.0,  0.0,
        1.0, 0.0,  1.0,
        0.0, 1.0,  1.0,
        1.0, -1.0, 1.0,
        0.0, 1.0,  -1.0,
    };
    gram_schmidt(a, 5, 3);
    return a;
  }();
  return frame;
}

constexpr std::array<double, 5> kCube3Offset = {0.5, -0.25, 1.0, 0.75, -0.5};

// Fixed orthonormal 10x9 frame for the rotated 9-cube: Gram-Schmidt of the
// independent columns e_i + e_10.
const std::vector<double>& cube9_frame() {
  static const std::vector<double> frame = [] {
    std::vector<double> a(10 * 9, 0.0);
    for (std::size_t c = 0; c < 9; ++c) {
      a[c * 9 + c] = 1.0;
      a[9 * 9 + c] = 1.0;
    }
    gram_schmidt(a, 10, 9);
    return a;
  }();
  return frame;
}

double box_distance(std::span<const double> u, double lo, double hi) {
  double s = 0.0;
  for (const double v : u) {
    const double excess = std::max({0.0, lo - v, v - hi});
    s += excess * excess;
  }
  return std::sqrt(s);
}

double interval_excess(double v, double lo, double hi) {
  return std::max({0.0, lo - v, v - hi});
}

void check_point_dim(std::span<const double> p, int m, const char* name) {
  if (p.size() != static_cast<std::size_t>(m)) {
    throw validation_error(std::string("membership_residual: ") + name + " lives in R^" +
                           std::to_string(m) + ", point has " + std::to_string(p.size()) +
                           " coordinates");
  }
}

}  // namespace

const std::array<ManifoldSpec, 13>& manifold_table() { return kTable; }

const ManifoldSpec& manifold_spec(ManifoldId id) {
  return kTable[static_cast<std::size_t>(id)];
}

ManifoldId parse_manifold_id(const std::string& text) {
  std::string up = text;
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  for (const auto& spec : kTable) {
    if (up == spec.name) return spec.id;
  }
  throw config_error("unknown manifold '" + text + "' (expected M1..M13)");
}

PointCloud generate(ManifoldId id, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("generate: n must be >= 1");
  const ManifoldSpec& spec = manifold_spec(id);
  PointCloud cloud(n, spec.ambient_dim);
  RngStream rng(seed);

  for (std::size_t i = 0; i < n; ++i) {
    auto p = cloud.point(i);
    switch (id) {
      case ManifoldId::M1: {
        double nsq = 0.0;
        do {
          nsq = 0.0;
          for (auto& x : p) {
            x = rng.normal();
            nsq += x * x;
          }
        } while (nsq < 1e-280);
        const double inv = 1.0 / std::sqrt(nsq);
        for (auto& x : p) x *= inv;
        break;
      }
      case ManifoldId::M2: {
        const auto& q = cube3_frame();
        const double u0 = rng.uniform01();
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        for (std::size_t r = 0; r < 5; ++r) {
          p[r] = kCube3Offset[r] + q[r * 3 + 0] * u0 + q[r * 3 + 1] * u1 + q[r * 3 + 2] * u2;
        }
        break;
      }
      case ManifoldId::M3: {
        const double u1 = rng.uniform(0.0, kTwoPi);
        const double v1 = rng.uniform01();
        const double u2 = rng.uniform(0.0, kTwoPi);
        const double v2 = rng.uniform01();
        p[0] = std::cos(u1);
        p[1] = std::sin(u1);
        p[2] = v1;
        p[3] = std::cos(u2);
        p[4] = std::sin(u2);
        p[5] = v2;
        break;
      }
      case ManifoldId::M4: {
        for (int a = 0; a < 4; ++a) {
          const double u = rng.uniform(0.0, kTwoPi);
          p[2 * a] = std::cos(u);
          p[2 * a + 1] = std::sin(u);
        }
        break;
      }
      case ManifoldId::M5: {
        const double u = rng.uniform(0.0, kHelicoidTurns);
        const double v = rng.uniform01();
        p[0] = v * std::cos(u);
        p[1] = v * std::sin(u);
        p[2] = u;
        break;
      }
      case ManifoldId::M6: {
        double u[6];
        for (auto& x : u) x = rng.uniform(0.0, kTwoPi);
        std::size_t at = 0;
        for (int b = 1; b <= 3; ++b) {
          for (int a = 0; a < 6; ++a) {
            p[at++] = std::cos(b * u[a]) / b;
            p[at++] = std::sin(b * u[a]) / b;
          }
        }
        break;
      }
      case ManifoldId::M7: {
        const double t = rng.uniform(kRollLo, kRollHi);
        const double h = rng.uniform(0.0, kRollHeight);
        p[0] = t * std::cos(t);
        p[1] = h;
        p[2] = t * std::sin(t);
        break;
      }
      case ManifoldId::M8: {
        double u[12];
        for (auto& x : u) x = rng.uniform(0.0, kTwoPi);
        std::size_t at = 0;
        for (int b = 1; b <= 3; ++b) {
          for (int a = 0; a < 12; ++a) {
            p[at++] = std::cos(b * u[a]);
            p[at++] = std::sin(b * u[a]);
          }
        }
        break;
      }
      case ManifoldId::M9: {
        for (auto& x : p) x = rng.uniform01();
        break;
      }
      case ManifoldId::M10: {
        const auto& q = cube9_frame();
        double u[9];
        for (auto& x : u) x = rng.uniform01();
        for (std::size_t r = 0; r < 10; ++r) {
          double s = 0.0;
          for (std::size_t c = 0; c < 9; ++c) s += q[r * 9 + c] * u[c];
          p[r] = s;
        }
        break;
      }
      case ManifoldId::M11: {
        const double u = rng.uniform(0.0, kTwoPi);
        const double w = rng.uniform(-1.0, 1.0);
        const double rho = 1.0 + 0.5 * w * std::cos(5.0 * u);
        p[0] = rho * std::cos(u);
        p[1] = rho * std::sin(u);
        p[2] = 0.5 * w * std::sin(5.0 * u);
        break;
      }
      case ManifoldId::M12: {
        for (auto& x : p) x = rng.normal();
        break;
      }
      case ManifoldId::M13: {
        const double t = rng.uniform(0.0, kTwoPi);
        for (int h = 1; h <= 5; ++h) {
          p[2 * (h - 1)] = std::cos(h * t) / h;
          p[2 * (h - 1) + 1] = std::sin(h * t) / h;
        }
        break;
      }
    }
  }
  return cloud;
}

std::optional<double> membership_residual(ManifoldId id, std::span<const double> p) {
  const ManifoldSpec& spec = manifold_spec(id);
  switch (id) {
    case ManifoldId::M1: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      return std::abs(norm(p) - 1.0);
    }
    case ManifoldId::M2: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      const auto& q = cube3_frame();
      double r[5];
      for (std::size_t i = 0; i < 5; ++i) r[i] = p[i] - kCube3Offset[i];
      double u[3];
      for (std::size_t c = 0; c < 3; ++c) {
        u[c] = 0.0;
        for (std::size_t i = 0; i < 5; ++i) u[c] += q[i * 3 + c] * r[i];
      }
      double off_sq = 0.0;
      for (std::size_t i = 0; i < 5; ++i) {
        double proj = 0.0;
        for (std::size_t c = 0; c < 3; ++c) proj += q[i * 3 + c] * u[c];
        const double diff = r[i] - proj;
        off_sq += diff * diff;
      }
      return std::sqrt(off_sq) + box_distance({u, 3}, 0.0, 1.0);
    }
    case ManifoldId::M5: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      const double z = p[2];
      const double c = std::cos(z);
      const double s = std::sin(z);
      const double v = p[0] * c + p[1] * s;
      return std::abs(p[0] * s - p[1] * c) + interval_excess(v, 0.0, 1.0) +
             interval_excess(z, 0.0, kHelicoidTurns);
    }
    case ManifoldId::M7: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      const double r = std::hypot(p[0], p[2]);
      const double planar = std::hypot(p[0] - r * std::cos(r), p[2] - r * std::sin(r));
      return planar + interval_excess(r, kRollLo, kRollHi) +
             interval_excess(p[1], 0.0, kRollHeight);
    }
    case ManifoldId::M9: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      return box_distance(p, 0.0, 1.0);
    }
    case ManifoldId::M10: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      const auto& q = cube9_frame();
      double u[9];
      for (std::size_t c = 0; c < 9; ++c) {
        u[c] = 0.0;
        for (std::size_t i = 0; i < 10; ++i) u[c] += q[i * 9 + c] * p[i];
      }
      double off_sq = 0.0;
      for (std::size_t i = 0; i < 10; ++i) {
        double proj = 0.0;
        for (std::size_t c = 0; c < 9; ++c) proj += q[i * 9 + c] * u[c];
        const double diff = p[i] - proj;
        off_sq += diff * diff;
      }
      return std::sqrt(off_sq) + box_distance({u, 9}, 0.0, 1.0);
    }
    case ManifoldId::M11: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      const double rho = std::hypot(p[0], p[1]);
      const double u = std::atan2(p[1], p[0]);  // differs from the true u by 2*pi*k
      const double a = rho - 1.0;
      const double twist = std::abs(a * std::sin(5.0 * u) - p[2] * std::cos(5.0 * u));
      return twist + interval_excess(std::hypot(a, p[2]), 0.0, 0.5);
    }
    case ManifoldId::M13: {
      check_point_dim(p, spec.ambient_dim, spec.name);
      const double t = std::atan2(p[1], p[0]);
      double s = 0.0;
      for (int h = 1; h <= 5; ++h) {
        const double dx = p[2 * (h - 1)] - std::cos(h * t) / h;
        const double dy = p[2 * (h - 1) + 1] - std::sin(h * t) / h;
        s += dx * dx + dy * dy;
      }
      return std::sqrt(s);
    }
    case ManifoldId::M3:
    case ManifoldId::M4:
    case ManifoldId::M6:
    case ManifoldId::M8:
    case ManifoldId::M12:
      check_point_dim(p, spec.ambient_dim, spec.name);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace angledim
