#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "angledim/point_cloud.hpp"

namespace angledim {

// Benchmark manifolds M1..M13. Parametrizations are documented in
// MANIFOLDS.md; every generator samples uniformly in its parameter domain.
enum class ManifoldId {
  M1, M2, M3, M4, M5, M6, M7, M8, M9, M10, M11, M12, M13,
};

struct ManifoldSpec {
  ManifoldId id;
  int intrinsic_dim;
  int ambient_dim;
  const char* name;
  const char* description;
};

const std::array<ManifoldSpec, 13>& manifold_table();
const ManifoldSpec& manifold_spec(ManifoldId id);

// "M1".."M13" (case-insensitive); throws config_error otherwise.
ManifoldId parse_manifold_id(const std::string& text);

PointCloud generate(ManifoldId id, std::size_t n, std::uint64_t seed);

// Distance-like residual that vanishes exactly on the manifold, for the
// shapes with a checkable implicit description; nullopt where the adopted
// parametrization has no convenient inverse (M3, M4, M6, M8, M12).
std::optional<double> membership_residual(ManifoldId id, std::span<const double> point);

}  // namespace angledim
