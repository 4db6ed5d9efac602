#include "angledim/point_cloud.hpp"

#include <cmath>
#include <string>

#include "angledim/errors.hpp"

namespace angledim {

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw empty_input_error("point cloud has no rows");
  const std::size_t m = rows.front().size();
  if (m == 0) throw validation_error("point cloud rows must have at least one coordinate");
  PointCloud cloud(rows.size(), m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      throw validation_error("row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " coordinates, expected " +
                             std::to_string(m));
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw validation_error("row " + std::to_string(i) + " contains a non-finite value");
      }
      cloud.point(i)[j] = rows[i][j];
    }
  }
  return cloud;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace angledim
