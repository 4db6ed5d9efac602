#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace angledim {

// Dense n x m sample matrix, one point per row, row-major storage.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t n, std::size_t m) : n_(n), m_(m), data_(n * m, 0.0) {}

  // Validates rectangularity and finiteness; throws validation_error.
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_; }
  bool empty() const noexcept { return n_ == 0; }

  std::span<const double> point(std::size_t i) const { return {data_.data() + i * m_, m_}; }
  std::span<double> point(std::size_t i) { return {data_.data() + i * m_, m_}; }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> data_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

}  // namespace angledim
