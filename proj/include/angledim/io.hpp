#pragma once

#include <iosfwd>
#include <string>

#include "angledim/calibration.hpp"
#include "angledim/point_cloud.hpp"

namespace angledim {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Fixed number of significant digits.
std::string format_double(double value, int significant_digits);

// Reads a point cloud from headerless CSV or from a JSON object of the form
// {"m": <int>, "points": [[...], ...]}. The format is sniffed from the first
// non-space character. `name` labels error messages.
PointCloud parse_cloud(std::istream& in, const std::string& name = "<stream>");
PointCloud parse_cloud_file(const std::string& path);

// Headerless CSV, one row per point, shortest round-trip formatting; reading
// the output reproduces the cloud bit for bit.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
std::string cloud_to_csv(const PointCloud& cloud);

std::string cache_to_json(const CalibrationCache& cache);
CalibrationCache cache_from_json(const std::string& text);
void save_cache(const CalibrationCache& cache, const std::string& path);
CalibrationCache load_cache(const std::string& path);

// Two-column CSV with header normal_quantile,sample_quantile.
void write_qq_csv(std::ostream& out, const QQData& qq);

}  // namespace angledim
