#include "angledim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "angledim/errors.hpp"

namespace angledim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_field(std::string_view field, const std::string& where) {
  const std::string_view t = trim(field);
  if (t.empty()) throw parse_error(where + ": empty field");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw parse_error(where + ": cannot parse '" + std::string(t) + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw validation_error(where + ": non-finite value '" + std::string(t) + "'");
  }
  return value;
}

PointCloud parse_cloud_csv(std::istream& in, const std::string& name) {
  std::vector<double> data;
  std::size_t m = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    std::size_t fields = 0;
    std::string_view rest = line;
    for (;;) {
      const std::size_t comma = rest.find(',');
      const std::string_view field =
          comma == std::string_view::npos ? rest : rest.substr(0, comma);
      data.push_back(parse_field(field, where));
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (m == 0) {
      m = fields;
    } else if (fields != m) {
      throw parse_error(where + ": expected " + std::to_string(m) + " fields, got " +
                        std::to_string(fields));
    }
    ++rows;
  }
  if (rows == 0) throw empty_input_error(name + ": no data rows");
  PointCloud cloud(rows, m);
  cloud.data() = std::move(data);
  return cloud;
}

PointCloud parse_cloud_json(std::istream& in, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(name + ": invalid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("m") || !j.contains("points")) {
    throw validation_error(name + ": expected an object with \"m\" and \"points\"");
  }
  if (!j["m"].is_number_integer() || j["m"].get<long long>() < 1) {
    throw validation_error(name + ": \"m\" must be a positive integer");
  }
  const auto m = static_cast<std::size_t>(j["m"].get<long long>());
  const auto& points = j["points"];
  if (!points.is_array()) throw validation_error(name + ": \"points\" must be an array");
  if (points.empty()) throw empty_input_error(name + ": \"points\" is empty");
  PointCloud cloud(points.size(), m);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& row = points[i];
    if (!row.is_array() || row.size() != m) {
      throw validation_error(name + ": point " + std::to_string(i) + " does not have " +
                             std::to_string(m) + " coordinates");
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (!row[c].is_number()) {
        throw validation_error(name + ": point " + std::to_string(i) +
                               " has a non-numeric coordinate");
      }
      const double v = row[c].get<double>();
      if (!std::isfinite(v)) {
        throw validation_error(name + ": point " + std::to_string(i) +
                               " has a non-finite coordinate");
      }
      cloud.point(i)[c] = v;
    }
  }
  return cloud;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_double(double value, int significant_digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, significant_digits);
  return std::string(buf, res.ptr);
}

PointCloud parse_cloud(std::istream& in, const std::string& name) {
  int first = in.peek();
  while (first != std::istream::traits_type::eof() &&
         std::isspace(static_cast<unsigned char>(first))) {
    in.get();
    first = in.peek();
  }
  if (first == std::istream::traits_type::eof()) {
    throw empty_input_error(name + ": no data rows");
  }
  if (first == '{' || first == '[') return parse_cloud_json(in, name);
  return parse_cloud_csv(in, name);
}

PointCloud parse_cloud_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_cloud(in, path);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != 0) out << ',';
      out << format_double(p[j]);
    }
    out << '\n';
  }
}

std::string cloud_to_csv(const PointCloud& cloud) {
  std::ostringstream out;
  write_cloud_csv(out, cloud);
  return out.str();
}

std::string cache_to_json(const CalibrationCache& cache) {
  nlohmann::ordered_json j;
  j["format_version"] = cache.format_version;
  j["k"] = cache.k;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& entry : cache.entries) {
    nlohmann::ordered_json e;
    e["d"] = entry.d;
    e["M"] = entry.sample_count;
    e["seed"] = entry.seed;
    e["samples"] = entry.samples;
    j["entries"].push_back(std::move(e));
  }
  return j.dump();
}

CalibrationCache cache_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("calibration cache: invalid JSON: ") + e.what());
  }
  try {
    CalibrationCache cache;
    cache.format_version = j.at("format_version").get<int>();
    if (cache.format_version != 1) {
      throw validation_error("calibration cache: unsupported format_version " +
                             std::to_string(cache.format_version));
    }
    cache.k = j.at("k").get<std::size_t>();
    for (const auto& e : j.at("entries")) {
      CalibrationEntry entry;
      entry.d = e.at("d").get<int>();
      entry.sample_count = e.at("M").get<std::size_t>();
      entry.seed = e.at("seed").get<std::uint64_t>();
      entry.samples = e.at("samples").get<std::vector<double>>();
      if (entry.samples.size() != entry.sample_count) {
        throw validation_error("calibration cache: entry d=" + std::to_string(entry.d) +
                               " states M=" + std::to_string(entry.sample_count) +
                               " but carries " + std::to_string(entry.samples.size()) +
                               " samples");
      }
      cache.entries.push_back(std::move(entry));
    }
    return cache;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("calibration cache: missing or mistyped field: ") +
                           e.what());
  }
}

void save_cache(const CalibrationCache& cache, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open '" + path + "' for writing");
  out << cache_to_json(cache) << '\n';
}

CalibrationCache load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return cache_from_json(buf.str());
}

void write_qq_csv(std::ostream& out, const QQData& qq) {
  out << "normal_quantile,sample_quantile\n";
  for (std::size_t i = 0; i < qq.normal_quantiles.size(); ++i) {
    out << format_double(qq.normal_quantiles[i]) << ','
        << format_double(qq.sample_quantiles[i]) << '\n';
  }
}

}  // namespace angledim
