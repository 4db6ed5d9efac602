// Python bindings. Point clouds cross the boundary as (n, m) float64
// arrays; estimates come back as plain dicts so callers do not need
// wrapper types. The calibration cache is the one opaque handle.

#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>

#include "angledim/baseline_lb.hpp"
#include "angledim/calibration.hpp"
#include "angledim/errors.hpp"
#include "angledim/global_estimator.hpp"
#include "angledim/io.hpp"
#include "angledim/local_estimator.hpp"
#include "angledim/manifolds.hpp"
#include "angledim/moments.hpp"
#include "angledim/point_cloud.hpp"

namespace py = pybind11;
using namespace angledim;

namespace {

PointCloud cloud_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw validation_error("points must be a 2-d array");
  PointCloud cloud(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
  std::memcpy(cloud.data().data(), arr.data(), sizeof(double) * cloud.data().size());
  return cloud;
}

py::array_t<double> array_from_cloud(const PointCloud& cloud) {
  py::array_t<double> arr({cloud.size(), cloud.dim()});
  std::memcpy(arr.mutable_data(), cloud.data().data(), sizeof(double) * cloud.data().size());
  return arr;
}

py::array_t<double> array_from_vector(const std::vector<double>& values) {
  // strides passed explicitly: pybind11 2.9 (the distro package) computes
  // zero strides for shape-only 1-d constructors under current numpy
  py::array_t<double> arr({static_cast<py::ssize_t>(values.size())},
                          {static_cast<py::ssize_t>(sizeof(double))});
  std::memcpy(arr.mutable_data(), values.data(), sizeof(double) * values.size());
  return arr;
}

LocalMethod parse_method(const std::string& name) {
  if (name == "basic") return LocalMethod::basic;
  if (name == "disc") return LocalMethod::discriminant;
  if (name == "kernel") return LocalMethod::kernel;
  throw config_error("unknown method '" + name + "' (expected basic, disc or kernel)");
}

CentralityWeight parse_weight(const std::string& name) {
  if (name == "centered") return CentralityWeight::centered;
  if (name == "folded") return CentralityWeight::folded;
  throw config_error("unknown weight '" + name + "' (expected centered or folded)");
}

py::dict local_estimate_dict(const LocalEstimate& est) {
  py::dict d;
  d["d_hat"] = est.d_hat;
  d["u_value"] = est.u_value;
  d["mean_angle"] = est.mean_angle;
  d["k"] = est.k;
  d["center_index"] = static_cast<long long>(est.center_index);
  return d;
}

LocalConfig local_config(std::size_t k, int d_max, const std::string& method) {
  LocalConfig cfg;
  cfg.k = k;
  cfg.d_max = d_max;
  cfg.method = parse_method(method);
  return cfg;
}

MomentTable table_for(int d_max, std::size_t ambient) {
  return MomentTable::build(d_max > 0 ? d_max : static_cast<int>(ambient));
}

}  // namespace

PYBIND11_MODULE(_angledim, m) {
  m.doc() = "intrinsic dimension estimation from the variance of angles between neighbors";

  // analytic moments
  m.def("beta", &beta, py::arg("d"),
        "Variance of the angle between two uniform directions in dimension d.");
  m.def("sigma_sq", &sigma_sq, py::arg("d"),
        "Variance of the centered squared angle in dimension d.");
  m.def("theta_cdf", &theta_cdf, py::arg("d"), py::arg("x"),
        "CDF of the angle between two uniform directions in dimension d.");
  m.def("theta_mgf", &theta_mgf, py::arg("d"), py::arg("s"),
        "Moment generating function of the angle at s.");
  m.def("default_k", &default_k, py::arg("n"));
  m.def("default_c", &default_c, py::arg("n"));

  // calibration
  py::class_<CalibrationCache>(m, "CalibrationCache")
      .def_property_readonly("k", [](const CalibrationCache& c) { return c.k; })
      .def_property_readonly("d_max", &CalibrationCache::d_max)
      .def("save", [](const CalibrationCache& c, const std::string& path) { save_cache(c, path); },
           py::arg("path"))
      .def_static("load", [](const std::string& path) { return load_cache(path); },
                  py::arg("path"))
      .def("__repr__", [](const CalibrationCache& c) {
        return "CalibrationCache(k=" + std::to_string(c.k) +
               ", d_max=" + std::to_string(c.d_max()) + ")";
      });

  m.def(
      "build_cache",
      [](int d_max, std::size_t k, std::size_t samples, std::uint64_t seed, int threads) {
        return build_cache(d_max, k, samples, seed, threads);
      },
      py::arg("d_max"), py::arg("k"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 1,
      "Monte Carlo calibration samples of the sphere statistic for d = 1..d_max.");

  m.def(
      "en_samples",
      [](int d, std::size_t k, std::size_t count, std::uint64_t seed, int threads) {
        return array_from_vector(en_samples(d, k, count, seed, threads));
      },
      py::arg("d"), py::arg("k"), py::arg("count"), py::arg("seed"), py::arg("threads") = 1,
      "Independent draws of the sphere statistic E_n.");

  m.def(
      "qq_data",
      [](int d, std::size_t k, std::size_t count, std::uint64_t seed, int threads) {
        const QQData qq = qq_data(d, k, count, seed, threads);
        return py::make_tuple(array_from_vector(qq.normal_quantiles),
                              array_from_vector(qq.sample_quantiles));
      },
      py::arg("d"), py::arg("k"), py::arg("count"), py::arg("seed"), py::arg("threads") = 1,
      "Paired (normal_quantiles, standardized_sample_quantiles) arrays.");

  // manifold catalogue
  m.def("manifolds", [] {
    py::list out;
    for (int i = 1; i <= 13; ++i) {
      const ManifoldSpec& spec = manifold_spec(parse_manifold_id("M" + std::to_string(i)));
      py::dict d;
      d["name"] = spec.name;
      d["intrinsic_dim"] = spec.intrinsic_dim;
      d["ambient_dim"] = spec.ambient_dim;
      d["description"] = spec.description;
      out.append(d);
    }
    return out;
  });

  m.def(
      "generate",
      [](const std::string& manifold, std::size_t n, std::uint64_t seed) {
        return array_from_cloud(generate(parse_manifold_id(manifold), n, seed));
      },
      py::arg("manifold"), py::arg("n"), py::arg("seed"),
      "Sample n points from a catalogue manifold (\"M1\"..\"M13\").");

  // estimators
  m.def(
      "estimate_local",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
         const std::vector<double>& center, std::size_t k, int d_max, const std::string& method,
         const CalibrationCache* cache) {
        const PointCloud cloud = cloud_from_array(points);
        const MomentTable table = table_for(d_max, cloud.dim());
        return local_estimate_dict(
            estimate_local(cloud, center, local_config(k, d_max, method), table, cache));
      },
      py::arg("points"), py::arg("center"), py::arg("k") = 0, py::arg("d_max") = 0,
      py::arg("method") = "basic", py::arg("cache") = nullptr,
      "Local estimate at an explicit center point.");

  m.def(
      "estimate_local_at",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
         std::size_t row, std::size_t k, int d_max, const std::string& method,
         const CalibrationCache* cache) {
        const PointCloud cloud = cloud_from_array(points);
        const MomentTable table = table_for(d_max, cloud.dim());
        return local_estimate_dict(
            estimate_local_at(cloud, row, local_config(k, d_max, method), table, cache));
      },
      py::arg("points"), py::arg("row"), py::arg("k") = 0, py::arg("d_max") = 0,
      py::arg("method") = "basic", py::arg("cache") = nullptr,
      "Local estimate centered on one cloud row.");

  m.def(
      "estimate_global",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
         std::size_t c, double discard_fraction, std::size_t k, int d_max,
         const std::string& method, const std::string& weight, std::uint64_t seed, int threads,
         const CalibrationCache* cache) {
        const PointCloud cloud = cloud_from_array(points);
        GlobalConfig cfg;
        cfg.c = c;
        cfg.discard_fraction = discard_fraction;
        cfg.local = local_config(k, d_max, method);
        cfg.weight = parse_weight(weight);
        cfg.threads = threads;
        const MomentTable table = table_for(d_max, cloud.dim());
        const GlobalEstimate est = estimate_global(cloud, cfg, table, seed, cache);
        py::dict out;
        out["d_hat"] = est.d_hat;
        out["centers"] = est.centers;
        py::list per_center;
        for (const LocalEstimate& le : est.per_center) per_center.append(local_estimate_dict(le));
        out["per_center"] = per_center;
        py::list discarded;
        for (const DiscardedCenter& dc : est.discarded) {
          py::dict d;
          d["center_pos"] = dc.center_pos;
          d["cloud_index"] = static_cast<long long>(dc.cloud_index);
          d["deviation"] = dc.deviation;
          discarded.append(d);
        }
        out["discarded"] = discarded;
        return out;
      },
      py::arg("points"), py::arg("c") = 0, py::arg("discard_fraction") = 0.0, py::arg("k") = 0,
      py::arg("d_max") = 0, py::arg("method") = "basic", py::arg("weight") = "centered",
      py::arg("seed") = 42, py::arg("threads") = 1, py::arg("cache") = nullptr,
      "Median of local estimates at well-centered subsample representatives.");

  m.def(
      "lb_global",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
         std::size_t k1, std::size_t k2, int threads) {
        const PointCloud cloud = cloud_from_array(points);
        LBConfig cfg;
        cfg.k1 = k1;
        cfg.k2 = k2;
        const LBEstimate est = lb_global(cloud, cfg, threads);
        py::dict out;
        out["value"] = est.value;
        out["d_hat"] = est.rounded;
        out["k1"] = k1;
        out["k2"] = k2;
        return out;
      },
      py::arg("points"), py::arg("k1") = 10, py::arg("k2") = 20, py::arg("threads") = 1,
      "Nearest-neighbor distance-ratio baseline, averaged over k in [k1, k2].");
}
