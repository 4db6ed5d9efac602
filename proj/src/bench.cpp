#include "angledim/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "angledim/errors.hpp"
#include "angledim/global_estimator.hpp"
#include "angledim/io.hpp"
#include "angledim/parallel.hpp"
#include "angledim/rng.hpp"

namespace angledim {

namespace {

constexpr std::uint64_t kManifoldSalt = 0x6d616e69;  // distinct derivation branches
constexpr std::uint64_t kTrialSalt = 0x74726961;
constexpr std::uint64_t kCenterSalt = 0x63656e74;

struct KindName {
  EstimatorKind kind;
  const char* name;
  const char* label;
};

constexpr KindName kKindNames[] = {
    {EstimatorKind::basic, "basic", "Basic"}, {EstimatorKind::bh, "bh", "B+H"},
    {EstimatorKind::kernel, "kernel", "Kernel"}, {EstimatorKind::kh, "kh", "K+H"},
    {EstimatorKind::lb, "lb", "LB"},
};

}  // namespace

const char* estimator_name(EstimatorKind kind) {
  for (const auto& e : kKindNames) {
    if (e.kind == kind) return e.name;
  }
  throw std::logic_error("estimator_name: unknown kind");
}

const char* estimator_label(EstimatorKind kind) {
  for (const auto& e : kKindNames) {
    if (e.kind == kind) return e.label;
  }
  throw std::logic_error("estimator_label: unknown kind");
}

EstimatorKind parse_estimator(const std::string& text) {
  std::string low = text;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (const auto& e : kKindNames) {
    if (low == e.name) return e.kind;
  }
  throw config_error("unknown estimator '" + text +
                     "' (expected basic, bh, kernel, kh or lb)");
}

const BenchCell& BenchReport::cell(ManifoldId m, EstimatorKind e) const {
  for (const auto& c : cells) {
    if (c.manifold == m && c.estimator == e) return c;
  }
  throw std::out_of_range("BenchReport::cell: no such cell");
}

std::pair<double, double> mse_mpe(const std::vector<int>& estimates, int true_d) {
  if (estimates.empty()) throw std::domain_error("mse_mpe: empty estimate list");
  if (true_d < 1) throw std::domain_error("mse_mpe: true_d must be >= 1");
  return mse_mpe(estimates, std::vector<int>(estimates.size(), true_d));
}

std::pair<double, double> mse_mpe(const std::vector<int>& estimates,
                                  const std::vector<int>& truths) {
  if (estimates.empty()) throw std::domain_error("mse_mpe: empty estimate list");
  if (truths.size() != estimates.size()) {
    throw std::domain_error("mse_mpe: estimate and truth counts differ");
  }
  double se = 0.0;
  double pe = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (truths[i] < 1) throw std::domain_error("mse_mpe: true dimension must be >= 1");
    const double diff = estimates[i] - truths[i];
    se += diff * diff;
    pe += std::abs(diff) / static_cast<double>(truths[i]);
  }
  const auto t = static_cast<double>(estimates.size());
  return {se / t, 100.0 * pe / t};
}

BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.manifolds.empty()) throw config_error("run_bench: no manifolds selected");
  if (cfg.estimators.empty()) throw config_error("run_bench: no estimators selected");
  if (cfg.trials < 1) throw config_error("run_bench: trials must be >= 1");
  if (cfg.n < 10) throw config_error("run_bench: n must be >= 10");

  const bool wants_kernel =
      std::any_of(cfg.estimators.begin(), cfg.estimators.end(), [](EstimatorKind e) {
        return e == EstimatorKind::kernel || e == EstimatorKind::kh;
      });
  if (wants_kernel) {
    // Validate the cache before burning any trial time.
    if (cfg.cache == nullptr) {
      throw calibration_mismatch_error("run_bench: kernel estimators need a cache");
    }
    const std::size_t k = default_k(cfg.n);
    if (cfg.cache->k != k) {
      throw calibration_mismatch_error(
          "run_bench: cache built for k = " + std::to_string(cfg.cache->k) +
          ", benchmark at n = " + std::to_string(cfg.n) + " uses k = " + std::to_string(k));
    }
    int need = 0;
    for (const ManifoldId m : cfg.manifolds) {
      need = std::max(need, manifold_spec(m).ambient_dim);
    }
    for (int d = 1; d <= need; ++d) {
      if (cfg.cache->find(d) == nullptr) {
        throw calibration_mismatch_error("run_bench: cache has no entry for d = " +
                                         std::to_string(d));
      }
    }
  }

  // Moment tables keyed by ambient dimension (the per-manifold candidate
  // range).
  std::map<int, MomentTable> tables;
  for (const ManifoldId m : cfg.manifolds) {
    const int dim = manifold_spec(m).ambient_dim;
    if (!tables.count(dim)) tables.emplace(dim, MomentTable::build(dim));
  }

  const std::size_t n_manifolds = cfg.manifolds.size();
  const std::size_t n_estimators = cfg.estimators.size();
  const auto trials = static_cast<std::size_t>(cfg.trials);

  // estimates[manifold][estimator][trial]
  std::vector<std::vector<std::vector<int>>> estimates(
      n_manifolds,
      std::vector<std::vector<int>>(n_estimators, std::vector<int>(trials, 0)));

  parallel_for(n_manifolds * trials, cfg.threads, [&](std::size_t task) {
    const std::size_t mi = task / trials;
    const std::size_t t = task % trials;
    const ManifoldId id = cfg.manifolds[mi];
    const ManifoldSpec& spec = manifold_spec(id);
    // Streams derive from the manifold identity, not its list position, so a
    // cell's trials do not depend on which other manifolds were selected.
    const std::uint64_t trial_seed = mix_seed(
        mix_seed(mix_seed(cfg.seed, kManifoldSalt + static_cast<std::uint64_t>(id)),
                 kTrialSalt),
        t);
    const PointCloud cloud = generate(id, cfg.n, trial_seed);
    const MomentTable& table = tables.at(spec.ambient_dim);

    for (std::size_t ei = 0; ei < n_estimators; ++ei) {
      const EstimatorKind kind = cfg.estimators[ei];
      int d_hat = 0;
      if (kind == EstimatorKind::lb) {
        d_hat = lb_global(cloud, cfg.lb).rounded;
      } else {
        GlobalConfig gc;
        gc.local.method = (kind == EstimatorKind::kernel || kind == EstimatorKind::kh)
                              ? LocalMethod::kernel
                              : LocalMethod::basic;
        if (kind == EstimatorKind::bh || kind == EstimatorKind::kh) {
          gc.discard_fraction = cfg.heuristic_discard_fraction;
        }
        d_hat = estimate_global(cloud, gc, table, mix_seed(trial_seed, kCenterSalt),
                                cfg.cache)
                    .d_hat;
      }
      estimates[mi][ei][t] = d_hat;
    }
  });

  BenchReport report;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.n = cfg.n;
  report.heuristic_discard_fraction = cfg.heuristic_discard_fraction;
  report.manifolds = cfg.manifolds;
  report.estimators = cfg.estimators;
  for (std::size_t mi = 0; mi < n_manifolds; ++mi) {
    for (std::size_t ei = 0; ei < n_estimators; ++ei) {
      BenchCell cell;
      cell.manifold = cfg.manifolds[mi];
      cell.estimator = cfg.estimators[ei];
      cell.true_d = manifold_spec(cell.manifold).intrinsic_dim;
      cell.estimates = std::move(estimates[mi][ei]);
      std::tie(cell.mse, cell.mpe) = mse_mpe(cell.estimates, cell.true_d);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

namespace {

std::string fixed2(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << v;
  return out.str();
}

std::string markdown_metric_table(const BenchReport& report, bool mse) {
  std::ostringstream out;
  out << "| Estimator |";
  for (const ManifoldId m : report.manifolds) out << ' ' << manifold_spec(m).name << " |";
  out << " Mean |\n|---|";
  for (std::size_t i = 0; i <= report.manifolds.size(); ++i) out << "---|";
  out << '\n';
  for (const EstimatorKind e : report.estimators) {
    out << "| " << estimator_label(e) << " |";
    double total = 0.0;
    for (const ManifoldId m : report.manifolds) {
      const BenchCell& c = report.cell(m, e);
      const double v = mse ? c.mse : c.mpe;
      total += v;
      out << ' ' << fixed2(v) << " |";
    }
    out << ' ' << fixed2(total / static_cast<double>(report.manifolds.size())) << " |\n";
  }
  return out.str();
}

const char* manifold_json_name(ManifoldId id) { return manifold_spec(id).name; }

}  // namespace

std::string render_report(const BenchReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: {
      std::ostringstream out;
      out << "manifold,estimator,true_d,mse,mpe\n";
      for (const auto& c : report.cells) {
        out << manifold_spec(c.manifold).name << ',' << estimator_name(c.estimator) << ','
            << c.true_d << ',' << format_double(c.mse) << ',' << format_double(c.mpe)
            << '\n';
      }
      return out.str();
    }
    case ReportFormat::json: {
      nlohmann::ordered_json j;
      j["seed"] = report.seed;
      j["trials"] = report.trials;
      j["n"] = report.n;
      j["heuristic_discard_fraction"] = report.heuristic_discard_fraction;
      j["cells"] = nlohmann::ordered_json::array();
      for (const auto& c : report.cells) {
        nlohmann::ordered_json cell;
        cell["manifold"] = manifold_json_name(c.manifold);
        cell["estimator"] = estimator_name(c.estimator);
        cell["true_d"] = c.true_d;
        cell["estimates"] = c.estimates;
        cell["mse"] = c.mse;
        cell["mpe"] = c.mpe;
        j["cells"].push_back(std::move(cell));
      }
      return j.dump();
    }
    case ReportFormat::markdown: {
      std::ostringstream out;
      out << "## Mean squared error (trials=" << report.trials << ", n=" << report.n
          << ", seed=" << report.seed << ")\n\n";
      out << markdown_metric_table(report, true);
      out << "\n## Mean percentage error\n\n";
      out << markdown_metric_table(report, false);
      return out.str();
    }
  }
  throw std::logic_error("render_report: unknown format");
}

BenchReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bench report: invalid JSON: ") + e.what());
  }
  try {
    BenchReport report;
    report.seed = j.at("seed").get<std::uint64_t>();
    report.trials = j.at("trials").get<int>();
    report.n = j.at("n").get<std::size_t>();
    report.heuristic_discard_fraction = j.at("heuristic_discard_fraction").get<double>();
    for (const auto& cj : j.at("cells")) {
      BenchCell cell;
      cell.manifold = parse_manifold_id(cj.at("manifold").get<std::string>());
      cell.estimator = parse_estimator(cj.at("estimator").get<std::string>());
      cell.true_d = cj.at("true_d").get<int>();
      cell.estimates = cj.at("estimates").get<std::vector<int>>();
      cell.mse = cj.at("mse").get<double>();
      cell.mpe = cj.at("mpe").get<double>();
      if (std::find(report.manifolds.begin(), report.manifolds.end(), cell.manifold) ==
          report.manifolds.end()) {
        report.manifolds.push_back(cell.manifold);
      }
      if (std::find(report.estimators.begin(), report.estimators.end(), cell.estimator) ==
          report.estimators.end()) {
        report.estimators.push_back(cell.estimator);
      }
      report.cells.push_back(std::move(cell));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("bench report: missing or mistyped field: ") +
                           e.what());
  }
}

}  // namespace angledim
