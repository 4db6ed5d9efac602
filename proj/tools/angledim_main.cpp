#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "angledim/baseline_lb.hpp"
#include "angledim/bench.hpp"
#include "angledim/calibration.hpp"
#include "angledim/errors.hpp"
#include "angledim/global_estimator.hpp"
#include "angledim/io.hpp"
#include "angledim/local_estimator.hpp"
#include "angledim/manifolds.hpp"
#include "angledim/moments.hpp"

namespace {

using nlohmann::ordered_json;

// Flags shared by every subcommand (--seed, --threads, --format, --out fall
// through from the app level).
struct Common {
  std::uint64_t seed = 42;
  int threads = 1;
  std::string format = "csv";
  std::string out;
};

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw angledim::parse_error("cannot open '" + out_path + "' for writing");
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

angledim::PointCloud read_cloud(const std::string& input) {
  if (input == "-") return angledim::parse_cloud(std::cin, "<stdin>");
  return angledim::parse_cloud_file(input);
}

angledim::LocalMethod parse_method(const std::string& text) {
  if (text == "basic") return angledim::LocalMethod::basic;
  if (text == "disc") return angledim::LocalMethod::discriminant;
  if (text == "kernel") return angledim::LocalMethod::kernel;
  throw angledim::config_error("unknown method '" + text +
                               "' (expected basic, disc or kernel)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ordered_json local_estimate_json(const angledim::LocalEstimate& est) {
  ordered_json j;
  j["d_hat"] = est.d_hat;
  j["u_value"] = est.u_value;
  j["k"] = est.k;
  j["mean_angle"] = est.mean_angle;
  j["center_row"] = est.center_index;
  return j;
}

void run_moments(int d_max, const Common& common) {
  const angledim::MomentTable table = angledim::MomentTable::build(d_max);
  if (common.format == "json") {
    ordered_json rows = ordered_json::array();
    for (int d = 1; d <= d_max; ++d) {
      ordered_json row;
      row["d"] = d;
      row["beta"] = table.beta_at(d);
      row["sigma_sq"] = table.sigma_sq_at(d);
      rows.push_back(std::move(row));
    }
    write_text(rows.dump(), common.out);
    return;
  }
  if (common.format != "csv") {
    throw angledim::config_error("moments: --format must be csv or json");
  }
  std::ostringstream out;
  out << "d,beta,sigma_sq\n";
  for (int d = 1; d <= d_max; ++d) {
    out << d << ',' << angledim::format_double(table.beta_at(d), 15) << ','
        << angledim::format_double(table.sigma_sq_at(d), 15) << '\n';
  }
  write_text(out.str(), common.out);
}

struct EstimateOpts {
  std::string input;
  std::string method = "basic";
  std::size_t k = 0;
  int d_max = 0;
  std::string cache_path;
  std::ptrdiff_t center_row = -1;
  bool center_auto = false;
  std::size_t k1 = 10;
  std::size_t k2 = 20;
};

void run_estimate(const EstimateOpts& opt, const Common& common) {
  const angledim::PointCloud cloud = read_cloud(opt.input);

  if (opt.method == "lb") {
    const angledim::LBEstimate est =
        angledim::lb_global(cloud, {opt.k1, opt.k2}, common.threads);
    ordered_json j;
    j["d_hat"] = est.rounded;
    j["value"] = est.value;
    j["k1"] = opt.k1;
    j["k2"] = opt.k2;
    j["method"] = "lb";
    write_text(j.dump(), common.out);
    return;
  }

  angledim::LocalConfig cfg;
  cfg.method = parse_method(opt.method);
  cfg.k = opt.k;
  cfg.d_max = opt.d_max;

  std::optional<angledim::CalibrationCache> cache;
  if (!opt.cache_path.empty()) cache = angledim::load_cache(opt.cache_path);

  const int table_max =
      cfg.d_max != 0 ? cfg.d_max : static_cast<int>(cloud.dim());
  const angledim::MomentTable table = angledim::MomentTable::build(table_max);

  std::size_t row;
  if (opt.center_row >= 0) {
    row = static_cast<std::size_t>(opt.center_row);
  } else {
    // --center auto (the default): most central point of the whole cloud
    row = angledim::pick_centers(cloud, 1, common.seed)[0];
  }
  const angledim::LocalEstimate est = angledim::estimate_local_at(
      cloud, row, cfg, table, cache ? &*cache : nullptr);

  ordered_json j = local_estimate_json(est);
  j["method"] = opt.method;
  write_text(j.dump(), common.out);
}

struct GlobalOpts {
  std::string input;
  std::string method = "basic";
  std::size_t c = 0;
  double discard_fraction = 0.0;
  std::size_t k = 0;
  int d_max = 0;
  std::string cache_path;
  std::string weight = "centered";
};

void run_global(const GlobalOpts& opt, const Common& common) {
  const angledim::PointCloud cloud = read_cloud(opt.input);

  angledim::GlobalConfig cfg;
  cfg.c = opt.c;
  cfg.discard_fraction = opt.discard_fraction;
  cfg.local.method = parse_method(opt.method);
  cfg.local.k = opt.k;
  cfg.local.d_max = opt.d_max;
  cfg.threads = common.threads;
  if (opt.weight == "centered") {
    cfg.weight = angledim::CentralityWeight::centered;
  } else if (opt.weight == "folded") {
    cfg.weight = angledim::CentralityWeight::folded;
  } else {
    throw angledim::config_error("global: --weight must be centered or folded");
  }

  std::optional<angledim::CalibrationCache> cache;
  if (!opt.cache_path.empty()) cache = angledim::load_cache(opt.cache_path);

  const int table_max =
      cfg.local.d_max != 0 ? cfg.local.d_max : static_cast<int>(cloud.dim());
  const angledim::MomentTable table = angledim::MomentTable::build(table_max);

  const angledim::GlobalEstimate est = angledim::estimate_global(
      cloud, cfg, table, common.seed, cache ? &*cache : nullptr);

  ordered_json j;
  j["d_hat"] = est.d_hat;
  j["seed"] = common.seed;
  j["method"] = opt.method;
  j["centers"] = est.centers;
  j["per_center"] = ordered_json::array();
  for (const auto& le : est.per_center) j["per_center"].push_back(local_estimate_json(le));
  j["discarded"] = ordered_json::array();
  for (const auto& dc : est.discarded) {
    ordered_json item;
    item["center_pos"] = dc.center_pos;
    item["cloud_index"] = dc.cloud_index;
    item["deviation"] = dc.deviation;
    j["discarded"].push_back(std::move(item));
  }
  write_text(j.dump(), common.out);
}

struct CalibrateOpts {
  int d_max = 0;
  std::size_t k = 0;
  std::size_t samples = 5000;
};

void run_calibrate(const CalibrateOpts& opt, const Common& common) {
  if (common.out.empty()) {
    throw angledim::config_error("calibrate: --out cache.json is required");
  }
  const angledim::CalibrationCache cache =
      angledim::build_cache(opt.d_max, opt.k, opt.samples, common.seed, common.threads);
  angledim::save_cache(cache, common.out);
  ordered_json j;
  j["format_version"] = cache.format_version;
  j["d_max"] = opt.d_max;
  j["k"] = opt.k;
  j["samples"] = opt.samples;
  j["seed"] = common.seed;
  j["out"] = common.out;
  std::cout << j.dump() << '\n';
}

struct QqOpts {
  int d = 0;
  std::size_t k = 0;
  std::size_t samples = 10000;
};

void run_qq(const QqOpts& opt, const Common& common) {
  const angledim::QQData qq =
      angledim::qq_data(opt.d, opt.k, opt.samples, common.seed, common.threads);
  std::ostringstream csv;
  angledim::write_qq_csv(csv, qq);
  if (common.out.empty()) {
    std::cerr << "angledim qq: d=" << opt.d << " k=" << opt.k << " samples=" << opt.samples
              << " seed=" << common.seed << '\n';
    std::cout << csv.str();
    return;
  }
  write_text(csv.str(), common.out);
  ordered_json j;
  j["d"] = opt.d;
  j["k"] = opt.k;
  j["samples"] = opt.samples;
  j["seed"] = common.seed;
  j["out"] = common.out;
  std::cout << j.dump() << '\n';
}

struct GenOpts {
  std::string manifold;
  std::size_t n = 0;
};

void run_gen(const GenOpts& opt, const Common& common) {
  const angledim::ManifoldId id = angledim::parse_manifold_id(opt.manifold);
  const angledim::PointCloud cloud = angledim::generate(id, opt.n, common.seed);
  std::cerr << "angledim gen: manifold=" << angledim::manifold_spec(id).name
            << " n=" << opt.n << " seed=" << common.seed << '\n';
  write_text(angledim::cloud_to_csv(cloud), common.out);
}

struct BenchOpts {
  std::string manifolds;
  std::string estimators;
  int trials = 50;
  std::size_t n = 2500;
  double discard_fraction = 0.25;
  std::size_t k1 = 10;
  std::size_t k2 = 20;
  std::string cache_path;
  std::string markdown_path;
};

void run_bench_cmd(const BenchOpts& opt, const Common& common) {
  angledim::BenchConfig cfg;
  for (const std::string& name : split_list(opt.manifolds)) {
    cfg.manifolds.push_back(angledim::parse_manifold_id(name));
  }
  for (const std::string& name : split_list(opt.estimators)) {
    cfg.estimators.push_back(angledim::parse_estimator(name));
  }
  cfg.trials = opt.trials;
  cfg.n = opt.n;
  cfg.seed = common.seed;
  cfg.heuristic_discard_fraction = opt.discard_fraction;
  cfg.lb = {opt.k1, opt.k2};
  cfg.threads = common.threads;

  std::optional<angledim::CalibrationCache> cache;
  if (!opt.cache_path.empty()) {
    cache = angledim::load_cache(opt.cache_path);
    cfg.cache = &*cache;
  }

  const angledim::BenchReport report = angledim::run_bench(cfg);
  write_text(angledim::render_report(report, angledim::ReportFormat::json), common.out);
  if (!opt.markdown_path.empty()) {
    write_text(angledim::render_report(report, angledim::ReportFormat::markdown),
               opt.markdown_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intrinsic dimension estimation from nearest-neighbor angles"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "RNG seed for randomized commands")
      ->capture_default_str();
  app.add_option("--threads", common.threads, "worker thread cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", common.format, "table format: csv or json")
      ->capture_default_str();
  app.add_option("--out", common.out, "output file (default: stdout)");

  // moments
  int moments_dmax = 0;
  auto* moments = app.add_subcommand("moments", "print the beta/sigma^2 moment table");
  moments->add_option("--dmax", moments_dmax, "largest dimension listed")
      ->required()
      ->check(CLI::PositiveNumber);

  // estimate
  EstimateOpts est_opts;
  auto* estimate = app.add_subcommand("estimate", "local dimension estimate at one center");
  estimate->add_option("--input", est_opts.input, "cloud file (CSV or JSON), - for stdin")
      ->required();
  estimate->add_option("--method", est_opts.method, "basic, disc, kernel or lb")
      ->required();
  estimate->add_option("--k", est_opts.k, "neighborhood size (default: from n)");
  estimate->add_option("--dmax", est_opts.d_max, "largest candidate dimension");
  estimate->add_option("--cache", est_opts.cache_path, "calibration cache (kernel method)");
  auto* row_opt = estimate->add_option("--center-row", est_opts.center_row,
                                       "cloud row used as the center");
  std::string center_mode;
  auto* auto_opt = estimate->add_option("--center", center_mode,
                                        "'auto': pick the most central point");
  auto_opt->check(CLI::IsMember({"auto"}));
  row_opt->excludes(auto_opt);
  estimate->add_option("--k1", est_opts.k1, "smallest k of the lb average")
      ->capture_default_str();
  estimate->add_option("--k2", est_opts.k2, "largest k of the lb average")
      ->capture_default_str();

  // global
  GlobalOpts glob_opts;
  auto* global = app.add_subcommand("global", "median-aggregated multi-center estimate");
  global->add_option("--input", glob_opts.input, "cloud file (CSV or JSON), - for stdin")
      ->required();
  global->add_option("--c", glob_opts.c, "number of centers (default: from n)");
  global->add_option("--discard-frac", glob_opts.discard_fraction,
                     "fraction of centers dropped by mean-angle deviation")
      ->check(CLI::Range(0.0, 1.0));
  global->add_option("--method", glob_opts.method, "basic, disc or kernel")
      ->capture_default_str();
  global->add_option("--k", glob_opts.k, "neighborhood size (default: from n)");
  global->add_option("--dmax", glob_opts.d_max, "largest candidate dimension");
  global->add_option("--cache", glob_opts.cache_path, "calibration cache (kernel method)");
  global->add_option("--weight", glob_opts.weight, "centrality weight: centered or folded")
      ->capture_default_str();

  // calibrate
  CalibrateOpts cal_opts;
  auto* calibrate = app.add_subcommand("calibrate", "sample the null statistic into a cache");
  calibrate->add_option("--dmax", cal_opts.d_max, "largest dimension sampled")
      ->required()
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--k", cal_opts.k, "neighborhood size the cache is built for")
      ->required()
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--samples", cal_opts.samples, "draws per dimension")
      ->capture_default_str();

  // qq
  QqOpts qq_opts;
  auto* qq = app.add_subcommand("qq", "normal probability plot data for the null statistic");
  qq->add_option("--d", qq_opts.d, "dimension of the null")
      ->required()
      ->check(CLI::PositiveNumber);
  qq->add_option("--k", qq_opts.k, "directions per draw")
      ->required()
      ->check(CLI::PositiveNumber);
  qq->add_option("--samples", qq_opts.samples, "number of draws")->capture_default_str();

  // gen
  GenOpts gen_opts;
  auto* gen = app.add_subcommand("gen", "sample a benchmark manifold to CSV");
  gen->add_option("--manifold", gen_opts.manifold, "M1..M13")->required();
  gen->add_option("--n", gen_opts.n, "number of points")
      ->required()
      ->check(CLI::PositiveNumber);

  // bench
  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "estimator comparison over manifolds");
  bench->add_option("--manifolds", bench_opts.manifolds, "comma list, e.g. M1,M2")
      ->required();
  bench->add_option("--estimators", bench_opts.estimators,
                    "comma list of basic,bh,kernel,kh,lb")
      ->required();
  bench->add_option("--trials", bench_opts.trials, "trials per manifold")
      ->capture_default_str();
  bench->add_option("--n", bench_opts.n, "points per cloud")->capture_default_str();
  bench->add_option("--discard-frac", bench_opts.discard_fraction,
                    "fraction used by the +H estimators")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bench->add_option("--k1", bench_opts.k1, "smallest k of the lb average")
      ->capture_default_str();
  bench->add_option("--k2", bench_opts.k2, "largest k of the lb average")
      ->capture_default_str();
  bench->add_option("--cache", bench_opts.cache_path, "calibration cache for kernel rows");
  bench->add_option("--markdown", bench_opts.markdown_path, "also render markdown tables");

  try {
    app.parse(argc, argv);
    if (moments->parsed()) run_moments(moments_dmax, common);
    if (estimate->parsed()) run_estimate(est_opts, common);
    if (global->parsed()) run_global(glob_opts, common);
    if (calibrate->parsed()) run_calibrate(cal_opts, common);
    if (qq->parsed()) run_qq(qq_opts, common);
    if (gen->parsed()) run_gen(gen_opts, common);
    if (bench->parsed()) run_bench_cmd(bench_opts, common);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0, every usage problem exits 2
  } catch (const std::exception& e) {
    std::cerr << "angledim: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
