// Command-line front end: cluster CSV datasets, score them against ground
// truth, generate synthetic benchmarks and dump pipeline intermediates.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "sagdbscan.hpp"

namespace {

using namespace sagdbscan;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string input;
  std::optional<std::size_t> labels_col;
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  std::string metric = "euclidean";
  bool normalize = false;
  std::string regression = "ols";
  std::string output;
  std::string metrics_out;
  std::string plot;
  std::string dump_grey;
  std::string dump_rho;
  std::string dump_residuals;
  std::string dump_dense;
  std::string expected;
  std::string predictions;
};

struct GenerateConfig {
  std::string kind;
  std::size_t points = 10000;
  double noise = 0.0;
  std::size_t centers = 3;
  std::size_t dim = 2;
  double spread = 1.0;
  std::uint64_t seed = 1;
  std::string output;
};

/// Failures caused by the user's input rather than the algorithm.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  return out;
}

Dataset load_input(const RunConfig& cfg, bool need_labels) {
  try {
    auto data = load_csv(cfg.input, cfg.labels_col);
    if (need_labels && !data.has_labels()) {
      throw Error(ErrorCode::MissingLabels, "bench needs --labels-col");
    }
    return data;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

PipelineOptions options_from(const RunConfig& cfg) {
  PipelineOptions o;
  o.k = cfg.k;
  o.m = cfg.m;
  o.metric = cfg.metric == "grey" ? Metric::GreyDissimilarity : Metric::Euclidean;
  o.normalize = cfg.normalize;
  o.regression = cfg.regression == "l1" ? RegressionMode::L1 : RegressionMode::OLS;
  return o;
}

void write_dumps(const RunConfig& cfg, const PipelineReport& report) {
  if (!cfg.dump_grey.empty()) {
    auto out = open_out(cfg.dump_grey);
    const auto n = report.grey.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << real(report.grey(i, j));
      out << '\n';
    }
  }
  if (!cfg.dump_rho.empty()) {
    auto out = open_out(cfg.dump_rho);
    out << "index,rho\n";
    for (std::size_t i = 0; i < report.density.rho.size(); ++i) {
      out << i << ',' << real(report.density.rho[i]) << '\n';
    }
  }
  if (!cfg.dump_residuals.empty()) {
    auto out = open_out(cfg.dump_residuals);
    out << "p,R_p\n";
    for (const auto& [p, r] : report.split.residuals) out << p << ',' << real(r) << '\n';
  }
  if (!cfg.dump_dense.empty()) {
    auto out = open_out(cfg.dump_dense);
    out << "index,dense\n";
    for (std::size_t i = 0; i < report.split.member_mask.size(); ++i) {
      out << i << ',' << (report.split.member_mask[i] ? 1 : 0) << '\n';
    }
  }
}

PipelineReport run_pipeline(const RunConfig& cfg, const Dataset& data) {
  auto report = run_sag_dbscan(data, options_from(cfg));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  write_dumps(cfg, report);
  if (!cfg.plot.empty()) plot_scatter(data, report.clustering, cfg.plot);
  return report;
}

void print_summary(const PipelineReport& report) {
  std::cout << "clusters: " << report.cluster_count << '\n'
            << "dense subset: " << report.dense_size << " of "
            << report.clustering.size() << '\n'
            << "k: " << report.params.k << '\n'
            << "m: " << report.params.m << '\n'
            << "eps: " << real(report.dbscan.eps) << '\n'
            << "split: " << report.split.p_star << '\n';
  for (const auto& t : report.timings) {
    std::printf("time %-16s %.4f s\n", t.stage.c_str(), t.seconds);
  }
  std::fflush(stdout);
}

std::string default_output(const std::string& input) {
  auto slash = input.find_last_of('/');
  std::string base = slash == std::string::npos ? input : input.substr(slash + 1);
  auto dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return base + "_clusters.csv";
}

int cmd_run(const RunConfig& cfg) {
  const auto data = load_input(cfg, false);
  const auto report = run_pipeline(cfg, data);
  print_summary(report);
  const auto path = cfg.output.empty() ? default_output(cfg.input) : cfg.output;
  write_result(report.clustering, path);
  std::cout << "assignments: " << path << '\n';
  return kExitOk;
}

struct Expectation {
  double target;
  double tolerance;
};

std::map<std::string, Expectation> read_expected(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("expected-values file not found: " + path);
  std::map<std::string, Expectation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = detail::split_commas(line);
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (line_no == 1 && cells.size() == 3 && cells[0] == "metric") continue;
    const auto target = cells.size() == 3 ? detail::parse_double(cells[1]) : std::nullopt;
    const auto tol = cells.size() == 3 ? detail::parse_double(cells[2]) : std::nullopt;
    if (!target || !tol) {
      throw UsageError("bad expected-values row " + std::to_string(line_no));
    }
    out[std::string(cells[0])] = {*target, *tol};
  }
  return out;
}

int cmd_bench(const RunConfig& cfg) {
  const auto data = load_input(cfg, true);
  const auto expected = cfg.expected.empty() ? std::map<std::string, Expectation>{}
                                             : read_expected(cfg.expected);
  Clustering clustering;
  if (!cfg.predictions.empty()) {
    try {
      clustering = read_result(cfg.predictions);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (clustering.size() != data.rows()) {
      throw UsageError("predictions cover " + std::to_string(clustering.size()) +
                       " objects, dataset has " + std::to_string(data.rows()));
    }
  } else {
    auto report = run_pipeline(cfg, data);
    print_summary(report);
    clustering = std::move(report.clustering);
    if (!cfg.output.empty()) write_result(clustering, cfg.output);
  }

  const auto scores = evaluate(clustering.assignments, *data.labels());
  const std::map<std::string, double> values = {
      {"accuracy", scores.accuracy},
      {"f_score", scores.f_score},
      {"ari", scores.ari},
      {"nmi", scores.nmi},
      {"clusters", static_cast<double>(scores.clusters)}};
  const char* order[] = {"accuracy", "f_score", "ari", "nmi", "clusters"};

  std::printf("%-10s %s\n", "metric", "value");
  for (const char* name : order) {
    if (std::string(name) == "clusters") {
      std::printf("%-10s %zu\n", name, scores.clusters);
    } else {
      std::printf("%-10s %.4f\n", name, values.at(name));
    }
  }
  std::fflush(stdout);
  if (!cfg.metrics_out.empty()) {
    auto out = open_out(cfg.metrics_out);
    out << "metric,value\n";
    for (const char* name : order) out << name << ',' << real(values.at(name)) << '\n';
  }

  int failures = 0;
  for (const auto& [name, exp] : expected) {
    const auto it = values.find(name);
    if (it == values.end()) throw UsageError("unknown metric in expected file: " + name);
    const double diff = it->second - exp.target;
    if (!(std::abs(diff) <= exp.tolerance)) {
      ++failures;
      std::printf("MISMATCH %-10s value %.6f target %.6f diff %+.6f tolerance %.6f\n",
                  name.c_str(), it->second, exp.target, diff, exp.tolerance);
    }
  }
  if (failures > 0) {
    std::fflush(stdout);
    std::cerr << failures << " metric(s) outside tolerance\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_generate(const GenerateConfig& cfg) {
  Dataset data = [&] {
    try {
      if (cfg.kind == "shapet") return generate_shape_t(cfg.points, cfg.noise, cfg.seed);
      std::vector<std::vector<double>> centers;
      for (std::size_t c = 0; c < cfg.centers; ++c) {
        std::vector<double> center(cfg.dim, 0.0);
        center[0] = 20.0 * static_cast<double>(c);
        centers.push_back(std::move(center));
      }
      return generate_blobs(centers, cfg.points, cfg.spread, cfg.seed);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  if (cfg.output.empty()) {
    const auto tmp = std::string("/dev/stdout");
    write_dataset_csv(data, tmp);
  } else {
    write_dataset_csv(data, cfg.output);
    std::cout << "wrote " << data.rows() << " rows to " << cfg.output << '\n';
  }
  return kExitOk;
}

void add_pipeline_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "Dataset CSV")->required();
  cmd->add_option("--labels-col", cfg.labels_col, "0-based column holding class labels");
  cmd->add_option("--k", cfg.k, "Neighbor count for the grey KNN density")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--m", cfg.m, "DBSCAN MinPts")->check(CLI::PositiveNumber);
  cmd->add_option("--metric", cfg.metric, "Distance for DBSCAN and assignment")
      ->check(CLI::IsMember({"euclidean", "grey"}));
  cmd->add_flag("--normalize", cfg.normalize, "Min-max scale every feature first");
  cmd->add_option("--regression", cfg.regression, "Split-search line fit")
      ->check(CLI::IsMember({"ols", "l1"}));
  cmd->add_option("--output", cfg.output, "Assignments CSV (index,cluster,origin)");
  cmd->add_option("--plot", cfg.plot, "SVG scatter plot (2-D data only)");
  cmd->add_option("--dump-grey", cfg.dump_grey, "Write the grey degree matrix");
  cmd->add_option("--dump-rho", cfg.dump_rho, "Write index,rho");
  cmd->add_option("--dump-residuals", cfg.dump_residuals, "Write p,R_p");
  cmd->add_option("--dump-dense", cfg.dump_dense, "Write the dense subset mask");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-adaptive grey DBSCAN clustering"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  auto* run = app.add_subcommand("run", "Cluster a dataset");
  add_pipeline_flags(run, run_cfg);

  RunConfig bench_cfg;
  auto* bench = app.add_subcommand("bench", "Cluster and score against labels");
  add_pipeline_flags(bench, bench_cfg);
  bench->add_option("--metrics-out", bench_cfg.metrics_out, "Write metric,value CSV");
  bench->add_option("--expected", bench_cfg.expected,
                    "CSV metric,target,tolerance; exit 1 when any is missed");
  bench->add_option("--predictions", bench_cfg.predictions,
                    "Score this assignments file instead of running the pipeline");

  GenerateConfig gen_cfg;
  auto* gen = app.add_subcommand("generate", "Write a synthetic labeled dataset");
  gen->add_option("kind", gen_cfg.kind, "shapet or blobs")
      ->required()
      ->check(CLI::IsMember({"shapet", "blobs"}));
  gen->add_option("--points", gen_cfg.points,
                  "Total points (shapet) or points per center (blobs)");
  gen->add_option("--noise", gen_cfg.noise, "Share of jittered points (shapet)");
  gen->add_option("--centers", gen_cfg.centers, "Number of blobs")->check(CLI::PositiveNumber);
  gen->add_option("--dim", gen_cfg.dim, "Blob dimension")->check(CLI::PositiveNumber);
  gen->add_option("--spread", gen_cfg.spread, "Blob standard deviation");
  gen->add_option("--seed", gen_cfg.seed, "Random seed");
  gen->add_option("--output", gen_cfg.output, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_cfg);
    if (*bench) {
      if (!bench_cfg.labels_col) {
        throw UsageError("MissingLabels: bench needs --labels-col");
      }
      return cmd_bench(bench_cfg);
    }
    if (*gen) return cmd_generate(gen_cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
