// Command-line driver: scenario simulation, concentration checks and config
// utilities.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 statistical
// acceptance failure, 3 I/O failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "difflearn/concentration.hpp"
#include "difflearn/errors.hpp"
#include "difflearn/io.hpp"
#include "difflearn/simulator.hpp"

namespace fs = std::filesystem;
using namespace difflearn;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitStatistical = 2;
constexpr int kExitIO = 3;

std::string default_out_dir() {
  if (const char* env = std::getenv("DIFFLEARN_OUT_DIR"); env != nullptr && *env != '\0')
    return env;
  return "runs/default";
}

int simulate(const std::string& config_path, std::string out_dir, int workers) {
  const ScenarioConfig config = load_config(config_path);
  if (out_dir.empty()) out_dir = default_out_dir();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IOFailure("cannot create " + out_dir + ": " + ec.message());
  const fs::path dir(out_dir);

  std::string log;
  SimOptions options;
  options.workers = workers;
  if (!config.outputs.message_log.empty())
    options.message_sink = [&log](const Message& m) { log += to_log_line(m) + "\n"; };

  const SimResult result = run(config, options);
  const auto evolution = evolution_sweep(config, result, workers);

  write_text((dir / config.outputs.grid_csv).string(), grid_csv(result.grid_reports));
  write_text((dir / config.outputs.evolution_csv).string(), evolution_csv(evolution));
  write_edge_list(result.graph, (dir / config.outputs.topology).string());
  if (!config.outputs.message_log.empty())
    write_text((dir / config.outputs.message_log).string(), log);

  if (config.outputs.plots && !result.grid_reports.empty()) {
    const fs::path plots = dir / "plots";
    fs::create_directories(plots, ec);
    if (ec) throw IOFailure("cannot create " + plots.string());
    const Round last = result.grid_reports.back().round;
    for (const auto& r : result.grid_reports)
      if (r.round == last)
        write_text((plots / ("grid_agent" + std::to_string(r.agent) + ".svg")).string(),
                   grid_plot_svg(r));
    for (AgentId k = 0; k < config.node_count; ++k)
      write_text((plots / ("evolution_agent" + std::to_string(k) + ".svg")).string(),
                 evolution_plot_svg(evolution, k));
  }

  std::printf("simulated %zu agents for %u rounds: %llu requests, %llu shares delivered\n",
              config.node_count, config.horizon,
              static_cast<unsigned long long>(result.stats.requests_delivered),
              static_cast<unsigned long long>(result.stats.shares_delivered));
  return 0;
}

void maybe_write_lab(const std::string& path, const LabRow& row) {
  if (path.empty()) return;
  write_text(path, lab_csv(std::span<const LabRow>(&row, 1)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion-based decentralized non-parametric learning"};
  app.require_subcommand(1);

  std::string config_path, out_dir, csv_path;
  int workers = 0;

  auto* sim = app.add_subcommand("simulate", "Run a scenario and write its CSV outputs");
  sim->add_option("--config", config_path, "Scenario config (JSON)")->required();
  sim->add_option("--out", out_dir, "Output directory (default $DIFFLEARN_OUT_DIR or runs/default)");
  sim->add_option("--workers", workers, "Worker threads, 0 = OpenMP default");

  double cov_x = 5.0, cov_lo = 4.0, cov_hi = 6.0, cov_h = 0.5, cov_sigma = 0.3, cov_delta = 0.05;
  std::size_t cov_points = 200, cov_reps = 5000;
  std::uint64_t seed = 7;
  auto* cov = app.add_subcommand("coverage-test", "Monte-Carlo coverage of the local bound");
  cov->add_option("--x", cov_x, "Query point");
  cov->add_option("--design-count", cov_points, "Number of design points");
  cov->add_option("--design-lo", cov_lo, "Design range lower end");
  cov->add_option("--design-hi", cov_hi, "Design range upper end");
  cov->add_option("--bandwidth", cov_h, "Fixed bandwidth h");
  cov->add_option("--sigma", cov_sigma, "Noise standard deviation");
  cov->add_option("--delta", cov_delta, "Confidence parameter");
  cov->add_option("--reps", cov_reps, "Replications");
  cov->add_option("--seed", seed, "Seed");
  cov->add_option("--workers", workers, "Worker threads");
  cov->add_option("--csv", csv_path, "CSV result file");

  std::size_t sn_t = 100, sn_reps = 10000;
  double sn_sigma = 1.0, sn_delta = 0.05;
  std::string sn_weights = "uniform";
  auto* sn = app.add_subcommand("selfnorm-test", "Monte-Carlo check of the self-normalized bound");
  sn->add_option("--t", sn_t, "Sequence length");
  sn->add_option("--sigma", sn_sigma, "Noise standard deviation");
  sn->add_option("--delta", sn_delta, "Confidence parameter");
  sn->add_option("--weights", sn_weights, "uniform or kernel")
      ->check(CLI::IsMember({"uniform", "kernel"}));
  sn->add_option("--reps", sn_reps, "Replications");
  sn->add_option("--seed", seed, "Seed");
  sn->add_option("--workers", workers, "Worker threads");
  sn->add_option("--csv", csv_path, "CSV result file");

  std::size_t mg_t = 50, mg_reps = 100000;
  double mg_lambda = 0.5, mg_sigma = 1.0;
  auto* mg = app.add_subcommand("martingale-test", "Monte-Carlo mean of the exponential supermartingale");
  mg->add_option("--t", mg_t, "Sequence length");
  mg->add_option("--lambda", mg_lambda, "Exponent scale");
  mg->add_option("--sigma", mg_sigma, "Noise standard deviation");
  mg->add_option("--reps", mg_reps, "Replications");
  mg->add_option("--seed", seed, "Seed");
  mg->add_option("--workers", workers, "Worker threads");
  mg->add_option("--csv", csv_path, "CSV result file");

  std::string validate_path;
  auto* val = app.add_subcommand("validate-config", "Check a scenario config");
  val->add_option("config", validate_path, "Config path")->required();

  std::string emit_path;
  auto* emit = app.add_subcommand("emit-default-config", "Write the 50-node reference scenario");
  emit->add_option("path", emit_path, "Destination")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sim) return simulate(config_path, out_dir, workers);

    if (*cov) {
      const auto design = uniform_design(cov_points, cov_lo, cov_hi, seed);
      const Phenomenon truth{SinExpOffset{}, 1.0};
      const auto r = local_bound_coverage(cov_x, design, cov_h, truth, cov_sigma, cov_delta,
                                          cov_reps, seed, workers);
      const double limit = cov_delta + binomial_slack(cov_delta, cov_reps);
      LabRow row;
      row.test = "local_bound_coverage";
      row.sigma = cov_sigma;
      row.delta = cov_delta;
      row.x = cov_x;
      row.h = cov_h;
      row.replications = cov_reps;
      row.seed = seed;
      row.value = r.rate;
      row.std_error = r.std_error;
      maybe_write_lab(csv_path, row);
      std::printf("coverage violation rate %.6f (limit %.6f)\n", r.rate, limit);
      return r.rate <= limit ? 0 : kExitStatistical;
    }

    if (*sn) {
      const auto weights =
          sn_weights == "uniform" ? WeightDistribution::UniformUnit : WeightDistribution::KernelWeights;
      const auto r = selfnorm_violation_rate(sn_t, sn_sigma, sn_delta, weights, sn_reps, seed, workers);
      const double limit = sn_delta + binomial_slack(sn_delta, sn_reps);
      LabRow row;
      row.test = "selfnorm_" + sn_weights;
      row.t = static_cast<double>(sn_t);
      row.sigma = sn_sigma;
      row.delta = sn_delta;
      row.replications = sn_reps;
      row.seed = seed;
      row.value = r.rate;
      row.std_error = r.std_error;
      maybe_write_lab(csv_path, row);
      std::printf("self-normalized violation rate %.6f (limit %.6f)\n", r.rate, limit);
      return r.rate <= limit ? 0 : kExitStatistical;
    }

    if (*mg) {
      const auto r = martingale_mean(mg_t, mg_lambda, mg_sigma, mg_reps, seed, workers);
      const double limit = 1.0 + 3.0 * r.std_error;
      LabRow row;
      row.test = "martingale_mean";
      row.t = static_cast<double>(mg_t);
      row.sigma = mg_sigma;
      row.lambda = mg_lambda;
      row.replications = mg_reps;
      row.seed = seed;
      row.value = r.mean;
      row.std_error = r.std_error;
      maybe_write_lab(csv_path, row);
      std::printf("martingale mean %.6f +- %.6f (limit %.6f)\n", r.mean, r.std_error, limit);
      return r.mean <= limit ? 0 : kExitStatistical;
    }

    if (*val) {
      load_config(validate_path);
      std::printf("ok\n");
      return 0;
    }

    if (*emit) {
      save_config(reference_scenario(), emit_path);
      return 0;
    }
  } catch (const ConfigInvalid& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const IOFailure& e) {
    std::cerr << e.what() << "\n";
    return kExitIO;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
