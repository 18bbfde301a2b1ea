#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "difflearn/concentration.hpp"
#include "difflearn/metrics.hpp"
#include "difflearn/scenario.hpp"

namespace difflearn {

// ---- scenario configuration (JSON object model) ----

/// Parses and validates a scenario. Unknown keys and out-of-range values
/// raise ConfigInvalid naming the field and, where possible, its line.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

std::string config_to_json(const ScenarioConfig& config);
void save_config(const ScenarioConfig& config, const std::string& path);

// ---- CSV ----

// 17 significant digits; infinities as "inf", NaN as "nan".
std::string format_real(double v);

inline constexpr const char* kGridHeader = "round,agent,x,m_true,m_hat,bound,source,abs_error";
inline constexpr const char* kEvolutionHeader = "round,agent,delta,mean_bound,max_bound";
inline constexpr const char* kLabHeader =
    "config_hash,test,t,sigma,delta,lambda,x,h,replications,seed,value,std_error";

std::string grid_csv(std::span<const GridReport> reports);
std::string evolution_csv(std::span<const EvolutionRow> rows);

std::vector<GridReport> parse_grid_csv(const std::string& text);
std::vector<EvolutionRow> parse_evolution_csv(const std::string& text);

// One concentration-lab result; unused parameters stay NaN and print empty.
struct LabRow {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  std::string test;
  double t = kNaN;
  double sigma = kNaN;
  double delta = kNaN;
  double lambda = kNaN;
  double x = kNaN;
  double h = kNaN;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  double value = kNaN;
  double std_error = kNaN;

  // FNV-1a over the parameter columns, hex.
  std::string config_hash() const;
};

std::string lab_csv(std::span<const LabRow> rows);

// Creates missing parent directories.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

// ---- plots (standalone SVG line charts) ----

std::string grid_plot_svg(const GridReport& report);
std::string evolution_plot_svg(std::span<const EvolutionRow> rows, AgentId agent);

}  // namespace difflearn
