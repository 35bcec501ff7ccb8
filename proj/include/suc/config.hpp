#pragma once

#include <cstdint>
#include <string>

#include "suc/base_series.hpp"
#include "suc/fleet.hpp"
#include "suc/solve.hpp"
#include "suc/time_grid.hpp"

namespace suc {

// Resolved experiment configuration: fleet, timeline, base series, scenario
// and evaluation parameters, solver options. Loaded from one declarative
// key/value + table file; command-line flags may override single keys.
struct RunConfig {
  std::string config_path;
  std::string out_dir = "out";

  TimeGrid grid;
  Fleet fleet;
  BaseSeries base;

  double pi_dns = 10.0;   // k-currency / MWh
  double pi_spill = 3.0;  // k-currency / MWh

  int train_count = 5;       // M
  double train_dev = 0.10;   // m
  double phi = 0.9;
  std::uint64_t seed = 1;

  int eval_count = 50;       // K
  double eval_dev = 0.25;    // m_eval

  bool selection = false;
  int select_count = 5;      // M(m_eval)

  std::string optimizer = "sto";   // det | sto | sto_relaxed
  std::string framework = "single";  // single | multi
  SolveOptions solve;
  int threads = 2;

  void validate() const;  // throws std::invalid_argument
  // Canonical key/value dump; hashing it identifies a run.
  std::string canonical() const;
  std::uint64_t config_hash() const;
};

RunConfig load_config(const std::string& path);

// Applies "key=value" overrides using the config file's key names.
void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value);

}  // namespace suc
