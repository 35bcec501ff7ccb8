#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "suc/base_series.hpp"
#include "suc/error_model.hpp"
#include "suc/time_grid.hpp"

namespace suc {

// Seed namespaces keep training, evaluation and any future stream families
// structurally disjoint: an evaluation scenario can never replay a training
// scenario's noise.
enum class StreamKind : std::uint64_t { Training = 1, Evaluation = 2 };

// Weighted ensemble of residual-demand trajectories issued at one decision
// time and covering [window_begin, window_end) of the grid.
struct ScenarioSet {
  double issue_hours = 0;
  int window_begin = 0;  // steps
  int window_end = 0;    // exclusive
  std::uint64_t seed = 0;
  ErrorModelParams params;
  std::vector<std::string> source_names;  // consumption + renewables
  // per scenario: per source: values over the window
  std::vector<std::vector<std::vector<double>>> sources;
  std::vector<std::vector<double>> residual;  // per scenario, over the window
  std::vector<double> probability;

  int count() const { return static_cast<int>(residual.size()); }
  int window_steps() const { return window_end - window_begin; }
  // Residual demand at absolute step t for scenario s.
  double residual_at(int s, int t) const {
    return residual[s][t - window_begin];
  }
  void validate() const;
};

// M unbiased scenarios: every source is perturbed by an independent error
// process keyed on (seed, stream kind, issue time, scenario, source);
// renewables and consumption are clamped at zero from below, probabilities
// are uniform. Scenario i draws the same noise path regardless of M or
// max_dev, so scenario sets are nested in M and scale continuously in m.
ScenarioSet generate_scenario_set(const BaseSeries& base, const TimeGrid& grid,
                                  double issue_hours, int window_begin,
                                  int window_end, int count,
                                  const ErrorModelParams& params,
                                  std::uint64_t seed, StreamKind kind,
                                  int first_index = 0);

// Single unperturbed scenario (the mean of the unbiased error model).
ScenarioSet mean_scenario(const BaseSeries& base, const TimeGrid& grid,
                          double issue_hours, int window_begin,
                          int window_end);

// One scenario of a set as its own single-scenario set (probability 1).
ScenarioSet slice_scenario(const ScenarioSet& set, int s);

void write_scenario_set(const std::string& path, const ScenarioSet& set);
ScenarioSet read_scenario_set(const std::string& path);

}  // namespace suc
