#pragma once

#include <string>
#include <vector>

#include "suc/config.hpp"
#include "suc/evaluator.hpp"
#include "suc/selector.hpp"

namespace suc {

struct PhaseReport {
  std::string name;
  SolveStatus status;
  double objective = 0;
  double bound = 0;
  double gap = 0;
  std::int64_t nodes = 0;
  double wall_seconds = 0;
};

struct CommitOutcome {
  CommitmentPlan plan;
  std::vector<PhaseReport> phases;  // one entry for single-phase runs
  double kappa_in = 0;              // objective of the final solve
  bool solved = false;
};

EvalContext eval_context(const RunConfig& config);

// Commitment per the configured optimizer and framework. det solves the mean
// scenario; sto the two-stage program on M training scenarios; sto_relaxed
// its second-stage relaxation. The multi framework chains the phase
// problems, feeding each phase's ON/OFF values into the next.
CommitOutcome run_commit(const RunConfig& config,
                         const ScenarioSet* training_override = nullptr,
                         const std::string& plan_id = "");

// Batch evaluation of a plan at one deviation level.
std::vector<KpiRecord> run_evaluation(const RunConfig& config,
                                      const CommitmentPlan& plan,
                                      double m_eval);

struct GridCellResult {
  std::string optimizer;
  int train_count = 0;
  double train_dev = 0;
  double m_eval = 0;
  bool solved = false;
  double mean_lost_load = 0, mean_lost_prod = 0, mean_cost = 0;
};

struct GridOutcome {
  std::vector<GridCellResult> cells;
  std::vector<std::string> files;
};

// Experiment grid over (M, m) pairs and evaluation deviations; per-cell
// failures are recorded and the grid continues. Writes tidy and heatmap
// CSVs (absolute and normalized by the deterministic plan) plus a manifest.
GridOutcome run_experiment_grid(const RunConfig& config,
                                const std::vector<int>& train_counts,
                                const std::vector<double>& train_devs,
                                const std::vector<double>& eval_devs,
                                const std::vector<std::string>& optimizers);

// Artifact writers; file contents are pure functions of inputs so a rerun
// reproduces them byte for byte.
void write_plan_csv(const std::string& path, const CommitmentPlan& plan,
                    const Fleet& fleet, const TimeGrid& grid);
void write_kpi_csv(const std::string& path,
                   const std::vector<KpiRecord>& kpis);
void write_manifest(const std::string& path, const RunConfig& config,
                    const std::string& command,
                    const std::vector<std::string>& files);

}  // namespace suc
