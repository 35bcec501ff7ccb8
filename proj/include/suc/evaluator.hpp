#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "suc/problem.hpp"
#include "suc/solve.hpp"

namespace suc {

// ON/OFF plan under evaluation: the full OFF-status matrix of a commit run.
// The evaluator slices what each deterministic re-dispatch pins: nuclear over
// the whole horizon, coal over the study period, CCGT per activation block.
struct CommitmentPlan {
  std::string id;
  std::vector<std::vector<int>> off;  // [unit][step], 0 = ON, 1 = OFF

  int steps() const { return off.empty() ? 0 : static_cast<int>(off[0].size()); }
};

// One out-of-sample evaluation draw: per activation block, a single-scenario
// set issued at that block's evaluation time; later issues cover fewer steps.
struct EvalScenario {
  int index = -1;
  double m_eval = 0;
  std::vector<ScenarioSet> per_block;  // block j at [block_start(j), horizon)
};

struct KpiRecord {
  std::string plan_id;
  int scenario = -1;
  double m_eval = 0;
  double lost_load_mwh = 0;
  double lost_prod_mwh = 0;
  double dispatch_cost = 0;  // k-currency over the study period
  std::vector<double> block_lost_load, block_lost_prod, block_cost;
  double window_cost = 0;  // objective of a single-shot re-dispatch
};

struct EvalContext {
  const Fleet* fleet = nullptr;
  const TimeGrid* grid = nullptr;
  const BaseSeries* base = nullptr;
  double pi_dns = 10.0;
  double pi_spill = 3.0;
  double phi = 0.9;
  SolveOptions solve = default_solve_options();
  std::uint64_t seed = 1;
  int threads = 1;

  // Re-dispatch problems are solved many times per experiment; a small gap
  // and a node cap keep a single noisy draw from stalling a whole batch.
  // Results remain deterministic (the cap is on nodes, not wall time).
  static SolveOptions default_solve_options() {
    SolveOptions o;
    o.rel_gap_stop = 5e-3;
    o.node_limit = 20000;
    return o;
  }
};

CommitmentPlan plan_from_solution(const MilpModel& model,
                                  const std::vector<double>& values,
                                  std::string id);

EvalScenario make_eval_scenario(const EvalContext& ctx, int index,
                                double m_eval);

// Best-forecast (mean scenario) chain supplying each block's initial state
// and power level; shared across evaluation scenarios of one plan.
struct BestForecastChain {
  std::vector<InitialConditions> for_block;  // indexed by block, [1] empty
};

BestForecastChain make_best_forecast_chain(const EvalContext& ctx,
                                           const CommitmentPlan& plan);

// Rolling re-dispatch: one deterministic problem per block, KPIs retrieved
// over that block only and aggregated over the study period. Throws with the
// offending block index if a block problem cannot be solved.
KpiRecord rolling_evaluate(const EvalContext& ctx, const CommitmentPlan& plan,
                           const EvalScenario& scenario,
                           const BestForecastChain* chain = nullptr);

// K independent evaluation scenarios; deterministic for a fixed seed, block
// results merged by scenario index regardless of thread count.
std::vector<KpiRecord> evaluate_batch(const EvalContext& ctx,
                                      const CommitmentPlan& plan, int count,
                                      double m_eval);

// Single-shot re-dispatch over the full horizon with the whole first stage
// pinned: the out-of-sample second-stage problem. Returns study-period KPIs
// plus the full-window second-stage cost.
KpiRecord single_shot_evaluate(const EvalContext& ctx,
                               const CommitmentPlan& plan,
                               const ScenarioSet& scenario);

struct InOutOfSample {
  double kappa_in = 0;
  double kappa_oos = 0;
  double first_stage_cost = 0;
  double mean_second_stage = 0;
  double quality_gap() const { return kappa_oos - kappa_in; }
};

// kappa_in from the stochastic solve itself; kappa_oos replaces the
// in-sample expectation with the mean re-dispatch cost over unseen
// scenarios.
InOutOfSample compute_in_out_of_sample(
    const MilpModel& stochastic_model, const SolveResult& stochastic_result,
    const std::vector<double>& test_second_stage_costs);

}  // namespace suc
