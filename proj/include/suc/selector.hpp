#pragma once

#include <vector>

#include "suc/evaluator.hpp"

namespace suc {

// Rankings of evaluation scenarios by the damage they cause to the
// deterministic plan, and the union of the two top-M prefixes that seeds the
// stochastic optimizer.
struct WorstSets {
  std::vector<int> by_lost_load;  // scenario indices, worst first
  std::vector<int> by_lost_prod;
  std::vector<int> selected;      // top-M union, ascending
};

// Pure function of the KPI table: descending KPI, ties broken by the lower
// scenario index. Throws when M exceeds the table size.
WorstSets select_worst(const std::vector<KpiRecord>& kpis, int m_count);

struct SelectionResult {
  WorstSets sets;
  ScenarioSet training;          // the selected scenarios, re-materialized
  std::vector<KpiRecord> kpis;   // the pre-evaluation table
  CommitmentPlan det_plan;
};

// Importance-sampling pipeline: deterministic plan on the mean scenario,
// single-shot pre-evaluation over count scenarios issued at the nuclear
// LTTD, worst-set selection, and re-materialization of the selected
// scenarios as the training set (uniform probabilities).
SelectionResult pipeline_select(const EvalContext& ctx, int count, int m_count,
                                double m_eval);

// Concatenates single-scenario sets sharing an issue time and window.
ScenarioSet merge_scenario_sets(const std::vector<ScenarioSet>& singles);

}  // namespace suc
