#pragma once

#include <optional>
#include <vector>

#include "suc/base_series.hpp"
#include "suc/duration_rules.hpp"
#include "suc/fleet.hpp"
#include "suc/milp_model.hpp"
#include "suc/scenario_set.hpp"
#include "suc/state_plan.hpp"
#include "suc/time_grid.hpp"

namespace suc {

// Which problem of the framework a model instantiates.
//
//   SinglePhase       one two-stage program; commitment of NUC/COAL/CCGT over
//                     the horizon is first-stage, OCGT and dispatch second
//   PhaseNuclear      phase 1: nuclear commitment first-stage, rest second
//   PhaseCoal         phase 2: coal over the study period first-stage,
//                     nuclear pinned
//   PhaseCcgtFirst    phase 3: CCGT over block 1 first-stage, nuclear and
//                     coal pinned
//   PhaseCcgtRolling  phase 4 at block i >= 2: CCGT over block i first-stage,
//                     all earlier commitments pinned
//   EvalFull          deterministic re-dispatch with the whole first stage
//                     pinned (out-of-sample second-stage problem)
//   EvalBlock         deterministic rolling re-dispatch of one block: model
//                     window starts at the block, CCGT pinned on that block
//                     only, coal within the study period, nuclear throughout
enum class ProblemKind {
  SinglePhase,
  PhaseNuclear,
  PhaseCoal,
  PhaseCcgtFirst,
  PhaseCcgtRolling,
  EvalFull,
  EvalBlock
};

const char* to_string(ProblemKind k);

struct FixedDecision {
  int unit = -1;
  int step = -1;
  int off = 0;  // pinned value of E[t][OFF]
};

// Boundary conditions for windowed problems: the state and production level
// at the last pre-window step. Power couples through the power-variation
// rows at the window's first step.
struct InitialConditions {
  std::vector<std::optional<State>> prev_state;
  std::vector<std::optional<double>> prev_power;
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::SinglePhase;
  int block = 0;  // PhaseCcgtRolling: i >= 2; EvalBlock: block j >= 1
  const Fleet* fleet = nullptr;
  const TimeGrid* grid = nullptr;
  const BaseSeries* base = nullptr;       // residual before the scenario window
  const ScenarioSet* scenarios = nullptr;
  std::vector<FixedDecision> fixed;
  InitialConditions init;
  double pi_dns = 10.0;   // k-currency per MWh of lost load
  double pi_spill = 3.0;  // k-currency per MWh of lost production

  int window_begin() const;
  void validate() const;
};

// First-stage/second-stage unit split induced by the problem kind.
StageSets derive_stage_sets(const ProblemSpec& spec);

// First-stage (scenario-shared) commitment steps of a unit under a kind;
// empty window when the unit's commitment is entirely second-stage.
StepWindow first_stage_region(const ProblemSpec& spec, int unit);

MilpModel build_problem(const ProblemSpec& spec);
MilpModel build_single_phase(const ProblemSpec& spec);
MilpModel build_phase(const ProblemSpec& spec);
MilpModel build_evaluation(const ProblemSpec& spec);

// sto*: every scenario-indexed binary becomes continuous in [0,1];
// first-stage binaries stay binary.
MilpModel relax_second_stage(const MilpModel& model);

// State of unit u at step t in a solved model (shared variables first, then
// the given scenario). Values are the solver's variable values.
State state_at(const MilpModel& model, const std::vector<double>& values,
               int unit, int step, int scenario);
double power_at(const MilpModel& model, const std::vector<double>& values,
                int unit, int step, int scenario);

// Full plan over the model window for one scenario.
StatePlan extract_plan(const MilpModel& model, const std::vector<double>& values,
                       int scenario);

}  // namespace suc
