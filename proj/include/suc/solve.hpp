#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "suc/milp_model.hpp"

namespace suc {

struct SolveOptions {
  double rel_gap_stop = 0.0;  // MIPRELSTOP analog, as a fraction
  double time_limit_seconds = 0;  // 0: no limit
  std::int64_t node_limit = 0;    // 0: no limit
  std::int64_t iteration_limit = 0;  // per LP; 0: no limit
  double feas_tol = 1e-7;
  double int_tol = 1e-6;
};

enum class SolveStatus {
  Optimal,
  GapReached,
  TimeLimit,
  Infeasible,
  Unbounded,
  SolverFailure
};

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::SolverFailure;
  double objective = 0;  // incumbent objective (valid when has_solution)
  double bound = -kInf;  // best proven lower bound
  double gap = kInf;     // (objective - bound) / max(|objective|, eps)
  bool has_solution = false;
  std::vector<double> values;  // per model variable
  std::int64_t nodes = 0;
  std::int64_t simplex_iterations = 0;
  double wall_seconds = 0;
  std::string message;
};

double relative_gap(double objective, double bound);

// LP relaxation solve: binaries are treated as continuous within their
// bounds. Returns a vertex solution; singular bases surface as
// SolverFailure, never silently.
SolveResult solve_lp(const MilpModel& model, const SolveOptions& options = {});

// Branch-and-bound with best-bound node selection and most-fractional
// branching (ties on the lowest variable id). Deterministic for fixed
// options; stops once the relative gap reaches rel_gap_stop.
SolveResult solve_milp(const MilpModel& model, const SolveOptions& options = {});

// Ground-truth oracle: depth-first enumeration of all binary assignments
// with row-activity pruning, solving the continuous residual LP at each
// feasible leaf. Refuses models whose free binary count (binaries still open
// after bound reductions) exceeds the budget, which caps the worst case at
// 2^budget leaves.
SolveResult solve_enumerate(const MilpModel& model, int binary_budget = 22,
                            const SolveOptions& options = {});

}  // namespace suc
