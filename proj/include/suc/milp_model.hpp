#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "suc/states.hpp"

namespace suc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class RowSense { LE, EQ, GE };

enum class VarRole {
  StateVar,        // E[unit][t][state]
  Transition,      // T[unit][t][from][to], state change t -> t+1
  InitTransition,  // T0[unit][from][to], boundary transition into the window
  Power,           // p[unit][t][scenario]
  Dns,             // lost load slack
  Spill,           // lost production slack
  Other
};

// Coordinate tag mapping a model variable back to its domain meaning.
// scenario = -1 marks first-stage (shared) variables; that convention is what
// nonanticipativity and second-stage relaxation key on.
struct VarCoord {
  VarRole role = VarRole::Other;
  int unit = -1;
  int step = -1;
  int scenario = -1;
  State from = State::OU;  // also the state for StateVar
  State to = State::OU;

  bool operator==(const VarCoord& o) const {
    return role == o.role && unit == o.unit && step == o.step &&
           scenario == o.scenario && from == o.from && to == o.to;
  }
};

// Stable name mangling: role prefix, unit id, optional scenario, step, states.
// Examples: E_NUC1_t3_OFF, E_OCGT2_s1_t3_OFF, T_NUC1_t3_OFL_OU,
// T0_OCGT2_s0_OFF_OU, p_NUC1_s0_t3, dns_s0_t3, spill_s0_t3.
std::string coord_name(const VarCoord& coord,
                       const std::vector<std::string>& unit_ids);

struct MilpVar {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0;
  double ub = kInf;
  VarCoord coord;
};

struct MilpRow {
  std::string name;
  RowSense sense = RowSense::LE;
  double rhs = 0;
  std::vector<std::pair<int, double>> terms;  // (var index, coefficient)
};

// Solver-agnostic linear model, objective sense is always minimize.
struct MilpModel {
  std::vector<MilpVar> vars;
  std::vector<MilpRow> rows;
  std::vector<double> objective;
  double objective_constant = 0;
  std::string problem_kind;
  double issue_hours = 0;
  int window_begin = 0;    // first step covered by the model
  int horizon_steps = 0;   // grid horizon (window is [window_begin, horizon))
  int n_scenarios = 0;
  std::vector<std::string> unit_ids;

  // Per-unit duration bookkeeping (steps), used by solver heuristics to
  // construct feasible state sequences without re-deriving them from rows.
  struct UnitMeta {
    int flat_steps = 0;
    int min_on_steps = 0;
    int min_off_steps = 0;
    int max_on_steps = -1;  // -1: uncapped
    int max_starts = -1;    // -1: uncapped
    int boundary_state = -1;  // -1: unknown but ON; else static_cast<State>
  };
  std::vector<UnitMeta> unit_meta;

  int add_var(std::string name, VarKind kind, double lb, double ub,
              const VarCoord& coord, double obj = 0);
  int add_var(VarKind kind, double lb, double ub, const VarCoord& coord,
              double obj = 0);
  MilpRow& add_row(std::string name, RowSense sense, double rhs);
  void set_objective(int var, double coefficient);

  int n_vars() const { return static_cast<int>(vars.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }
  int var_by_name(const std::string& name) const;  // -1 when absent
  int n_binaries() const;
  // Binaries whose bounds still leave both values open.
  int n_free_binaries() const;

  // Structural invariants: bounds sane, binaries within [0,1], coordinate
  // tags unique, every row references existing variables. Throws on failure.
  void check() const;

  const std::unordered_map<std::string, int>& name_index() const;

 private:
  mutable std::unordered_map<std::string, int> name_index_;
};

}  // namespace suc
