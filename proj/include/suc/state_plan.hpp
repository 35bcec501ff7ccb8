#pragma once

#include <string>
#include <vector>

#include "suc/fleet.hpp"
#include "suc/states.hpp"
#include "suc/time_grid.hpp"

namespace suc {

// Per-unit, per-timestep state assignment. Exactly one state per (unit, t)
// by construction; legality of consecutive pairs is what validate_plan
// checks.
struct StatePlan {
  int n_units = 0;
  int n_steps = 0;
  std::vector<State> states;  // unit-major

  StatePlan() = default;
  StatePlan(int units, int steps, State fill = State::OFF)
      : n_units(units), n_steps(steps),
        states(static_cast<std::size_t>(units) * steps, fill) {}

  State at(int u, int t) const {
    return states[static_cast<std::size_t>(u) * n_steps + t];
  }
  void set(int u, int t, State e) {
    states[static_cast<std::size_t>(u) * n_steps + t] = e;
  }
  bool off(int u, int t) const { return at(u, t) == State::OFF; }
};

struct Violation {
  int unit = -1;
  int step = -1;
  std::string rule;
  std::string detail;
};

// Independent feasibility checker for a state plan: Table I legality,
// consecutive-variation rule, initial-state rules, FLAT / minimum ON /
// minimum OFF holds, maximum ON duration and start-up count for OCGT units.
// Throws std::invalid_argument when plan dimensions do not match fleet/grid.
std::vector<Violation> validate_plan(const StatePlan& plan, const Fleet& fleet,
                                     const TimeGrid& grid);

std::string format_violations(const std::vector<Violation>& violations);

}  // namespace suc
