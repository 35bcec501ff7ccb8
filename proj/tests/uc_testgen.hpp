// Shared test-side generator of randomized tiny unit-commitment instances.
// Instances stay within: <= 3 units, <= 4 timesteps, <= 2 scenarios, and
// <= 22 free binaries after bound reductions (so the enumeration oracle is
// always applicable). Oversized draws are trimmed by pinning sampled legal
// state patterns, and rejected if still too large.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "suc/problem.hpp"
#include "suc/rng.hpp"
#include "suc/simplex.hpp"
#include "suc/solve.hpp"
#include "suc/state_plan.hpp"

namespace suc::testgen {

struct TinyInstance {
  Fleet fleet;
  TimeGrid grid;
  BaseSeries base;
  ScenarioSet scenarios;
  MilpModel model;
  double pi_dns = 10.0, pi_spill = 3.0;
};

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive
  const int range = hi - lo + 1;
  int v = static_cast<int>(rng.next_uniform() * range);
  if (v >= range) v = range - 1;
  return lo + v;
}

inline UnitSpec random_unit(Rng& rng, int index) {
  static const UnitTech techs[4] = {UnitTech::NUC, UnitTech::COAL,
                                    UnitTech::CCGT, UnitTech::OCGT};
  UnitSpec u;
  const UnitTech tech = techs[rand_int(rng, 0, 3)];
  u.cls = UnitClass::defaults(tech);
  u.id = std::string(to_string(tech)) + "_" + std::to_string(index);
  u.p_min = 40 + 10 * rand_int(rng, 0, 8);
  u.p_max = u.p_min + 40 + 10 * rand_int(rng, 0, 12);
  u.startup_cost = 1 + rand_int(rng, 0, 30);
  u.variable_cost = 5 + 5 * rand_int(rng, 0, 25);
  u.dp_min = 1;
  u.initially_on = tech == UnitTech::NUC ? true : rng.next_uniform() < 0.3;
  return u;
}

// Random legal plan for one unit via rejection-sampled walks on the
// transition graph; falls back to the trivial legal plan.
inline std::vector<State> random_legal_states(Rng& rng, const UnitSpec& unit,
                                              const TimeGrid& grid) {
  Fleet one = {unit};
  for (int attempt = 0; attempt < 60; ++attempt) {
    StatePlan plan(1, grid.horizon_steps);
    State cur = unit.initially_on
                    ? (rng.next_uniform() < 0.5 ? State::OFL : State::OD)
                    : (rng.next_uniform() < 0.5 ? State::OU : State::OFF);
    plan.set(0, 0, cur);
    for (int t = 1; t < grid.horizon_steps; ++t) {
      State options[4];
      int n = 0;
      for (State e : kAllStates)
        if (transition_allowed(cur, e) && !consecutive_variation_forbidden(cur, e))
          options[n++] = e;
      cur = options[rand_int(rng, 0, n - 1)];
      plan.set(0, t, cur);
    }
    if (validate_plan(plan, one, grid).empty()) {
      std::vector<State> out(grid.horizon_steps);
      for (int t = 0; t < grid.horizon_steps; ++t) out[t] = plan.at(0, t);
      return out;
    }
  }
  return std::vector<State>(grid.horizon_steps,
                            unit.initially_on ? State::OFL : State::OFF);
}

inline int free_binaries_after_reduction(const MilpModel& model) {
  Presolved pre = Presolved::run(model);
  if (pre.infeasible) return 0;
  int n = 0;
  for (int c = 0; c < pre.reduced.n_cols; ++c)
    n += pre.reduced.is_binary[c] && pre.reduced.ub[c] - pre.reduced.lb[c] > 0.5;
  return n;
}

// Pin a unit's sampled state pattern directly through variable bounds.
inline void pin_unit_states(MilpModel& model, int unit,
                            const std::vector<State>& states, int n_scen,
                            bool off_only) {
  for (int t = 0; t < static_cast<int>(states.size()); ++t) {
    for (State e : kAllStates) {
      if (off_only && e != State::OFF) continue;
      const double v = states[t] == e ? 1.0 : 0.0;
      for (int s = -1; s < n_scen; ++s) {
        const int idx = model.var_by_name(coord_name(
            VarCoord{VarRole::StateVar, unit, t, s, e, e}, model.unit_ids));
        if (idx < 0) continue;
        model.vars[idx].lb = model.vars[idx].ub = v;
      }
    }
  }
}

inline TinyInstance random_tiny_instance(Rng& rng, int binary_budget = 22,
                                         int max_units = 3, int max_steps = 4,
                                         int max_scen = 2) {
  for (;;) {
    TinyInstance inst;
    const int steps = rand_int(rng, 2, max_steps);
    inst.grid.horizon_steps = steps;
    inst.grid.block_steps = steps >= 2 ? 2 : 1;
    inst.grid.study_steps = inst.grid.block_steps;
    inst.grid.validate();
    const int n_units = rand_int(rng, 1, max_units);
    for (int u = 0; u < n_units; ++u)
      inst.fleet.push_back(random_unit(rng, u));
    double cap = 0;
    for (const auto& u : inst.fleet) cap += u.p_max;
    inst.base.consumption.resize(steps);
    for (int t = 0; t < steps; ++t)
      inst.base.consumption[t] =
          cap * (0.15 + 0.9 * rng.next_uniform());  // sometimes above capacity
    inst.base.renewable_names = {"pv"};
    inst.base.renewables = {std::vector<double>(steps, 0.0)};
    for (int t = 0; t < steps; ++t)
      if (rng.next_uniform() < 0.3)
        inst.base.renewables[0][t] = cap * rng.next_uniform();
    const int n_scen = rand_int(rng, 1, max_scen);
    const auto params = ErrorModelParams::calibrated(
        0.05 + 0.2 * rng.next_uniform(), 0.9 * rng.next_uniform());
    inst.scenarios = generate_scenario_set(inst.base, inst.grid, -10.0, 0,
                                           steps, n_scen, params,
                                           rng.next_u64(), StreamKind::Training);
    ProblemSpec spec;
    spec.kind = ProblemKind::SinglePhase;
    spec.fleet = &inst.fleet;
    spec.grid = &inst.grid;
    spec.base = &inst.base;
    spec.scenarios = &inst.scenarios;
    spec.pi_dns = inst.pi_dns;
    spec.pi_spill = inst.pi_spill;
    inst.model = build_single_phase(spec);

    // Trim oversized instances by pinning sampled legal patterns.
    std::vector<int> order(inst.fleet.size());
    for (std::size_t u = 0; u < order.size(); ++u) order[u] = static_cast<int>(u);
    std::size_t next = 0;
    while (free_binaries_after_reduction(inst.model) > binary_budget &&
           next < order.size()) {
      const int u = order[next++];
      pin_unit_states(inst.model, u,
                      random_legal_states(rng, inst.fleet[u], inst.grid),
                      n_scen, rng.next_uniform() < 0.5);
    }
    if (free_binaries_after_reduction(inst.model) <= binary_budget)
      return inst;
  }
}

}  // namespace suc::testgen
