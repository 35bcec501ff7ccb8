#include "suc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "suc/duration_rules.hpp"

namespace suc {

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::SinglePhase:
      return "single_phase";
    case ProblemKind::PhaseNuclear:
      return "phase_nuclear";
    case ProblemKind::PhaseCoal:
      return "phase_coal";
    case ProblemKind::PhaseCcgtFirst:
      return "phase_ccgt_first";
    case ProblemKind::PhaseCcgtRolling:
      return "phase_ccgt_rolling";
    case ProblemKind::EvalFull:
      return "eval_full";
    case ProblemKind::EvalBlock:
      return "eval_block";
  }
  return "?";
}

int ProblemSpec::window_begin() const {
  return kind == ProblemKind::EvalBlock ? grid->block_start_step(block) : 0;
}

StepWindow first_stage_region(const ProblemSpec& spec, int unit) {
  const TimeGrid& g = *spec.grid;
  const UnitTech tech = (*spec.fleet)[unit].cls.tech;
  const StepWindow none{0, -1};
  switch (spec.kind) {
    case ProblemKind::SinglePhase:
      return tech != UnitTech::OCGT ? StepWindow{0, g.horizon_steps - 1} : none;
    case ProblemKind::PhaseNuclear:
      return tech == UnitTech::NUC ? StepWindow{0, g.horizon_steps - 1} : none;
    case ProblemKind::PhaseCoal:
      return tech == UnitTech::COAL ? StepWindow{0, g.study_steps - 1} : none;
    case ProblemKind::PhaseCcgtFirst:
      return tech == UnitTech::CCGT ? StepWindow{0, g.block_steps - 1} : none;
    case ProblemKind::PhaseCcgtRolling:
      return tech == UnitTech::CCGT
                 ? StepWindow{g.block_start_step(spec.block),
                              g.block_start_step(spec.block + 1) - 1}
                 : none;
    case ProblemKind::EvalFull:
    case ProblemKind::EvalBlock:
      return none;
  }
  return none;
}

StageSets derive_stage_sets(const ProblemSpec& spec) {
  StageSets sets;
  const Fleet& fleet = *spec.fleet;
  for (int u = 0; u < static_cast<int>(fleet.size()); ++u) {
    const StepWindow fs = first_stage_region(spec, u);
    if (!fs.empty())
      sets.first_stage.push_back(u);
    else
      sets.second_stage.push_back(u);
    if (fleet[u].cls.tech == UnitTech::NUC) sets.nuclear.push_back(u);
  }
  if (spec.base) sets.renewables = spec.base->renewable_names;
  // The common first-stage window of the kind (units may differ only in
  // PhaseCoal/Rolling where the region function is authoritative).
  int lo = spec.grid->horizon_steps, hi = 0;
  for (int u : sets.first_stage) {
    const StepWindow fs = first_stage_region(spec, u);
    lo = std::min(lo, fs.begin);
    hi = std::max(hi, fs.end + 1);
  }
  sets.fs_window_begin = sets.first_stage.empty() ? 0 : lo;
  sets.fs_window_end = sets.first_stage.empty() ? 0 : hi;
  sets.validate(static_cast<int>(fleet.size()));
  return sets;
}

namespace {

// Startup-cost coverage: transitions whose arrival step falls in this range
// enter the objective. Pinned regions are left out (their start-ups are
// constants of the fixing).
StepWindow objective_region(const ProblemSpec& spec, int unit) {
  const TimeGrid& g = *spec.grid;
  const UnitTech tech = (*spec.fleet)[unit].cls.tech;
  const int T = g.horizon_steps;
  const StepWindow none{0, -1};
  const StepWindow full{spec.window_begin(), T - 1};
  switch (spec.kind) {
    case ProblemKind::SinglePhase:
    case ProblemKind::PhaseNuclear:
      return full;
    case ProblemKind::PhaseCoal:
      return tech == UnitTech::NUC ? none : full;
    case ProblemKind::PhaseCcgtFirst:
      if (tech == UnitTech::NUC) return none;
      if (tech == UnitTech::COAL) return StepWindow{g.study_steps, T - 1};
      return full;
    case ProblemKind::PhaseCcgtRolling:
      if (tech == UnitTech::NUC) return none;
      if (tech == UnitTech::COAL) return StepWindow{g.study_steps, T - 1};
      if (tech == UnitTech::CCGT)
        return StepWindow{g.block_start_step(spec.block), T - 1};
      return full;
    case ProblemKind::EvalFull:
      return tech == UnitTech::OCGT ? full : none;
    case ProblemKind::EvalBlock:
      if (tech == UnitTech::OCGT) return full;
      if (tech == UnitTech::CCGT)
        return StepWindow{g.block_start_step(spec.block + 1), T - 1};
      if (tech == UnitTech::COAL)
        return StepWindow{std::max(spec.window_begin(), g.study_steps), T - 1};
      return none;
  }
  return none;
}

// Steps a kind requires to arrive pinned through spec.fixed, per unit.
std::vector<StepWindow> required_pins(const ProblemSpec& spec) {
  const TimeGrid& g = *spec.grid;
  const Fleet& fleet = *spec.fleet;
  const int T = g.horizon_steps;
  const int w0 = spec.window_begin();
  std::vector<StepWindow> req(fleet.size(), StepWindow{0, -1});
  for (int u = 0; u < static_cast<int>(fleet.size()); ++u) {
    const UnitTech tech = fleet[u].cls.tech;
    switch (spec.kind) {
      case ProblemKind::SinglePhase:
      case ProblemKind::PhaseNuclear:
        break;
      case ProblemKind::PhaseCoal:
        if (tech == UnitTech::NUC) req[u] = {0, T - 1};
        break;
      case ProblemKind::PhaseCcgtFirst:
        if (tech == UnitTech::NUC) req[u] = {0, T - 1};
        if (tech == UnitTech::COAL) req[u] = {0, g.study_steps - 1};
        break;
      case ProblemKind::PhaseCcgtRolling:
        if (tech == UnitTech::NUC) req[u] = {0, T - 1};
        if (tech == UnitTech::COAL) req[u] = {0, g.study_steps - 1};
        if (tech == UnitTech::CCGT)
          req[u] = {0, g.block_start_step(spec.block) - 1};
        break;
      case ProblemKind::EvalFull:
        if (tech != UnitTech::OCGT) req[u] = {0, T - 1};
        break;
      case ProblemKind::EvalBlock:
        if (tech == UnitTech::NUC) req[u] = {w0, T - 1};
        if (tech == UnitTech::COAL && w0 < g.study_steps)
          req[u] = {w0, g.study_steps - 1};
        if (tech == UnitTech::CCGT)
          req[u] = {w0, g.block_start_step(spec.block + 1) - 1};
        break;
    }
  }
  return req;
}

struct Build {
  const ProblemSpec& spec;
  const Fleet& fleet;
  const TimeGrid& grid;
  const ScenarioSet& scn;
  MilpModel m;
  int T, w0, S, n_units;

  // Variable tables; -1 where the other scope applies.
  std::vector<std::vector<int>> e_shared, t_shared;  // [u][...]
  std::vector<int> t0_shared_base;                   // [u] base or -1
  std::vector<std::vector<std::vector<int>>> e_scen, t_scen;  // [u][s][...]
  std::vector<std::vector<int>> t0_scen_base;                 // [u][s]
  std::vector<std::vector<std::vector<int>>> p_var;  // [u][s][t-w0]
  std::vector<std::vector<int>> dns_var, spill_var;  // [s][t-w0]
  std::vector<char> shared_flag;                     // [u*(T)+t], window only

  explicit Build(const ProblemSpec& s)
      : spec(s), fleet(*s.fleet), grid(*s.grid), scn(*s.scenarios) {
    T = grid.horizon_steps;
    w0 = spec.window_begin();
    S = scn.count();
    n_units = static_cast<int>(fleet.size());
  }

  bool shared_at(int u, int t) const {
    return shared_flag[static_cast<std::size_t>(u) * T + t];
  }
  bool t_slot_shared(int u, int t) const {
    return shared_at(u, t) && t + 1 < T && shared_at(u, t + 1);
  }

  int ei(State e) const { return static_cast<int>(e); }

  int evar(int u, int t, State e, int s) const {
    if (shared_at(u, t)) return e_shared[u][(t - w0) * 4 + ei(e)];
    return e_scen[u][s][(t - w0) * 4 + ei(e)];
  }
  int tvar(int u, int t, State a, State b, int s) const {
    const int off = (t - w0) * 16 + ei(a) * 4 + ei(b);
    if (t_slot_shared(u, t)) return t_shared[u][off];
    return t_scen[u][s][off];
  }
  int t0var(int u, State a, State b, int s) const {
    const int off = ei(a) * 4 + ei(b);
    if (shared_at(u, w0)) return t0_shared_base[u] + off;
    return t0_scen_base[u][s] + off;
  }

  double residual(int t, int s) const {
    if (t >= scn.window_begin) return scn.residual_at(s, t);
    return spec.base->residual(t);
  }

  void make_vars();
  void fix_transition_bounds();
  void add_state_rows();
  void add_power_rows();
  void add_duration_rows();
  void add_startup_count_rows();
  void add_fixing_rows();
  void set_objective();
};

void Build::make_vars() {
  m.unit_ids.reserve(n_units);
  for (const auto& u : fleet) m.unit_ids.push_back(u.id);
  shared_flag.assign(static_cast<std::size_t>(n_units) * T, 0);
  for (int u = 0; u < n_units; ++u) {
    const StepWindow fs = first_stage_region(spec, u);
    for (int t = w0; t < T; ++t)
      if (!fs.empty() && fs.begin <= t && t <= fs.end)
        shared_flag[static_cast<std::size_t>(u) * T + t] = 1;
  }

  e_shared.assign(n_units, {});
  t_shared.assign(n_units, {});
  t0_shared_base.assign(n_units, -1);
  e_scen.assign(n_units, {});
  t_scen.assign(n_units, {});
  t0_scen_base.assign(n_units, {});

  const int W = T - w0;
  for (int u = 0; u < n_units; ++u) {
    e_shared[u].assign(static_cast<std::size_t>(W) * 4, -1);
    t_shared[u].assign(static_cast<std::size_t>(std::max(0, W - 1)) * 16, -1);
    e_scen[u].assign(S, std::vector<int>(static_cast<std::size_t>(W) * 4, -1));
    t_scen[u].assign(
        S, std::vector<int>(static_cast<std::size_t>(std::max(0, W - 1)) * 16, -1));
    t0_scen_base[u].assign(S, -1);

    // States.
    for (int t = w0; t < T; ++t) {
      if (shared_at(u, t)) {
        for (State e : kAllStates)
          e_shared[u][(t - w0) * 4 + ei(e)] = m.add_var(
              VarKind::Binary, 0, 1,
              VarCoord{VarRole::StateVar, u, t, -1, e, e});
      } else {
        for (int s = 0; s < S; ++s)
          for (State e : kAllStates)
            e_scen[u][s][(t - w0) * 4 + ei(e)] = m.add_var(
                VarKind::Binary, 0, 1,
                VarCoord{VarRole::StateVar, u, t, s, e, e});
      }
    }
    // Transitions between consecutive window steps.
    for (int t = w0; t + 1 < T; ++t) {
      if (t_slot_shared(u, t)) {
        for (State a : kAllStates)
          for (State b : kAllStates)
            t_shared[u][(t - w0) * 16 + ei(a) * 4 + ei(b)] = m.add_var(
                VarKind::Binary, 0, 1,
                VarCoord{VarRole::Transition, u, t, -1, a, b});
      } else {
        for (int s = 0; s < S; ++s)
          for (State a : kAllStates)
            for (State b : kAllStates)
              t_scen[u][s][(t - w0) * 16 + ei(a) * 4 + ei(b)] = m.add_var(
                  VarKind::Binary, 0, 1,
                  VarCoord{VarRole::Transition, u, t, s, a, b});
      }
    }
    // Boundary transitions into the window.
    if (shared_at(u, w0)) {
      for (State a : kAllStates)
        for (State b : kAllStates)
          m.add_var(VarKind::Binary, 0, 1,
                    VarCoord{VarRole::InitTransition, u, w0, -1, a, b});
      t0_shared_base[u] = m.n_vars() - 16;
    } else {
      for (int s = 0; s < S; ++s) {
        for (State a : kAllStates)
          for (State b : kAllStates)
            m.add_var(VarKind::Binary, 0, 1,
                      VarCoord{VarRole::InitTransition, u, w0, s, a, b});
        t0_scen_base[u][s] = m.n_vars() - 16;
      }
    }
  }

  // Production and slack.
  p_var.assign(n_units, std::vector<std::vector<int>>(
                            S, std::vector<int>(T - w0, -1)));
  for (int u = 0; u < n_units; ++u)
    for (int s = 0; s < S; ++s)
      for (int t = w0; t < T; ++t)
        p_var[u][s][t - w0] =
            m.add_var(VarKind::Continuous, 0, fleet[u].p_max,
                      VarCoord{VarRole::Power, u, t, s, State::OU, State::OU});
  dns_var.assign(S, std::vector<int>(T - w0, -1));
  spill_var.assign(S, std::vector<int>(T - w0, -1));
  for (int s = 0; s < S; ++s)
    for (int t = w0; t < T; ++t) {
      dns_var[s][t - w0] =
          m.add_var(VarKind::Continuous, 0, kInf,
                    VarCoord{VarRole::Dns, -1, t, s, State::OU, State::OU});
      spill_var[s][t - w0] =
          m.add_var(VarKind::Continuous, 0, kInf,
                    VarCoord{VarRole::Spill, -1, t, s, State::OU, State::OU});
    }
}

void Build::fix_transition_bounds() {
  auto forbid = [&](int idx) {
    if (idx >= 0) m.vars[idx].ub = 0;
  };
  for (int u = 0; u < n_units; ++u) {
    for (int t = w0; t + 1 < T; ++t)
      for (State a : kAllStates)
        for (State b : kAllStates) {
          if (transition_allowed(a, b) && !consecutive_variation_forbidden(a, b))
            continue;
          if (t_slot_shared(u, t)) {
            forbid(tvar(u, t, a, b, 0));
          } else {
            for (int s = 0; s < S; ++s) forbid(tvar(u, t, a, b, s));
          }
        }
    // Boundary legality plus the origin-state rule. The variation rule does
    // not apply across the boundary (the pre-window move is unknown).
    const bool t0_shared = shared_at(u, w0);
    std::optional<State> origin;
    if (w0 > 0) {
      origin = spec.init.prev_state[u];
    } else if (!fleet[u].initially_on) {
      origin = State::OFF;
    }
    for (State a : kAllStates)
      for (State b : kAllStates) {
        bool ok = transition_allowed(a, b);
        if (origin.has_value())
          ok = ok && a == *origin;
        else
          ok = ok && a != State::OFF;  // initially ON: cannot come from OFF
        if (ok) continue;
        if (t0_shared) {
          forbid(t0var(u, a, b, 0));
        } else {
          for (int s = 0; s < S; ++s) forbid(t0var(u, a, b, s));
        }
      }
  }
}

void Build::add_state_rows() {
  for (int u = 0; u < n_units; ++u) {
    const std::string uid = m.unit_ids[u];
    for (int t = w0; t < T; ++t) {
      const bool e_is_shared = shared_at(u, t);
      const int copies = e_is_shared ? 1 : S;
      // One state per step.
      for (int s = 0; s < copies; ++s) {
        auto& row = m.add_row("uniq_" + uid + (e_is_shared ? "" : "_s" + std::to_string(s)) +
                                  "_t" + std::to_string(t),
                              RowSense::EQ, 1.0);
        for (State e : kAllStates) row.terms.emplace_back(evar(u, t, e, s), 1.0);
      }
      // Outflow: state equals the sum of transitions leaving it.
      if (t + 1 < T) {
        const bool slot_shared = t_slot_shared(u, t);
        const int out_copies = slot_shared ? 1 : S;
        for (int s = 0; s < out_copies; ++s)
          for (State e : kAllStates) {
            auto& row = m.add_row(
                "out_" + uid + (slot_shared ? "" : "_s" + std::to_string(s)) +
                    "_t" + std::to_string(t) + "_" + to_string(e),
                RowSense::EQ, 0.0);
            row.terms.emplace_back(evar(u, t, e, s), 1.0);
            for (State f : kAllStates)
              row.terms.emplace_back(tvar(u, t, e, f, s), -1.0);
          }
      }
      // Inflow: state equals the sum of transitions entering it.
      const bool in_from_t0 = t == w0;
      const bool in_shared =
          in_from_t0 ? shared_at(u, w0) : t_slot_shared(u, t - 1);
      const int in_copies = in_shared ? 1 : S;
      for (int s = 0; s < in_copies; ++s)
        for (State e : kAllStates) {
          auto& row = m.add_row(
              "in_" + uid + (in_shared ? "" : "_s" + std::to_string(s)) + "_t" +
                  std::to_string(t) + "_" + to_string(e),
              RowSense::EQ, 0.0);
          row.terms.emplace_back(evar(u, t, e, s), 1.0);
          for (State a : kAllStates)
            row.terms.emplace_back(in_from_t0 ? t0var(u, a, e, s)
                                              : tvar(u, t - 1, a, e, s),
                                   -1.0);
        }
    }
  }
}

void Build::add_power_rows() {
  for (int u = 0; u < n_units; ++u) {
    const std::string uid = m.unit_ids[u];
    const UnitSpec& unit = fleet[u];
    for (int s = 0; s < S; ++s) {
      for (int t = w0; t < T; ++t) {
        const std::string tag = uid + "_s" + std::to_string(s) + "_t" + std::to_string(t);
        const int p = p_var[u][s][t - w0];
        const int e_off = evar(u, t, State::OFF, s);
        {
          auto& row = m.add_row("pmax_" + tag, RowSense::LE, unit.p_max);
          row.terms = {{p, 1.0}, {e_off, unit.p_max}};
        }
        {
          auto& row = m.add_row("pmin_" + tag, RowSense::GE, unit.p_min);
          row.terms = {{p, 1.0}, {e_off, unit.p_min}};
        }
        // Minimal power variation, both directions; power is constant in OFL.
        const bool have_prev = t > w0 || (w0 > 0 && spec.init.prev_power.size() &&
                                          spec.init.prev_power[u].has_value());
        if (have_prev) {
          const double prev_const =
              t == w0 ? *spec.init.prev_power[u] : 0.0;
          const int prev_var = t == w0 ? -1 : p_var[u][s][t - w0 - 1];
          auto& up = m.add_row("vup_" + tag, RowSense::GE, prev_const);
          up.terms = {{p, 1.0},
                      {evar(u, t, State::OU, s), -unit.dp_min},
                      {evar(u, t, State::OD, s), unit.p_max},
                      {evar(u, t, State::OFF, s), unit.p_max}};
          if (prev_var >= 0) up.terms.emplace_back(prev_var, -1.0);
          auto& down = m.add_row("vdn_" + tag, RowSense::LE, prev_const);
          down.terms = {{p, 1.0},
                        {evar(u, t, State::OD, s), unit.dp_min},
                        {evar(u, t, State::OU, s), -unit.p_max},
                        {evar(u, t, State::OFF, s), -unit.p_max}};
          if (prev_var >= 0) down.terms.emplace_back(prev_var, -1.0);
        }
      }
    }
  }
  // Balance rows, spelled as -sum p - dns + spill = -residual.
  for (int s = 0; s < S; ++s)
    for (int t = w0; t < T; ++t) {
      auto& row = m.add_row(
          "bal_s" + std::to_string(s) + "_t" + std::to_string(t), RowSense::EQ,
          -residual(t, s));
      for (int u = 0; u < n_units; ++u)
        row.terms.emplace_back(p_var[u][s][t - w0], -1.0);
      row.terms.emplace_back(dns_var[s][t - w0], -1.0);
      row.terms.emplace_back(spill_var[s][t - w0], 1.0);
    }
}

void Build::add_duration_rows() {
  const double dt = grid.delta_t_hours;
  for (int u = 0; u < n_units; ++u) {
    const std::string uid = m.unit_ids[u];
    const UnitClass& cls = fleet[u].cls;
    const int flat_steps = duration_steps(cls.t_flat, dt);
    const int on_steps = duration_steps(cls.t_on_min, dt);
    const int off_steps = duration_steps(cls.t_off_min, dt);

    // Interior transition-anchored holds. A row is emitted once when every
    // variable it references is first-stage, otherwise once per scenario
    // (the accessors resolve shared variables regardless of s).
    for (int t = w0; t + 1 < T; ++t) {
      const bool slot_shared = t_slot_shared(u, t);
      const StepWindow flat = flat_hold(t, flat_steps).clipped(T);
      for (int h = std::max(flat.begin, w0); h <= flat.end; ++h) {
        const int copies = (slot_shared && shared_at(u, h)) ? 1 : S;
        for (int s = 0; s < copies; ++s) {
          auto& row = m.add_row("flat_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)) +
                                    "_t" + std::to_string(t) + "_h" + std::to_string(h),
                                RowSense::LE, 0.0);
          row.terms = {{tvar(u, t, State::OU, State::OFL, s), 1.0},
                       {tvar(u, t, State::OD, State::OFL, s), 1.0},
                       {evar(u, h, State::OFL, s), -1.0}};
        }
      }
      const StepWindow on = min_on_hold(t, on_steps).clipped(T);
      for (int h = on.begin; h <= on.end; ++h) {
        const int copies = (slot_shared && shared_at(u, h)) ? 1 : S;
        for (int s = 0; s < copies; ++s) {
          auto& row = m.add_row("mon_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)) +
                                    "_t" + std::to_string(t) + "_h" + std::to_string(h),
                                RowSense::LE, 1.0);
          row.terms = {{tvar(u, t, State::OFF, State::OU, s), 1.0},
                       {evar(u, h, State::OFF, s), 1.0}};
        }
      }
      const StepWindow off = min_off_hold(t, off_steps).clipped(T);
      for (int h = off.begin; h <= off.end; ++h) {
        const int copies = (slot_shared && shared_at(u, h)) ? 1 : S;
        for (int s = 0; s < copies; ++s) {
          auto& row = m.add_row("moff_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)) +
                                    "_t" + std::to_string(t) + "_h" + std::to_string(h),
                                RowSense::LE, 0.0);
          row.terms = {{tvar(u, t, State::OFL, State::OFF, s), 1.0},
                       {tvar(u, t, State::OD, State::OFF, s), 1.0},
                       {evar(u, h, State::OFF, s), -1.0}};
        }
      }
      if (cls.t_on_max) {
        const int cap = duration_steps(*cls.t_on_max, dt);
        const StepWindow w = max_on_window(t, cap);
        if (w.within(T)) {
          const int copies =
              (slot_shared && shared_at(u, w.begin) && shared_at(u, w.end)) ? 1 : S;
          for (int s = 0; s < copies; ++s) {
            auto& row = m.add_row(
                "mxon_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)) +
                    "_t" + std::to_string(t),
                RowSense::GE, 0.0);
            row.terms.emplace_back(tvar(u, t, State::OFF, State::OU, s), -1.0);
            for (int h = w.begin; h <= w.end; ++h)
              row.terms.emplace_back(evar(u, h, State::OFF, s), 1.0);
          }
        }
      }
    }

    // Boundary-anchored holds (transition into the window).
    const bool b_shared = shared_at(u, w0);
    {
      const StepWindow on = min_on_hold(w0 - 1, on_steps).clipped(T);
      const StepWindow off = min_off_hold(w0 - 1, off_steps).clipped(T);
      const bool start_live = m.vars[t0var(u, State::OFF, State::OU, 0)].ub > 0;
      const bool stop_live =
          m.vars[t0var(u, State::OD, State::OFF, 0)].ub > 0 ||
          m.vars[t0var(u, State::OFL, State::OFF, 0)].ub > 0;
      if (start_live)
        for (int h = std::max(on.begin, w0); h <= on.end; ++h) {
          const int copies = (b_shared && shared_at(u, h)) ? 1 : S;
          for (int s = 0; s < copies; ++s) {
            auto& row = m.add_row(
                "mon0_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)) +
                    "_h" + std::to_string(h),
                RowSense::LE, 1.0);
            row.terms = {{t0var(u, State::OFF, State::OU, s), 1.0},
                         {evar(u, h, State::OFF, s), 1.0}};
          }
        }
      if (stop_live)
        for (int h = std::max(off.begin, w0 + 1); h <= off.end; ++h) {
          const int copies = (b_shared && shared_at(u, h)) ? 1 : S;
          for (int s = 0; s < copies; ++s) {
            auto& row = m.add_row(
                "moff0_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)) +
                    "_h" + std::to_string(h),
                RowSense::LE, 0.0);
            row.terms = {{t0var(u, State::OD, State::OFF, s), 1.0},
                         {t0var(u, State::OFL, State::OFF, s), 1.0},
                         {evar(u, h, State::OFF, s), -1.0}};
          }
        }
      // ON-duration cap anchored at the boundary: either attached to a
      // boundary start, or unconditional for a unit entering the window ON.
      const bool boundary_on =
          w0 > 0 ? (spec.init.prev_state[u].has_value() &&
                    *spec.init.prev_state[u] != State::OFF)
                 : fleet[u].initially_on;
      if (cls.t_on_max) {
        const int cap = duration_steps(*cls.t_on_max, dt);
        const StepWindow w{w0, w0 + cap};
        if (w.within(T)) {
          const int copies =
              (b_shared && shared_at(u, w.begin) && shared_at(u, w.end)) ? 1 : S;
          if (start_live)
            for (int s = 0; s < copies; ++s) {
              auto& row = m.add_row(
                  "mxon0_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)),
                  RowSense::GE, 0.0);
              row.terms.emplace_back(t0var(u, State::OFF, State::OU, s), -1.0);
              for (int h = w.begin; h <= w.end; ++h)
                row.terms.emplace_back(evar(u, h, State::OFF, s), 1.0);
            }
          if (boundary_on)
            for (int s = 0; s < copies; ++s) {
              auto& row = m.add_row(
                  "mxonb_" + uid + (copies == 1 ? "" : "_s" + std::to_string(s)),
                  RowSense::GE, 1.0);
              for (int h = w.begin; h <= w.end; ++h)
                row.terms.emplace_back(evar(u, h, State::OFF, s), 1.0);
            }
        }
      }
    }
  }
}

void Build::add_startup_count_rows() {
  for (int u = 0; u < n_units; ++u) {
    if (!fleet[u].cls.n_on_max) continue;
    const std::string uid = m.unit_ids[u];
    // All slots share scope only if the whole window is first-stage.
    bool all_shared = shared_at(u, w0);
    for (int t = w0; t + 1 < T; ++t) all_shared = all_shared && t_slot_shared(u, t);
    const int copies = all_shared ? 1 : S;
    for (int s = 0; s < copies; ++s) {
      auto& row = m.add_row(
          "nstart_" + uid + (all_shared ? "" : "_s" + std::to_string(s)),
          RowSense::LE, static_cast<double>(*fleet[u].cls.n_on_max));
      row.terms.emplace_back(t0var(u, State::OFF, State::OU, s), 1.0);
      for (int t = w0; t + 1 < T; ++t)
        row.terms.emplace_back(tvar(u, t, State::OFF, State::OU, s), 1.0);
    }
  }
}

void Build::add_fixing_rows() {
  for (const auto& fd : spec.fixed) {
    const bool sh = shared_at(fd.unit, fd.step);
    const int copies = sh ? 1 : S;
    for (int s = 0; s < copies; ++s) {
      auto& row = m.add_row("fix_" + m.unit_ids[fd.unit] +
                                (sh ? "" : "_s" + std::to_string(s)) + "_t" +
                                std::to_string(fd.step),
                            RowSense::EQ, static_cast<double>(fd.off));
      row.terms = {{evar(fd.unit, fd.step, State::OFF, s), 1.0}};
    }
  }
}

void Build::set_objective() {
  const double dt = grid.delta_t_hours;
  // Start-up costs: transitions costed at their arrival step.
  for (int u = 0; u < n_units; ++u) {
    const StepWindow region = objective_region(spec, u);
    if (region.empty()) continue;
    const double pf = fleet[u].startup_cost;
    auto in_region = [&](int arrival) {
      return region.begin <= arrival && arrival <= region.end;
    };
    if (in_region(w0)) {
      if (shared_at(u, w0)) {
        m.set_objective(t0var(u, State::OFF, State::OU, 0), pf);
      } else {
        for (int s = 0; s < S; ++s)
          m.set_objective(t0var(u, State::OFF, State::OU, s),
                          pf * scn.probability[s]);
      }
    }
    for (int t = w0; t + 1 < T; ++t) {
      if (!in_region(t + 1)) continue;
      if (t_slot_shared(u, t)) {
        m.set_objective(tvar(u, t, State::OFF, State::OU, 0), pf);
      } else {
        for (int s = 0; s < S; ++s)
          m.set_objective(tvar(u, t, State::OFF, State::OU, s),
                          pf * scn.probability[s]);
      }
    }
  }
  // Variable, lost-load and lost-production costs (k-currency).
  for (int s = 0; s < S; ++s) {
    const double ps = scn.probability[s];
    for (int t = w0; t < T; ++t) {
      for (int u = 0; u < n_units; ++u)
        m.set_objective(p_var[u][s][t - w0],
                        ps * fleet[u].variable_cost * 1e-3 * dt);
      m.set_objective(dns_var[s][t - w0], ps * spec.pi_dns * dt);
      m.set_objective(spill_var[s][t - w0], ps * spec.pi_spill * dt);
    }
  }
}

}  // namespace

void ProblemSpec::validate() const {
  if (!fleet || !grid || !scenarios)
    throw std::invalid_argument("problem spec misses fleet/grid/scenarios");
  grid->validate();
  validate_fleet(*fleet);
  scenarios->validate();
  const int T = grid->horizon_steps;
  const int w0 = window_begin();
  if (scenarios->window_end != T)
    throw std::invalid_argument("scenario window must end at the horizon");
  if (scenarios->window_begin > w0 && !base)
    throw std::invalid_argument(
        "scenario window starts after the model window and no base series "
        "was given for the history prefix");
  if (kind == ProblemKind::EvalFull || kind == ProblemKind::EvalBlock) {
    if (scenarios->count() != 1)
      throw std::invalid_argument("evaluation problems take exactly one scenario");
  }
  if (kind == ProblemKind::PhaseCcgtRolling &&
      (block < 2 || block > grid->n_blocks()))
    throw std::invalid_argument("rolling phase index out of range");
  if (kind == ProblemKind::EvalBlock && (block < 1 || block > grid->n_blocks()))
    throw std::invalid_argument("evaluation block out of range");
  if (w0 > 0) {
    if (init.prev_state.size() != fleet->size())
      throw std::invalid_argument(
          "windowed problems need a previous state per unit");
    for (const auto& st : init.prev_state)
      if (!st.has_value())
        throw std::invalid_argument(
            "windowed problems need a previous state per unit");
    if (block >= 2) {
      if (init.prev_power.size() != fleet->size())
        throw std::invalid_argument(
            "evaluation blocks past the first need initial power levels");
      for (const auto& p : init.prev_power)
        if (!p.has_value())
          throw std::invalid_argument(
              "evaluation blocks past the first need initial power levels");
    }
  }
  // Pinned decisions must be digestible and complete for the kind.
  std::set<std::pair<int, int>> seen;
  const auto required = required_pins(*this);
  for (const auto& fd : fixed) {
    if (fd.unit < 0 || fd.unit >= static_cast<int>(fleet->size()))
      throw std::invalid_argument("fixed decision references unknown unit");
    if (fd.step < w0 || fd.step >= T)
      throw std::invalid_argument("fixed decision outside the model window");
    if (fd.off != 0 && fd.off != 1)
      throw std::invalid_argument("fixed OFF-status must be 0 or 1");
    const ProblemSpec& self = *this;
    const StepWindow fs = first_stage_region(self, fd.unit);
    if (!fs.empty() && fs.begin <= fd.step && fd.step <= fs.end)
      throw std::invalid_argument(
          "fixed decision collides with the first-stage region of unit " +
          (*fleet)[fd.unit].id);
    seen.emplace(fd.unit, fd.step);
  }
  for (int u = 0; u < static_cast<int>(fleet->size()); ++u) {
    const StepWindow req = required[u];
    for (int t = std::max(req.begin, w0); t <= req.end; ++t)
      if (!seen.count({u, t}))
        throw std::invalid_argument("missing fixed decision for unit " +
                                    (*fleet)[u].id + " at step " +
                                    std::to_string(t));
  }
}

MilpModel build_problem(const ProblemSpec& spec) {
  spec.validate();
  Build b(spec);
  b.make_vars();
  b.fix_transition_bounds();
  b.add_state_rows();
  b.add_power_rows();
  b.add_duration_rows();
  b.add_startup_count_rows();
  b.add_fixing_rows();
  b.set_objective();
  b.m.problem_kind = to_string(spec.kind);
  b.m.issue_hours = spec.scenarios->issue_hours;
  b.m.window_begin = b.w0;
  b.m.horizon_steps = b.T;
  b.m.n_scenarios = b.S;
  const double dt = spec.grid->delta_t_hours;
  for (int u = 0; u < b.n_units; ++u) {
    const UnitSpec& unit = (*spec.fleet)[u];
    MilpModel::UnitMeta meta;
    meta.flat_steps = duration_steps(unit.cls.t_flat, dt);
    meta.min_on_steps = duration_steps(unit.cls.t_on_min, dt);
    meta.min_off_steps = duration_steps(unit.cls.t_off_min, dt);
    if (unit.cls.t_on_max)
      meta.max_on_steps = duration_steps(*unit.cls.t_on_max, dt);
    if (unit.cls.n_on_max) meta.max_starts = *unit.cls.n_on_max;
    if (b.w0 > 0)
      meta.boundary_state = static_cast<int>(*spec.init.prev_state[u]);
    else
      meta.boundary_state =
          unit.initially_on ? -1 : static_cast<int>(State::OFF);
    b.m.unit_meta.push_back(meta);
  }
  b.m.check();
  return std::move(b.m);
}

MilpModel build_single_phase(const ProblemSpec& spec) {
  if (spec.kind != ProblemKind::SinglePhase)
    throw std::invalid_argument("build_single_phase: wrong kind");
  return build_problem(spec);
}

MilpModel build_phase(const ProblemSpec& spec) {
  if (spec.kind != ProblemKind::PhaseNuclear &&
      spec.kind != ProblemKind::PhaseCoal &&
      spec.kind != ProblemKind::PhaseCcgtFirst &&
      spec.kind != ProblemKind::PhaseCcgtRolling)
    throw std::invalid_argument("build_phase: wrong kind");
  return build_problem(spec);
}

MilpModel build_evaluation(const ProblemSpec& spec) {
  if (spec.kind != ProblemKind::EvalFull && spec.kind != ProblemKind::EvalBlock)
    throw std::invalid_argument("build_evaluation: wrong kind");
  return build_problem(spec);
}

MilpModel relax_second_stage(const MilpModel& model) {
  MilpModel out = model;
  for (auto& v : out.vars)
    if (v.kind == VarKind::Binary && v.coord.scenario >= 0)
      v.kind = VarKind::Continuous;
  out.problem_kind = model.problem_kind + "_relaxed";
  return out;
}

namespace {

int state_var_index(const MilpModel& model, int unit, int step, int scenario,
                    State e) {
  VarCoord c{VarRole::StateVar, unit, step, -1, e, e};
  int idx = model.var_by_name(coord_name(c, model.unit_ids));
  if (idx >= 0) return idx;
  c.scenario = scenario;
  return model.var_by_name(coord_name(c, model.unit_ids));
}

}  // namespace

State state_at(const MilpModel& model, const std::vector<double>& values,
               int unit, int step, int scenario) {
  State best = State::OFF;
  double best_val = -1;
  for (State e : kAllStates) {
    const int idx = state_var_index(model, unit, step, scenario, e);
    if (idx < 0)
      throw std::invalid_argument("state variable not found in model");
    if (values[idx] > best_val) {
      best_val = values[idx];
      best = e;
    }
  }
  return best;
}

double power_at(const MilpModel& model, const std::vector<double>& values,
                int unit, int step, int scenario) {
  const VarCoord c{VarRole::Power, unit, step, scenario, State::OU, State::OU};
  const int idx = model.var_by_name(coord_name(c, model.unit_ids));
  if (idx < 0) throw std::invalid_argument("power variable not found");
  return values[idx];
}

StatePlan extract_plan(const MilpModel& model, const std::vector<double>& values,
                       int scenario) {
  const int n_units = static_cast<int>(model.unit_ids.size());
  const int steps = model.horizon_steps - model.window_begin;
  StatePlan plan(n_units, steps);
  for (int u = 0; u < n_units; ++u)
    for (int t = 0; t < steps; ++t)
      plan.set(u, t,
               state_at(model, values, u, model.window_begin + t, scenario));
  return plan;
}

}  // namespace suc
