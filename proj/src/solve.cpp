#include "suc/solve.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "suc/simplex.hpp"

namespace suc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct BoundChange {
  int col;
  double lb, ub;
};

struct Node {
  double bound;
  std::int64_t id;
  std::vector<BoundChange> changes;  // cumulative from the root
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id < b.id;  // newest first on plateaus: dives through flat fibers
  }
};

// Primal heuristic for unit-commitment-shaped models. A node LP is usually
// integral in power but fractional across the cost-flat OU/OD/OFL states.
// The heuristic rounds the OFF pattern, builds a legal state sequence per
// unit from the LP's power-move hints (respecting flat holds and the
// variation rule via the model's duration metadata), pins those states and
// transitions, and lets a warm LP resolve arbitrate feasibility and supply
// the continuous part. Any accepted point is a valid incumbent.
class DecodeHeuristic {
 public:
  explicit DecodeHeuristic(const MilpModel& model, const Presolved& pre)
      : model_(model), pre_(pre) {
    if (model.unit_meta.empty() || model.unit_ids.empty()) return;
    for (int j = 0; j < model.n_vars(); ++j) {
      const VarCoord& c = model.vars[j].coord;
      if (c.role == VarRole::Other) continue;
      const Key key{c.role, c.unit, c.step, c.scenario,
                    static_cast<int>(c.from), static_cast<int>(c.to)};
      index_.emplace(key, j);
      if (c.role == VarRole::StateVar) {
        usable_ = true;
        scen_of_unit_.resize(
            std::max(scen_of_unit_.size(), std::size_t(c.unit + 1)));
        auto& scens = scen_of_unit_[c.unit];
        if (std::find(scens.begin(), scens.end(), c.scenario) == scens.end())
          scens.push_back(c.scenario);
      }
      if (c.role == VarRole::Power)
        n_power_scen_ = std::max(n_power_scen_, c.scenario + 1);
    }
    min_step_ = model.window_begin;
    max_step_ = model.horizon_steps - 1;
  }

  bool usable() const { return usable_; }

  // Pins decoded states on the shared simplex, resolves, and reports the
  // incumbent. Leaves the simplex bounds in an arbitrary state; the caller
  // re-applies node bounds before the next solve.
  bool attempt(const std::vector<double>& x, Simplex& splx,
               std::int64_t lp_limit, std::vector<double>* candidate,
               double* objective, int rotation = 0) const {
    if (!usable()) return false;
    // Sequential rounding: stiff units are pinned first, the LP is resolved
    // after each unit so the remaining units see the shifted dispatch and
    // can compensate (this is what discovers legal alternation patterns the
    // relaxation smears across units).
    std::vector<int> order;
    for (std::size_t u = 0; u < scen_of_unit_.size(); ++u)
      if (!scen_of_unit_[u].empty()) order.push_back(static_cast<int>(u));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const int fa = model_.unit_meta[a].flat_steps;
      const int fb = model_.unit_meta[b].flat_steps;
      if (fa != fb) return fa > fb;
      return a < b;
    });
    if (!order.empty())
      std::rotate(order.begin(),
                  order.begin() + (rotation % static_cast<int>(order.size())),
                  order.end());

    std::vector<std::pair<int, std::pair<double, double>>> saved;
    auto restore = [&]() {
      for (auto it = saved.rbegin(); it != saved.rend(); ++it)
        splx.set_col_bounds(it->first, it->second.first, it->second.second);
    };
    std::vector<double> cur = x;
    bool ok = true;
    for (std::size_t k = 0; k < order.size() && ok; ++k) {
      const int u = order[k];
      std::vector<std::pair<int, double>> pins;
      for (int s : scen_of_unit_[u])
        if (!decode_unit(u, s, cur, pins)) {
          if (debug_) fprintf(stderr, "[decode] unit %d scen %d rejected\n", u, s);
          ok = false;
          break;
        }
      if (!ok) break;
      for (const auto& [j, v] : pins) {
        const int c = pre_.col_map[j];
        if (c < 0) {
          if (std::abs(pre_.fixed_value[j] - v) > 1e-6) {
            if (debug_)
              fprintf(stderr, "[decode] conflict %s want %.0f fixed %.2f\n",
                      model_.vars[j].name.c_str(), v, pre_.fixed_value[j]);
            ok = false;
            break;
          }
          continue;
        }
        saved.push_back({c, {splx.col_lb(c), splx.col_ub(c)}});
        splx.set_col_bounds(c, v, v);
      }
      if (!ok) break;
      const LpStatus st = splx.solve(lp_limit);
      if (st != LpStatus::Optimal) {
        if (debug_) fprintf(stderr, "[decode] pinned LP status %d\n", (int)st);
        ok = false;
        break;
      }
      cur = pre_.expand(splx.solution());
    }
    if (ok) {
      *objective = splx.objective() + pre_.objective_offset;
      *candidate = std::move(cur);
    }
    restore();
    return ok;
  }

 private:
  using Key = std::tuple<VarRole, int, int, int, int, int>;
  enum { OU = 0, OD = 1, OFL = 2, OFF = 3 };

  int find(VarRole role, int unit, int step, int scenario, int from,
           int to) const {
    const auto it = index_.find(Key{role, unit, step, scenario, from, to});
    return it == index_.end() ? -1 : it->second;
  }

  bool decode_unit(int u, int s, const std::vector<double>& x,
                   std::vector<std::pair<int, double>>& pins) const {
    const MilpModel::UnitMeta& meta = model_.unit_meta[u];
    const int w0 = min_step_;
    const int T = max_step_ + 1;
    std::vector<int> power_scen;
    if (s >= 0) {
      power_scen.push_back(s);
    } else {
      for (int sc = 0; sc < std::max(1, n_power_scen_); ++sc)
        if (find(VarRole::Power, u, w0, sc, 0, 0) >= 0) power_scen.push_back(sc);
    }
    if (power_scen.empty()) return false;

    // Rounded OFF pattern; it carries the economic content of the node LP.
    std::vector<char> off(T, 0);
    for (int t = w0; t < T; ++t) {
      const int off_j = find(VarRole::StateVar, u, t, s, OFF, OFF);
      if (off_j < 0) return false;
      off[t] = x[off_j] > 0.5;
    }
    // Repair the OFF pattern against run-length and legality rules: drop
    // one-step ON blips (Table I offers no path from OU straight to OFF, so
    // a unit cannot start and stop in consecutive slots), drop started runs
    // shorter than the minimum ON hold, merge away OFF gaps shorter than
    // the minimum OFF hold, and shed whole runs while the start count
    // exceeds its cap.
    const bool boundary_off = meta.boundary_state == OFF;
    {
      bool legal = false;
      for (int pass = 0; pass < 8 && !legal; ++pass) {
        legal = true;
        int starts = 0;
        std::vector<std::pair<int, int>> started_runs;  // (len, begin)
        int t = w0;
        while (t < T) {
          const bool is_off = off[t];
          int end_run = t;
          while (end_run < T && static_cast<bool>(off[end_run]) == is_off)
            ++end_run;
          const int len = end_run - t;
          const bool truncated = end_run == T;
          if (!is_off) {
            const bool started_here = t == w0 ? boundary_off : true;
            if (started_here) {
              ++starts;
              started_runs.push_back({len, t});
            }
            const int need = truncated ? 1
                             : started_here ? std::max(meta.min_on_steps, 2)
                                            : 2;
            if (len < need) {
              for (int h = t; h < end_run; ++h) off[h] = 1;
              legal = false;
            } else if (meta.max_on_steps >= 0 && len > meta.max_on_steps) {
              return false;  // shortening a run is not worth guessing
            }
          } else {
            const bool stopped_here = t == w0 ? !boundary_off : true;
            if (stopped_here && !truncated && len < meta.min_off_steps + 1) {
              for (int h = t; h < end_run; ++h) off[h] = 0;
              legal = false;
            }
          }
          t = end_run;
        }
        if (legal && meta.max_starts >= 0 && starts > meta.max_starts) {
          std::sort(started_runs.begin(), started_runs.end());
          const int excess = starts - meta.max_starts;
          for (int k = 0;
               k < excess && k < static_cast<int>(started_runs.size()); ++k) {
            int h = started_runs[k].second;
            while (h < T && !off[h]) off[h++] = 1;
          }
          legal = false;
        }
      }
      if (!legal) return false;
    }

    // Aggregate power-move hints across the scenarios this commitment serves.
    std::vector<double> hint(T, 0.0);
    for (int t = w0 + 1; t < T; ++t) {
      double total = 0;
      for (int sc : power_scen) {
        const int pj = find(VarRole::Power, u, t, sc, 0, 0);
        const int qj = find(VarRole::Power, u, t - 1, sc, 0, 0);
        if (pj < 0 || qj < 0) return false;
        total += x[pj] - x[qj];
      }
      hint[t] = total;
    }

    // Greedy legal sequence: starts arrive in OU, every variation is
    // followed by its flat hold, consecutive variations never appear, and a
    // shutdown is approached through OFL (OU cannot enter OFF directly).
    // A pending flat hold may push an OFF step outward; the pinned LP
    // arbitrates whatever the shifting produces.
    std::vector<int> state(T, OFF);
    int prev = meta.boundary_state;  // -1: unknown ON
    int hold = 0;
    for (int t = w0; t < T; ++t) {
      if (off[t] && hold == 0 && prev != OU) {
        state[t] = OFF;
        prev = OFF;
        continue;
      }
      const bool next_off = t + 1 < T && off[t + 1];
      int chosen;
      if (prev == OFF) {
        chosen = OU;
        hold = meta.flat_steps;
      } else if (prev == OU || prev == OD || hold > 0) {
        chosen = OFL;
        hold = std::max(0, hold - 1);
      } else if (next_off) {
        chosen = OFL;
      } else if (hint[t] > 1e-6) {
        chosen = OU;
        hold = meta.flat_steps;
      } else if (hint[t] < -1e-6) {
        chosen = OD;
        hold = meta.flat_steps;
      } else {
        chosen = OFL;
      }
      state[t] = chosen;
      prev = chosen;
    }

    // Emit pins: states, interior transitions, boundary transition.
    for (int t = w0; t < T; ++t)
      for (int e = 0; e < 4; ++e) {
        const int j = find(VarRole::StateVar, u, t, s, e, e);
        if (j < 0) return false;
        pins.push_back({j, state[t] == e ? 1.0 : 0.0});
      }
    for (int t = w0; t + 1 < T; ++t)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const int j = find(VarRole::Transition, u, t, s, a, b);
          if (j < 0) {
            if (state[t] == a && state[t + 1] == b) return false;
            continue;
          }
          pins.push_back(
              {j, (state[t] == a && state[t + 1] == b) ? 1.0 : 0.0});
        }
    int origin = meta.boundary_state;
    if (origin < 0) {
      // Unknown ON origin: any free legal source for the opening state.
      for (int a = 0; a < 4 && origin < 0; ++a) {
        const int j = find(VarRole::InitTransition, u, w0, s, a, state[w0]);
        if (j >= 0 && model_.vars[j].ub > 0.5) origin = a;
      }
      if (origin < 0) return false;
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const int j = find(VarRole::InitTransition, u, w0, s, a, b);
        if (j >= 0)
          pins.push_back({j, (a == origin && b == state[w0]) ? 1.0 : 0.0});
      }
    return true;
  }

  const MilpModel& model_;
  const Presolved& pre_;
  bool debug_ = std::getenv("STOCHUC_DECODE_DEBUG") != nullptr;
  std::map<Key, int> index_;
  std::vector<std::vector<int>> scen_of_unit_;
  bool usable_ = false;
  int min_step_ = 0;
  int max_step_ = -1;
  int n_power_scen_ = 0;
};

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::GapReached:
      return "gap_reached";
    case SolveStatus::TimeLimit:
      return "time_limit";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::SolverFailure:
      return "solver_failure";
  }
  return "?";
}

double relative_gap(double objective, double bound) {
  if (!std::isfinite(objective) || !std::isfinite(bound)) return kInf;
  return (objective - bound) / std::max(std::abs(objective), 1e-10);
}

SolveResult solve_lp(const MilpModel& model, const SolveOptions& options) {
  const auto start = Clock::now();
  SolveResult out;
  Presolved pre = Presolved::run(model);
  if (pre.infeasible) {
    out.status = SolveStatus::Infeasible;
    out.wall_seconds = seconds_since(start);
    return out;
  }
  Simplex splx(pre.reduced);
  const LpStatus st =
      splx.solve(options.iteration_limit > 0 ? options.iteration_limit : -1);
  out.simplex_iterations = splx.iterations();
  out.wall_seconds = seconds_since(start);
  switch (st) {
    case LpStatus::Optimal:
      out.status = SolveStatus::Optimal;
      out.objective = splx.objective() + pre.objective_offset;
      out.bound = out.objective;
      out.gap = 0;
      out.has_solution = true;
      out.values = pre.expand(splx.solution());
      break;
    case LpStatus::Infeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case LpStatus::Unbounded:
      out.status = SolveStatus::Unbounded;
      break;
    case LpStatus::IterLimit:
      out.status = SolveStatus::TimeLimit;
      out.message = "simplex iteration limit";
      break;
    case LpStatus::Singular:
      out.status = SolveStatus::SolverFailure;
      out.message = "numerically singular basis";
      break;
  }
  return out;
}

SolveResult solve_milp(const MilpModel& model, const SolveOptions& options) {
  const auto start = Clock::now();
  SolveResult out;
  Presolved pre = Presolved::run(model);
  if (pre.infeasible) {
    out.status = SolveStatus::Infeasible;
    out.wall_seconds = seconds_since(start);
    return out;
  }
  LpProblem& rp = pre.reduced;
  Simplex splx(rp);
  const std::int64_t lp_limit =
      options.iteration_limit > 0 ? options.iteration_limit : -1;

  std::vector<int> binary_cols;
  for (int c = 0; c < rp.n_cols; ++c)
    if (rp.is_binary[c] && rp.ub[c] - rp.lb[c] > 0.5) binary_cols.push_back(c);
  const std::vector<double> root_lb(rp.lb), root_ub(rp.ub);

  auto apply_node = [&](const Node& node) {
    for (int c : binary_cols) splx.set_col_bounds(c, root_lb[c], root_ub[c]);
    for (const auto& ch : node.changes)
      splx.set_col_bounds(ch.col, ch.lb, ch.ub);
  };

  double incumbent = kInf;
  std::vector<double> incumbent_values;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t next_id = 0;
  open.push(Node{-kInf, next_id++, {}});
  const DecodeHeuristic heuristic(model, pre);
  // Heuristic resolves run on their own simplex so node warm starts stay hot.
  Simplex heur_splx(rp);

  enum class Stop { Exhausted, Proved, Gap, Time, Nodes, Failure } stop =
      Stop::Exhausted;
  std::string fail_message;
  double final_bound = kInf;

  while (!open.empty()) {
    const double best_open_bound = open.top().bound;
    if (std::isfinite(incumbent) && best_open_bound > -kInf) {
      if (best_open_bound >= incumbent - 1e-9) {
        stop = Stop::Proved;
        break;
      }
      if (relative_gap(incumbent, best_open_bound) <=
          options.rel_gap_stop + 1e-12) {
        stop = Stop::Gap;
        final_bound = best_open_bound;
        break;
      }
    }
    if (options.time_limit_seconds > 0 &&
        seconds_since(start) > options.time_limit_seconds) {
      stop = Stop::Time;
      final_bound = std::min(best_open_bound, incumbent);
      break;
    }
    if (options.node_limit > 0 && out.nodes >= options.node_limit) {
      stop = Stop::Nodes;
      final_bound = std::min(best_open_bound, incumbent);
      break;
    }

    Node node = open.top();
    open.pop();
    apply_node(node);
    const LpStatus st = splx.solve(lp_limit);
    out.nodes++;
    out.simplex_iterations = splx.iterations();
    if (st == LpStatus::Infeasible) continue;
    if (st == LpStatus::Unbounded) {
      if (node.changes.empty()) {
        out.status = SolveStatus::Unbounded;
        out.wall_seconds = seconds_since(start);
        return out;
      }
      continue;
    }
    if (st == LpStatus::Singular || st == LpStatus::IterLimit) {
      stop = Stop::Failure;
      fail_message = st == LpStatus::Singular ? "numerically singular basis"
                                              : "simplex iteration limit";
      final_bound = std::min(open.empty() ? incumbent : open.top().bound,
                             incumbent);
      break;
    }
    const double node_obj = splx.objective() + pre.objective_offset;
    if (node_obj >= incumbent - 1e-9) continue;  // bound-dominated

    const std::vector<double> x = splx.solution();
    int branch_col = -1;
    double branch_score = options.int_tol;
    for (int c : binary_cols) {
      const double frac = std::abs(x[c] - std::round(x[c]));
      if (frac > branch_score) {
        branch_score = frac;
        branch_col = c;
      }
    }
    if (branch_col < 0) {
      incumbent = node_obj;
      std::vector<double> rounded = x;
      for (int c : binary_cols) rounded[c] = std::round(rounded[c]);
      incumbent_values = pre.expand(rounded);
      continue;
    }
    if (heuristic.usable() && (out.nodes < 64 || out.nodes % 8 == 0)) {
      // Rotating the conditioning order across retries diversifies which
      // unit absorbs the flexible role; stop as soon as the node bound is
      // matched (the subtree is then closed).
      const int max_rotations = out.nodes < 64 ? 3 : 1;
      bool improved = false;
      for (int rot = 0; rot < max_rotations; ++rot) {
        std::vector<double> candidate;
        double cand_obj = kInf;
        if (heuristic.attempt(pre.expand(x), heur_splx, lp_limit, &candidate,
                              &cand_obj, rot) &&
            cand_obj < incumbent - 1e-9) {
          incumbent = cand_obj;
          incumbent_values = std::move(candidate);
          improved = true;
        }
        if (incumbent <= node_obj + 1e-9 ||
            incumbent <= node_obj * 1.02 + 1e-9)
          break;
      }
      if (improved && node_obj >= incumbent - 1e-9) continue;  // closed
    }
    Node down{node_obj, next_id++, node.changes};
    down.changes.push_back({branch_col, 0.0, 0.0});
    Node up{node_obj, next_id++, node.changes};
    up.changes.push_back({branch_col, 1.0, 1.0});
    // Push the round-preferred child last so plateau ties dive toward it.
    if (x[branch_col] >= 0.5) {
      open.push(std::move(down));
      open.push(std::move(up));
    } else {
      open.push(std::move(up));
      open.push(std::move(down));
    }
  }

  out.wall_seconds = seconds_since(start);
  if (std::isfinite(incumbent)) {
    out.objective = incumbent;
    out.has_solution = true;
    out.values = std::move(incumbent_values);
    switch (stop) {
      case Stop::Exhausted:
      case Stop::Proved:
        out.status = SolveStatus::Optimal;
        out.bound = incumbent;
        out.gap = 0;
        break;
      case Stop::Gap:
        out.status = SolveStatus::GapReached;
        out.bound = final_bound;
        out.gap = relative_gap(out.objective, out.bound);
        break;
      case Stop::Time:
      case Stop::Nodes:
        out.status = SolveStatus::TimeLimit;
        out.bound = final_bound;
        out.gap = relative_gap(out.objective, out.bound);
        break;
      case Stop::Failure:
        out.status = SolveStatus::SolverFailure;
        out.bound = final_bound;
        out.gap = relative_gap(out.objective, out.bound);
        out.message = fail_message;
        break;
    }
    return out;
  }
  switch (stop) {
    case Stop::Exhausted:
    case Stop::Proved:
      out.status = SolveStatus::Infeasible;
      break;
    case Stop::Time:
    case Stop::Nodes:
      out.status = SolveStatus::TimeLimit;
      out.message = "limit reached without incumbent";
      break;
    case Stop::Gap:
      out.status = SolveStatus::SolverFailure;  // unreachable
      break;
    case Stop::Failure:
      out.status = SolveStatus::SolverFailure;
      out.message = fail_message;
      break;
  }
  return out;
}

SolveResult solve_enumerate(const MilpModel& model, int binary_budget,
                            const SolveOptions& options) {
  const auto start = Clock::now();
  SolveResult out;
  Presolved pre = Presolved::run(model);
  if (pre.infeasible) {
    out.status = SolveStatus::Infeasible;
    out.wall_seconds = seconds_since(start);
    return out;
  }
  LpProblem& rp = pre.reduced;
  std::vector<int> bins;
  for (int c = 0; c < rp.n_cols; ++c)
    if (rp.is_binary[c] && rp.ub[c] - rp.lb[c] > 0.5) bins.push_back(c);
  if (static_cast<int>(bins.size()) > binary_budget)
    throw std::invalid_argument(
        "solve_enumerate: " + std::to_string(bins.size()) +
        " free binaries exceed the budget of " + std::to_string(binary_budget));

  // Row activity ranges over the current (partially fixed) box, for pruning.
  const int m = rp.n_rows();
  std::vector<double> act_min(m, 0), act_max(m, 0);
  std::vector<double> cur_lb(rp.lb), cur_ub(rp.ub);
  for (int c = 0; c < rp.n_cols; ++c)
    for (int k = rp.col_ptr[c]; k < rp.col_ptr[c + 1]; ++k) {
      const int r = rp.row_of[k];
      const double v = rp.value[k];
      act_min[r] += v > 0 ? v * cur_lb[c] : v * cur_ub[c];
      act_max[r] += v > 0 ? v * cur_ub[c] : v * cur_lb[c];
    }
  auto rows_ok = [&]() {
    for (int r = 0; r < m; ++r) {
      switch (rp.sense[r]) {
        case RowSense::LE:
          if (act_min[r] > rp.rhs[r] + 1e-7) return false;
          break;
        case RowSense::GE:
          if (act_max[r] < rp.rhs[r] - 1e-7) return false;
          break;
        case RowSense::EQ:
          if (act_min[r] > rp.rhs[r] + 1e-7 || act_max[r] < rp.rhs[r] - 1e-7)
            return false;
          break;
      }
    }
    return true;
  };
  auto move_bounds = [&](int c, double lo, double hi) {
    for (int k = rp.col_ptr[c]; k < rp.col_ptr[c + 1]; ++k) {
      const int r = rp.row_of[k];
      const double v = rp.value[k];
      if (v > 0) {
        act_min[r] += v * (lo - cur_lb[c]);
        act_max[r] += v * (hi - cur_ub[c]);
      } else {
        act_min[r] += v * (hi - cur_ub[c]);
        act_max[r] += v * (lo - cur_lb[c]);
      }
    }
    cur_lb[c] = lo;
    cur_ub[c] = hi;
  };

  Simplex splx(rp);
  const std::int64_t lp_limit =
      options.iteration_limit > 0 ? options.iteration_limit : -1;
  double best = kInf;
  std::vector<double> best_values;
  std::int64_t leaves = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t depth) {
    if (!rows_ok()) return;
    if (depth == bins.size()) {
      ++leaves;
      const LpStatus st = splx.solve(lp_limit);
      out.simplex_iterations = splx.iterations();
      if (st == LpStatus::Optimal) {
        const double obj = splx.objective() + pre.objective_offset;
        if (obj < best - 1e-12) {
          best = obj;
          best_values = pre.expand(splx.solution());
        }
      } else if (st == LpStatus::Singular || st == LpStatus::IterLimit) {
        throw std::runtime_error("solve_enumerate: leaf LP failed");
      }
      return;
    }
    const int c = bins[depth];
    const double lo = cur_lb[c], hi = cur_ub[c];
    for (double v : {0.0, 1.0}) {
      move_bounds(c, v, v);
      splx.set_col_bounds(c, v, v);
      visit(depth + 1);
    }
    move_bounds(c, lo, hi);
    splx.set_col_bounds(c, lo, hi);
  };
  visit(0);

  out.nodes = leaves;
  out.wall_seconds = seconds_since(start);
  if (std::isfinite(best)) {
    out.status = SolveStatus::Optimal;
    out.objective = best;
    out.bound = best;
    out.gap = 0;
    out.has_solution = true;
    out.values = std::move(best_values);
  } else {
    out.status = SolveStatus::Infeasible;
  }
  return out;
}

}  // namespace suc
