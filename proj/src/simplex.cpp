#include "suc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace suc {

namespace {
constexpr double kDrop = 1e-12;
}

template <typename Fn>
void Simplex::for_col(int col, Fn&& fn) const {
  if (col < problem_.n_cols) {
    for (int k = problem_.col_ptr[col]; k < problem_.col_ptr[col + 1]; ++k)
      fn(problem_.row_of[k], problem_.value[k]);
  } else {
    fn(col - problem_.n_cols, 1.0);
  }
}

Simplex::Simplex(LpProblem problem) : problem_(std::move(problem)) {
  const int m = problem_.n_rows();
  const int n = problem_.n_cols;
  lb_ = problem_.lb;
  ub_ = problem_.ub;
  lb_.resize(n + m);
  ub_.resize(n + m);
  for (int i = 0; i < m; ++i) {
    // slack s = b - a'x with a'x sense b  =>  LE: s >= 0, GE: s <= 0, EQ: 0.
    switch (problem_.sense[i]) {
      case RowSense::LE:
        lb_[n + i] = 0;
        ub_[n + i] = kInf;
        break;
      case RowSense::GE:
        lb_[n + i] = -kInf;
        ub_[n + i] = 0;
        break;
      case RowSense::EQ:
        lb_[n + i] = 0;
        ub_[n + i] = 0;
        break;
    }
  }
  reset_basis();
}

void Simplex::reset_basis() {
  const int m = problem_.n_rows();
  const int n = problem_.n_cols;
  basis_.resize(m);
  stat_.assign(n + m, CStat::AtLower);
  pos_of_col_.assign(n + m, -1);
  x_.assign(n + m, 0.0);
  for (int j = 0; j < n + m; ++j) {
    if (std::isfinite(lb_[j])) {
      stat_[j] = CStat::AtLower;
      x_[j] = lb_[j];
    } else if (std::isfinite(ub_[j])) {
      stat_[j] = CStat::AtUpper;
      x_[j] = ub_[j];
    } else {
      stat_[j] = CStat::FreeZero;
      x_[j] = 0;
    }
  }
  for (int i = 0; i < m; ++i) {
    basis_[i] = n + i;
    stat_[n + i] = CStat::Basic;
    pos_of_col_[n + i] = i;
  }
  etas_.clear();
  pivots_.clear();
}

void Simplex::set_col_bounds(int col, double new_lb, double new_ub) {
  lb_[col] = new_lb;
  ub_[col] = new_ub;
  if (stat_[col] == CStat::Basic) return;
  // Snap nonbasic columns onto a valid bound.
  if (stat_[col] == CStat::AtLower && !std::isfinite(new_lb))
    stat_[col] = std::isfinite(new_ub) ? CStat::AtUpper : CStat::FreeZero;
  else if (stat_[col] == CStat::AtUpper && !std::isfinite(new_ub))
    stat_[col] = std::isfinite(new_lb) ? CStat::AtLower : CStat::FreeZero;
  else if (stat_[col] == CStat::FreeZero && std::isfinite(new_lb))
    stat_[col] = CStat::AtLower;
  x_[col] = stat_[col] == CStat::AtLower
                ? lb_[col]
                : (stat_[col] == CStat::AtUpper ? ub_[col] : 0.0);
}

bool Simplex::factorize() {
  const int m = problem_.n_rows();
  etas_.clear();
  pivots_.clear();
  pivots_.reserve(m);
  pivot_of_row_.assign(m, -1);
  pivot_of_pos_.assign(m, -1);
  if (m == 0) return true;

  // Sparse structure of the basis matrix: per position, (row, value) entries.
  std::vector<std::vector<std::pair<int, double>>> cols(m);
  std::vector<std::vector<int>> rows(m);  // row -> positions with an entry
  std::vector<int> col_count(m, 0), row_count(m, 0);
  for (int k = 0; k < m; ++k) {
    for_col(basis_[k], [&](int r, double v) {
      if (std::abs(v) <= kDrop) return;
      cols[k].emplace_back(r, v);
      rows[r].push_back(k);
      ++col_count[k];
      ++row_count[r];
    });
  }
  std::vector<char> row_done(m, 0), col_done(m, 0);
  auto col_value_in_row = [&](int k, int r) {
    for (const auto& [row, v] : cols[k])
      if (row == r) return v;
    return 0.0;
  };

  std::vector<int> stack;
  for (int k = 0; k < m; ++k)
    if (col_count[k] == 1) stack.push_back(k | (1 << 30));
  for (int r = 0; r < m; ++r)
    if (row_count[r] == 1) stack.push_back(r);

  int n_pivots = 0;
  auto retire_col = [&](int k) {
    col_done[k] = 1;
    for (const auto& [r, v] : cols[k]) {
      (void)v;
      if (row_done[r]) continue;
      if (--row_count[r] == 1) stack.push_back(r);
    }
  };
  auto retire_row = [&](int r) {
    row_done[r] = 1;
    for (int k : rows[r]) {
      if (col_done[k]) continue;
      if (--col_count[k] == 1) stack.push_back(k | (1 << 30));
    }
  };

  while (!stack.empty()) {
    const int item = stack.back();
    stack.pop_back();
    if (item & (1 << 30)) {
      // Column singleton: its only active row hosts the pivot; the rest of
      // that row becomes a U row, no elimination happens.
      const int k = item & ~(1 << 30);
      if (col_done[k] || col_count[k] != 1) continue;
      int pr = -1;
      double pv = 0;
      for (const auto& [r, v] : cols[k])
        if (!row_done[r]) {
          pr = r;
          pv = v;
        }
      if (pr < 0 || std::abs(pv) <= kDrop) continue;
      Pivot p;
      p.row = pr;
      p.pos = k;
      p.value = pv;
      for (int kk : rows[pr])
        if (!col_done[kk] && kk != k) {
          const double v = col_value_in_row(kk, pr);
          if (std::abs(v) > kDrop) p.u_terms.emplace_back(kk, v);
        }
      pivot_of_row_[pr] = n_pivots;
      pivot_of_pos_[k] = n_pivots;
      pivots_.push_back(std::move(p));
      ++n_pivots;
      col_done[k] = 1;
      retire_row(pr);
    } else {
      // Row singleton: the column below the pivot is eliminated with stored
      // multipliers, no fill anywhere else.
      const int r = item;
      if (row_done[r] || row_count[r] != 1) continue;
      int pk = -1;
      for (int k : rows[r])
        if (!col_done[k]) pk = k;
      if (pk < 0) continue;
      const double pv = col_value_in_row(pk, r);
      if (std::abs(pv) <= kDrop) continue;
      Pivot p;
      p.row = r;
      p.pos = pk;
      p.value = pv;
      for (const auto& [rr, v] : cols[pk])
        if (!row_done[rr] && rr != r && std::abs(v) > kDrop)
          p.l_terms.emplace_back(rr, v / pv);
      pivot_of_row_[r] = n_pivots;
      pivot_of_pos_[pk] = n_pivots;
      pivots_.push_back(std::move(p));
      ++n_pivots;
      row_done[r] = 1;
      retire_col(pk);
    }
  }

  // Dense bump for whatever the peel left behind.
  std::vector<int> brows, bcols;
  for (int r = 0; r < m; ++r)
    if (!row_done[r]) brows.push_back(r);
  for (int k = 0; k < m; ++k)
    if (!col_done[k]) bcols.push_back(k);
  if (!brows.empty()) {
    const int nb = static_cast<int>(brows.size());
    if (static_cast<int>(bcols.size()) != nb) return false;
    if (nb > 8000)
      throw std::runtime_error("basis bump too large for the dense kernel");
    std::vector<int> row_slot(m, -1);
    for (int i = 0; i < nb; ++i) row_slot[brows[i]] = i;
    std::vector<double> dense(static_cast<std::size_t>(nb) * nb, 0.0);
    for (int j = 0; j < nb; ++j)
      for (const auto& [r, v] : cols[bcols[j]])
        if (row_slot[r] >= 0) dense[static_cast<std::size_t>(row_slot[r]) * nb + j] = v;

    std::vector<int> perm(nb);
    for (int i = 0; i < nb; ++i) perm[i] = i;
    for (int step = 0; step < nb; ++step) {
      int best = -1;
      double best_abs = 1e-10;
      for (int i = step; i < nb; ++i) {
        const double a = std::abs(dense[static_cast<std::size_t>(perm[i]) * nb + step]);
        if (a > best_abs) {
          best_abs = a;
          best = i;
        }
      }
      if (best < 0) return false;  // singular bump
      std::swap(perm[step], perm[best]);
      const int prow = perm[step];
      const double pv = dense[static_cast<std::size_t>(prow) * nb + step];
      Pivot p;
      p.row = brows[prow];
      p.pos = bcols[step];
      p.value = pv;
      for (int i = step + 1; i < nb; ++i) {
        const int rr = perm[i];
        double& a = dense[static_cast<std::size_t>(rr) * nb + step];
        if (std::abs(a) <= kDrop) continue;
        const double mult = a / pv;
        p.l_terms.emplace_back(brows[rr], mult);
        for (int j = step + 1; j < nb; ++j)
          dense[static_cast<std::size_t>(rr) * nb + j] -=
              mult * dense[static_cast<std::size_t>(prow) * nb + j];
        a = 0;
      }
      for (int j = step + 1; j < nb; ++j) {
        const double v = dense[static_cast<std::size_t>(prow) * nb + j];
        if (std::abs(v) > kDrop) p.u_terms.emplace_back(bcols[j], v);
      }
      pivot_of_row_[p.row] = n_pivots;
      pivot_of_pos_[p.pos] = n_pivots;
      pivots_.push_back(std::move(p));
      ++n_pivots;
    }
  }
  return n_pivots == m;
}

void Simplex::ftran(std::vector<double>& x) const {
  // x arrives indexed by row, leaves indexed by basis position.
  const int m = problem_.n_rows();
  for (const Pivot& p : pivots_)
    if (x[p.row] != 0.0)
      for (const auto& [r, mult] : p.l_terms) x[r] -= mult * x[p.row];
  std::vector<double> out(m, 0.0);
  for (int i = static_cast<int>(pivots_.size()) - 1; i >= 0; --i) {
    const Pivot& p = pivots_[i];
    double v = x[p.row];
    for (const auto& [pos, coef] : p.u_terms) v -= coef * out[pos];
    out[p.pos] = v / p.value;
  }
  x.swap(out);
  for (const Eta& e : etas_) {
    const double piv = x[e.pivot_pos] / e.pivot_val;
    if (piv != 0.0) {
      x[e.pivot_pos] = piv;
      for (const auto& [pos, v] : e.terms) x[pos] -= v * piv;
    } else {
      x[e.pivot_pos] = 0.0;
    }
  }
}

void Simplex::btran(std::vector<double>& x) const {
  // x arrives indexed by basis position, leaves indexed by row.
  const int m = problem_.n_rows();
  for (int i = static_cast<int>(etas_.size()) - 1; i >= 0; --i) {
    const Eta& e = etas_[i];
    double v = x[e.pivot_pos];
    for (const auto& [pos, w] : e.terms) v -= w * x[pos];
    x[e.pivot_pos] = v / e.pivot_val;
  }
  // U^T solve: one forward sweep scattering into later pivots.
  std::vector<double> z(pivots_.size(), 0.0);
  std::vector<double> acc(m, 0.0);
  for (std::size_t q = 0; q < pivots_.size(); ++q) {
    const Pivot& p = pivots_[q];
    const double v = (x[p.pos] + acc[p.pos]) / p.value;
    z[q] = v;
    for (const auto& [pos, coef] : p.u_terms) acc[pos] -= coef * v;
  }
  // L^T solve in reverse pivot order.
  std::vector<double> out(m, 0.0);
  for (int q = static_cast<int>(pivots_.size()) - 1; q >= 0; --q) {
    const Pivot& p = pivots_[q];
    double v = z[q];
    for (const auto& [r, mult] : p.l_terms) v -= mult * out[r];
    out[p.row] = v;
  }
  x.swap(out);
}

bool Simplex::repair_basis() {
  // Swap slacks in for positions the factorization could not pivot.
  const int m = problem_.n_rows();
  const int n = problem_.n_cols;
  std::vector<char> used_row(m, 0), pos_ok(m, 0);
  for (const Pivot& p : pivots_) {
    used_row[p.row] = 1;
    pos_ok[p.pos] = 1;
  }
  int r = 0;
  for (int k = 0; k < m; ++k) {
    if (pos_ok[k]) continue;
    while (r < m && used_row[r]) ++r;
    if (r >= m) return false;
    const int old = basis_[k];
    if (pos_of_col_[old] == k) {
      stat_[old] = std::isfinite(lb_[old]) ? CStat::AtLower
                   : std::isfinite(ub_[old]) ? CStat::AtUpper
                                             : CStat::FreeZero;
      x_[old] = stat_[old] == CStat::AtLower ? lb_[old]
                : stat_[old] == CStat::AtUpper ? ub_[old]
                                               : 0.0;
      pos_of_col_[old] = -1;
    }
    const int slack = n + r;
    if (stat_[slack] == CStat::Basic && pos_of_col_[slack] != k) return false;
    basis_[k] = slack;
    stat_[slack] = CStat::Basic;
    pos_of_col_[slack] = k;
    ++r;
  }
  return factorize();
}

void Simplex::compute_basic_values() {
  const int m = problem_.n_rows();
  const int n = problem_.n_cols;
  std::vector<double> rhs(problem_.rhs);
  for (int j = 0; j < n + m; ++j) {
    if (stat_[j] == CStat::Basic) continue;
    x_[j] = stat_[j] == CStat::AtLower ? lb_[j]
            : stat_[j] == CStat::AtUpper ? ub_[j]
                                         : 0.0;
    if (x_[j] != 0.0)
      for_col(j, [&](int r, double v) { rhs[r] -= v * x_[j]; });
  }
  ftran(rhs);
  for (int i = 0; i < m; ++i) x_[basis_[i]] = rhs[i];
  objective_ = 0;
  for (int j = 0; j < n; ++j) objective_ += problem_.cost[j] * x_[j];
}

double Simplex::infeasibility() const {
  double total = 0;
  for (int i = 0; i < problem_.n_rows(); ++i) {
    const int j = basis_[i];
    if (x_[j] < lb_[j] - feas_tol_) total += lb_[j] - x_[j];
    if (x_[j] > ub_[j] + feas_tol_) total += x_[j] - ub_[j];
  }
  return total;
}

double Simplex::max_bound_violation() const {
  double worst = 0;
  for (int j = 0; j < n_total(); ++j) {
    if (std::isfinite(lb_[j])) worst = std::max(worst, lb_[j] - x_[j]);
    if (std::isfinite(ub_[j])) worst = std::max(worst, x_[j] - ub_[j]);
  }
  return worst;
}

LpStatus Simplex::iterate(bool phase_one, std::int64_t limit) {
  const int m = problem_.n_rows();
  const int n = problem_.n_cols;
  std::vector<double> cost_b(m), y, w;
  std::int64_t stall = 0;
  bool bland = false;
  double last_objective = kInf;
  std::int64_t iters_here = 0;

  for (;;) {
    if (limit >= 0 && iters_here >= limit) return LpStatus::IterLimit;

    // Phase-dependent cost of the basis.
    double phase_obj = 0;
    if (phase_one) {
      bool any = false;
      for (int i = 0; i < m; ++i) {
        const int j = basis_[i];
        if (x_[j] < lb_[j] - feas_tol_) {
          cost_b[i] = -1;
          phase_obj += lb_[j] - x_[j];
          any = true;
        } else if (x_[j] > ub_[j] + feas_tol_) {
          cost_b[i] = 1;
          phase_obj += x_[j] - ub_[j];
          any = true;
        } else {
          cost_b[i] = 0;
        }
      }
      if (!any) return LpStatus::Optimal;  // feasible: phase 1 done
    } else {
      for (int i = 0; i < m; ++i) cost_b[i] = col_cost(basis_[i]);
      phase_obj = objective_;
    }

    // Stall detection drives the Bland fallback.
    if (phase_obj < last_objective - 1e-12) {
      last_objective = phase_obj;
      stall = 0;
      bland = false;
    } else if (++stall > 2000 && !bland) {
      bland = true;
    }
    if (stall > 500000) return LpStatus::IterLimit;  // defensive

    y = cost_b;
    btran(y);

    // Pricing.
    int entering = -1;
    double best_score = phase_one ? feas_tol_ : opt_tol_;
    int direction = 1;
    for (int j = 0; j < n + m; ++j) {
      if (stat_[j] == CStat::Basic) continue;
      if (ub_[j] - lb_[j] < 1e-12) continue;  // fixed, never enters
      double d = phase_one ? 0.0 : col_cost(j);
      for_col(j, [&](int r, double v) { d -= y[r] * v; });
      int dir = 0;
      double score = 0;
      if (stat_[j] == CStat::AtLower || stat_[j] == CStat::FreeZero) {
        if (d < -best_score) {
          score = -d;
          dir = 1;
        }
      }
      if (dir == 0 && (stat_[j] == CStat::AtUpper || stat_[j] == CStat::FreeZero)) {
        if (d > best_score) {
          score = d;
          dir = -1;
        }
      }
      if (dir != 0) {
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          entering = j;
          direction = dir;
        }
      }
    }
    if (entering < 0)
      return phase_one ? LpStatus::Infeasible : LpStatus::Optimal;

    // Direction of basic values: x_B(t) = x_B - t * direction * w.
    w.assign(m, 0.0);
    for_col(entering, [&](int r, double v) { w[r] += v; });
    ftran(w);

    // Two-pass ratio test: find the tightest step, then among blockers within
    // a small expansion pick the largest pivot magnitude (stability).
    struct Candidate {
      double t;
      double wabs;
      int pos;
      int to_upper;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(16);
    double t_limit = kInf;
    for (int i = 0; i < m; ++i) {
      const double wi = w[i];
      if (std::abs(wi) <= pivot_tol_) continue;
      const int j = basis_[i];
      const double delta = direction * wi;  // positive: x_j decreases
      double t = kInf;
      int to_upper = 0;
      if (phase_one) {
        // First-breakpoint rule: feasible basics block at the bound they
        // approach, infeasible ones at the bound they are violating; an
        // infeasible basic moving away from its bound never blocks (the
        // pricing already accounted for the worsening).
        const bool below = x_[j] < lb_[j] - feas_tol_;
        const bool above = x_[j] > ub_[j] + feas_tol_;
        if (delta > pivot_tol_) {
          if (above) {
            t = (x_[j] - ub_[j]) / delta;
            to_upper = 1;
          } else if (!below && std::isfinite(lb_[j])) {
            t = (x_[j] - lb_[j]) / delta;
          }
        } else if (delta < -pivot_tol_) {
          if (below) {
            t = (lb_[j] - x_[j]) / (-delta);
          } else if (!above && std::isfinite(ub_[j])) {
            t = (ub_[j] - x_[j]) / (-delta);
            to_upper = 1;
          }
        }
      } else {
        if (delta > pivot_tol_) {
          if (std::isfinite(lb_[j])) t = (x_[j] - lb_[j]) / delta;
        } else if (delta < -pivot_tol_) {
          if (std::isfinite(ub_[j])) {
            t = (ub_[j] - x_[j]) / (-delta);
            to_upper = 1;
          }
        }
      }
      if (!std::isfinite(t)) continue;
      t = std::max(0.0, t);
      candidates.push_back({t, std::abs(wi), i, to_upper});
      t_limit = std::min(t_limit, t);
    }

    double t_max = t_limit;
    int leave_pos = -1;
    double leave_abs = 0;
    int leave_to_upper = 0;
    if (bland) {
      // Bland mode: lowest basis position among the exact minimum ratios;
      // required for the termination guarantee.
      for (const Candidate& c : candidates) {
        if (c.t > t_limit + 1e-12) continue;
        if (leave_pos < 0 || c.pos < leave_pos) {
          leave_abs = c.wabs;
          leave_pos = c.pos;
          leave_to_upper = c.to_upper;
          t_max = t_limit;
        }
      }
    } else {
      const double expand = 1e-9 + 1e-7 * std::max(1.0, std::abs(t_limit));
      for (const Candidate& c : candidates) {
        if (c.t > t_limit + expand) continue;
        if (c.wabs > leave_abs + 1e-12 ||
            (c.wabs > leave_abs - 1e-12 && (leave_pos < 0 || c.pos < leave_pos))) {
          leave_abs = c.wabs;
          leave_pos = c.pos;
          leave_to_upper = c.to_upper;
          t_max = c.t;
        }
      }
    }

    const double range = ub_[entering] - lb_[entering];
    const bool entering_flips = std::isfinite(range) && range < t_max;
    if (entering_flips) t_max = range;
    if (!std::isfinite(t_max)) {
      if (phase_one) return LpStatus::Singular;  // cannot happen: f bounded
      return LpStatus::Unbounded;
    }

    // Apply the step.
    if (t_max != 0.0) {
      for (int i = 0; i < m; ++i)
        if (w[i] != 0.0) x_[basis_[i]] -= t_max * direction * w[i];
      x_[entering] += t_max * direction;
    }

    if (entering_flips) {
      stat_[entering] =
          direction > 0 ? CStat::AtUpper : CStat::AtLower;
      x_[entering] = direction > 0 ? ub_[entering] : lb_[entering];
    } else {
      if (leave_pos < 0) return LpStatus::Singular;
      const double wpiv = w[leave_pos];
      if (std::abs(wpiv) <= pivot_tol_) return LpStatus::Singular;
      const int leaving = basis_[leave_pos];
      stat_[leaving] = leave_to_upper ? CStat::AtUpper : CStat::AtLower;
      x_[leaving] = leave_to_upper ? ub_[leaving] : lb_[leaving];
      pos_of_col_[leaving] = -1;
      basis_[leave_pos] = entering;
      stat_[entering] = CStat::Basic;
      pos_of_col_[entering] = leave_pos;

      Eta eta;
      eta.pivot_pos = leave_pos;
      eta.pivot_val = wpiv;
      for (int i = 0; i < m; ++i)
        if (i != leave_pos && w[i] != 0.0) eta.terms.emplace_back(i, w[i]);
      etas_.push_back(std::move(eta));

      // Small pivots poison the product form; refactorize right away.
      if (static_cast<int>(etas_.size()) >= refactor_every_ ||
          std::abs(wpiv) < 1e-6) {
        if (!factorize() && !repair_basis()) return LpStatus::Singular;
        compute_basic_values();
      }
    }

    // Recompute the true objective from scratch occasionally to stop drift.
    ++iters_here;
    ++total_iterations_;
    if ((iters_here & 0x3ff) == 0) compute_basic_values();
    if (!phase_one) {
      objective_ = 0;
      for (int j = 0; j < n; ++j) objective_ += problem_.cost[j] * x_[j];
    }
  }
}

LpStatus Simplex::solve(std::int64_t iteration_limit) {
  const int m = problem_.n_rows();
  const int n = problem_.n_cols;

  if (m == 0) {
    // Pure box problem.
    objective_ = 0;
    for (int j = 0; j < n; ++j) {
      const double c = problem_.cost[j];
      if (c > 0) {
        if (!std::isfinite(lb_[j])) return LpStatus::Unbounded;
        x_[j] = lb_[j];
      } else if (c < 0) {
        if (!std::isfinite(ub_[j])) return LpStatus::Unbounded;
        x_[j] = ub_[j];
      } else {
        x_[j] = std::isfinite(lb_[j]) ? lb_[j]
                : std::isfinite(ub_[j]) ? ub_[j]
                                        : 0.0;
      }
      objective_ += c * x_[j];
    }
    return LpStatus::Optimal;
  }

  if (!factorize() && !repair_basis()) return LpStatus::Singular;
  compute_basic_values();

  for (int attempt = 0; infeasibility() > 0; ++attempt) {
    if (attempt >= 5) return LpStatus::Singular;  // phase 1 keeps drifting
    const LpStatus p1 = iterate(true, iteration_limit);
    if (p1 != LpStatus::Optimal) return p1;
    // Refactorize to expose drift before trusting feasibility.
    if (!factorize() && !repair_basis()) return LpStatus::Singular;
    compute_basic_values();
  }

  const LpStatus p2 = iterate(false, iteration_limit);
  if (p2 != LpStatus::Optimal) return p2;
  if (!factorize() && !repair_basis()) return LpStatus::Singular;
  compute_basic_values();
  if (infeasibility() > 0) {
    // Drift surfaced by the final refactorization; polish once.
    const LpStatus p1 = iterate(true, iteration_limit);
    if (p1 != LpStatus::Optimal) return p1;
    const LpStatus again = iterate(false, iteration_limit);
    if (again != LpStatus::Optimal) return again;
    compute_basic_values();
  }
  return LpStatus::Optimal;
}

std::vector<double> Simplex::solution() const {
  return std::vector<double>(x_.begin(), x_.begin() + problem_.n_cols);
}

// ---------------------------------------------------------------------------

Presolved Presolved::run(const MilpModel& model) {
  Presolved out;
  const int n = model.n_vars();
  const int m = model.n_rows();
  std::vector<double> lb(n), ub(n);
  for (int j = 0; j < n; ++j) {
    lb[j] = model.vars[j].lb;
    ub[j] = model.vars[j].ub;
  }
  std::vector<char> row_alive(m, 1);
  std::vector<char> fixed(n, 0);

  auto round_binary = [&](int j) {
    if (model.vars[j].kind != VarKind::Binary) return;
    if (lb[j] > 1e-9) lb[j] = 1;
    if (ub[j] < 1 - 1e-9) ub[j] = 0;
  };

  // Tighten a variable's bounds; reports progress beyond float chatter.
  auto tighten = [&](int j, double new_lb, double new_ub) {
    bool moved = false;
    if (new_lb > lb[j] + 1e-9) {
      lb[j] = new_lb;
      moved = true;
    }
    if (new_ub < ub[j] - 1e-9) {
      ub[j] = new_ub;
      moved = true;
    }
    if (moved) round_binary(j);
    return moved;
  };

  bool changed = true;
  int passes = 0;
  while (changed && passes++ < 25) {
    changed = false;
    for (int j = 0; j < n; ++j) {
      round_binary(j);
      if (lb[j] > ub[j] + 1e-9) {
        out.infeasible = true;
        return out;
      }
      if (!fixed[j] && ub[j] - lb[j] <= 1e-11) {
        fixed[j] = 1;
        changed = true;
      }
    }
    for (int i = 0; i < m; ++i) {
      if (!row_alive[i]) continue;
      const MilpRow& row = model.rows[i];
      int live = 0, live_j = -1;
      double live_coef = 0, shift = 0;
      for (const auto& [j, coef] : row.terms) {
        if (coef == 0) continue;
        if (fixed[j]) {
          shift += coef * lb[j];
        } else {
          ++live;
          live_j = j;
          live_coef = coef;
        }
      }
      const double rhs = row.rhs - shift;
      if (live == 0) {
        const bool ok = (row.sense == RowSense::LE && rhs >= -1e-6) ||
                        (row.sense == RowSense::GE && rhs <= 1e-6) ||
                        (row.sense == RowSense::EQ && std::abs(rhs) <= 1e-6);
        if (!ok) {
          out.infeasible = true;
          return out;
        }
        row_alive[i] = 0;
        changed = true;
        continue;
      }
      if (live == 1) {
        // Singleton row folds into the variable's bounds.
        const double v = rhs / live_coef;
        const bool coef_pos = live_coef > 0;
        switch (row.sense) {
          case RowSense::LE:
            tighten(live_j, coef_pos ? lb[live_j] : v, coef_pos ? v : ub[live_j]);
            break;
          case RowSense::GE:
            tighten(live_j, coef_pos ? v : lb[live_j], coef_pos ? ub[live_j] : v);
            break;
          case RowSense::EQ:
            tighten(live_j, v, v);
            break;
        }
        if (lb[live_j] > ub[live_j] + 1e-9) {
          out.infeasible = true;
          return out;
        }
        row_alive[i] = 0;
        changed = true;
        continue;
      }
      // Activity-based bound propagation over the live variables.
      double min_act = shift, max_act = shift;
      int inf_min = 0, inf_max = 0;
      for (const auto& [j, coef] : row.terms) {
        if (coef == 0 || fixed[j]) continue;
        const double lo = coef > 0 ? coef * lb[j] : coef * ub[j];
        const double hi = coef > 0 ? coef * ub[j] : coef * lb[j];
        if (std::isfinite(lo)) min_act += lo; else ++inf_min;
        if (std::isfinite(hi)) max_act += hi; else ++inf_max;
      }
      const bool need_ub = row.sense != RowSense::GE;  // LE or EQ
      const bool need_lb = row.sense != RowSense::LE;  // GE or EQ
      if (need_ub && inf_min == 0 && min_act > row.rhs + 1e-6) {
        out.infeasible = true;
        return out;
      }
      if (need_lb && inf_max == 0 && max_act < row.rhs - 1e-6) {
        out.infeasible = true;
        return out;
      }
      for (const auto& [j, coef] : row.terms) {
        if (coef == 0 || fixed[j]) continue;
        const double lo = coef > 0 ? coef * lb[j] : coef * ub[j];
        const double hi = coef > 0 ? coef * ub[j] : coef * lb[j];
        if (need_ub && (inf_min == 0 || (inf_min == 1 && !std::isfinite(lo)))) {
          const double others = inf_min == 0 ? min_act - lo : min_act;
          const double slack = row.rhs - others;  // coef * x_j <= slack
          if (coef > 0)
            changed |= tighten(j, lb[j], slack / coef);
          else
            changed |= tighten(j, slack / coef, ub[j]);
        }
        if (need_lb && (inf_max == 0 || (inf_max == 1 && !std::isfinite(hi)))) {
          const double others = inf_max == 0 ? max_act - hi : max_act;
          const double slack = row.rhs - others;  // coef * x_j >= slack
          if (coef > 0)
            changed |= tighten(j, slack / coef, ub[j]);
          else
            changed |= tighten(j, lb[j], slack / coef);
        }
        if (lb[j] > ub[j] + 1e-9) {
          out.infeasible = true;
          return out;
        }
      }
    }
  }

  out.col_map.assign(n, -1);
  out.fixed_value.assign(n, 0.0);
  LpProblem& p = out.reduced;
  for (int j = 0; j < n; ++j) {
    if (fixed[j]) {
      out.fixed_value[j] = lb[j];
      out.objective_offset += model.objective[j] * lb[j];
      continue;
    }
    out.col_map[j] = p.n_cols++;
    p.cost.push_back(model.objective[j]);
    p.lb.push_back(lb[j]);
    p.ub.push_back(ub[j]);
    p.is_binary.push_back(model.vars[j].kind == VarKind::Binary);
  }
  out.objective_offset += model.objective_constant;

  std::vector<int> kept_rows;
  for (int i = 0; i < m; ++i)
    if (row_alive[i]) kept_rows.push_back(i);

  // CSC assembly: count per column, then fill.
  std::vector<std::vector<std::pair<int, double>>> col_entries(p.n_cols);
  for (std::size_t ri = 0; ri < kept_rows.size(); ++ri) {
    const MilpRow& row = model.rows[kept_rows[ri]];
    double shift = 0;
    for (const auto& [j, coef] : row.terms) {
      if (coef == 0) continue;
      if (fixed[j])
        shift += coef * lb[j];
      else
        col_entries[out.col_map[j]].emplace_back(static_cast<int>(ri), coef);
    }
    p.sense.push_back(row.sense);
    p.rhs.push_back(row.rhs - shift);
  }
  // Merge duplicate terms a row may carry for the same variable.
  for (auto& entries : col_entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    for (const auto& [r, v] : entries) {
      if (!merged.empty() && merged.back().first == r)
        merged.back().second += v;
      else
        merged.emplace_back(r, v);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0.0; }),
                 merged.end());
    entries = std::move(merged);
  }
  p.col_ptr.assign(p.n_cols + 1, 0);
  for (int c = 0; c < p.n_cols; ++c)
    p.col_ptr[c + 1] = p.col_ptr[c] + static_cast<int>(col_entries[c].size());
  p.row_of.resize(p.col_ptr.back());
  p.value.resize(p.col_ptr.back());
  for (int c = 0; c < p.n_cols; ++c) {
    int k = p.col_ptr[c];
    for (const auto& [r, v] : col_entries[c]) {
      p.row_of[k] = r;
      p.value[k] = v;
      ++k;
    }
  }
  return out;
}

std::vector<double> Presolved::expand(const std::vector<double>& reduced_x) const {
  std::vector<double> x(col_map.size(), 0.0);
  for (std::size_t j = 0; j < col_map.size(); ++j)
    x[j] = col_map[j] >= 0 ? reduced_x[col_map[j]] : fixed_value[j];
  return x;
}

}  // namespace suc
