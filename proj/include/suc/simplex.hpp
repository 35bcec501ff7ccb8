#pragma once

#include <cstdint>
#include <vector>

#include "suc/milp_model.hpp"

namespace suc {

// Equality-free LP in natural form: min c'x subject to row senses and
// variable bounds. Columns are stored CSC; one slack per row is appended
// internally by the solver.
struct LpProblem {
  int n_cols = 0;
  std::vector<double> cost;
  std::vector<double> lb, ub;
  std::vector<char> is_binary;  // integrality marker carried through presolve
  std::vector<int> col_ptr;     // size n_cols + 1
  std::vector<int> row_of;
  std::vector<double> value;
  std::vector<RowSense> sense;
  std::vector<double> rhs;

  int n_rows() const { return static_cast<int>(rhs.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, Singular };

// Bounded-variable primal simplex, revised form: sparse LU of the basis
// (triangle peeling plus a dense bump) with product-form eta updates and
// periodic refactorization. Dantzig pricing with a Bland fallback after a
// degeneracy stall guarantees termination; all ties break on the lowest
// index so a solve is a pure function of (problem, bounds, starting basis).
//
// The basis and bounds persist across solve() calls, which lets
// branch-and-bound and enumeration resolve cheaply after bound changes.
class Simplex {
 public:
  explicit Simplex(LpProblem problem);

  void set_col_bounds(int col, double lb, double ub);
  double col_lb(int col) const { return lb_[col]; }
  double col_ub(int col) const { return ub_[col]; }
  void reset_basis();  // all-slack basis

  LpStatus solve(std::int64_t iteration_limit = -1);

  double objective() const { return objective_; }
  // Values of the structural columns (size n_cols).
  std::vector<double> solution() const;
  std::int64_t iterations() const { return total_iterations_; }
  double max_bound_violation() const;

 private:
  enum class CStat : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

  struct Eta {
    int pivot_pos;
    double pivot_val;
    std::vector<std::pair<int, double>> terms;  // excludes the pivot position
  };

  struct Pivot {
    int row;
    int pos;
    double value;
    std::vector<std::pair<int, double>> l_terms;  // (row, multiplier)
    std::vector<std::pair<int, double>> u_terms;  // (position, value)
  };

  int n_total() const { return problem_.n_cols + problem_.n_rows(); }
  double col_cost(int col) const {
    return col < problem_.n_cols ? problem_.cost[col] : 0.0;
  }
  template <typename Fn>
  void for_col(int col, Fn&& fn) const;  // fn(row, value)

  bool factorize();
  bool repair_basis();
  void ftran(std::vector<double>& x) const;
  void btran(std::vector<double>& x) const;
  void compute_basic_values();
  double infeasibility() const;
  LpStatus iterate(bool phase_one, std::int64_t limit);

  LpProblem problem_;
  std::vector<double> lb_, ub_;

  std::vector<int> basis_;        // basis position -> column
  std::vector<CStat> stat_;       // per column
  std::vector<double> x_;         // per column value
  std::vector<int> pos_of_col_;   // column -> basis position or -1

  std::vector<Pivot> pivots_;     // factorization record
  std::vector<int> pivot_of_row_, pivot_of_pos_;
  std::vector<Eta> etas_;

  double objective_ = 0;
  std::int64_t total_iterations_ = 0;

  double feas_tol_ = 1e-7;
  double opt_tol_ = 1e-7;
  double pivot_tol_ = 1e-9;
  int refactor_every_ = 60;
};

// Result of presolving a model: eliminated columns carry fixed values, the
// reduced problem maps back through col_map/row_map. Reductions stay within
// bound strengthening: fixed-column substitution, empty-row checks, singleton
// rows folded into bounds, and integral rounding of binary bounds.
struct Presolved {
  bool infeasible = false;
  LpProblem reduced;
  std::vector<int> col_map;         // model var -> reduced col or -1
  std::vector<double> fixed_value;  // valid where col_map == -1
  double objective_offset = 0;

  std::vector<double> expand(const std::vector<double>& reduced_x) const;
  static Presolved run(const MilpModel& model);
};

}  // namespace suc
