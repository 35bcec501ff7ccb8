#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "suc/rng.hpp"
#include "suc/simplex.hpp"
#include "suc/solve.hpp"

using namespace suc;

namespace {

// Small helper to assemble models tersely in tests.
struct ModelBuilder {
  MilpModel m;
  int var(const std::string& name, double lb, double ub, double obj,
          VarKind kind = VarKind::Continuous) {
    return m.add_var(name, kind, lb, ub, VarCoord{}, obj);
  }
  void row(const std::string& name, RowSense sense, double rhs,
           std::vector<std::pair<int, double>> terms) {
    auto& r = m.add_row(name, sense, rhs);
    r.terms = std::move(terms);
  }
};

}  // namespace

TEST_CASE("min x subject to x >= 3") {
  ModelBuilder b;
  const int x = b.var("x", 0, kInf, 1.0);
  b.row("c", RowSense::GE, 3.0, {{x, 1.0}});
  const auto r = solve_lp(b.m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.values[x] == doctest::Approx(3.0));
}

TEST_CASE("two-variable transportation LP, hand solution") {
  // min 2x + 3y  s.t.  x + y >= 10, x <= 6, y <= 8  ->  x = 6, y = 4, obj 24.
  ModelBuilder b;
  const int x = b.var("x", 0, 6, 2.0);
  const int y = b.var("y", 0, 8, 3.0);
  b.row("demand", RowSense::GE, 10.0, {{x, 1.0}, {y, 1.0}});
  const auto r = solve_lp(b.m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(24.0));
  CHECK(r.values[x] == doctest::Approx(6.0));
  CHECK(r.values[y] == doctest::Approx(4.0));
}

TEST_CASE("infeasible and unbounded are certified") {
  ModelBuilder b;
  const int x = b.var("x", 0, 5, 1.0);
  b.row("too_much", RowSense::GE, 6.0, {{x, 1.0}});
  CHECK(solve_lp(b.m).status == SolveStatus::Infeasible);

  ModelBuilder c;
  const int y = c.var("y", -kInf, kInf, -1.0);
  const int z = c.var("z", 0, kInf, 0.0);
  c.row("link", RowSense::LE, 4.0, {{y, -1.0}, {z, 1.0}});
  CHECK(solve_lp(c.m).status == SolveStatus::Unbounded);
}

TEST_CASE("equality rows and negative bounds") {
  ModelBuilder b;
  const int x = b.var("x", -10, 10, 1.0);
  const int y = b.var("y", -10, 10, 2.0);
  b.row("sum", RowSense::EQ, 4.0, {{x, 1.0}, {y, 1.0}});
  b.row("gap", RowSense::LE, 2.0, {{x, 1.0}, {y, -1.0}});
  const auto r = solve_lp(b.m);
  REQUIRE(r.status == SolveStatus::Optimal);
  // Push y down as far as the rows allow: x - y <= 2, x + y = 4 -> y >= 1.
  CHECK(r.values[y] == doctest::Approx(1.0));
  CHECK(r.values[x] == doctest::Approx(3.0));
  CHECK(r.objective == doctest::Approx(5.0));
}

TEST_CASE("free variables") {
  ModelBuilder b;
  const int x = b.var("x", -kInf, kInf, 1.0);
  b.row("lo", RowSense::GE, -7.0, {{x, 1.0}});
  const auto r = solve_lp(b.m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-7.0));
}

TEST_CASE("degenerate LP still terminates") {
  ModelBuilder b;
  const int x = b.var("x", 0, kInf, 1.0);
  const int y = b.var("y", 0, kInf, 1.0);
  const int z = b.var("z", 0, kInf, -1.0);
  for (int i = 0; i < 6; ++i)
    b.row("d" + std::to_string(i), RowSense::LE, 0.0,
          {{x, 1.0}, {y, -1.0}, {z, 1.0}});
  b.row("cap", RowSense::LE, 5.0, {{z, 1.0}});
  b.row("bal", RowSense::GE, 0.0, {{x, 1.0}, {y, 1.0}, {z, -1.0}});
  const auto r = solve_lp(b.m);
  REQUIRE(r.status == SolveStatus::Optimal);
}

TEST_CASE("random LPs agree with a dense vertex-enumeration oracle") {
  // Exhaustive oracle: try every basis pair among rows/bounds for 2-variable
  // problems; the polytope vertices of {a'x <= b, l <= x <= u} in 2D.
  Rng rng(2024);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ModelBuilder b;
    const double lx = -2, ux = 3, ly = -1, uy = 4;
    const double cx = std::floor(rng.next_uniform() * 9) - 4;
    const double cy = std::floor(rng.next_uniform() * 9) - 4;
    const int x = b.var("x", lx, ux, cx);
    const int y = b.var("y", ly, uy, cy);
    const int n_rows = 1 + static_cast<int>(rng.next_uniform() * 3);
    std::vector<std::array<double, 3>> lines;  // a x + b y <= c
    for (int i = 0; i < n_rows; ++i) {
      const double a = std::floor(rng.next_uniform() * 7) - 3;
      const double bb = std::floor(rng.next_uniform() * 7) - 3;
      const double c = std::floor(rng.next_uniform() * 13) - 2;
      lines.push_back({a, bb, c});
      b.row("r" + std::to_string(i), RowSense::LE, c, {{x, a}, {y, bb}});
    }
    // Oracle: collect candidate vertices from all pairs of tight conditions.
    std::vector<std::array<double, 3>> all = lines;
    all.push_back({1, 0, ux});
    all.push_back({-1, 0, -lx});
    all.push_back({0, 1, uy});
    all.push_back({0, -1, -ly});
    double best = kInf;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const double det = all[i][0] * all[j][1] - all[j][0] * all[i][1];
        if (std::abs(det) < 1e-9) continue;
        const double vx = (all[i][2] * all[j][1] - all[j][2] * all[i][1]) / det;
        const double vy = (all[i][0] * all[j][2] - all[j][0] * all[i][2]) / det;
        bool ok = vx >= lx - 1e-7 && vx <= ux + 1e-7 && vy >= ly - 1e-7 &&
                  vy <= uy + 1e-7;
        for (const auto& l : all)
          ok = ok && l[0] * vx + l[1] * vy <= l[2] + 1e-6;
        if (ok) best = std::min(best, cx * vx + cy * vy);
      }
    const auto r = solve_lp(b.m);
    if (!std::isfinite(best)) {
      CHECK(r.status == SolveStatus::Infeasible);
      continue;
    }
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-6));
    ++solved;
  }
  CHECK(solved > 100);  // most random instances are feasible
}

TEST_CASE("LP relaxation bounds the MILP from below") {
  ModelBuilder b;
  const int x = b.var("x", 0, 1, 1.7, VarKind::Binary);
  const int y = b.var("y", 0, 1, 1.0, VarKind::Binary);
  b.row("cover", RowSense::GE, 1.2, {{x, 1.0}, {y, 1.0}});
  const auto lp = solve_lp(b.m);
  const auto ip = solve_milp(b.m);
  REQUIRE(lp.status == SolveStatus::Optimal);
  REQUIRE(ip.status == SolveStatus::Optimal);
  CHECK(lp.objective <= ip.objective + 1e-9);
  CHECK(ip.objective == doctest::Approx(2.7));  // the cover forces both on
}

TEST_CASE("presolve eliminates fixed columns and singleton rows") {
  ModelBuilder b;
  const int x = b.var("x", 2, 2, 3.0);
  const int y = b.var("y", 0, 10, 1.0);
  b.row("single", RowSense::GE, 4.0, {{y, 1.0}});
  b.row("mixed", RowSense::LE, 20.0, {{x, 1.0}, {y, 1.0}});
  const auto pre = Presolved::run(b.m);
  CHECK_FALSE(pre.infeasible);
  CHECK(pre.reduced.n_cols == 1);
  CHECK(pre.reduced.n_rows() == 0);  // both rows folded into bounds
  CHECK(pre.objective_offset == doctest::Approx(6.0));
  const auto r = solve_lp(b.m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(10.0));
  CHECK(r.values[x] == doctest::Approx(2.0));
  CHECK(r.values[y] == doctest::Approx(4.0));
}

TEST_CASE("warm resolve after bound changes") {
  LpProblem p;
  p.n_cols = 2;
  p.cost = {1.0, 2.0};
  p.lb = {0, 0};
  p.ub = {10, 10};
  p.is_binary = {0, 0};
  p.col_ptr = {0, 1, 2};
  p.row_of = {0, 0};
  p.value = {1.0, 1.0};
  p.sense = {RowSense::GE};
  p.rhs = {4.0};
  Simplex s(p);
  REQUIRE(s.solve() == LpStatus::Optimal);
  CHECK(s.objective() == doctest::Approx(4.0));
  s.set_col_bounds(0, 0, 1);  // force x <= 1
  REQUIRE(s.solve() == LpStatus::Optimal);
  CHECK(s.objective() == doctest::Approx(1.0 + 2.0 * 3.0));
  s.set_col_bounds(0, 0, 10);
  REQUIRE(s.solve() == LpStatus::Optimal);
  CHECK(s.objective() == doctest::Approx(4.0));
}
