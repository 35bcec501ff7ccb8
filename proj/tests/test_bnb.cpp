#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "suc/lp_io.hpp"
#include "suc/solve.hpp"
#include "uc_testgen.hpp"

using namespace suc;
using namespace suc::testgen;

TEST_CASE("all binaries fixed by bounds reduces to the LP") {
  MilpModel m;
  const int x = m.add_var("x", VarKind::Binary, 1, 1, VarCoord{}, 3.0);
  const int y = m.add_var("y", VarKind::Continuous, 0, 10, VarCoord{}, 1.0);
  auto& row = m.add_row("c", RowSense::GE, 4.0);
  row.terms = {{x, 1.0}, {y, 1.0}};
  const auto lp = solve_lp(m);
  const auto ip = solve_milp(m);
  REQUIRE(lp.status == SolveStatus::Optimal);
  REQUIRE(ip.status == SolveStatus::Optimal);
  CHECK(ip.objective == doctest::Approx(lp.objective));
  CHECK(ip.nodes <= 1);
}

TEST_CASE("enumerate with zero binaries equals the LP") {
  MilpModel m;
  const int y = m.add_var("y", VarKind::Continuous, 0, 10, VarCoord{}, 1.0);
  auto& row = m.add_row("c", RowSense::GE, 4.0);
  row.terms = {{y, 1.0}};
  const auto lp = solve_lp(m);
  const auto en = solve_enumerate(m);
  CHECK(en.objective == doctest::Approx(lp.objective));
}

TEST_CASE("enumerate refuses oversized budgets") {
  MilpModel m;
  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < 25; ++i)
    terms.emplace_back(m.add_var("b" + std::to_string(i), VarKind::Binary, 0, 1,
                                 VarCoord{}, 1.0),
                       1.0);
  auto& row = m.add_row("c", RowSense::GE, 3.0);
  row.terms = terms;
  CHECK_THROWS_AS(solve_enumerate(m, 22), std::invalid_argument);
}

TEST_CASE("infeasible tiny model without slack") {
  // Demand above capacity with dns excluded is infeasible.
  MilpModel m;
  const int p = m.add_var("p", VarKind::Continuous, 0, 100, VarCoord{}, 1.0);
  const int on = m.add_var("on", VarKind::Binary, 0, 1, VarCoord{}, 5.0);
  auto& bal = m.add_row("bal", RowSense::EQ, 150.0);
  bal.terms = {{p, 1.0}};
  auto& cap = m.add_row("cap", RowSense::LE, 0.0);
  cap.terms = {{p, 1.0}, {on, -100.0}};
  CHECK(solve_enumerate(m).status == SolveStatus::Infeasible);
  CHECK(solve_milp(m).status == SolveStatus::Infeasible);
}

TEST_CASE("tiny UC instance: branch and bound equals enumeration") {
  Rng rng(90210);
  TinyInstance inst = random_tiny_instance(rng);
  SolveOptions opt;
  const auto bb = solve_milp(inst.model, opt);
  const auto en = solve_enumerate(inst.model);
  REQUIRE(bb.status == en.status);
  if (bb.status == SolveStatus::Optimal)
    CHECK(bb.objective == doctest::Approx(en.objective).epsilon(1e-9));
}

TEST_CASE("cross-oracle equality over many random tiny instances" *
          doctest::timeout(120)) {
  Rng rng(555);
  int feasible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    TinyInstance inst = random_tiny_instance(rng);
    const auto bb = solve_milp(inst.model, SolveOptions{});
    const auto en = solve_enumerate(inst.model);
    CAPTURE(trial);
    REQUIRE(bb.status == en.status);
    if (bb.status != SolveStatus::Optimal) continue;
    ++feasible;
    CHECK(std::abs(bb.objective - en.objective) <= 1e-6);
    // Every scenario's plan obeys the technical rules.
    for (int s = 0; s < inst.scenarios.count(); ++s) {
      const auto plan = extract_plan(inst.model, bb.values, s);
      const auto violations = validate_plan(plan, inst.fleet, inst.grid);
      CHECK_MESSAGE(violations.empty(), format_violations(violations));
    }
  }
  CHECK(feasible >= 35);  // dns/spill keep nearly everything feasible
}

TEST_CASE("gap stop terminates early with a proven bound") {
  Rng rng(777);
  TinyInstance inst = random_tiny_instance(rng);
  SolveOptions loose;
  loose.rel_gap_stop = 0.5;
  const auto r = solve_milp(inst.model, loose);
  if (r.status == SolveStatus::GapReached) {
    CHECK(r.gap <= 0.5 + 1e-9);
    CHECK(r.bound <= r.objective + 1e-9);
  } else {
    CHECK(r.status == SolveStatus::Optimal);
  }
}

TEST_CASE("determinism: identical options give identical results") {
  Rng rng(31337);
  TinyInstance inst = random_tiny_instance(rng);
  const auto a = solve_milp(inst.model, SolveOptions{});
  const auto b = solve_milp(inst.model, SolveOptions{});
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes == b.nodes);
  CHECK(a.values == b.values);
}

TEST_CASE("solution integrality of returned binaries") {
  Rng rng(2468);
  for (int trial = 0; trial < 5; ++trial) {
    TinyInstance inst = random_tiny_instance(rng);
    const auto r = solve_milp(inst.model, SolveOptions{});
    if (r.status != SolveStatus::Optimal) continue;
    for (int j = 0; j < inst.model.n_vars(); ++j)
      if (inst.model.vars[j].kind == VarKind::Binary)
        CHECK(std::abs(r.values[j] - std::round(r.values[j])) <= 1e-6);
  }
}

TEST_CASE("second-stage relaxation never costs more" * doctest::timeout(120)) {
  Rng rng(808);
  int done = 0;
  for (int trial = 0; trial < 12 && done < 10; ++trial) {
    TinyInstance inst = random_tiny_instance(rng, 26);
    const auto full = solve_milp(inst.model, SolveOptions{});
    const auto star = solve_milp(relax_second_stage(inst.model), SolveOptions{});
    if (full.status != SolveStatus::Optimal) continue;
    REQUIRE(star.status == SolveStatus::Optimal);
    CHECK(star.objective <= full.objective + 1e-9);
    ++done;
  }
  CHECK(done >= 8);
}

TEST_CASE("external-solver loop: export, import a foreign solution") {
  Rng rng(11);
  TinyInstance inst = random_tiny_instance(rng);
  const std::string lp_path = "bnb_export.tmp.lp";
  const std::string sol_path = "bnb_solution.tmp";
  write_lp(lp_path, inst.model);
  const auto reread = read_lp(lp_path);
  const auto direct = solve_milp(inst.model, SolveOptions{});
  const auto indirect = solve_milp(reread, SolveOptions{});
  REQUIRE(direct.status == indirect.status);
  if (direct.status == SolveStatus::Optimal) {
    CHECK(direct.objective == doctest::Approx(indirect.objective).epsilon(1e-9));
    SolutionFile sol;
    sol.status = to_string(indirect.status);
    sol.objective = indirect.objective;
    for (int j = 0; j < reread.n_vars(); ++j)
      sol.values.emplace_back(reread.vars[j].name, indirect.values[j]);
    write_solution(sol_path, sol);
    const auto values =
        solution_values_for(inst.model, read_solution(sol_path));
    // The imported assignment prices out to the same objective.
    double obj = inst.model.objective_constant;
    for (int j = 0; j < inst.model.n_vars(); ++j)
      obj += inst.model.objective[j] * values[j];
    CHECK(obj == doctest::Approx(direct.objective).epsilon(1e-6));
  }
  std::remove(lp_path.c_str());
  std::remove(sol_path.c_str());
}
