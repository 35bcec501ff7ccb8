#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "suc/evaluator.hpp"
#include "suc/rng.hpp"
#include "suc/selector.hpp"

using namespace suc;

namespace {

UnitSpec make_unit(UnitTech tech, const std::string& id, double p_min,
                   double p_max, double pf, double pv, bool on) {
  UnitSpec u;
  u.id = id;
  u.cls = UnitClass::defaults(tech);
  u.p_min = p_min;
  u.p_max = p_max;
  u.startup_cost = pf;
  u.variable_cost = pv;
  u.initially_on = on;
  return u;
}

struct World {
  Fleet fleet;
  TimeGrid grid;
  BaseSeries base;
  EvalContext ctx;

  World(Fleet f, std::vector<double> residual) : fleet(std::move(f)) {
    base.consumption = std::move(residual);
    base.renewable_names = {};
    base.renewables = {};
    ctx.fleet = &fleet;
    ctx.grid = &grid;
    ctx.base = &base;
    ctx.threads = 2;
    ctx.seed = 99;
  }
};

// A small always-bracketing world: one nuclear baseload plus two flexible
// CCGTs that can alternate variations; the residual moves in 4-hour steps so
// even the stiff nuclear unit could track it alone.
World bracket_world() {
  Fleet fleet = {make_unit(UnitTech::NUC, "NUC1", 100, 500, 25, 10, true),
                 make_unit(UnitTech::CCGT, "CCGT1", 40, 200, 10, 30, true),
                 make_unit(UnitTech::CCGT, "CCGT2", 40, 200, 10, 32, true),
                 make_unit(UnitTech::OCGT, "OCGT1", 50, 120, 5, 150, false)};
  std::vector<double> residual(24);
  for (int t = 0; t < 24; ++t) {
    const int phase = (t / 4) % 3;
    residual[t] = 420 + (phase == 1 ? 120.0 : phase == 2 ? -80.0 : 0.0);
  }
  return World(std::move(fleet), std::move(residual));
}

CommitmentPlan det_plan_for(const World& w, const std::string& id = "det") {
  ProblemSpec spec;
  spec.kind = ProblemKind::SinglePhase;
  spec.fleet = &w.fleet;
  spec.grid = &w.grid;
  spec.base = &w.base;
  const ScenarioSet mean = mean_scenario(w.base, w.grid, -10.0, 0, 24);
  spec.scenarios = &mean;
  const MilpModel model = build_single_phase(spec);
  const SolveResult r = solve_milp(model, SolveOptions{});
  REQUIRE(r.status == SolveStatus::Optimal);
  return plan_from_solution(model, r.values, id);
}

}  // namespace

TEST_CASE("perfect foresight on the mean scenario loses nothing") {
  World w = bracket_world();
  const CommitmentPlan plan = det_plan_for(w);
  // Zero-deviation evaluation scenarios equal the mean everywhere.
  EvalContext ctx = w.ctx;
  const EvalScenario scn = make_eval_scenario(ctx, 0, 0.0);
  const KpiRecord kpi = rolling_evaluate(ctx, plan, scn);
  CHECK(kpi.lost_load_mwh == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(kpi.lost_prod_mwh == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(kpi.block_cost.size() == static_cast<std::size_t>(w.grid.n_blocks()));
}

TEST_CASE("all units forced OFF prices every megawatt-hour of residual") {
  Fleet fleet = {make_unit(UnitTech::NUC, "NUC1", 100, 500, 25, 10, false),
                 make_unit(UnitTech::CCGT, "CCGT1", 80, 300, 10, 30, false)};
  std::vector<double> residual(24, 180.0);
  World w(std::move(fleet), std::move(residual));
  CommitmentPlan off_plan;
  off_plan.id = "alloff";
  off_plan.off.assign(2, std::vector<int>(24, 1));
  const EvalScenario scn = make_eval_scenario(w.ctx, 0, 0.0);
  const KpiRecord kpi = rolling_evaluate(w.ctx, off_plan, scn);
  const double expected = 180.0 * w.grid.study_steps;
  CHECK(kpi.lost_load_mwh == doctest::Approx(expected).epsilon(1e-9));
  CHECK(kpi.lost_prod_mwh == doctest::Approx(0.0));
  CHECK(kpi.dispatch_cost ==
        doctest::Approx(expected * w.ctx.pi_dns).epsilon(1e-9));
}

TEST_CASE("KPI additivity: totals equal the block sums") {
  World w = bracket_world();
  const CommitmentPlan plan = det_plan_for(w);
  const EvalScenario scn = make_eval_scenario(w.ctx, 3, 0.25);
  const KpiRecord kpi = rolling_evaluate(w.ctx, plan, scn);
  double ll = 0, lp = 0, cost = 0;
  for (std::size_t j = 0; j < kpi.block_cost.size(); ++j) {
    ll += kpi.block_lost_load[j];
    lp += kpi.block_lost_prod[j];
    cost += kpi.block_cost[j];
  }
  CHECK(kpi.lost_load_mwh == doctest::Approx(ll));
  CHECK(kpi.lost_prod_mwh == doctest::Approx(lp));
  CHECK(kpi.dispatch_cost == doctest::Approx(cost));
}

TEST_CASE("batch of one reduces to a single rolling evaluation") {
  World w = bracket_world();
  const CommitmentPlan plan = det_plan_for(w);
  EvalContext ctx = w.ctx;
  const auto batch = evaluate_batch(ctx, plan, 1, 0.10);
  const EvalScenario scn = make_eval_scenario(ctx, 0, 0.10);
  const KpiRecord solo = rolling_evaluate(ctx, plan, scn);
  REQUIRE(batch.size() == 1);
  CHECK(batch[0].lost_load_mwh == doctest::Approx(solo.lost_load_mwh));
  CHECK(batch[0].lost_prod_mwh == doctest::Approx(solo.lost_prod_mwh));
  CHECK(batch[0].dispatch_cost == doctest::Approx(solo.dispatch_cost));
}

TEST_CASE("batch evaluation is deterministic across reruns and threads") {
  World w = bracket_world();
  const CommitmentPlan plan = det_plan_for(w);
  EvalContext a = w.ctx;
  a.threads = 1;
  EvalContext b = w.ctx;
  b.threads = 2;
  const auto r1 = evaluate_batch(a, plan, 6, 0.25);
  const auto r2 = evaluate_batch(b, plan, 6, 0.25);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].lost_load_mwh == r2[i].lost_load_mwh);
    CHECK(r1[i].lost_prod_mwh == r2[i].lost_prod_mwh);
    CHECK(r1[i].dispatch_cost == r2[i].dispatch_cost);
  }
}

TEST_CASE("collapsing the rolling horizon to one block matches a monolithic solve") {
  World w = bracket_world();
  w.grid.block_steps = w.grid.study_steps;  // a single activation block
  w.grid.validate();
  const CommitmentPlan plan = det_plan_for(w);
  const EvalScenario scn = make_eval_scenario(w.ctx, 1, 0.10);
  const KpiRecord rolled = rolling_evaluate(w.ctx, plan, scn);

  // Monolithic oracle: one deterministic solve over the whole horizon with
  // the same pins, KPIs read over the study period.
  ProblemSpec spec;
  spec.kind = ProblemKind::EvalBlock;
  spec.block = 1;
  spec.fleet = &w.fleet;
  spec.grid = &w.grid;
  spec.base = &w.base;
  spec.scenarios = &scn.per_block[0];
  std::vector<FixedDecision> pins;
  for (int u = 0; u < static_cast<int>(w.fleet.size()); ++u) {
    const UnitTech tech = w.fleet[u].cls.tech;
    const int upto = tech == UnitTech::NUC ? 24
                     : tech == UnitTech::COAL || tech == UnitTech::CCGT
                         ? w.grid.study_steps
                         : 0;
    for (int t = 0; t < upto; ++t) pins.push_back({u, t, plan.off[u][t]});
  }
  spec.fixed = pins;
  const MilpModel model = build_evaluation(spec);
  const SolveResult r = solve_milp(model, SolveOptions{});
  REQUIRE(r.status == SolveStatus::Optimal);
  double dns = 0, spill = 0;
  for (int t = 0; t < w.grid.study_steps; ++t) {
    dns += r.values[model.var_by_name(coord_name(
        VarCoord{VarRole::Dns, -1, t, 0, State::OU, State::OU}, model.unit_ids))];
    spill += r.values[model.var_by_name(coord_name(
        VarCoord{VarRole::Spill, -1, t, 0, State::OU, State::OU},
        model.unit_ids))];
  }
  CHECK(rolled.lost_load_mwh == doctest::Approx(dns).epsilon(1e-7));
  CHECK(rolled.lost_prod_mwh == doctest::Approx(spill).epsilon(1e-7));
}

TEST_CASE("kappa: testing on the training set reproduces the in-sample value") {
  World w = bracket_world();
  const auto params = ErrorModelParams::calibrated(0.10, 0.9);
  const ScenarioSet training =
      generate_scenario_set(w.base, w.grid, -10.0, 0, 24, 4, params, 7,
                            StreamKind::Training);
  ProblemSpec spec;
  spec.kind = ProblemKind::SinglePhase;
  spec.fleet = &w.fleet;
  spec.grid = &w.grid;
  spec.base = &w.base;
  spec.scenarios = &training;
  const MilpModel model = build_single_phase(spec);
  const SolveResult r = solve_milp(model, SolveOptions{});
  REQUIRE(r.status == SolveStatus::Optimal);
  const CommitmentPlan plan = plan_from_solution(model, r.values, "sto");

  std::vector<double> costs;
  for (int s = 0; s < training.count(); ++s)
    costs.push_back(
        single_shot_evaluate(w.ctx, plan, slice_scenario(training, s))
            .window_cost);
  const auto k = compute_in_out_of_sample(model, r, costs);
  CHECK(k.kappa_oos == doctest::Approx(k.kappa_in).epsilon(1e-7));
  CHECK(k.first_stage_cost >= 0);
  // The first-stage part of kappa_oos is the in-sample one by construction.
  CHECK(k.kappa_oos - k.mean_second_stage ==
        doctest::Approx(k.first_stage_cost));
}

TEST_CASE("selection: argmax of each KPI list") {
  std::vector<KpiRecord> kpis(3);
  for (int i = 0; i < 3; ++i) kpis[i].scenario = i;
  kpis[0].lost_load_mwh = 10;
  kpis[1].lost_load_mwh = 0;
  kpis[2].lost_load_mwh = 5;
  kpis[0].lost_prod_mwh = 0;
  kpis[1].lost_prod_mwh = 7;
  kpis[2].lost_prod_mwh = 0;
  const auto sets = select_worst(kpis, 1);
  CHECK(sets.by_lost_load.front() == 0);
  CHECK(sets.by_lost_prod.front() == 1);
  CHECK(sets.selected == std::vector<int>{0, 1});
}

TEST_CASE("selection: degenerate ties break on the lower index") {
  std::vector<KpiRecord> kpis(4);
  for (int i = 0; i < 4; ++i) kpis[i].scenario = i;
  const auto sets = select_worst(kpis, 2);
  CHECK(sets.selected == std::vector<int>{0, 1});
  CHECK(sets.selected.size() == 2);
}

TEST_CASE("selection matches a brute-force sort oracle and nests") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int K = 3 + static_cast<int>(rng.next_uniform() * 10);
    std::vector<KpiRecord> kpis(K);
    for (int i = 0; i < K; ++i) {
      kpis[i].scenario = i;
      kpis[i].lost_load_mwh = std::floor(rng.next_uniform() * 6);
      kpis[i].lost_prod_mwh = std::floor(rng.next_uniform() * 6);
    }
    std::vector<int> previous;
    for (int M = 1; M <= K; ++M) {
      const auto sets = select_worst(kpis, M);
      // Oracle: full stable sort by value desc then index asc; union of
      // prefixes via an std::set.
      auto oracle_rank = [&](auto key) {
        std::vector<std::pair<double, int>> v;
        for (const auto& k : kpis) v.push_back({key(k), k.scenario});
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
          if (a.first != b.first) return a.first > b.first;
          return a.second < b.second;
        });
        return v;
      };
      const auto rl = oracle_rank([](const KpiRecord& k) { return k.lost_load_mwh; });
      const auto rp = oracle_rank([](const KpiRecord& k) { return k.lost_prod_mwh; });
      std::set<int> expect;
      for (int i = 0; i < M; ++i) {
        expect.insert(rl[i].second);
        expect.insert(rp[i].second);
      }
      CHECK(sets.selected == std::vector<int>(expect.begin(), expect.end()));
      CHECK(static_cast<int>(sets.selected.size()) <= 2 * M);
      // Monotone nesting.
      for (int idx : previous)
        CHECK(std::find(sets.selected.begin(), sets.selected.end(), idx) !=
              sets.selected.end());
      previous = sets.selected;
    }
    // Permutation invariance.
    auto shuffled = kpis;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto a = select_worst(kpis, 2);
    const auto b = select_worst(shuffled, 2);
    CHECK(a.selected == b.selected);
  }
}

TEST_CASE("selection pipeline: selecting everything returns all scenarios") {
  World w = bracket_world();
  EvalContext ctx = w.ctx;
  ctx.phi = 0.9;
  const int K = 4;
  const auto result = pipeline_select(ctx, K, K, 0.25);
  CHECK(result.training.count() == K);
  CHECK(result.kpis.size() == K);
  CHECK(result.sets.selected.size() == static_cast<std::size_t>(K));
  // Uniform probabilities on the merged set.
  for (double p : result.training.probability)
    CHECK(p == doctest::Approx(1.0 / K));
}
