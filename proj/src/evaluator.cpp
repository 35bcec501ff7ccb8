#include "suc/evaluator.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace suc {

namespace {

// Pins for the deterministic re-dispatch of block j: nuclear over the whole
// window, coal within the study period, CCGT on the committed block only.
std::vector<FixedDecision> block_pins(const EvalContext& ctx,
                                      const CommitmentPlan& plan, int block) {
  const TimeGrid& g = *ctx.grid;
  const int w0 = g.block_start_step(block);
  const int w1 = g.block_start_step(block + 1);
  std::vector<FixedDecision> pins;
  for (int u = 0; u < static_cast<int>(ctx.fleet->size()); ++u) {
    switch ((*ctx.fleet)[u].cls.tech) {
      case UnitTech::NUC:
        for (int t = w0; t < g.horizon_steps; ++t)
          pins.push_back({u, t, plan.off[u][t]});
        break;
      case UnitTech::COAL:
        for (int t = w0; t < g.study_steps; ++t)
          pins.push_back({u, t, plan.off[u][t]});
        break;
      case UnitTech::CCGT:
        for (int t = w0; t < w1; ++t) pins.push_back({u, t, plan.off[u][t]});
        break;
      case UnitTech::OCGT:
        break;
    }
  }
  return pins;
}

std::vector<FixedDecision> full_pins(const EvalContext& ctx,
                                     const CommitmentPlan& plan) {
  std::vector<FixedDecision> pins;
  for (int u = 0; u < static_cast<int>(ctx.fleet->size()); ++u) {
    if ((*ctx.fleet)[u].cls.tech == UnitTech::OCGT) continue;
    for (int t = 0; t < ctx.grid->horizon_steps; ++t)
      pins.push_back({u, t, plan.off[u][t]});
  }
  return pins;
}

struct SolvedBlock {
  MilpModel model;
  std::vector<double> values;
  double objective = 0;
};

SolvedBlock solve_block(const EvalContext& ctx, const CommitmentPlan& plan,
                        int block, const ScenarioSet& scenario,
                        const InitialConditions* init) {
  ProblemSpec spec;
  spec.kind = ProblemKind::EvalBlock;
  spec.block = block;
  spec.fleet = ctx.fleet;
  spec.grid = ctx.grid;
  spec.base = ctx.base;
  spec.scenarios = &scenario;
  spec.pi_dns = ctx.pi_dns;
  spec.pi_spill = ctx.pi_spill;
  spec.fixed = block_pins(ctx, plan, block);
  if (init) spec.init = *init;
  SolvedBlock out{build_evaluation(spec), {}, 0};
  const SolveResult r = solve_milp(out.model, ctx.solve);
  if (!r.has_solution)
    throw std::runtime_error("evaluation block " + std::to_string(block) +
                             " failed: " + to_string(r.status));
  out.values = r.values;
  out.objective = r.objective;
  return out;
}

// Residual demand the block model used at a step (scenario window, base
// before it).
double residual_for(const EvalContext& ctx, const ScenarioSet& scn, int t) {
  return t >= scn.window_begin ? scn.residual_at(0, t) : ctx.base->residual(t);
}

// KPI slice of a solved deterministic model over [from, to): lost volumes,
// variable and slack costs, plus start-up costs of starts arriving inside
// the slice. Audits the power balance while walking the steps.
void accumulate_slice(const EvalContext& ctx, const MilpModel& model,
                      const std::vector<double>& values, const ScenarioSet& scn,
                      int from, int to, const InitialConditions* init,
                      double* lost_load, double* lost_prod, double* cost) {
  const Fleet& fleet = *ctx.fleet;
  const double dt = ctx.grid->delta_t_hours;
  for (int t = from; t < to; ++t) {
    const int dns_idx = model.var_by_name(coord_name(
        VarCoord{VarRole::Dns, -1, t, 0, State::OU, State::OU}, model.unit_ids));
    const int spill_idx = model.var_by_name(coord_name(
        VarCoord{VarRole::Spill, -1, t, 0, State::OU, State::OU},
        model.unit_ids));
    if (dns_idx < 0 || spill_idx < 0)
      throw std::logic_error("evaluation slice misses slack variables");
    const double dns = values[dns_idx];
    const double spill = values[spill_idx];
    double production = 0;
    for (int u = 0; u < static_cast<int>(fleet.size()); ++u) {
      const double p = power_at(model, values, u, t, 0);
      production += p;
      *cost += fleet[u].variable_cost * 1e-3 * p * dt;
      // Start-up arriving at t.
      bool was_off;
      if (t > model.window_begin) {
        was_off = state_at(model, values, u, t - 1, 0) == State::OFF;
      } else if (init && init->prev_state[u].has_value()) {
        was_off = *init->prev_state[u] == State::OFF;
      } else {
        was_off = !fleet[u].initially_on;
      }
      if (was_off && state_at(model, values, u, t, 0) != State::OFF)
        *cost += fleet[u].startup_cost;
    }
    const double residual = residual_for(ctx, scn, t);
    if (std::abs(residual - dns + spill - production) > 1e-5)
      throw std::logic_error("power balance audit failed at step " +
                             std::to_string(t));
    *lost_load += dns * dt;
    *lost_prod += spill * dt;
    *cost += ctx.pi_dns * dns * dt + ctx.pi_spill * spill * dt;
  }
}

InitialConditions conditions_after(const EvalContext& ctx,
                                   const MilpModel& model,
                                   const std::vector<double>& values,
                                   int last_step) {
  InitialConditions init;
  const int n = static_cast<int>(ctx.fleet->size());
  init.prev_state.resize(n);
  init.prev_power.resize(n);
  for (int u = 0; u < n; ++u) {
    init.prev_state[u] = state_at(model, values, u, last_step, 0);
    init.prev_power[u] = power_at(model, values, u, last_step, 0);
  }
  return init;
}

}  // namespace

CommitmentPlan plan_from_solution(const MilpModel& model,
                                  const std::vector<double>& values,
                                  std::string id) {
  CommitmentPlan plan;
  plan.id = std::move(id);
  const int n_units = static_cast<int>(model.unit_ids.size());
  plan.off.assign(n_units, std::vector<int>(model.horizon_steps, 1));
  for (int u = 0; u < n_units; ++u)
    for (int t = model.window_begin; t < model.horizon_steps; ++t) {
      VarCoord c{VarRole::StateVar, u, t, -1, State::OFF, State::OFF};
      int idx = model.var_by_name(coord_name(c, model.unit_ids));
      if (idx < 0) {
        c.scenario = 0;
        idx = model.var_by_name(coord_name(c, model.unit_ids));
      }
      if (idx < 0) throw std::logic_error("OFF-status variable not found");
      plan.off[u][t] = values[idx] > 0.5 ? 1 : 0;
    }
  return plan;
}

EvalScenario make_eval_scenario(const EvalContext& ctx, int index,
                                double m_eval) {
  EvalScenario out;
  out.index = index;
  out.m_eval = m_eval;
  const TimeGrid& g = *ctx.grid;
  const auto params = ErrorModelParams::calibrated(m_eval, ctx.phi);
  out.per_block.reserve(g.n_blocks());
  for (int j = 1; j <= g.n_blocks(); ++j)
    out.per_block.push_back(generate_scenario_set(
        *ctx.base, g, g.eval_issue_hours(j), g.block_start_step(j),
        g.horizon_steps, 1, params, ctx.seed, StreamKind::Evaluation, index));
  return out;
}

BestForecastChain make_best_forecast_chain(const EvalContext& ctx,
                                           const CommitmentPlan& plan) {
  const TimeGrid& g = *ctx.grid;
  BestForecastChain chain;
  chain.for_block.resize(g.n_blocks() + 1);
  for (int j = 1; j < g.n_blocks(); ++j) {
    const ScenarioSet mean =
        mean_scenario(*ctx.base, g, g.eval_issue_hours(j),
                      g.block_start_step(j), g.horizon_steps);
    const InitialConditions* init = j >= 2 ? &chain.for_block[j] : nullptr;
    const SolvedBlock solved = solve_block(ctx, plan, j, mean, init);
    chain.for_block[j + 1] = conditions_after(
        ctx, solved.model, solved.values, g.block_start_step(j + 1) - 1);
  }
  return chain;
}

KpiRecord rolling_evaluate(const EvalContext& ctx, const CommitmentPlan& plan,
                           const EvalScenario& scenario,
                           const BestForecastChain* chain) {
  const TimeGrid& g = *ctx.grid;
  if (plan.steps() != g.horizon_steps)
    throw std::invalid_argument("plan does not cover the horizon");
  BestForecastChain local;
  if (!chain) {
    local = make_best_forecast_chain(ctx, plan);
    chain = &local;
  }
  KpiRecord kpi;
  kpi.plan_id = plan.id;
  kpi.scenario = scenario.index;
  kpi.m_eval = scenario.m_eval;
  for (int j = 1; j <= g.n_blocks(); ++j) {
    const InitialConditions* init =
        j >= 2 ? &chain->for_block[j] : nullptr;
    const SolvedBlock solved =
        solve_block(ctx, plan, j, scenario.per_block[j - 1], init);
    double ll = 0, lp = 0, cost = 0;
    accumulate_slice(ctx, solved.model, solved.values, scenario.per_block[j - 1],
                     g.block_start_step(j), g.block_start_step(j + 1), init,
                     &ll, &lp, &cost);
    kpi.block_lost_load.push_back(ll);
    kpi.block_lost_prod.push_back(lp);
    kpi.block_cost.push_back(cost);
    kpi.lost_load_mwh += ll;
    kpi.lost_prod_mwh += lp;
    kpi.dispatch_cost += cost;
  }
  return kpi;
}

std::vector<KpiRecord> evaluate_batch(const EvalContext& ctx,
                                      const CommitmentPlan& plan, int count,
                                      double m_eval) {
  if (count < 1) throw std::invalid_argument("evaluation count must be >= 1");
  const BestForecastChain chain = make_best_forecast_chain(ctx, plan);
  std::vector<KpiRecord> out(count);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        const EvalScenario scn = make_eval_scenario(ctx, i, m_eval);
        out[i] = rolling_evaluate(ctx, plan, scn, &chain);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error = e.what();
        failed.store(true);
        return;
      }
    }
  };
  const int n_threads = std::max(1, std::min(ctx.threads, count));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("evaluation batch failed: " + error);
  return out;
}

KpiRecord single_shot_evaluate(const EvalContext& ctx,
                               const CommitmentPlan& plan,
                               const ScenarioSet& scenario) {
  ProblemSpec spec;
  spec.kind = ProblemKind::EvalFull;
  spec.fleet = ctx.fleet;
  spec.grid = ctx.grid;
  spec.base = ctx.base;
  spec.scenarios = &scenario;
  spec.pi_dns = ctx.pi_dns;
  spec.pi_spill = ctx.pi_spill;
  spec.fixed = full_pins(ctx, plan);
  const MilpModel model = build_evaluation(spec);
  const SolveResult r = solve_milp(model, ctx.solve);
  if (!r.has_solution)
    throw std::runtime_error(std::string("single-shot evaluation failed: ") +
                             to_string(r.status));
  KpiRecord kpi;
  kpi.plan_id = plan.id;
  kpi.m_eval = scenario.params.max_dev;
  kpi.window_cost = r.objective;
  double ll = 0, lp = 0, cost = 0;
  accumulate_slice(ctx, model, r.values, scenario, 0, ctx.grid->study_steps,
                   nullptr, &ll, &lp, &cost);
  kpi.lost_load_mwh = ll;
  kpi.lost_prod_mwh = lp;
  kpi.dispatch_cost = cost;
  kpi.block_lost_load = {ll};
  kpi.block_lost_prod = {lp};
  kpi.block_cost = {cost};
  return kpi;
}

InOutOfSample compute_in_out_of_sample(
    const MilpModel& stochastic_model, const SolveResult& stochastic_result,
    const std::vector<double>& test_second_stage_costs) {
  if (test_second_stage_costs.empty())
    throw std::invalid_argument("no test costs supplied");
  InOutOfSample out;
  // First-stage cost: objective mass on scenario-free variables.
  for (int j = 0; j < stochastic_model.n_vars(); ++j)
    if (stochastic_model.vars[j].coord.scenario < 0)
      out.first_stage_cost +=
          stochastic_model.objective[j] * stochastic_result.values[j];
  out.kappa_in = stochastic_result.objective;
  double total = 0;
  for (double c : test_second_stage_costs) total += c;
  out.mean_second_stage = total / test_second_stage_costs.size();
  out.kappa_oos = out.first_stage_cost + out.mean_second_stage;
  return out;
}

}  // namespace suc
