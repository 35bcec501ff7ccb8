#include "suc/selector.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace suc {

WorstSets select_worst(const std::vector<KpiRecord>& kpis, int m_count) {
  if (m_count < 0 || m_count > static_cast<int>(kpis.size()))
    throw std::invalid_argument("selection count exceeds the KPI table");
  WorstSets out;
  auto ranking = [&](auto key) {
    std::vector<int> order(kpis.size());
    for (std::size_t i = 0; i < kpis.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double ka = key(kpis[a]), kb = key(kpis[b]);
      if (ka != kb) return ka > kb;
      return kpis[a].scenario < kpis[b].scenario;
    });
    std::vector<int> ids(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      ids[i] = kpis[order[i]].scenario;
    return ids;
  };
  out.by_lost_load = ranking([](const KpiRecord& k) { return k.lost_load_mwh; });
  out.by_lost_prod = ranking([](const KpiRecord& k) { return k.lost_prod_mwh; });
  std::set<int> chosen;
  for (int i = 0; i < m_count; ++i) {
    chosen.insert(out.by_lost_load[i]);
    chosen.insert(out.by_lost_prod[i]);
  }
  out.selected.assign(chosen.begin(), chosen.end());
  return out;
}

ScenarioSet merge_scenario_sets(const std::vector<ScenarioSet>& singles) {
  if (singles.empty()) throw std::invalid_argument("nothing to merge");
  ScenarioSet out = singles.front();
  for (std::size_t i = 1; i < singles.size(); ++i) {
    const ScenarioSet& s = singles[i];
    if (s.window_begin != out.window_begin || s.window_end != out.window_end ||
        s.issue_hours != out.issue_hours)
      throw std::invalid_argument("scenario sets disagree on issue/window");
    out.sources.push_back(s.sources.at(0));
    out.residual.push_back(s.residual.at(0));
  }
  const int m = out.count();
  out.probability.assign(m, 1.0 / m);
  return out;
}

SelectionResult pipeline_select(const EvalContext& ctx, int count, int m_count,
                                double m_eval) {
  if (count < 1) throw std::invalid_argument("pre-evaluation needs scenarios");
  const TimeGrid& g = *ctx.grid;
  SelectionResult out;

  // Deterministic plan from the mean scenario.
  ProblemSpec det;
  det.kind = ProblemKind::SinglePhase;
  det.fleet = ctx.fleet;
  det.grid = ctx.grid;
  det.base = ctx.base;
  const ScenarioSet mean = mean_scenario(*ctx.base, g, g.nuclear_lttd_hours(),
                                         0, g.horizon_steps);
  det.scenarios = &mean;
  det.pi_dns = ctx.pi_dns;
  det.pi_spill = ctx.pi_spill;
  const MilpModel det_model = build_single_phase(det);
  const SolveResult det_result = solve_milp(det_model, ctx.solve);
  if (!det_result.has_solution)
    throw std::runtime_error("deterministic pre-plan failed to solve");
  out.det_plan = plan_from_solution(det_model, det_result.values, "det");

  // Pre-evaluate it over count scenarios issued at the nuclear LTTD.
  const auto params = ErrorModelParams::calibrated(m_eval, ctx.phi);
  std::vector<ScenarioSet> singles(count);
  for (int i = 0; i < count; ++i)
    singles[i] = generate_scenario_set(*ctx.base, g, g.nuclear_lttd_hours(), 0,
                                       g.horizon_steps, 1, params, ctx.seed,
                                       StreamKind::Evaluation, i);
  out.kpis.resize(count);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out.kpis[i] = single_shot_evaluate(ctx, out.det_plan, singles[i]);
        out.kpis[i].scenario = i;
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
  if (failed.load())
    throw std::runtime_error("selection pre-evaluation failed: " + error);

  out.sets = select_worst(out.kpis, m_count);

  std::vector<ScenarioSet> chosen;
  for (int idx : out.sets.selected) chosen.push_back(singles[idx]);
  out.training = merge_scenario_sets(chosen);
  return out;
}

}  // namespace suc
