#include "suc/orchestrator.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace suc {

namespace {

PhaseReport report_of(const std::string& name, const SolveResult& r) {
  PhaseReport rep;
  rep.name = name;
  rep.status = r.status;
  rep.objective = r.objective;
  rep.bound = r.bound;
  rep.gap = r.gap;
  rep.nodes = r.nodes;
  rep.wall_seconds = r.wall_seconds;
  return rep;
}

ScenarioSet training_set(const RunConfig& config, double issue_hours,
                         int window_begin) {
  return generate_scenario_set(
      config.base, config.grid, issue_hours, window_begin,
      config.grid.horizon_steps, config.train_count,
      ErrorModelParams::calibrated(config.train_dev, config.phi), config.seed,
      StreamKind::Training);
}

// Fixes covering a region of the plan, one per (unit, step).
void append_pins(std::vector<FixedDecision>& pins, const CommitmentPlan& plan,
                 int unit, int from, int to) {
  for (int t = from; t < to; ++t)
    pins.push_back({unit, t, plan.off[unit][t]});
}

CommitOutcome commit_single(const RunConfig& config,
                            const ScenarioSet* training_override,
                            std::string plan_id) {
  CommitOutcome out;
  ProblemSpec spec;
  spec.kind = ProblemKind::SinglePhase;
  spec.fleet = &config.fleet;
  spec.grid = &config.grid;
  spec.base = &config.base;
  spec.pi_dns = config.pi_dns;
  spec.pi_spill = config.pi_spill;

  ScenarioSet scenarios;
  if (config.optimizer == "det") {
    scenarios = mean_scenario(config.base, config.grid,
                              config.grid.nuclear_lttd_hours(), 0,
                              config.grid.horizon_steps);
  } else if (training_override) {
    scenarios = *training_override;
  } else {
    scenarios = training_set(config, config.grid.nuclear_lttd_hours(), 0);
  }
  spec.scenarios = &scenarios;

  MilpModel model = build_single_phase(spec);
  if (config.optimizer == "sto_relaxed") model = relax_second_stage(model);
  const SolveResult r = solve_milp(model, config.solve);
  out.phases.push_back(report_of(config.optimizer, r));
  if (!r.has_solution) return out;
  out.plan = plan_from_solution(model, r.values, std::move(plan_id));
  out.kappa_in = r.objective;
  out.solved = true;
  return out;
}

CommitOutcome commit_multi(const RunConfig& config,
                           const ScenarioSet* training_override,
                           std::string plan_id) {
  CommitOutcome out;
  const TimeGrid& g = config.grid;
  const Fleet& fleet = config.fleet;
  const int T = g.horizon_steps;

  auto scenario_for = [&](double issue_hours, int window_begin) {
    if (config.optimizer == "det")
      return mean_scenario(config.base, g, issue_hours, window_begin, T);
    if (training_override && window_begin == 0) return *training_override;
    return training_set(config, issue_hours, window_begin);
  };

  CommitmentPlan plan;
  plan.id = plan_id;
  plan.off.assign(fleet.size(), std::vector<int>(T, 1));

  struct Stage {
    ProblemKind kind;
    int block;
    double issue;
    int window;
    const char* name;
  };
  std::vector<Stage> stages = {
      {ProblemKind::PhaseNuclear, 0, g.nuclear_lttd_hours(), 0, "phase_nuclear"},
      {ProblemKind::PhaseCoal, 0, g.coal_lttd_hours(), 0, "phase_coal"},
      {ProblemKind::PhaseCcgtFirst, 0, g.ccgt_lttd_hours(1), 0, "phase_ccgt_1"},
  };
  for (int i = 2; i <= g.n_blocks(); ++i)
    stages.push_back({ProblemKind::PhaseCcgtRolling, i, g.ccgt_lttd_hours(i),
                      g.block_start_step(i), "phase_ccgt_roll"});

  std::vector<FixedDecision> pins;
  bool have_nuclear = false, have_coal = false;
  int ccgt_committed_until = 0;
  for (const Stage& stage : stages) {
    ProblemSpec spec;
    spec.kind = stage.kind;
    spec.block = stage.block;
    spec.fleet = &fleet;
    spec.grid = &g;
    spec.base = &config.base;
    spec.pi_dns = config.pi_dns;
    spec.pi_spill = config.pi_spill;
    spec.fixed = pins;
    const ScenarioSet scenarios = scenario_for(stage.issue, stage.window);
    spec.scenarios = &scenarios;

    MilpModel model = build_phase(spec);
    if (config.optimizer == "sto_relaxed") model = relax_second_stage(model);
    const SolveResult r = solve_milp(model, config.solve);
    std::string name = stage.name;
    if (stage.kind == ProblemKind::PhaseCcgtRolling)
      name += "_" + std::to_string(stage.block);
    out.phases.push_back(report_of(name, r));
    if (!r.has_solution) return out;
    out.kappa_in = r.objective;

    const CommitmentPlan solved = plan_from_solution(model, r.values, plan.id);
    // Adopt this stage's first-stage decisions and pin them for later
    // stages; second-stage values fill the plan provisionally so the final
    // matrix is complete.
    for (int u = 0; u < static_cast<int>(fleet.size()); ++u) {
      const UnitTech tech = fleet[u].cls.tech;
      switch (stage.kind) {
        case ProblemKind::PhaseNuclear:
          plan.off[u] = solved.off[u];
          if (tech == UnitTech::NUC) {
            append_pins(pins, plan, u, 0, T);
            have_nuclear = true;
          }
          break;
        case ProblemKind::PhaseCoal:
          plan.off[u] = solved.off[u];
          if (tech == UnitTech::COAL) {
            append_pins(pins, plan, u, 0, g.study_steps);
            have_coal = true;
          }
          break;
        case ProblemKind::PhaseCcgtFirst:
          plan.off[u] = solved.off[u];
          if (tech == UnitTech::CCGT) {
            append_pins(pins, plan, u, 0, g.block_steps);
            ccgt_committed_until = g.block_steps;
          }
          break;
        case ProblemKind::PhaseCcgtRolling: {
          // Later stages only refresh what they decide or re-dispatch.
          for (int t = stage.window; t < T; ++t) plan.off[u][t] = solved.off[u][t];
          if (tech == UnitTech::CCGT) {
            const int upto = g.block_start_step(stage.block + 1);
            append_pins(pins, plan, u, stage.window, upto);
            ccgt_committed_until = upto;
          }
          break;
        }
        default:
          break;
      }
    }
  }
  (void)have_nuclear;
  (void)have_coal;
  (void)ccgt_committed_until;
  out.plan = std::move(plan);
  out.solved = true;
  return out;
}

std::string default_plan_id(const RunConfig& config) {
  std::ostringstream os;
  os << config.optimizer;
  if (config.optimizer != "det")
    os << "_M" << config.train_count << "_m"
       << static_cast<int>(config.train_dev * 100 + 0.5);
  if (config.framework == "multi") os << "_multi";
  return os.str();
}

}  // namespace

EvalContext eval_context(const RunConfig& config) {
  EvalContext ctx;
  ctx.fleet = &config.fleet;
  ctx.grid = &config.grid;
  ctx.base = &config.base;
  ctx.pi_dns = config.pi_dns;
  ctx.pi_spill = config.pi_spill;
  ctx.phi = config.phi;
  ctx.seed = config.seed;
  ctx.threads = config.threads;
  return ctx;
}

CommitOutcome run_commit(const RunConfig& config,
                         const ScenarioSet* training_override,
                         const std::string& plan_id) {
  const std::string id = plan_id.empty() ? default_plan_id(config) : plan_id;
  if (config.framework == "multi")
    return commit_multi(config, training_override, id);
  return commit_single(config, training_override, id);
}

std::vector<KpiRecord> run_evaluation(const RunConfig& config,
                                      const CommitmentPlan& plan,
                                      double m_eval) {
  EvalContext ctx = eval_context(config);
  return evaluate_batch(ctx, plan, config.eval_count, m_eval);
}

GridOutcome run_experiment_grid(const RunConfig& config,
                                const std::vector<int>& train_counts,
                                const std::vector<double>& train_devs,
                                const std::vector<double>& eval_devs,
                                const std::vector<std::string>& optimizers) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  GridOutcome out;
  std::vector<KpiRecord> tidy;

  // Deterministic reference plan.
  RunConfig det_cfg = config;
  det_cfg.optimizer = "det";
  const CommitOutcome det = run_commit(det_cfg);
  if (!det.solved)
    throw std::runtime_error("deterministic reference plan failed to solve");
  std::map<double, std::vector<KpiRecord>> det_kpis;
  for (double m_eval : eval_devs) {
    det_kpis[m_eval] = run_evaluation(config, det.plan, m_eval);
    for (const auto& k : det_kpis[m_eval]) tidy.push_back(k);
    GridCellResult cell;
    cell.optimizer = "det";
    cell.m_eval = m_eval;
    cell.solved = true;
    for (const auto& k : det_kpis[m_eval]) {
      cell.mean_lost_load += k.lost_load_mwh / det_kpis[m_eval].size();
      cell.mean_lost_prod += k.lost_prod_mwh / det_kpis[m_eval].size();
      cell.mean_cost += k.dispatch_cost / det_kpis[m_eval].size();
    }
    out.cells.push_back(cell);
  }
  const std::string det_plan_file =
      (fs::path(config.out_dir) / "plan_det.csv").string();
  write_plan_csv(det_plan_file, det.plan, config.fleet, config.grid);
  out.files.push_back(det_plan_file);

  for (const std::string& opt : optimizers) {
    if (opt == "det") continue;
    for (int count : train_counts) {
      for (double dev : train_devs) {
        RunConfig cell_cfg = config;
        cell_cfg.optimizer = opt;
        cell_cfg.train_count = count;
        cell_cfg.train_dev = dev;
        CommitOutcome commit;
        bool solved = false;
        std::string failure;
        try {
          commit = run_commit(cell_cfg);
          solved = commit.solved;
        } catch (const std::exception& e) {
          failure = e.what();
        }
        if (solved) {
          const std::string plan_file =
              (fs::path(config.out_dir) / ("plan_" + commit.plan.id + ".csv"))
                  .string();
          write_plan_csv(plan_file, commit.plan, config.fleet, config.grid);
          out.files.push_back(plan_file);
        }
        for (double m_eval : eval_devs) {
          GridCellResult cell;
          cell.optimizer = opt;
          cell.train_count = count;
          cell.train_dev = dev;
          cell.m_eval = m_eval;
          cell.solved = solved;
          if (solved) {
            const auto kpis = run_evaluation(cell_cfg, commit.plan, m_eval);
            for (const auto& k : kpis) tidy.push_back(k);
            for (const auto& k : kpis) {
              cell.mean_lost_load += k.lost_load_mwh / kpis.size();
              cell.mean_lost_prod += k.lost_prod_mwh / kpis.size();
              cell.mean_cost += k.dispatch_cost / kpis.size();
            }
          }
          out.cells.push_back(cell);
        }
      }
    }
  }

  const std::string kpi_file = (fs::path(config.out_dir) / "kpis.csv").string();
  write_kpi_csv(kpi_file, tidy);
  out.files.push_back(kpi_file);

  // Heatmaps: rows (M, m), columns (m_eval x optimizer), absolute values
  // and percentages of the deterministic plan's mean.
  auto heatmap = [&](const std::string& name, auto value_of, bool normalized) {
    const std::string path =
        (fs::path(config.out_dir) / ("heatmap_" + name + ".csv")).string();
    std::ofstream os(path);
    os << "M,m";
    for (double m_eval : eval_devs)
      for (const auto& opt : optimizers)
        if (opt != "det")
          os << "," << opt << "@" << static_cast<int>(m_eval * 100 + 0.5);
    os << "\n";
    char buf[64];
    for (int count : train_counts)
      for (double dev : train_devs) {
        os << count << "," << static_cast<int>(dev * 100 + 0.5);
        for (double m_eval : eval_devs)
          for (const auto& opt : optimizers) {
            if (opt == "det") continue;
            const GridCellResult* found = nullptr;
            for (const auto& cell : out.cells)
              if (cell.optimizer == opt && cell.train_count == count &&
                  cell.train_dev == dev && cell.m_eval == m_eval)
                found = &cell;
            if (!found || !found->solved) {
              os << ",";
              continue;
            }
            double v = value_of(*found);
            if (normalized) {
              const GridCellResult* ref = nullptr;
              for (const auto& cell : out.cells)
                if (cell.optimizer == "det" && cell.m_eval == m_eval)
                  ref = &cell;
              const double denom = ref ? value_of(*ref) : 0;
              v = denom > 1e-12 ? 100.0 * v / denom : 0.0;
            }
            std::snprintf(buf, sizeof buf, ",%.6f", v);
            os << buf;
          }
        os << "\n";
      }
    out.files.push_back(path);
  };
  heatmap("lost_load", [](const GridCellResult& c) { return c.mean_lost_load; },
          false);
  heatmap("lost_prod", [](const GridCellResult& c) { return c.mean_lost_prod; },
          false);
  heatmap("cost", [](const GridCellResult& c) { return c.mean_cost; }, false);
  heatmap("lost_load_pct",
          [](const GridCellResult& c) { return c.mean_lost_load; }, true);
  heatmap("lost_prod_pct",
          [](const GridCellResult& c) { return c.mean_lost_prod; }, true);
  heatmap("cost_pct", [](const GridCellResult& c) { return c.mean_cost; }, true);

  const std::string manifest =
      (fs::path(config.out_dir) / "manifest.json").string();
  write_manifest(manifest, config, "grid", out.files);
  out.files.push_back(manifest);
  return out;
}

void write_plan_csv(const std::string& path, const CommitmentPlan& plan,
                    const Fleet& fleet, const TimeGrid& grid) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "hour";
  for (const auto& u : fleet) os << "," << u.id;
  os << "\n";
  for (int t = 0; t < grid.horizon_steps; ++t) {
    os << t;
    for (std::size_t u = 0; u < fleet.size(); ++u)
      os << "," << plan.off[u][t];
    os << "\n";
  }
}

void write_kpi_csv(const std::string& path,
                   const std::vector<KpiRecord>& kpis) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "plan_id,scenario,m_eval,lost_load_mwh,lost_prod_mwh,dispatch_cost_k\n";
  char buf[160];
  for (const auto& k : kpis) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.4f,%.6f,%.6f,%.6f",
                  k.plan_id.c_str(), k.scenario, k.m_eval, k.lost_load_mwh,
                  k.lost_prod_mwh, k.dispatch_cost);
    os << buf << "\n";
  }
}

void write_manifest(const std::string& path, const RunConfig& config,
                    const std::string& command,
                    const std::vector<std::string>& files) {
  nlohmann::json j;
  j["command"] = command;
  j["config_path"] = config.config_path;
  j["config_hash"] = config.config_hash();
  j["seed"] = config.seed;
  j["optimizer"] = config.optimizer;
  j["framework"] = config.framework;
  j["train_count"] = config.train_count;
  j["train_dev"] = config.train_dev;
  j["eval_count"] = config.eval_count;
  j["eval_dev"] = config.eval_dev;
  j["selection"] = config.selection;
  j["select_count"] = config.select_count;
  j["threads"] = config.threads;
  j["rel_gap"] = config.solve.rel_gap_stop;
  j["files"] = files;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << j.dump(2) << "\n";
}

}  // namespace suc
