#include "suc/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "suc/rng.hpp"

namespace suc {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct RawConfig {
  std::map<std::string, std::string> keys;           // "section.key" -> value
  std::map<std::string, std::vector<std::string>> tables;  // section -> rows
};

RawConfig parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read config " + path);
  RawConfig raw;
  std::string line, section;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      raw.keys[section + "." + trim(line.substr(0, eq))] =
          trim(line.substr(eq + 1));
    } else {
      raw.tables[section].push_back(line);
    }
  }
  return raw;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (...) {
    throw std::invalid_argument("config key " + key + ": bad number '" +
                                value + "'");
  }
}

std::optional<double> opt_field(const std::string& word) {
  if (word == "-") return std::nullopt;
  return std::stod(word);
}

}  // namespace

RunConfig load_config(const std::string& path) {
  const RawConfig raw = parse_file(path);
  RunConfig cfg;
  cfg.config_path = path;

  auto num = [&](const char* key, double fallback) {
    const auto it = raw.keys.find(key);
    return it == raw.keys.end() ? fallback : to_double(key, it->second);
  };
  auto str = [&](const char* key, std::string fallback) {
    const auto it = raw.keys.find(key);
    return it == raw.keys.end() ? std::move(fallback) : it->second;
  };

  cfg.grid.delta_t_hours = num("grid.delta_t_hours", 1.0);
  cfg.grid.horizon_steps = static_cast<int>(num("grid.horizon_hours", 24) /
                                            cfg.grid.delta_t_hours);
  cfg.grid.study_steps = static_cast<int>(num("grid.study_hours", 10) /
                                          cfg.grid.delta_t_hours);
  cfg.grid.block_steps = static_cast<int>(num("grid.block_hours", 2) /
                                          cfg.grid.delta_t_hours);
  cfg.grid.nuclear_lead_hours = num("grid.nuclear_lead_hours", 10);
  cfg.grid.coal_lead_hours = num("grid.coal_lead_hours", 6);
  cfg.grid.ccgt_lead_hours = num("grid.ccgt_lead_hours", 3);

  cfg.pi_dns = num("costs.lost_load_cost", 10.0);
  cfg.pi_spill = num("costs.spill_cost", 3.0);

  cfg.train_count = static_cast<int>(num("scenarios.count", 5));
  cfg.train_dev = num("scenarios.max_dev", 0.10);
  cfg.phi = num("scenarios.persistence", 0.9);
  cfg.seed = static_cast<std::uint64_t>(num("scenarios.seed", 1));

  cfg.eval_count = static_cast<int>(num("evaluation.count", 50));
  cfg.eval_dev = num("evaluation.max_dev", 0.25);

  cfg.selection = str("selection.enabled", "false") == "true";
  cfg.select_count = static_cast<int>(num("selection.count", 5));

  cfg.solve.rel_gap_stop = num("solve.rel_gap", 0.0);
  cfg.solve.time_limit_seconds = num("solve.time_limit_seconds", 0);
  cfg.solve.node_limit = static_cast<std::int64_t>(num("solve.node_limit", 0));
  cfg.solve.feas_tol = num("solve.feas_tol", 1e-7);
  cfg.solve.int_tol = num("solve.int_tol", 1e-6);

  cfg.optimizer = str("run.optimizer", "sto");
  cfg.framework = str("run.framework", "single");
  cfg.out_dir = str("run.out_dir", "out");
  cfg.threads = static_cast<int>(num("run.threads", 2));

  // Unit classes: defaults from the technical-constraint table, overridable.
  std::map<UnitTech, UnitClass> classes;
  for (auto tech : {UnitTech::NUC, UnitTech::COAL, UnitTech::CCGT,
                    UnitTech::OCGT})
    classes[tech] = UnitClass::defaults(tech);
  if (const auto it = raw.tables.find("classes"); it != raw.tables.end()) {
    for (const auto& row : it->second) {
      std::istringstream rs(row);
      std::string tech_word, f1, f2, f3, f4, f5, f6, f7;
      rs >> tech_word >> f1 >> f2 >> f3 >> f4 >> f5 >> f6 >> f7;
      if (!rs)
        throw std::invalid_argument("bad [classes] row: " + row);
      UnitClass c;
      c.tech = tech_from_string(tech_word);
      c.dt_on_min = std::stod(f1);
      c.dt_off_min = std::stod(f2);
      c.t_on_min = std::stod(f3);
      c.t_off_min = std::stod(f4);
      c.t_flat = std::stod(f5);
      c.t_on_max = opt_field(f6);
      if (f7 == "-")
        c.n_on_max = std::nullopt;
      else
        c.n_on_max = std::stoi(f7);
      c.validate();
      classes[c.tech] = c;
    }
  }

  const auto units_it = raw.tables.find("units");
  if (units_it == raw.tables.end() || units_it->second.empty())
    throw std::invalid_argument("config has no [units] table");
  for (const auto& row : units_it->second) {
    std::istringstream rs(row);
    UnitSpec u;
    std::string tech_word, initial;
    double dp_min = 1.0;
    rs >> u.id >> tech_word >> u.p_min >> u.p_max >> u.startup_cost >>
        u.variable_cost >> dp_min >> initial;
    if (!rs) throw std::invalid_argument("bad [units] row: " + row);
    u.cls = classes.at(tech_from_string(tech_word));
    u.dp_min = dp_min;
    if (initial == "on")
      u.initially_on = true;
    else if (initial == "off")
      u.initially_on = false;
    else if (initial == "default")
      u.initially_on = u.cls.tech == UnitTech::NUC;
    else
      throw std::invalid_argument("bad initial state '" + initial + "' in: " +
                                  row);
    cfg.fleet.push_back(std::move(u));
  }

  // Base series: a fixture file (relative paths resolve against the config)
  // or synthetic profile parameters.
  const std::string kind = str("series.kind", "file");
  if (kind == "file") {
    std::string file = str("series.file", "");
    if (file.empty())
      throw std::invalid_argument("config misses series.file");
    std::filesystem::path p(file);
    if (p.is_relative())
      p = std::filesystem::path(path).parent_path() / p;
    cfg.base = read_base_series(p.string());
  } else if (kind == "synthetic") {
    SyntheticSeriesParams sp;
    sp.steps = cfg.grid.horizon_steps;
    sp.consumption_base = num("series.consumption_base", 5000);
    sp.consumption_swing = num("series.consumption_swing", 1500);
    sp.pv_peak = num("series.pv_peak", 2000);
    sp.wind_mean = num("series.wind_mean", 800);
    sp.wind_swing = num("series.wind_swing", 400);
    sp.wind_seed = static_cast<std::uint64_t>(num("series.wind_seed", 7));
    cfg.base = make_synthetic_series(sp);
  } else {
    throw std::invalid_argument("series.kind must be file or synthetic");
  }

  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  grid.validate();
  validate_fleet(fleet);
  base.validate();
  if (base.steps() < grid.horizon_steps)
    throw std::invalid_argument("base series shorter than the horizon");
  if (train_count < 1) throw std::invalid_argument("scenario count must be >= 1");
  if (eval_count < 1) throw std::invalid_argument("evaluation count must be >= 1");
  if (train_dev < 0 || eval_dev < 0)
    throw std::invalid_argument("deviations must be >= 0");
  if (!(0 <= phi && phi < 1))
    throw std::invalid_argument("persistence must satisfy 0 <= phi < 1");
  if (optimizer != "det" && optimizer != "sto" && optimizer != "sto_relaxed")
    throw std::invalid_argument("optimizer must be det|sto|sto_relaxed");
  if (framework != "single" && framework != "multi")
    throw std::invalid_argument("framework must be single|multi");
  if (selection && select_count < 1)
    throw std::invalid_argument("selection count must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  char buf[64];
  auto put = [&](const char* k, double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << k << "=" << buf << "\n";
  };
  put("delta_t", grid.delta_t_hours);
  os << "horizon=" << grid.horizon_steps << "\nstudy=" << grid.study_steps
     << "\nblock=" << grid.block_steps << "\n";
  put("nuclear_lead", grid.nuclear_lead_hours);
  put("coal_lead", grid.coal_lead_hours);
  put("ccgt_lead", grid.ccgt_lead_hours);
  put("pi_dns", pi_dns);
  put("pi_spill", pi_spill);
  os << "M=" << train_count << "\n";
  put("m", train_dev);
  put("phi", phi);
  os << "seed=" << seed << "\nK=" << eval_count << "\n";
  put("m_eval", eval_dev);
  os << "selection=" << selection << "\nM_sel=" << select_count
     << "\noptimizer=" << optimizer << "\nframework=" << framework << "\n";
  put("rel_gap", solve.rel_gap_stop);
  os << "node_limit=" << solve.node_limit << "\n";
  for (const auto& u : fleet) {
    os << "unit " << u.id << " " << to_string(u.cls.tech) << " ";
    std::snprintf(buf, sizeof buf, "%g %g %g %g %g %d", u.p_min, u.p_max,
                  u.startup_cost, u.variable_cost, u.dp_min, u.initially_on);
    os << buf << "\n";
  }
  for (int t = 0; t < base.steps(); ++t) {
    std::snprintf(buf, sizeof buf, "%.6f", base.residual(t));
    os << "residual " << t << " " << buf << "\n";
  }
  return os.str();
}

std::uint64_t RunConfig::config_hash() const {
  const std::string text = canonical();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value) {
  auto bad = [&]() {
    throw std::invalid_argument("unknown override key: " + key);
  };
  if (key == "scenarios.count")
    config.train_count = std::stoi(value);
  else if (key == "scenarios.max_dev")
    config.train_dev = std::stod(value);
  else if (key == "scenarios.seed")
    config.seed = std::stoull(value);
  else if (key == "scenarios.persistence")
    config.phi = std::stod(value);
  else if (key == "evaluation.count")
    config.eval_count = std::stoi(value);
  else if (key == "evaluation.max_dev")
    config.eval_dev = std::stod(value);
  else if (key == "selection.enabled")
    config.selection = value == "true";
  else if (key == "selection.count")
    config.select_count = std::stoi(value);
  else if (key == "run.optimizer")
    config.optimizer = value;
  else if (key == "run.framework")
    config.framework = value;
  else if (key == "run.out_dir")
    config.out_dir = value;
  else if (key == "run.threads")
    config.threads = std::stoi(value);
  else if (key == "solve.rel_gap")
    config.solve.rel_gap_stop = std::stod(value);
  else if (key == "solve.time_limit_seconds")
    config.solve.time_limit_seconds = std::stod(value);
  else if (key == "solve.node_limit")
    config.solve.node_limit = std::stoll(value);
  else
    bad();
  config.validate();
}

}  // namespace suc
