#include "suc/scenario_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "suc/rng.hpp"

namespace suc {

void ScenarioSet::validate() const {
  const int m = count();
  if (m == 0) throw std::invalid_argument("scenario set is empty");
  if (window_end <= window_begin)
    throw std::invalid_argument("scenario window is empty");
  if (static_cast<int>(probability.size()) != m ||
      static_cast<int>(sources.size()) != m)
    throw std::invalid_argument("scenario set arrays disagree on count");
  double total = 0;
  for (double p : probability) total += p;
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("scenario probabilities must sum to 1");
  for (const auto& r : residual)
    if (static_cast<int>(r.size()) != window_steps())
      throw std::invalid_argument("scenario window length mismatch");
}

ScenarioSet generate_scenario_set(const BaseSeries& base, const TimeGrid& grid,
                                  double issue_hours, int window_begin,
                                  int window_end, int count,
                                  const ErrorModelParams& params,
                                  std::uint64_t seed, StreamKind kind,
                                  int first_index) {
  params.validate();
  if (count < 1) throw std::invalid_argument("scenario count must be >= 1");
  if (window_begin < 0 || window_end > base.steps() ||
      window_end > grid.horizon_steps)
    throw std::invalid_argument("scenario window outside the horizon");
  if (grid.lead_steps(issue_hours, window_begin) < 1)
    throw std::invalid_argument("scenario window precedes its issue time");

  const int n_sources = 1 + static_cast<int>(base.renewables.size());
  const int max_lead = grid.lead_steps(issue_hours, window_end - 1);
  const std::uint64_t issue_key =
      static_cast<std::uint64_t>(std::llround(issue_hours * 60.0)) + (1ull << 32);

  ScenarioSet set;
  set.issue_hours = issue_hours;
  set.window_begin = window_begin;
  set.window_end = window_end;
  set.seed = seed;
  set.params = params;
  set.source_names.push_back("consumption");
  for (const auto& n : base.renewable_names) set.source_names.push_back(n);

  for (int s = 0; s < count; ++s) {
    const int index = first_index + s;
    std::vector<std::vector<double>> per_source(n_sources);
    for (int j = 0; j < n_sources; ++j) {
      const std::uint64_t sub =
          mix_seed(seed, static_cast<std::uint64_t>(kind), issue_key,
                   static_cast<std::uint64_t>(index),
                   static_cast<std::uint64_t>(j));
      const auto eps = generate_errors(params, max_lead, sub);
      const std::vector<double>& truth =
          (j == 0) ? base.consumption : base.renewables[j - 1];
      auto& values = per_source[j];
      values.resize(window_end - window_begin);
      for (int t = window_begin; t < window_end; ++t) {
        const int k = grid.lead_steps(issue_hours, t);
        const double v = truth[t] * (1.0 + eps[k - 1]);
        values[t - window_begin] = std::max(0.0, v);
      }
    }
    std::vector<double> residual(per_source[0]);
    for (int j = 1; j < n_sources; ++j)
      for (std::size_t i = 0; i < residual.size(); ++i)
        residual[i] -= per_source[j][i];
    set.sources.push_back(std::move(per_source));
    set.residual.push_back(std::move(residual));
    set.probability.push_back(1.0 / count);
  }
  set.validate();
  return set;
}

ScenarioSet mean_scenario(const BaseSeries& base, const TimeGrid& grid,
                          double issue_hours, int window_begin,
                          int window_end) {
  return generate_scenario_set(base, grid, issue_hours, window_begin,
                               window_end, 1,
                               ErrorModelParams::calibrated(0.0, 0.0), 0,
                               StreamKind::Training);
}

ScenarioSet slice_scenario(const ScenarioSet& set, int s) {
  if (s < 0 || s >= set.count())
    throw std::invalid_argument("scenario index out of range");
  ScenarioSet out = set;
  out.sources = {set.sources[s]};
  out.residual = {set.residual[s]};
  out.probability = {1.0};
  return out;
}

void write_scenario_set(const std::string& path, const ScenarioSet& set) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  char buf[64];
  os << "# scenario set\n";
  std::snprintf(buf, sizeof buf, "%.6f", set.issue_hours);
  os << "# issue_hours " << buf << "\n";
  os << "# window " << set.window_begin << " " << set.window_end << "\n";
  os << "# count " << set.count() << "\n";
  os << "# seed " << set.seed << "\n";
  std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g", set.params.phi,
                set.params.max_dev, set.params.sigma);
  os << "# params phi max_dev sigma: " << buf << "\n";
  auto write_block = [&](const std::string& name, auto value_at) {
    os << "# source " << name << "\n";
    for (int t = 0; t < set.window_steps(); ++t) {
      for (int s = 0; s < set.count(); ++s) {
        std::snprintf(buf, sizeof buf, "%.10g", value_at(s, t));
        os << (s ? " " : "") << buf;
      }
      os << "\n";
    }
  };
  for (std::size_t j = 0; j < set.source_names.size(); ++j)
    write_block(set.source_names[j],
                [&](int s, int t) { return set.sources[s][j][t]; });
  write_block("residual", [&](int s, int t) { return set.residual[s][t]; });
}

ScenarioSet read_scenario_set(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  ScenarioSet set;
  std::string line;
  int count = 0;
  std::vector<std::string> block_names;
  std::vector<std::vector<std::vector<double>>> blocks;  // block -> col -> t
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string word;
      hs >> word;
      if (word == "issue_hours")
        hs >> set.issue_hours;
      else if (word == "window")
        hs >> set.window_begin >> set.window_end;
      else if (word == "count")
        hs >> count;
      else if (word == "seed")
        hs >> set.seed;
      else if (word == "params")
        ;  // informational
      else if (word == "source") {
        std::string name;
        hs >> name;
        block_names.push_back(name);
        blocks.emplace_back(count);
      }
      continue;
    }
    if (blocks.empty()) throw std::runtime_error(path + ": data before header");
    std::istringstream ls(line);
    auto& block = blocks.back();
    for (int s = 0; s < count; ++s) {
      double v;
      ls >> v;
      if (!ls) throw std::runtime_error(path + ": short row: " + line);
      block[s].push_back(v);
    }
  }
  if (block_names.empty() || block_names.back() != "residual")
    throw std::runtime_error(path + ": missing residual block");
  set.source_names.assign(block_names.begin(), block_names.end() - 1);
  set.sources.resize(count);
  for (int s = 0; s < count; ++s) {
    set.sources[s].resize(set.source_names.size());
    for (std::size_t j = 0; j < set.source_names.size(); ++j)
      set.sources[s][j] = blocks[j][s];
    set.residual.push_back(blocks.back()[s]);
    set.probability.push_back(1.0 / count);
  }
  set.validate();
  return set;
}

}  // namespace suc
