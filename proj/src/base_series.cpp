#include "suc/base_series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "suc/rng.hpp"

namespace suc {

double BaseSeries::residual(int t) const {
  double r = consumption[t];
  for (const auto& series : renewables) r -= series[t];
  return r;
}

std::vector<double> BaseSeries::residual_series() const {
  std::vector<double> out(consumption.size());
  for (int t = 0; t < steps(); ++t) out[t] = residual(t);
  return out;
}

void BaseSeries::validate() const {
  if (renewable_names.size() != renewables.size())
    throw std::invalid_argument("renewable names/series size mismatch");
  for (const auto& series : renewables)
    if (series.size() != consumption.size())
      throw std::invalid_argument("renewable series length mismatch");
  for (double v : consumption)
    if (v < 0) throw std::invalid_argument("consumption must be >= 0");
  for (const auto& series : renewables)
    for (double v : series)
      if (v < 0) throw std::invalid_argument("renewables must be >= 0");
}

BaseSeries make_synthetic_series(const SyntheticSeriesParams& p) {
  BaseSeries s;
  s.consumption.resize(p.steps);
  s.renewable_names = {"pv", "wind"};
  s.renewables.assign(2, std::vector<double>(p.steps, 0.0));

  const double pi = 3.14159265358979323846;
  Rng rng(p.wind_seed);
  double wind = p.wind_mean;
  for (int t = 0; t < p.steps; ++t) {
    // Hour of day with the horizon starting at 6 a.m.
    const double hour = std::fmod(6.0 + t, 24.0);
    // Two-peak consumption: morning (9 a.m.) and evening (8 p.m.) bumps over
    // a low overnight base.
    const double morning = std::exp(-0.5 * std::pow((hour - 9.0) / 2.5, 2));
    const double evening = std::exp(-0.5 * std::pow((hour - 20.0) / 2.5, 2));
    s.consumption[t] =
        p.consumption_base + p.consumption_swing * (0.8 * morning + evening);

    // PV: daylight bell centered at 1 p.m., zero at night.
    const double pv = p.pv_peak * std::exp(-0.5 * std::pow((hour - 13.0) / 2.8, 2));
    s.renewables[0][t] = (hour >= 6.5 && hour <= 20.5) ? pv : 0.0;

    // Wind: mean-reverting walk clamped at zero.
    wind += 0.35 * (p.wind_mean - wind) + 0.3 * p.wind_swing * rng.next_normal();
    s.renewables[1][t] = std::max(0.0, wind);
  }
  s.validate();
  return s;
}

void write_base_series(const std::string& path, const BaseSeries& series) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "# base series, MW per step\n";
  os << "# columns: step consumption";
  for (const auto& n : series.renewable_names) os << " " << n;
  os << "\n";
  char buf[64];
  for (int t = 0; t < series.steps(); ++t) {
    os << t;
    std::snprintf(buf, sizeof buf, " %.6f", series.consumption[t]);
    os << buf;
    for (const auto& r : series.renewables) {
      std::snprintf(buf, sizeof buf, " %.6f", r[t]);
      os << buf;
    }
    os << "\n";
  }
}

BaseSeries read_base_series(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  BaseSeries s;
  std::string line;
  bool have_columns = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string word;
      hs >> word;
      if (word == "columns:") {
        std::string col;
        hs >> col;  // "step"
        hs >> col;  // "consumption"
        while (hs >> col) {
          s.renewable_names.push_back(col);
          s.renewables.emplace_back();
        }
        have_columns = true;
      }
      continue;
    }
    if (!have_columns)
      throw std::runtime_error(path + ": missing '# columns:' header");
    std::istringstream ls(line);
    int step = 0;
    double v = 0;
    ls >> step >> v;
    if (!ls) throw std::runtime_error(path + ": bad row: " + line);
    s.consumption.push_back(v);
    for (auto& r : s.renewables) {
      ls >> v;
      if (!ls) throw std::runtime_error(path + ": short row: " + line);
      r.push_back(v);
    }
  }
  s.validate();
  return s;
}

}  // namespace suc
