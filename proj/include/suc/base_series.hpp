#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace suc {

// True trajectories of consumption and renewable production over the
// optimization horizon, MW per step. Residual demand is consumption minus
// total renewable generation and may be negative.
struct BaseSeries {
  std::vector<double> consumption;
  std::vector<std::string> renewable_names;           // e.g. {"pv", "wind"}
  std::vector<std::vector<double>> renewables;        // one series per name

  int steps() const { return static_cast<int>(consumption.size()); }
  double residual(int t) const;
  std::vector<double> residual_series() const;
  void validate() const;
};

// Desk-scale synthetic profiles: sinusoidal consumption with morning and
// evening peaks, bell-shaped PV, autocorrelated wind.
struct SyntheticSeriesParams {
  int steps = 24;
  double consumption_base = 5000;   // MW
  double consumption_swing = 1500;  // MW, peak amplitude
  double pv_peak = 2000;            // MW at solar noon
  double wind_mean = 800;           // MW
  double wind_swing = 400;          // MW
  std::uint64_t wind_seed = 7;
};

BaseSeries make_synthetic_series(const SyntheticSeriesParams& p);

// Columnar text files: '#' header lines, then one row per timestep with one
// column per source.
void write_base_series(const std::string& path, const BaseSeries& series);
BaseSeries read_base_series(const std::string& path);

}  // namespace suc
