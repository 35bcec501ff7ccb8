#pragma once

#include <optional>
#include <string>
#include <vector>

#include "suc/states.hpp"

namespace suc {

enum class UnitTech { NUC = 0, COAL = 1, CCGT = 2, OCGT = 3 };

const char* to_string(UnitTech t);
UnitTech tech_from_string(const std::string& s);

// Converts a duration in minutes to whole timesteps, rounding up so a
// constraint is never weakened by the conversion (90 min on an hourly grid
// holds for 2 steps).
int duration_steps(double minutes, double delta_t_hours);

// Technical constraints of a unit category, in minutes (hourly grids convert
// with duration_steps). t_on_max / n_on_max only apply to OCGT-like units.
struct UnitClass {
  UnitTech tech = UnitTech::OCGT;
  double dt_on_min = 0;   // minimal delay to start
  double dt_off_min = 0;  // minimal delay to shut down
  double t_on_min = 0;    // minimal time ON once started
  double t_off_min = 0;   // minimal time OFF once shut down
  double t_flat = 0;      // minimal flat time after a power variation
  std::optional<double> t_on_max;  // maximal ON duration
  std::optional<int> n_on_max;     // maximal start-ups per day

  static UnitClass defaults(UnitTech tech);
  void validate() const;
};

struct UnitSpec {
  std::string id;
  UnitClass cls;
  double p_min = 0;         // MW
  double p_max = 0;         // MW
  double startup_cost = 0;  // k-currency per start
  double variable_cost = 0; // currency per MWh
  double dp_min = 1.0;      // MW, minimal power variation in OU/OD
  bool initially_on = false;

  void validate() const;
};

using Fleet = std::vector<UnitSpec>;

void validate_fleet(const Fleet& fleet);

// First-stage / second-stage unit split plus bookkeeping sets.
struct StageSets {
  std::vector<int> first_stage;   // unit indices, commitment shared across scenarios
  std::vector<int> second_stage;  // unit indices, commitment per scenario
  std::vector<int> nuclear;       // indices of nuclear units
  std::vector<std::string> renewables;  // renewable source names
  int fs_window_begin = 0;  // steps; interval over which first-stage commitments apply
  int fs_window_end = 0;

  void validate(int n_units) const;
};

}  // namespace suc
