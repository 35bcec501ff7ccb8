#include "suc/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace suc {

std::vector<double> TimeGrid::lttd_times_hours() const {
  std::vector<double> times;
  times.push_back(nuclear_lttd_hours());
  times.push_back(coal_lttd_hours());
  for (int i = 1; i <= n_blocks(); ++i) times.push_back(ccgt_lttd_hours(i));
  return times;
}

int TimeGrid::lead_steps(double issue_hours, int t) const {
  const double lead = (step_hours(t) - issue_hours) / delta_t_hours;
  return static_cast<int>(std::ceil(lead - 1e-9));
}

void TimeGrid::validate() const {
  if (delta_t_hours <= 0) throw std::invalid_argument("delta_t must be > 0");
  if (block_steps <= 0) throw std::invalid_argument("block length must be > 0");
  if (!(0 < study_steps && study_steps <= horizon_steps))
    throw std::invalid_argument("need T1 < T2 <= T3");
  if (study_steps % block_steps != 0)
    throw std::invalid_argument(
        "study period must be a whole number of blocks");
  const auto times = lttd_times_hours();
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("LTTD times must be strictly increasing");
  // Each LTTD precedes the period it commits.
  if (!(nuclear_lttd_hours() < 0) || !(coal_lttd_hours() < 0))
    throw std::invalid_argument("nuclear/coal LTTD must precede the horizon");
  for (int i = 1; i <= n_blocks(); ++i)
    if (!(ccgt_lttd_hours(i) < block_start_hours(i)))
      throw std::invalid_argument("CCGT LTTD must precede its block");
}

}  // namespace suc
