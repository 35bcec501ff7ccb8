#pragma once

#include <vector>

namespace suc {

// Timeline of one dispatch problem. Time is measured in hours relative to the
// start of the optimization horizon T1 (hour 0). The optimization horizon is
// [T1, T3) in steps of delta_t; the period of study [T1, T2) is a prefix of
// it, decomposed into activation blocks of block_hours (2 h by default, the
// balancing window in which units can be activated).
//
// Decision timestamps (LTTDs) precede the periods they commit:
//   t1          start/stop decision for nuclear units   (T1 - nuclear_lead)
//   t2          coal                                     (T1 - coal_lead)
//   t3(i)       CCGT block i, i = 1..n_blocks            (block_start(i) - ccgt_lead)
//   t3(n+1)     last evaluation issue time (one block past the study period)
// The evaluation of block j uses scenarios issued at t3(j+1).
struct TimeGrid {
  double delta_t_hours = 1.0;
  int horizon_steps = 24;  // [T1, T3)
  int study_steps = 10;    // [T1, T2)
  int block_steps = 2;
  double nuclear_lead_hours = 10.0;
  double coal_lead_hours = 6.0;
  double ccgt_lead_hours = 3.0;

  int n_blocks() const { return study_steps / block_steps; }
  double horizon_hours() const { return horizon_steps * delta_t_hours; }
  double step_hours(int t) const { return t * delta_t_hours; }

  // First step / hour of block i (1-based). block_start_step(n_blocks + 1)
  // is the study end.
  int block_start_step(int block) const { return (block - 1) * block_steps; }
  double block_start_hours(int block) const {
    return block_start_step(block) * delta_t_hours;
  }

  double nuclear_lttd_hours() const { return -nuclear_lead_hours; }
  double coal_lttd_hours() const { return -coal_lead_hours; }
  // i in [1, n_blocks() + 1]
  double ccgt_lttd_hours(int i) const {
    return block_start_hours(i) - ccgt_lead_hours;
  }
  double eval_issue_hours(int block) const { return ccgt_lttd_hours(block + 1); }

  // All decision timestamps in order: t1, t2, t3(1..n_blocks).
  std::vector<double> lttd_times_hours() const;

  // Lead, in steps, of timestep t seen from an issue time; >= 1 for any step
  // at or after the issue.
  int lead_steps(double issue_hours, int t) const;

  void validate() const;  // throws std::invalid_argument on violation
};

}  // namespace suc
