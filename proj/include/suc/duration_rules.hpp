#pragma once

#include <algorithm>

namespace suc {

// Step windows attached to a transition in slot t (the state change takes
// effect at step t+1; slot -1 is the pre-horizon boundary transition). These
// conventions are the single source of truth shared by the plan checker and
// the MILP builder; the off-by-one between the ON and OFF holds follows the
// source formulation as printed.
//
//   flat_hold:    steps that must stay OFL after entering OFL from OU/OD
//   min_on_hold:  steps that must not be OFF after a start (OFF -> OU)
//   min_off_hold: steps that must stay OFF after a shutdown ({OD,OFL} -> OFF)
//   max_on_window: window in which at least one OFF step must occur after a
//                  start; the requirement is dropped when the window extends
//                  past the horizon (an over-long run is then not observable)
struct StepWindow {
  int begin = 0;  // inclusive
  int end = -1;   // inclusive; empty when end < begin

  StepWindow clipped(int horizon_steps) const {
    return {std::max(begin, 0), std::min(end, horizon_steps - 1)};
  }
  bool empty() const { return end < begin; }
  bool within(int horizon_steps) const {
    return begin >= 0 && end <= horizon_steps - 1;
  }
};

inline StepWindow flat_hold(int t, int flat_steps) {
  return {t + 1, t + flat_steps};
}

inline StepWindow min_on_hold(int t, int on_steps) {
  return {t + 1, t + on_steps};
}

inline StepWindow min_off_hold(int t, int off_steps) {
  return {t + 1, t + 1 + off_steps};
}

inline StepWindow max_on_window(int t, int on_max_steps) {
  return {t + 1, t + 1 + on_max_steps};
}

}  // namespace suc
