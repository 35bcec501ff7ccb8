#include "suc/states.hpp"

#include <stdexcept>

namespace suc {

namespace {

// Rows: from-state, columns: to-state, order OU, OD, OFL, OFF.
constexpr bool kAllowed[kNumStates][kNumStates] = {
    /* OU  */ {true, false, true, false},
    /* OD  */ {false, true, true, true},
    /* OFL */ {true, true, true, true},
    /* OFF */ {true, false, false, true},
};

}  // namespace

bool transition_allowed(State from, State to) {
  return kAllowed[static_cast<int>(from)][static_cast<int>(to)];
}

const char* to_string(State e) {
  switch (e) {
    case State::OU:
      return "OU";
    case State::OD:
      return "OD";
    case State::OFL:
      return "OFL";
    case State::OFF:
      return "OFF";
  }
  return "?";
}

State state_from_string(const std::string& s) {
  if (s == "OU") return State::OU;
  if (s == "OD") return State::OD;
  if (s == "OFL") return State::OFL;
  if (s == "OFF") return State::OFF;
  throw std::invalid_argument("unknown state name: " + s);
}

}  // namespace suc
