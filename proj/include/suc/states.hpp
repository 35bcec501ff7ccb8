#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace suc {

// Operating states of a thermal unit within one timestep:
//   OU  - ON, made an upward power variation from t-1 to t
//   OD  - ON, made a downward power variation from t-1 to t
//   OFL - ON, power constant from t-1 to t
//   OFF - unit is off
enum class State : std::uint8_t { OU = 0, OD = 1, OFL = 2, OFF = 3 };

inline constexpr int kNumStates = 4;
inline constexpr std::array<State, kNumStates> kAllStates = {
    State::OU, State::OD, State::OFL, State::OFF};

const char* to_string(State e);
State state_from_string(const std::string& s);

// Legality matrix for a transition from state `from` at t to state `to` at
// t+1. Single source of truth shared by the plan checker and the MILP
// builder. Note that consecutive OU->OU / OD->OD steps are legal here but are
// additionally forbidden by the power-variation rule (see
// kForbidsConsecutiveVariation); the two rules are kept separate on purpose.
bool transition_allowed(State from, State to);

// A unit in OU (or OD) cannot repeat the same variation on the next step;
// power ramps complete within one timestep.
inline bool consecutive_variation_forbidden(State from, State to) {
  return from == to && (from == State::OU || from == State::OD);
}

inline bool is_on(State e) { return e != State::OFF; }

}  // namespace suc
