#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suc/states.hpp"

using namespace suc;

TEST_CASE("transition legality matrix, full 4x4 enumeration") {
  // Frozen cell by cell; rows are from-states, columns to-states.
  const bool expected[4][4] = {
      /* OU  */ {true, false, true, false},
      /* OD  */ {false, true, true, true},
      /* OFL */ {true, true, true, true},
      /* OFF */ {true, false, false, true},
  };
  int allowed = 0;
  for (State a : kAllStates)
    for (State b : kAllStates) {
      CAPTURE(to_string(a));
      CAPTURE(to_string(b));
      CHECK(transition_allowed(a, b) ==
            expected[static_cast<int>(a)][static_cast<int>(b)]);
      allowed += transition_allowed(a, b);
    }
  CHECK(allowed == 11);
}

TEST_CASE("named transition examples") {
  CHECK_FALSE(transition_allowed(State::OU, State::OD));
  CHECK(transition_allowed(State::OFL, State::OFL));
  CHECK(transition_allowed(State::OFF, State::OU));
  CHECK_FALSE(transition_allowed(State::OFF, State::OD));
}

TEST_CASE("consecutive variation rule is separate from the matrix") {
  CHECK(transition_allowed(State::OU, State::OU));
  CHECK(consecutive_variation_forbidden(State::OU, State::OU));
  CHECK(consecutive_variation_forbidden(State::OD, State::OD));
  CHECK_FALSE(consecutive_variation_forbidden(State::OFL, State::OFL));
  CHECK_FALSE(consecutive_variation_forbidden(State::OFF, State::OFF));
  CHECK_FALSE(consecutive_variation_forbidden(State::OU, State::OFL));
}

TEST_CASE("state names round-trip") {
  for (State e : kAllStates) CHECK(state_from_string(to_string(e)) == e);
  CHECK_THROWS(state_from_string("BOGUS"));
}
