#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zrelay/mech.hpp"

using namespace zrelay;

namespace {
constexpr Subcycle all_phases[] = {Subcycle::I, Subcycle::II, Subcycle::III, Subcycle::IV};
constexpr Direction all_dirs[] = {Direction::W, Direction::S, Direction::E, Direction::N};
constexpr LeverKind all_levers[] = {LeverKind::reverse, LeverKind::rotate_cw,
                                    LeverKind::rotate_ccw};
}  // namespace

TEST_CASE("coupling follows the control bit") {
  CHECK(is_coupled(CouplingKind::coupled_when_one, BitState::one));
  CHECK(is_coupled(CouplingKind::coupled_when_zero, BitState::zero));
  CHECK_FALSE(is_coupled(CouplingKind::coupled_when_one, BitState::zero));
  CHECK_FALSE(is_coupled(CouplingKind::coupled_when_zero, BitState::one));
}

TEST_CASE("the two coupling kinds are complementary on every control state") {
  for (BitState c : {BitState::zero, BitState::one}) {
    CHECK(is_coupled(CouplingKind::coupled_when_one, c) !=
          is_coupled(CouplingKind::coupled_when_zero, c));
  }
}

TEST_CASE("transmission copies motion only through a coupling") {
  CHECK(transmit(true, BitState::one) == BitState::one);
  CHECK(transmit(false, BitState::one) == BitState::zero);
  CHECK(transmit(true, BitState::zero) == BitState::zero);
  CHECK(transmit(false, BitState::zero) == BitState::zero);
}

TEST_CASE("transmit is monotone in both arguments") {
  for (bool coupled : {false, true}) {
    CHECK(static_cast<int>(transmit(coupled, BitState::one)) >=
          static_cast<int>(transmit(coupled, BitState::zero)));
  }
  for (BitState a : {BitState::zero, BitState::one}) {
    CHECK(static_cast<int>(transmit(true, a)) >= static_cast<int>(transmit(false, a)));
  }
}

TEST_CASE("retract phase is two subcycles on") {
  CHECK(retract_phase(Subcycle::I) == Subcycle::III);
  CHECK(retract_phase(Subcycle::II) == Subcycle::IV);
  CHECK(retract_phase(Subcycle::III) == Subcycle::I);
  CHECK(retract_phase(Subcycle::IV) == Subcycle::II);
  for (Subcycle p : all_phases) CHECK(retract_phase(retract_phase(p)) == p);
}

TEST_CASE("setup phase is one subcycle back") {
  CHECK(setup_phase(Subcycle::II) == Subcycle::I);
  CHECK(setup_phase(Subcycle::I) == Subcycle::IV);
  CHECK(setup_phase(Subcycle::III) == Subcycle::II);
  CHECK(setup_phase(Subcycle::IV) == Subcycle::III);
  for (Subcycle p : all_phases) CHECK(setup_phase(retract_phase(p)) == next_subcycle(p));
}

TEST_CASE("four subcycle successors are the identity") {
  for (Subcycle p : all_phases) {
    Subcycle q = p;
    for (int i = 0; i < 4; ++i) q = next_subcycle(q);
    CHECK(q == p);
  }
}

TEST_CASE("levers: reverse is an involution, rotations are mutually inverse") {
  CHECK(apply_lever(Direction::E, LeverKind::rotate_cw) == Direction::S);
  CHECK(apply_lever(Direction::W, LeverKind::reverse) == Direction::E);
  for (Direction d : all_dirs) {
    CHECK(apply_lever(apply_lever(d, LeverKind::reverse), LeverKind::reverse) == d);
    CHECK(apply_lever(apply_lever(d, LeverKind::rotate_cw), LeverKind::rotate_ccw) == d);
    CHECK(apply_lever(apply_lever(d, LeverKind::rotate_ccw), LeverKind::rotate_cw) == d);
  }
}

TEST_CASE("every lever kind permutes the four directions") {
  for (LeverKind k : all_levers) {
    bool seen[4] = {};
    for (Direction d : all_dirs) seen[static_cast<int>(apply_lever(d, k))] = true;
    for (bool s : seen) CHECK(s);
  }
}

TEST_CASE("four quarter-turns are the identity") {
  for (Direction d : all_dirs) {
    Direction q = d;
    for (int i = 0; i < 4; ++i) q = apply_lever(q, LeverKind::rotate_cw);
    CHECK(q == d);
  }
}

TEST_CASE("phase and direction names round-trip") {
  for (Subcycle p : all_phases) CHECK(subcycle_from_string(to_string(p)) == p);
  for (Direction d : all_dirs) CHECK(direction_from_string(to_string(d)) == d);
  CHECK_FALSE(subcycle_from_string("V").has_value());
  CHECK_FALSE(direction_from_string("Q").has_value());
}
