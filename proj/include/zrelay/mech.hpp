#pragma once

// Core vocabulary of the mechanical substrate: four directions of plate
// movement, the four-subcycle clock, bit states, relay coupling kinds and
// the pure timing laws (setup / retraction) everything else builds on.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace zrelay {

enum class Direction : std::uint8_t { W = 0, S = 1, E = 2, N = 3 };

/// The four subcycles of the common cycle, in cyclic order I -> II -> III -> IV -> I.
enum class Subcycle : std::uint8_t { I = 0, II = 1, III = 2, IV = 3 };

/// 0 is the rest position, 1 is displaced by one step.
enum class BitState : std::uint8_t { zero = 0, one = 1 };

/// A plain relay couples when its control is displaced; a negating relay
/// couples when its control is at rest.
enum class CouplingKind : std::uint8_t { coupled_when_one, coupled_when_zero };

/// Push and pull transmit identically; only push may take part in a
/// rectified merge.
enum class DriveMode : std::uint8_t { push, pull };

enum class LeverKind : std::uint8_t { reverse, rotate_cw, rotate_ccw };

constexpr BitState to_bit(bool b) { return b ? BitState::one : BitState::zero; }
constexpr bool is_one(BitState s) { return s == BitState::one; }

constexpr bool is_coupled(CouplingKind kind, BitState control) {
  return kind == CouplingKind::coupled_when_one ? control == BitState::one
                                                : control == BitState::zero;
}

/// Motion copying: the actuated plate moves iff the coupling is present and
/// the actuator moves.
constexpr BitState transmit(bool coupled, BitState actuator) {
  return to_bit(coupled && is_one(actuator));
}

constexpr int subcycle_index(Subcycle p) { return static_cast<int>(p); }

constexpr Subcycle subcycle_from_index(int i) {
  return static_cast<Subcycle>(((i % 4) + 4) % 4);
}

constexpr Subcycle next_subcycle(Subcycle p) {
  return subcycle_from_index(subcycle_index(p) + 1);
}

/// A plate driven at p returns to rest two subcycles later.
constexpr Subcycle retract_phase(Subcycle p) {
  return subcycle_from_index(subcycle_index(p) + 2);
}

/// Latest subcycle at which a control feeding a relay driven at p may be set.
constexpr Subcycle setup_phase(Subcycle p) {
  return subcycle_from_index(subcycle_index(p) - 1);
}

constexpr Direction apply_lever(Direction d, LeverKind k) {
  constexpr std::array<Direction, 4> reversed{Direction::E, Direction::N,
                                              Direction::W, Direction::S};
  // Compass rotation: N -> E -> S -> W -> N.
  constexpr std::array<Direction, 4> cw{Direction::N, Direction::W,
                                        Direction::S, Direction::E};
  constexpr std::array<Direction, 4> ccw{Direction::S, Direction::E,
                                         Direction::N, Direction::W};
  switch (k) {
    case LeverKind::reverse: return reversed[static_cast<int>(d)];
    case LeverKind::rotate_cw: return cw[static_cast<int>(d)];
    case LeverKind::rotate_ccw: return ccw[static_cast<int>(d)];
  }
  return d;
}

/// Default assignment of a movement direction to each subcycle pulse.
/// Metadata only; no logic is attached to it.
constexpr Direction pulse_direction(Subcycle p) {
  constexpr std::array<Direction, 4> dirs{Direction::W, Direction::S,
                                          Direction::E, Direction::N};
  return dirs[subcycle_index(p)];
}

constexpr std::string_view to_string(Direction d) {
  constexpr std::array<std::string_view, 4> names{"W", "S", "E", "N"};
  return names[static_cast<int>(d)];
}

constexpr std::string_view to_string(Subcycle p) {
  constexpr std::array<std::string_view, 4> names{"I", "II", "III", "IV"};
  return names[subcycle_index(p)];
}

constexpr std::string_view to_string(CouplingKind k) {
  return k == CouplingKind::coupled_when_one ? "open" : "closed";
}

constexpr std::string_view to_string(DriveMode m) {
  return m == DriveMode::push ? "push" : "pull";
}

constexpr std::string_view to_string(LeverKind k) {
  switch (k) {
    case LeverKind::reverse: return "reverse";
    case LeverKind::rotate_cw: return "cw";
    case LeverKind::rotate_ccw: return "ccw";
  }
  return "";
}

constexpr std::optional<Direction> direction_from_string(std::string_view s) {
  if (s == "W") return Direction::W;
  if (s == "S") return Direction::S;
  if (s == "E") return Direction::E;
  if (s == "N") return Direction::N;
  return std::nullopt;
}

constexpr std::optional<Subcycle> subcycle_from_string(std::string_view s) {
  if (s == "I") return Subcycle::I;
  if (s == "II") return Subcycle::II;
  if (s == "III") return Subcycle::III;
  if (s == "IV") return Subcycle::IV;
  return std::nullopt;
}

constexpr std::optional<LeverKind> lever_kind_from_string(std::string_view s) {
  if (s == "reverse") return LeverKind::reverse;
  if (s == "cw") return LeverKind::rotate_cw;
  if (s == "ccw") return LeverKind::rotate_ccw;
  return std::nullopt;
}

}  // namespace zrelay
