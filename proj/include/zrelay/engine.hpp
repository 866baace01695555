#pragma once

// Subcycle-stepped simulator.
//
// Time advances one subcycle per tick. A machine cycle is four ticks running
// IV, I, II, III: operands enter during IV (the subcycle previous to I) and
// a depth-3 computation like the adder has its result by the end of III of
// the same cycle. Each tick runs three ordered stages:
//
//   1. retract   every element driven two ticks ago returns to rest, and
//                merge/lever targets follow their sources down
//   2. assert    clock pulses move the actuators bound to this subcycle and
//                scheduled input bits move their port elements
//   3. propagate couplings are sampled once from the control states as they
//                stand after the asserts, then actuator motion flows through
//                coupled relays, merges and levers to a fixed point within
//                the tick; everything that moved is latched for two ticks
//
// Sampling before propagation is what makes a same-tick asserted control
// (an input co-timed with the drive pulse) visible, while a value produced
// by a same-tick transmission is not.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zrelay/bits.hpp"
#include "zrelay/circuit.hpp"

namespace zrelay {

struct ClockConfig {
  double frequency_hz = 5.0;  // crank speed, cycles per second
};

enum class EventCause { clock_drive, input_assert, transmission, retraction };

constexpr std::string_view to_string(EventCause c) {
  switch (c) {
    case EventCause::clock_drive: return "ClockDrive";
    case EventCause::input_assert: return "InputAssert";
    case EventCause::transmission: return "Transmission";
    case EventCause::retraction: return "Retraction";
  }
  return "";
}

struct TraceEvent {
  std::uint64_t tick = 0;
  std::uint64_t cycle = 0;
  Subcycle subcycle = Subcycle::I;
  ElementId element;
  BitState state = BitState::zero;
  EventCause cause = EventCause::transmission;
  double sim_time_s = 0.0;
};

/// Thrown when a circuit with hazards is loaded, or when the engine detects
/// a runtime timing fault (an unrectified double drive).
class HazardError : public std::runtime_error {
 public:
  HazardError(const std::string& what, std::vector<Hazard> hazards)
      : std::runtime_error(what), hazards_(std::move(hazards)) {}
  const std::vector<Hazard>& hazards() const { return hazards_; }

 private:
  std::vector<Hazard> hazards_;
};

/// Subcycle carried by a given tick; tick 0 is the IV that opens cycle 0.
constexpr Subcycle subcycle_at_tick(std::uint64_t tick) {
  constexpr std::array<Subcycle, 4> order{Subcycle::IV, Subcycle::I, Subcycle::II,
                                          Subcycle::III};
  return order[tick % 4];
}

/// Offset of a subcycle within a machine cycle (IV first).
constexpr std::uint64_t cycle_offset(Subcycle p) {
  return (subcycle_index(p) + 1) % 4;
}

class Simulation {
 public:
  enum class TraceMode { record, off };

  /// Validates the circuit and refuses it (HazardError) unless clean. The
  /// circuit must outlive the simulation; many simulations may share it.
  explicit Simulation(const Circuit& circuit, ClockConfig config = {},
                      TraceMode mode = TraceMode::record);

  const Circuit& circuit() const { return *circuit_; }
  std::uint64_t tick() const { return tick_; }
  std::uint64_t cycle() const { return tick_ / 4; }
  Subcycle subcycle() const { return subcycle_at_tick(tick_); }

  /// Simulated seconds elapsed: tick / (4 * frequency).
  double sim_time() const { return static_cast<double>(tick_) * seconds_per_tick(); }
  double seconds_per_tick() const { return 1.0 / (4.0 * config_.frequency_hz); }

  /// Schedules the 1-bits of `bits` to be asserted at the port's phase in
  /// the cycle being run; 0-bits stay at rest. A second call for the same
  /// port before its phase replaces the first.
  void set_input(std::string_view port, const Bits& bits);

  /// Advances one subcycle and returns the tick's events (also appended to
  /// the trace unless tracing is off).
  std::vector<TraceEvent> step();

  /// Applies the given inputs and runs one machine cycle (IV, I, II, III
  /// from a cycle boundary). Returns every probe sampled at the end of its
  /// sample phase.
  std::map<std::string, Bits> run_cycle(
      const std::vector<std::pair<std::string, Bits>>& inputs = {});

  /// True iff all elements are back at rest once the two ticks of pending
  /// retractions have played out. Works on a copy; the simulation itself
  /// does not advance.
  bool check_return_to_zero() const;

  /// Current state of an element, merge and lever targets resolved.
  BitState state(ElementId id) const { return state_[id.index]; }
  Bits read_probe(std::string_view name) const;

  const std::vector<TraceEvent>& trace() const { return trace_; }
  void write_trace_csv(std::ostream& out) const;

  /// Back to tick 0, all elements at rest, trace and schedules cleared.
  void reset();

 private:
  struct Follower {
    ElementId target;
    std::vector<ElementId> sources;
  };

  void rise(ElementId e, EventCause cause, bool latch, std::vector<ElementId>& moved,
            std::vector<TraceEvent>& events);
  void fall(ElementId e, std::vector<TraceEvent>& events);
  void retract_stage(std::vector<TraceEvent>& events);
  void settle_follower_falls(std::vector<TraceEvent>& events);
  void propagate_followers_of(ElementId e, std::vector<ElementId>& moved,
                              std::vector<TraceEvent>& events);
  void record(std::vector<TraceEvent>& events, ElementId e, BitState s, EventCause cause);

  const Circuit* circuit_;
  ClockConfig config_;
  TraceMode mode_;

  // static structure
  std::vector<std::vector<std::uint32_t>> relays_by_actuator_;
  std::array<std::vector<ElementId>, 4> clock_elements_by_phase_;
  std::vector<Follower> followers_;                       // topologically ordered
  std::vector<std::vector<std::uint32_t>> followers_by_source_;

  // dynamic state
  std::uint64_t tick_ = 0;
  std::vector<BitState> state_;
  std::vector<std::int64_t> moved_at_;    // last rise tick, -1 if never
  std::vector<std::int64_t> retract_at_;  // scheduled retraction tick, -1 if none
  std::vector<bool> coupled_;             // per relay, sampled this tick
  std::vector<bool> fired_;               // per relay, transmitted this tick
  std::map<std::string, Bits> pending_;   // scheduled input assertions
  std::vector<TraceEvent> trace_;
};

}  // namespace zrelay
