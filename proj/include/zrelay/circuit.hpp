#pragma once

// Circuit graph: named elements (plates/rods), relays, rectified merges,
// levers, phased input ports and probes. A circuit is built incrementally,
// validated once, and is immutable afterwards; any number of simulations
// may then share it.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zrelay/mech.hpp"

namespace zrelay {

struct ElementId {
  std::uint32_t index = 0;
  friend bool operator==(ElementId a, ElementId b) { return a.index == b.index; }
  friend bool operator!=(ElementId a, ElementId b) { return a.index != b.index; }
};

struct Element {
  std::string name;
  Direction dir = Direction::W;
};

struct Relay {
  std::string name;
  ElementId control;
  ElementId actuator;
  ElementId actuated;
  CouplingKind kind = CouplingKind::coupled_when_one;
  DriveMode mode = DriveMode::push;
  /// Set: the actuator is moved by the clock at this subcycle, every cycle.
  /// Unset: the actuator is chained from an upstream relay or merge.
  std::optional<Subcycle> drive;
  /// Delay-line element: the value deliberately crosses a cycle boundary,
  /// so dependency chains through it do not count toward circuit depth.
  bool is_delay = false;
};

/// One-way "rectified" junction: several pushed plates drive one target,
/// whose state is the OR of the sources at every tick.
struct RectifiedMerge {
  std::string name;
  std::vector<ElementId> sources;
  ElementId target;
};

/// Direction changer copying motion from one element to another.
struct Lever {
  std::string name;
  ElementId from;
  ElementId to;
  LeverKind kind = LeverKind::reverse;
};

struct InputPort {
  std::string name;
  std::size_t width = 1;
  Subcycle phase = Subcycle::I;
  std::vector<ElementId> elements;  // elements[i] carries bit i
};

struct Probe {
  std::string name;
  std::vector<ElementId> elements;  // elements[i] carries bit i
  Subcycle sample_phase = Subcycle::I;
};

enum class HazardKind {
  setup_violation,
  depth_exceeded,
  unrectified_multi_drive,
  direction_mismatch,
  dangling_reference,
};

constexpr std::string_view to_string(HazardKind k) {
  switch (k) {
    case HazardKind::setup_violation: return "SetupViolation";
    case HazardKind::depth_exceeded: return "DepthExceeded";
    case HazardKind::unrectified_multi_drive: return "UnrectifiedMultiDrive";
    case HazardKind::direction_mismatch: return "DirectionMismatch";
    case HazardKind::dangling_reference: return "DanglingReference";
  }
  return "";
}

/// A violation of a timing or structural rule, naming the entity at fault.
struct Hazard {
  HazardKind kind = HazardKind::dangling_reference;
  std::string location;  // element/relay/merge/lever name(s)
  std::string message;
};

std::string format_hazard(const Hazard& h);

/// Thrown by Circuit builders on structural misuse (duplicate names,
/// references to elements that do not exist, relay ports that coincide).
class CircuitError : public std::runtime_error {
 public:
  CircuitError(Hazard hazard, const std::string& what)
      : std::runtime_error(what), hazard_(std::move(hazard)) {}
  const Hazard& hazard() const { return hazard_; }

 private:
  Hazard hazard_;
};

class Circuit {
 public:
  explicit Circuit(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  ElementId add_element(std::string name, Direction dir);
  const InputPort& add_input(std::string name, std::size_t width, Subcycle phase);
  const Relay& add_relay(Relay relay);
  const RectifiedMerge& add_merge(std::string name, std::vector<ElementId> sources,
                                  ElementId target);
  const Lever& add_lever(std::string name, ElementId from, ElementId to, LeverKind kind);
  const Probe& add_probe(std::string name, std::vector<ElementId> elements,
                         Subcycle sample_phase);

  const Element& element(ElementId id) const { return elements_.at(id.index); }
  const std::string& element_name(ElementId id) const { return element(id).name; }
  std::optional<ElementId> find_element(std::string_view name) const;
  const InputPort* find_input(std::string_view name) const;
  const Probe* find_probe(std::string_view name) const;

  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Relay>& relays() const { return relays_; }
  const std::vector<RectifiedMerge>& merges() const { return merges_; }
  const std::vector<Lever>& levers() const { return levers_; }
  const std::vector<InputPort>& inputs() const { return inputs_; }
  const std::vector<Probe>& probes() const { return probes_; }

 private:
  void reserve_name(const std::string& name, std::string_view what);
  void check_element(ElementId id, std::string_view who) const;

  std::string name_;
  std::vector<Element> elements_;
  std::vector<Relay> relays_;
  std::vector<RectifiedMerge> merges_;
  std::vector<Lever> levers_;
  std::vector<InputPort> inputs_;
  std::vector<Probe> probes_;
  std::unordered_map<std::string, std::uint32_t> element_by_name_;
  std::unordered_map<std::string, std::string> taken_names_;  // name -> entity kind
};

}  // namespace zrelay
