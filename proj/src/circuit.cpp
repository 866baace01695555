#include "zrelay/circuit.hpp"

#include <utility>

namespace zrelay {

std::string format_hazard(const Hazard& h) {
  std::string s{to_string(h.kind)};
  s += " at ";
  s += h.location;
  s += ": ";
  s += h.message;
  return s;
}

void Circuit::reserve_name(const std::string& name, std::string_view what) {
  if (name.empty()) {
    throw CircuitError({HazardKind::dangling_reference, std::string(what), "empty name"},
                       "empty " + std::string(what) + " name");
  }
  auto [it, inserted] = taken_names_.emplace(name, std::string(what));
  if (!inserted) {
    Hazard h{HazardKind::dangling_reference, name,
             "name already used by a " + it->second};
    throw CircuitError(h, "duplicate name '" + name + "'");
  }
}

void Circuit::check_element(ElementId id, std::string_view who) const {
  if (id.index >= elements_.size()) {
    throw CircuitError({HazardKind::dangling_reference, std::string(who),
                        "element id out of range"},
                       std::string(who) + ": element id out of range");
  }
}

ElementId Circuit::add_element(std::string name, Direction dir) {
  reserve_name(name, "element");
  ElementId id{static_cast<std::uint32_t>(elements_.size())};
  element_by_name_.emplace(name, id.index);
  elements_.push_back(Element{std::move(name), dir});
  return id;
}

const InputPort& Circuit::add_input(std::string name, std::size_t width, Subcycle phase) {
  if (width < 1) {
    throw CircuitError({HazardKind::dangling_reference, name, "input width must be >= 1"},
                       "input '" + name + "' width must be >= 1");
  }
  InputPort port;
  port.name = name;
  port.width = width;
  port.phase = phase;
  if (width == 1) {
    port.elements.push_back(add_element(name, pulse_direction(phase)));
  } else {
    reserve_name(name, "input port");
    for (std::size_t i = 0; i < width; ++i) {
      port.elements.push_back(
          add_element(name + "[" + std::to_string(i) + "]", pulse_direction(phase)));
    }
  }
  inputs_.push_back(std::move(port));
  return inputs_.back();
}

const Relay& Circuit::add_relay(Relay relay) {
  check_element(relay.control, relay.name);
  check_element(relay.actuator, relay.name);
  check_element(relay.actuated, relay.name);
  if (relay.control == relay.actuator || relay.control == relay.actuated ||
      relay.actuator == relay.actuated) {
    throw CircuitError({HazardKind::dangling_reference, relay.name,
                        "control, actuator and actuated must be three distinct elements"},
                       "relay '" + relay.name + "' ports must be distinct elements");
  }
  reserve_name(relay.name, "relay");
  relays_.push_back(std::move(relay));
  return relays_.back();
}

const RectifiedMerge& Circuit::add_merge(std::string name, std::vector<ElementId> sources,
                                         ElementId target) {
  if (sources.empty()) {
    throw CircuitError({HazardKind::dangling_reference, name, "merge needs at least one source"},
                       "merge '" + name + "' needs at least one source");
  }
  for (ElementId s : sources) check_element(s, name);
  check_element(target, name);
  for (ElementId s : sources) {
    if (s == target) {
      throw CircuitError({HazardKind::dangling_reference, name,
                          "merge target cannot also be one of its sources"},
                         "merge '" + name + "' target is one of its sources");
    }
  }
  reserve_name(name, "merge");
  merges_.push_back(RectifiedMerge{std::move(name), std::move(sources), target});
  return merges_.back();
}

const Lever& Circuit::add_lever(std::string name, ElementId from, ElementId to,
                                LeverKind kind) {
  check_element(from, name);
  check_element(to, name);
  if (from == to) {
    throw CircuitError({HazardKind::dangling_reference, name,
                        "lever endpoints must be distinct elements"},
                       "lever '" + name + "' endpoints must be distinct");
  }
  reserve_name(name, "lever");
  levers_.push_back(Lever{std::move(name), from, to, kind});
  return levers_.back();
}

const Probe& Circuit::add_probe(std::string name, std::vector<ElementId> elements,
                                Subcycle sample_phase) {
  if (elements.empty()) {
    throw CircuitError({HazardKind::dangling_reference, name, "probe needs at least one element"},
                       "probe '" + name + "' needs at least one element");
  }
  for (ElementId e : elements) check_element(e, name);
  reserve_name(name, "probe");
  probes_.push_back(Probe{std::move(name), std::move(elements), sample_phase});
  return probes_.back();
}

std::optional<ElementId> Circuit::find_element(std::string_view name) const {
  auto it = element_by_name_.find(std::string(name));
  if (it == element_by_name_.end()) return std::nullopt;
  return ElementId{it->second};
}

const InputPort* Circuit::find_input(std::string_view name) const {
  for (const auto& p : inputs_)
    if (p.name == name) return &p;
  return nullptr;
}

const Probe* Circuit::find_probe(std::string_view name) const {
  for (const auto& p : probes_)
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace zrelay
