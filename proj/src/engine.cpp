#include "zrelay/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "zrelay/validate.hpp"

namespace zrelay {

Simulation::Simulation(const Circuit& circuit, ClockConfig config, TraceMode mode)
    : circuit_(&circuit), config_(config), mode_(mode) {
  if (!(config_.frequency_hz > 0.0))
    throw std::invalid_argument("clock frequency must be positive");
  std::vector<Hazard> hazards = validate(circuit);
  if (!hazards.empty()) {
    std::string what = "circuit '" + circuit.name() + "' has " +
                       std::to_string(hazards.size()) + " hazard(s); first: " +
                       format_hazard(hazards.front());
    throw HazardError(what, std::move(hazards));
  }

  const std::size_t n = circuit.elements().size();
  relays_by_actuator_.resize(n);
  followers_by_source_.resize(n);

  for (std::uint32_t r = 0; r < circuit.relays().size(); ++r) {
    const Relay& relay = circuit.relays()[r];
    relays_by_actuator_[relay.actuator.index].push_back(r);
    if (relay.drive) {
      auto& list = clock_elements_by_phase_[subcycle_index(*relay.drive)];
      if (std::find(list.begin(), list.end(), relay.actuator) == list.end())
        list.push_back(relay.actuator);
    }
  }

  // Normalize merges and levers into followers and order them so that a
  // single pass settles chained followers.
  std::vector<Follower> defs;
  for (const RectifiedMerge& m : circuit.merges()) defs.push_back({m.target, m.sources});
  for (const Lever& l : circuit.levers()) defs.push_back({l.to, {l.from}});

  std::vector<int> def_of(n, -1);
  for (std::size_t i = 0; i < defs.size(); ++i) def_of[defs[i].target.index] = static_cast<int>(i);
  std::vector<int> mark(defs.size(), 0);
  std::vector<std::size_t> order;
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (mark[i]) return;  // validated circuits have no follower cycles
    mark[i] = 1;
    for (ElementId s : defs[i].sources)
      if (def_of[s.index] >= 0) self(self, static_cast<std::size_t>(def_of[s.index]));
    order.push_back(i);
  };
  for (std::size_t i = 0; i < defs.size(); ++i) visit(visit, i);
  for (std::size_t i : order) followers_.push_back(defs[i]);
  for (std::uint32_t fi = 0; fi < followers_.size(); ++fi)
    for (ElementId s : followers_[fi].sources)
      followers_by_source_[s.index].push_back(fi);

  state_.assign(n, BitState::zero);
  moved_at_.assign(n, -1);
  retract_at_.assign(n, -1);
  coupled_.assign(circuit.relays().size(), false);
  fired_.assign(circuit.relays().size(), false);
}

void Simulation::reset() {
  tick_ = 0;
  std::fill(state_.begin(), state_.end(), BitState::zero);
  std::fill(moved_at_.begin(), moved_at_.end(), -1);
  std::fill(retract_at_.begin(), retract_at_.end(), -1);
  pending_.clear();
  trace_.clear();
}

void Simulation::set_input(std::string_view port, const Bits& bits) {
  const InputPort* p = circuit_->find_input(port);
  if (!p) throw std::invalid_argument("unknown input port '" + std::string(port) + "'");
  if (bits.size() != p->width) {
    throw std::invalid_argument("port '" + p->name + "' is " + std::to_string(p->width) +
                                " bit(s) wide, got " + std::to_string(bits.size()));
  }
  pending_[p->name] = bits;
}

void Simulation::record(std::vector<TraceEvent>& events, ElementId e, BitState s,
                        EventCause cause) {
  TraceEvent ev{tick_, tick_ / 4, subcycle_at_tick(tick_), e, s, cause, sim_time()};
  events.push_back(ev);
  if (mode_ == TraceMode::record) trace_.push_back(ev);
}

void Simulation::rise(ElementId e, EventCause cause, bool latch,
                      std::vector<ElementId>& moved, std::vector<TraceEvent>& events) {
  if (state_[e.index] == BitState::one) {
    if (moved_at_[e.index] != static_cast<std::int64_t>(tick_)) {
      Hazard h{HazardKind::unrectified_multi_drive, circuit_->element_name(e),
               "element still displaced from an earlier tick is driven again "
               "without a rectified merge"};
      throw HazardError("runtime hazard: " + format_hazard(h), {h});
    }
    return;  // several pushes within one tick land on the same displacement
  }
  state_[e.index] = BitState::one;
  moved_at_[e.index] = static_cast<std::int64_t>(tick_);
  if (latch) retract_at_[e.index] = static_cast<std::int64_t>(tick_) + 2;
  moved.push_back(e);
  record(events, e, BitState::one, cause);
}

void Simulation::fall(ElementId e, std::vector<TraceEvent>& events) {
  state_[e.index] = BitState::zero;
  retract_at_[e.index] = -1;
  record(events, e, BitState::zero, EventCause::retraction);
}

// Recompute merge/lever targets top-down; used in the retract stage where
// follower values can only drop.
void Simulation::settle_follower_falls(std::vector<TraceEvent>& events) {
  for (const Follower& f : followers_) {
    bool v = false;
    for (ElementId s : f.sources) v = v || state_[s.index] == BitState::one;
    if (!v && state_[f.target.index] == BitState::one) fall(f.target, events);
  }
}

void Simulation::propagate_followers_of(ElementId e, std::vector<ElementId>& moved,
                                        std::vector<TraceEvent>& events) {
  for (std::uint32_t fi : followers_by_source_[e.index]) {
    const Follower& f = followers_[fi];
    if (state_[f.target.index] == BitState::zero)
      rise(f.target, EventCause::transmission, /*latch=*/false, moved, events);
  }
}

void Simulation::retract_stage(std::vector<TraceEvent>& events) {
  const auto this_tick = static_cast<std::int64_t>(tick_);
  for (std::uint32_t e = 0; e < state_.size(); ++e)
    if (retract_at_[e] == this_tick) fall(ElementId{e}, events);
  settle_follower_falls(events);
}

std::vector<TraceEvent> Simulation::step() {
  std::vector<TraceEvent> events;
  const Subcycle now = subcycle_at_tick(tick_);

  // Stage 1: retractions due this tick, then follower falls.
  retract_stage(events);

  // Stage 2: clock pulses and scheduled input assertions for this subcycle.
  std::vector<ElementId> moved;
  for (ElementId e : clock_elements_by_phase_[subcycle_index(now)])
    rise(e, EventCause::clock_drive, /*latch=*/true, moved, events);
  for (auto it = pending_.begin(); it != pending_.end();) {
    const InputPort* port = circuit_->find_input(it->first);
    if (port->phase == now) {
      for (std::size_t i = 0; i < it->second.size(); ++i)
        if (it->second[i])
          rise(port->elements[i], EventCause::input_assert, /*latch=*/true, moved, events);
      it = pending_.erase(it);
    } else {
      ++it;
    }
  }
  // Asserted values become visible through merges and levers before
  // couplings are read.
  for (std::size_t i = 0; i < moved.size(); ++i)
    propagate_followers_of(moved[i], moved, events);

  // Stage 3: sample every coupling once, then let motion flow.
  const auto& relays = circuit_->relays();
  for (std::uint32_t r = 0; r < relays.size(); ++r)
    coupled_[r] = is_coupled(relays[r].kind, state_[relays[r].control.index]);
  std::fill(fired_.begin(), fired_.end(), false);

  for (std::size_t i = 0; i < moved.size(); ++i) {
    ElementId e = moved[i];
    for (std::uint32_t r : relays_by_actuator_[e.index]) {
      if (fired_[r] || !coupled_[r]) continue;
      fired_[r] = true;
      rise(relays[r].actuated, EventCause::transmission, /*latch=*/true, moved, events);
    }
    propagate_followers_of(e, moved, events);
  }

  ++tick_;
  return events;
}

std::map<std::string, Bits> Simulation::run_cycle(
    const std::vector<std::pair<std::string, Bits>>& inputs) {
  if (tick_ % 4 != 0)
    throw std::logic_error("run_cycle must start at a machine-cycle boundary");
  for (const auto& [port, bits] : inputs) set_input(port, bits);

  std::map<std::string, Bits> out;
  for (int i = 0; i < 4; ++i) {
    step();
    const Subcycle done = subcycle_at_tick(tick_ - 1);
    for (const Probe& p : circuit_->probes())
      if (p.sample_phase == done) out[p.name] = read_probe(p.name);
  }
  return out;
}

// The crank stops: two relaxation ticks process nothing but the pending
// retractions, after which a healthy machine is all zeros.
bool Simulation::check_return_to_zero() const {
  Simulation scratch = *this;
  scratch.mode_ = TraceMode::off;
  scratch.pending_.clear();
  std::vector<TraceEvent> ignored;
  for (int i = 0; i < 2; ++i) {
    scratch.retract_stage(ignored);
    ++scratch.tick_;
  }
  for (BitState s : scratch.state_)
    if (s == BitState::one) return false;
  return true;
}

Bits Simulation::read_probe(std::string_view name) const {
  const Probe* p = circuit_->find_probe(name);
  if (!p) throw std::invalid_argument("unknown probe '" + std::string(name) + "'");
  Bits bits(p->elements.size());
  for (std::size_t i = 0; i < p->elements.size(); ++i)
    bits[i] = state_[p->elements[i].index] == BitState::one;
  return bits;
}

void Simulation::write_trace_csv(std::ostream& out) const {
  out << "tick,cycle,subcycle,sim_time_s,element,state,cause\n";
  char time_buf[32];
  for (const TraceEvent& ev : trace_) {
    std::snprintf(time_buf, sizeof time_buf, "%.3f", ev.sim_time_s);
    out << ev.tick << ',' << ev.cycle << ',' << to_string(ev.subcycle) << ',' << time_buf
        << ',' << circuit_->element_name(ev.element) << ','
        << (ev.state == BitState::one ? '1' : '0') << ',' << to_string(ev.cause) << '\n';
  }
}

}  // namespace zrelay
