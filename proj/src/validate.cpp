#include "zrelay/validate.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>

namespace zrelay {
namespace {

struct Writer {
  enum class Kind { input, clock, relay, merge, lever } kind;
  std::uint32_t index = 0;  // port/relay/merge/lever index
  Subcycle phase = Subcycle::I;  // input/clock only
};

/// A way a control element can acquire a value during a cycle. Asserted
/// values (clock pulses, input ports) are visible to coupling sampling in
/// their own tick; transmitted values only from the following tick, because
/// couplings are sampled before motion propagates.
struct Producer {
  bool is_assert = false;
  Subcycle phase = Subcycle::I;                 // tick at which the value rises
  std::optional<std::uint32_t> relay_index;     // transmission producers only
};

std::string_view writer_desc(Writer::Kind k) {
  switch (k) {
    case Writer::Kind::input: return "input port";
    case Writer::Kind::clock: return "clock pulse";
    case Writer::Kind::relay: return "relay";
    case Writer::Kind::merge: return "rectified merge";
    case Writer::Kind::lever: return "lever";
  }
  return "";
}

class Validator {
 public:
  explicit Validator(const Circuit& c) : c_(c) {
    const std::size_t n = c_.elements().size();
    writers_.resize(n);
    motion_.resize(n);
    motion_state_.resize(n, State::fresh);
    producers_.resize(n);
    producer_state_.resize(n, State::fresh);

    for (std::uint32_t p = 0; p < c_.inputs().size(); ++p) {
      for (ElementId e : c_.inputs()[p].elements)
        writers_[e.index].push_back({Writer::Kind::input, p, c_.inputs()[p].phase});
    }
    for (std::uint32_t r = 0; r < c_.relays().size(); ++r) {
      const Relay& relay = c_.relays()[r];
      writers_[relay.actuated.index].push_back({Writer::Kind::relay, r});
      if (relay.drive)
        writers_[relay.actuator.index].push_back({Writer::Kind::clock, r, *relay.drive});
    }
    for (std::uint32_t m = 0; m < c_.merges().size(); ++m)
      writers_[c_.merges()[m].target.index].push_back({Writer::Kind::merge, m});
    for (std::uint32_t l = 0; l < c_.levers().size(); ++l)
      writers_[c_.levers()[l].to.index].push_back({Writer::Kind::lever, l});
  }

  std::vector<Hazard> run() {
    check_multi_drive();
    check_directions();
    check_merge_modes();
    check_motion_grounding();
    check_setup();
    check_depth();
    std::sort(hazards_.begin(), hazards_.end(), [](const Hazard& a, const Hazard& b) {
      if (a.kind != b.kind) return a.kind < b.kind;
      if (a.location != b.location) return a.location < b.location;
      return a.message < b.message;
    });
    return hazards_;
  }

 private:
  enum class State { fresh, busy, done };

  void add(HazardKind kind, std::string location, std::string message) {
    std::string key = std::string(to_string(kind)) + "|" + location + "|" + message;
    if (seen_.insert(key).second)
      hazards_.push_back({kind, std::move(location), std::move(message)});
  }

  const std::string& ename(ElementId e) const { return c_.element_name(e); }

  // An element may have one writer. Clock pulses at the same subcycle from
  // several relays sharing an actuator count as one.
  void check_multi_drive() {
    for (std::uint32_t e = 0; e < writers_.size(); ++e) {
      const auto& ws = writers_[e];
      if (ws.size() < 2) continue;
      std::size_t non_clock = 0;
      std::set<int> clock_phases;
      for (const Writer& w : ws) {
        if (w.kind == Writer::Kind::clock)
          clock_phases.insert(subcycle_index(w.phase));
        else
          ++non_clock;
      }
      if (clock_phases.size() > 1) {
        add(HazardKind::unrectified_multi_drive, ename(ElementId{e}),
            "element is clock-driven at more than one subcycle");
        continue;
      }
      if (non_clock + (clock_phases.empty() ? 0 : 1) > 1) {
        std::string drivers;
        for (const Writer& w : ws) {
          if (!drivers.empty()) drivers += ", ";
          drivers += writer_desc(w.kind);
          drivers += " '";
          drivers += writer_name(w);
          drivers += "'";
        }
        add(HazardKind::unrectified_multi_drive, ename(ElementId{e}),
            "element is driven by " + drivers +
                "; route multiple drivers through a rectified merge");
      }
    }
  }

  std::string writer_name(const Writer& w) const {
    switch (w.kind) {
      case Writer::Kind::input: return c_.inputs()[w.index].name;
      case Writer::Kind::clock: return c_.relays()[w.index].name;
      case Writer::Kind::relay: return c_.relays()[w.index].name;
      case Writer::Kind::merge: return c_.merges()[w.index].name;
      case Writer::Kind::lever: return c_.levers()[w.index].name;
    }
    return "";
  }

  void check_directions() {
    for (const Relay& r : c_.relays()) {
      Direction da = c_.element(r.actuator).dir;
      Direction dq = c_.element(r.actuated).dir;
      if (da != dq) {
        add(HazardKind::direction_mismatch, r.name,
            "actuator '" + ename(r.actuator) + "' moves " + std::string(to_string(da)) +
                " but actuated '" + ename(r.actuated) + "' moves " +
                std::string(to_string(dq)) + "; insert a lever");
      }
    }
    for (const RectifiedMerge& m : c_.merges()) {
      Direction dt = c_.element(m.target).dir;
      for (ElementId s : m.sources) {
        Direction ds = c_.element(s).dir;
        if (ds != dt) {
          add(HazardKind::direction_mismatch, m.name,
              "source '" + ename(s) + "' moves " + std::string(to_string(ds)) +
                  " but target '" + ename(m.target) + "' moves " +
                  std::string(to_string(dt)) + "; insert a lever");
        }
      }
    }
    for (const Lever& l : c_.levers()) {
      Direction expect = apply_lever(c_.element(l.from).dir, l.kind);
      Direction dt = c_.element(l.to).dir;
      if (expect != dt) {
        add(HazardKind::direction_mismatch, l.name,
            std::string(to_string(l.kind)) + " lever from '" + ename(l.from) + "' (" +
                std::string(to_string(c_.element(l.from).dir)) + ") yields " +
                std::string(to_string(expect)) + " but '" + ename(l.to) + "' moves " +
                std::string(to_string(dt)));
      }
    }
  }

  // Rectification is a push-only construct.
  void check_merge_modes() {
    for (const RectifiedMerge& m : c_.merges()) {
      for (ElementId s : m.sources) {
        for (const Writer& w : writers_[s.index]) {
          if (w.kind == Writer::Kind::relay &&
              c_.relays()[w.index].mode == DriveMode::pull) {
            add(HazardKind::unrectified_multi_drive, m.name,
                "pull relay '" + c_.relays()[w.index].name +
                    "' drives merge source '" + ename(s) +
                    "'; only pushed plates can be rectified");
          }
        }
      }
    }
  }

  // --- motion phases -------------------------------------------------------

  std::optional<Subcycle> relay_motion(std::uint32_t r) {
    const Relay& relay = c_.relays()[r];
    if (relay.drive) return relay.drive;
    return element_motion(relay.actuator);
  }

  std::optional<Subcycle> element_motion(ElementId e) {
    if (motion_state_[e.index] == State::done) return motion_[e.index];
    if (motion_state_[e.index] == State::busy) {
      add(HazardKind::dangling_reference, ename(e),
          "motion of this element depends on itself and never grounds in a clock pulse or input");
      return std::nullopt;
    }
    motion_state_[e.index] = State::busy;
    std::optional<Subcycle> result;
    for (const Writer& w : writers_[e.index]) {
      std::optional<Subcycle> mp;
      switch (w.kind) {
        case Writer::Kind::input: mp = c_.inputs()[w.index].phase; break;
        case Writer::Kind::clock: mp = w.phase; break;
        case Writer::Kind::relay: mp = relay_motion(w.index); break;
        case Writer::Kind::lever: mp = element_motion(c_.levers()[w.index].from); break;
        case Writer::Kind::merge: {
          const RectifiedMerge& m = c_.merges()[w.index];
          std::optional<Subcycle> agreed;
          for (ElementId s : m.sources) {
            auto sp = element_motion(s);
            if (!sp) continue;  // dead source, contributes nothing
            if (agreed && *agreed != *sp) {
              add(HazardKind::setup_violation, m.name,
                  "merge joins motion at subcycle " + std::string(to_string(*agreed)) +
                      " and subcycle " + std::string(to_string(*sp)) +
                      "; all sources of a merge must move together");
            } else {
              agreed = sp;
            }
          }
          mp = agreed;
          break;
        }
      }
      if (mp && !result) result = mp;
    }
    motion_state_[e.index] = State::done;
    motion_[e.index] = result;
    return result;
  }

  void check_motion_grounding() {
    for (std::uint32_t r = 0; r < c_.relays().size(); ++r) {
      const Relay& relay = c_.relays()[r];
      if (relay.drive) continue;
      const auto& ws = writers_[relay.actuator.index];
      bool has_chain = false;
      for (const Writer& w : ws) {
        if (w.kind == Writer::Kind::input) {
          add(HazardKind::dangling_reference, relay.name,
              "actuator '" + ename(relay.actuator) +
                  "' is an input element; an actuator must be clock-driven or chained "
                  "from another relay, merge or lever");
        } else {
          has_chain = true;
        }
      }
      if (ws.empty()) {
        add(HazardKind::dangling_reference, relay.name,
            "actuator '" + ename(relay.actuator) +
                "' is never moved by a clock pulse or chained motion");
      } else if (has_chain) {
        element_motion(relay.actuator);  // surfaces circular chains
      }
    }
    // Resolve every follower target once so circular merge/lever wiring is
    // reported even when nothing downstream consumes it.
    for (const RectifiedMerge& m : c_.merges()) element_motion(m.target);
    for (const Lever& l : c_.levers()) element_motion(l.to);
  }

  // --- setup rule ----------------------------------------------------------

  const std::vector<Producer>& producers(ElementId e) {
    if (producer_state_[e.index] == State::done) return producers_[e.index];
    if (producer_state_[e.index] == State::busy) {
      static const std::vector<Producer> empty;
      return empty;  // circular follower wiring, reported by element_motion
    }
    producer_state_[e.index] = State::busy;
    std::vector<Producer> result;
    for (const Writer& w : writers_[e.index]) {
      switch (w.kind) {
        case Writer::Kind::input:
          result.push_back({true, c_.inputs()[w.index].phase, std::nullopt});
          break;
        case Writer::Kind::clock:
          result.push_back({true, w.phase, std::nullopt});
          break;
        case Writer::Kind::relay: {
          if (auto mp = relay_motion(w.index))
            result.push_back({false, *mp, w.index});
          break;
        }
        case Writer::Kind::merge: {
          for (ElementId s : c_.merges()[w.index].sources) {
            const auto& ps = producers(s);
            result.insert(result.end(), ps.begin(), ps.end());
          }
          break;
        }
        case Writer::Kind::lever: {
          const auto& ps = producers(c_.levers()[w.index].from);
          result.insert(result.end(), ps.begin(), ps.end());
          break;
        }
      }
    }
    producer_state_[e.index] = State::done;
    producers_[e.index] = std::move(result);
    return producers_[e.index];
  }

  // An asserted value holds over {p, p+1}; a transmitted value is sampleable
  // only at p+1, its rise happening after couplings were read at p.
  static bool window_covers(const Producer& p, Subcycle drive) {
    if (p.is_assert)
      return drive == p.phase || drive == next_subcycle(p.phase);
    return drive == next_subcycle(p.phase);
  }

  void check_setup() {
    for (std::uint32_t r = 0; r < c_.relays().size(); ++r) {
      const Relay& relay = c_.relays()[r];
      auto mp = relay_motion(r);
      if (!mp) continue;  // ungrounded, reported elsewhere
      for (const Producer& p : producers(relay.control)) {
        if (!window_covers(p, *mp)) {
          std::string when = p.is_assert ? "asserted at subcycle "
                                         : "produced at subcycle ";
          add(HazardKind::setup_violation, relay.name,
              "control '" + ename(relay.control) + "' is " + when +
                  std::string(to_string(p.phase)) + " and is not held at drive subcycle " +
                  std::string(to_string(*mp)));
        }
      }
    }
  }

  // --- depth of dependent stages -------------------------------------------

  int depth(std::uint32_t r) {
    if (depth_state_[r] == State::done) return depth_[r];
    if (depth_state_[r] == State::busy) {
      add(HazardKind::depth_exceeded, c_.relays()[r].name,
          "dependency loop with no delay element; a value fed back to its own "
          "stage must cross a cycle boundary through a delay line");
      return 1000;
    }
    depth_state_[r] = State::busy;
    int best = 0;
    for (const Producer& p : producers(c_.relays()[r].control)) {
      if (!p.relay_index) continue;
      const Relay& pred = c_.relays()[*p.relay_index];
      if (pred.is_delay) continue;  // explicit cycle boundary
      best = std::max(best, depth(*p.relay_index));
    }
    depth_state_[r] = State::done;
    depth_[r] = 1 + best;
    return depth_[r];
  }

  void check_depth() {
    depth_.assign(c_.relays().size(), 0);
    depth_state_.assign(c_.relays().size(), State::fresh);
    for (std::uint32_t r = 0; r < c_.relays().size(); ++r) {
      int d = depth(r);
      if (c_.relays()[r].is_delay) continue;
      if (d > 3 && d < 1000) {
        add(HazardKind::depth_exceeded, c_.relays()[r].name,
            "stage depth " + std::to_string(d) +
                " exceeds 3 within one machine cycle; split the chain across "
                "cycles with a delay line");
      }
    }
  }

  const Circuit& c_;
  std::vector<std::vector<Writer>> writers_;
  std::vector<std::optional<Subcycle>> motion_;
  std::vector<State> motion_state_;
  std::vector<std::vector<Producer>> producers_;
  std::vector<State> producer_state_;
  std::vector<int> depth_;
  std::vector<State> depth_state_;
  std::vector<Hazard> hazards_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

std::vector<Hazard> validate(const Circuit& circuit) {
  return Validator(circuit).run();
}

}  // namespace zrelay
