#pragma once

// Shared helpers for the test suites: structural circuit comparison for
// round-trip checks and a generator of random, legally-phased macro
// circuits for timing-discipline properties.

#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "zrelay/bits.hpp"
#include "zrelay/circuit.hpp"
#include "zrelay/macros.hpp"

namespace zrelay::testing {

/// Relay-level structural equality, independent of element id order.
inline bool same_structure(const Circuit& x, const Circuit& y) {
  auto element_map = [](const Circuit& c) {
    std::map<std::string, Direction> m;
    for (const Element& e : c.elements()) m.emplace(e.name, e.dir);
    return m;
  };
  auto relay_map = [](const Circuit& c) {
    std::map<std::string, std::tuple<std::string, std::string, std::string, int, int,
                                     int, bool>>
        m;
    for (const Relay& r : c.relays()) {
      m.emplace(r.name,
                std::make_tuple(c.element_name(r.control), c.element_name(r.actuator),
                                c.element_name(r.actuated), static_cast<int>(r.kind),
                                static_cast<int>(r.mode),
                                r.drive ? subcycle_index(*r.drive) : -1, r.is_delay));
    }
    return m;
  };
  auto merge_map = [](const Circuit& c) {
    std::map<std::string, std::pair<std::multiset<std::string>, std::string>> m;
    for (const RectifiedMerge& g : c.merges()) {
      std::multiset<std::string> sources;
      for (ElementId s : g.sources) sources.insert(c.element_name(s));
      m.emplace(g.name, std::make_pair(std::move(sources), c.element_name(g.target)));
    }
    return m;
  };
  auto lever_map = [](const Circuit& c) {
    std::map<std::string, std::tuple<std::string, std::string, int>> m;
    for (const Lever& l : c.levers())
      m.emplace(l.name, std::make_tuple(c.element_name(l.from), c.element_name(l.to),
                                        static_cast<int>(l.kind)));
    return m;
  };
  auto input_map = [](const Circuit& c) {
    std::map<std::string, std::pair<std::size_t, int>> m;
    for (const InputPort& p : c.inputs())
      m.emplace(p.name, std::make_pair(p.width, subcycle_index(p.phase)));
    return m;
  };
  auto probe_map = [](const Circuit& c) {
    std::map<std::string, std::pair<std::vector<std::string>, int>> m;
    for (const Probe& p : c.probes()) {
      std::vector<std::string> names;
      for (ElementId e : p.elements) names.push_back(c.element_name(e));
      m.emplace(p.name, std::make_pair(std::move(names), subcycle_index(p.sample_phase)));
    }
    return m;
  };
  return element_map(x) == element_map(y) && relay_map(x) == relay_map(y) &&
         merge_map(x) == merge_map(y) && lever_map(x) == lever_map(y) &&
         input_map(x) == input_map(y) && probe_map(x) == probe_map(y);
}

struct RandomCircuit {
  Circuit circuit{"rand"};
  std::vector<std::string> ports;   // all width 1
  std::vector<std::string> probes;
};

/// Randomly composed circuit using only the macro library, with every
/// operand placed at a phase that satisfies the setup rule. Always yields a
/// circuit that must validate clean.
inline RandomCircuit make_random_macro_circuit(std::mt19937& rng) {
  RandomCircuit rc;
  Circuit& c = rc.circuit;

  struct Value {
    ElementId element;
    bool asserted;  // input assert vs relay transmission
    Subcycle at;    // subcycle of the rise
    int depth;      // dependent stages so far; a gate may consume depth <= 2
  };
  std::vector<Value> pool;

  auto rand_phase = [&] { return subcycle_from_index(static_cast<int>(rng() % 4)); };
  auto window_has = [](const Value& v, Subcycle d) {
    return v.asserted ? (d == v.at || d == next_subcycle(v.at)) : d == next_subcycle(v.at);
  };
  auto new_input = [&](Subcycle phase) {
    std::string name = "in" + std::to_string(rc.ports.size());
    ElementId e = c.add_input(name, 1, phase).elements[0];
    rc.ports.push_back(name);
    pool.push_back({e, true, phase, 0});
    return pool.back();
  };

  std::uniform_int_distribution<int> port_count(1, 3), op_count(1, 6), op_kind(0, 5);
  for (int i = 0, n = port_count(rng); i < n; ++i) new_input(rand_phase());

  int ops = op_count(rng);
  for (int i = 0; i < ops; ++i) {
    Subcycle drive = rand_phase();
    auto operand = [&]() -> Value {
      std::vector<Value> fits;
      for (const Value& v : pool)
        if (window_has(v, drive) && v.depth <= 2) fits.push_back(v);
      if (fits.empty() || rng() % 8 == 0) return new_input(drive);
      return fits[rng() % fits.size()];
    };
    std::string name = "g" + std::to_string(i);
    switch (op_kind(rng)) {
      case 0: {
        Value x = operand();
        pool.push_back({gate_not(c, name, x.element, drive), false, drive, x.depth + 1});
        break;
      }
      case 1: {
        Value a = operand(), b = operand();
        pool.push_back({gate_and(c, name, a.element, b.element, drive), false, drive,
                        std::max(a.depth, b.depth) + 1});
        break;
      }
      case 2: {
        Value a = operand(), b = operand();
        pool.push_back({gate_or(c, name, a.element, b.element, drive), false, drive,
                        std::max(a.depth, b.depth) + 1});
        break;
      }
      case 3: {
        Value a = operand(), b = operand();
        pool.push_back({gate_xor(c, name, a.element, b.element, drive), false, drive,
                        std::max(a.depth, b.depth) + 1});
        break;
      }
      case 4: {
        std::vector<ElementId> xs;
        int depth = 0;
        for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k) {
          Value v = operand();
          xs.push_back(v.element);
          depth = std::max(depth, v.depth);
        }
        pool.push_back({conjunction_chain(c, name, xs, drive), false, drive, depth + 1});
        break;
      }
      case 5: {
        std::size_t n = rng() % 5;
        Value src = operand();
        ElementId out = delay_line(c, name, src.element, n, drive);
        if (n > 0) {
          Subcycle last = subcycle_from_index(subcycle_index(drive) + static_cast<int>(n) - 1);
          pool.push_back({out, false, last, 0});  // a delay line restarts the count
        }
        break;
      }
    }
  }

  // Probe a couple of produced values at the very tick they rise.
  std::size_t probed = 0;
  for (auto it = pool.rbegin(); it != pool.rend() && probed < 2; ++it) {
    if (it->asserted) continue;
    std::string name = "p" + std::to_string(probed++);
    c.add_probe(name, {it->element}, it->at);
    rc.probes.push_back(name);
  }
  if (rc.probes.empty()) {
    c.add_probe("p0", {pool.front().element}, pool.front().at);
    rc.probes.push_back("p0");
  }
  return rc;
}

/// Random input bits, one per port.
inline std::vector<std::pair<std::string, Bits>> random_inputs(const RandomCircuit& rc,
                                                               std::mt19937& rng) {
  std::vector<std::pair<std::string, Bits>> inputs;
  for (const std::string& port : rc.ports) inputs.emplace_back(port, Bits{rng() % 2 == 1});
  return inputs;
}

}  // namespace zrelay::testing
