#pragma once

// Gate macro library. Every macro expands to plain relays, merges and
// clock-driven actuators; generated element and relay names live under the
// macro's name followed by a dot, so expansions never collide.
//
// Phase conventions follow the common cycle: a macro driven at subcycle p
// samples its controls at p, so they must be asserted at p or produced one
// subcycle earlier. The adder cell computes its conjunction/disjunction at
// subcycle I, the carry at II (rippling with zero delay along the column
// chain), and the sum at III.

#include <span>
#include <string>
#include <vector>

#include "zrelay/circuit.hpp"

namespace zrelay {

/// NOT: a single negating relay. Output element is named `name`.
ElementId gate_not(Circuit& c, std::string name, ElementId x, Subcycle drive);

/// AND: two chained plain relays sharing one actuator motion.
ElementId gate_and(Circuit& c, std::string name, ElementId a, ElementId b, Subcycle drive);

/// OR: two pushed relays rectified onto one target.
ElementId gate_or(Circuit& c, std::string name, ElementId a, ElementId b, Subcycle drive);

/// XOR: the two complementary coupling chains (a and not-b, not-a and b)
/// rectified together.
ElementId gate_xor(Circuit& c, std::string name, ElementId a, ElementId b, Subcycle drive);

/// AND of any number of inputs as one serial chain transmitting a single
/// actuator motion within the drive subcycle, regardless of length.
ElementId conjunction_chain(Circuit& c, std::string name, std::span<const ElementId> xs,
                            Subcycle drive);

/// Carries the value of x forward exactly n subcycles from `start`, one
/// relay per subcycle with consecutive drive phases. The relays are marked
/// as delay elements, so the chain never counts toward stage depth.
/// n == 0 returns x itself.
ElementId delay_line(Circuit& c, std::string name, ElementId x, std::size_t n,
                     Subcycle start);

struct AdderCellPorts {
  ElementId a;
  ElementId b;
  ElementId carry_in;
  ElementId carry_out;
  ElementId sum;
};

/// One column of the adder. `a` must hold over subcycle I (a phase-IV or
/// phase-I value), `b` is asserted at I, `carry_in` must be an element that
/// moves at subcycle II. carry_out moves at II, sum at III.
AdderCellPorts adder_cell(Circuit& c, std::string name, ElementId a, ElementId b,
                          ElementId carry_in);

struct RippleAdder {
  std::vector<AdderCellPorts> cells;
  std::vector<ElementId> sum_elements;   // sum_elements[i] carries bit i
  ElementId carry_out;
  std::string sum_probe;
  std::string carry_probe;
};

/// Full ripple adder over existing operand elements. `carry_in_control` is a
/// value holding over subcycle II (typically a phase-II input port); it is
/// injected into the carry chain as motion by one extra relay. Adds no
/// probes; the caller decides how to observe the result.
RippleAdder ripple_adder_over(Circuit& c, std::string name,
                              std::span<const ElementId> a_bits,
                              std::span<const ElementId> b_bits,
                              ElementId carry_in_control);

/// Self-contained ripple adder: declares input ports a (phase IV), b
/// (phase I) and cin (width 1, phase II), and probes `sum` (sampled at the
/// end of subcycle III) and `carry` (end of II).
RippleAdder ripple_adder(Circuit& c, std::size_t width, std::string name = "add");

}  // namespace zrelay
