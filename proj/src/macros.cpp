#include "zrelay/macros.hpp"

#include <stdexcept>

namespace zrelay {
namespace {

std::string sub(const std::string& name, std::string_view suffix) {
  std::string s = name;
  s += '.';
  s += suffix;
  return s;
}

}  // namespace

ElementId gate_not(Circuit& c, std::string name, ElementId x, Subcycle drive) {
  Direction dir = pulse_direction(drive);
  ElementId m = c.add_element(sub(name, "m"), dir);
  ElementId q = c.add_element(name, dir);
  c.add_relay({sub(name, "r"), x, m, q, CouplingKind::coupled_when_zero,
               DriveMode::push, drive});
  return q;
}

ElementId gate_and(Circuit& c, std::string name, ElementId a, ElementId b,
                   Subcycle drive) {
  Direction dir = pulse_direction(drive);
  ElementId m0 = c.add_element(sub(name, "m0"), dir);
  ElementId m1 = c.add_element(sub(name, "m1"), dir);
  ElementId q = c.add_element(name, dir);
  c.add_relay({sub(name, "r0"), a, m0, m1, CouplingKind::coupled_when_one,
               DriveMode::push, drive});
  c.add_relay({sub(name, "r1"), b, m1, q, CouplingKind::coupled_when_one,
               DriveMode::push, std::nullopt});
  return q;
}

ElementId gate_or(Circuit& c, std::string name, ElementId a, ElementId b,
                  Subcycle drive) {
  Direction dir = pulse_direction(drive);
  ElementId m = c.add_element(sub(name, "m"), dir);
  ElementId t0 = c.add_element(sub(name, "t0"), dir);
  ElementId t1 = c.add_element(sub(name, "t1"), dir);
  ElementId q = c.add_element(name, dir);
  c.add_relay({sub(name, "r0"), a, m, t0, CouplingKind::coupled_when_one,
               DriveMode::push, drive});
  c.add_relay({sub(name, "r1"), b, m, t1, CouplingKind::coupled_when_one,
               DriveMode::push, drive});
  c.add_merge(sub(name, "merge"), {t0, t1}, q);
  return q;
}

ElementId gate_xor(Circuit& c, std::string name, ElementId a, ElementId b,
                   Subcycle drive) {
  Direction dir = pulse_direction(drive);
  ElementId m = c.add_element(sub(name, "m"), dir);
  ElementId u0 = c.add_element(sub(name, "u0"), dir);
  ElementId u1 = c.add_element(sub(name, "u1"), dir);
  ElementId t0 = c.add_element(sub(name, "t0"), dir);
  ElementId t1 = c.add_element(sub(name, "t1"), dir);
  ElementId q = c.add_element(name, dir);
  c.add_relay({sub(name, "r0"), a, m, u0, CouplingKind::coupled_when_one,
               DriveMode::push, drive});
  c.add_relay({sub(name, "r1"), b, u0, t0, CouplingKind::coupled_when_zero,
               DriveMode::push, std::nullopt});
  c.add_relay({sub(name, "r2"), a, m, u1, CouplingKind::coupled_when_zero,
               DriveMode::push, drive});
  c.add_relay({sub(name, "r3"), b, u1, t1, CouplingKind::coupled_when_one,
               DriveMode::push, std::nullopt});
  c.add_merge(sub(name, "merge"), {t0, t1}, q);
  return q;
}

ElementId conjunction_chain(Circuit& c, std::string name, std::span<const ElementId> xs,
                            Subcycle drive) {
  if (xs.empty()) throw std::invalid_argument("conjunction_chain needs at least one input");
  Direction dir = pulse_direction(drive);
  ElementId prev = c.add_element(sub(name, "m"), dir);
  ElementId clock = prev;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool last = i + 1 == xs.size();
    ElementId out = last ? c.add_element(name, dir)
                         : c.add_element(sub(name, "m" + std::to_string(i + 1)), dir);
    c.add_relay({sub(name, "r" + std::to_string(i)), xs[i], prev, out,
                 CouplingKind::coupled_when_one, DriveMode::push,
                 prev == clock ? std::optional<Subcycle>(drive) : std::nullopt});
    prev = out;
  }
  return prev;
}

ElementId delay_line(Circuit& c, std::string name, ElementId x, std::size_t n,
                     Subcycle start) {
  if (n == 0) return x;
  ElementId prev = x;
  for (std::size_t i = 0; i < n; ++i) {
    Subcycle phase = subcycle_from_index(subcycle_index(start) + static_cast<int>(i));
    Direction dir = pulse_direction(phase);
    ElementId m = c.add_element(sub(name, "m" + std::to_string(i)), dir);
    bool last = i + 1 == n;
    ElementId out = last ? c.add_element(name, dir)
                         : c.add_element(sub(name, "d" + std::to_string(i)), dir);
    Relay relay{sub(name, "r" + std::to_string(i)), prev, m, out,
                CouplingKind::coupled_when_one, DriveMode::push, phase};
    relay.is_delay = true;
    c.add_relay(std::move(relay));
    prev = out;
  }
  return prev;
}

AdderCellPorts adder_cell(Circuit& c, std::string name, ElementId a, ElementId b,
                          ElementId carry_in) {
  // Stage I: conjunction and disjunction of the operand bits. The operands
  // retract before subcycle II, so everything downstream works from these.
  ElementId both = gate_and(c, sub(name, "ab"), a, b, Subcycle::I);
  ElementId either = gate_or(c, sub(name, "aob"), a, b, Subcycle::I);

  Direction dir2 = pulse_direction(Subcycle::II);
  // Stage II: re-derive the exclusive-or (either and not both) so it is
  // still held when the sum stage samples at III.
  ElementId xm = c.add_element(sub(name, "x.m"), dir2);
  ElementId xu = c.add_element(sub(name, "x.u"), dir2);
  ElementId differ = c.add_element(sub(name, "x"), dir2);
  c.add_relay({sub(name, "x.r0"), either, xm, xu, CouplingKind::coupled_when_one,
               DriveMode::push, Subcycle::II});
  c.add_relay({sub(name, "x.r1"), both, xu, differ, CouplingKind::coupled_when_zero,
               DriveMode::push, std::nullopt});

  // Stage II: carry. Generated by the conjunction, or propagated by letting
  // the incoming carry motion push through a relay gated by the disjunction;
  // the merge of the two is the outgoing carry, still within subcycle II.
  ElementId gm = c.add_element(sub(name, "g.m"), dir2);
  ElementId gen = c.add_element(sub(name, "g"), dir2);
  c.add_relay({sub(name, "g.r"), both, gm, gen, CouplingKind::coupled_when_one,
               DriveMode::push, Subcycle::II});
  ElementId prop = c.add_element(sub(name, "p"), c.element(carry_in).dir);
  c.add_relay({sub(name, "p.r"), either, carry_in, prop, CouplingKind::coupled_when_one,
               DriveMode::push, std::nullopt});
  ElementId carry_out = c.add_element(sub(name, "cout"), dir2);
  c.add_merge(sub(name, "cm"), {gen, prop}, carry_out);

  // Stage III: sum bit. One if exactly one of (operands differ, carry_in)
  // holds, realized as the two complementary chains rectified together.
  Direction dir3 = pulse_direction(Subcycle::III);
  ElementId sm = c.add_element(sub(name, "s.m"), dir3);
  ElementId su0 = c.add_element(sub(name, "s.u0"), dir3);
  ElementId su1 = c.add_element(sub(name, "s.u1"), dir3);
  ElementId st0 = c.add_element(sub(name, "s.t0"), dir3);
  ElementId st1 = c.add_element(sub(name, "s.t1"), dir3);
  ElementId sum = c.add_element(sub(name, "d"), dir3);
  c.add_relay({sub(name, "s.r0"), differ, sm, su0, CouplingKind::coupled_when_one,
               DriveMode::push, Subcycle::III});
  c.add_relay({sub(name, "s.r1"), carry_in, su0, st0, CouplingKind::coupled_when_zero,
               DriveMode::push, std::nullopt});
  c.add_relay({sub(name, "s.r2"), differ, sm, su1, CouplingKind::coupled_when_zero,
               DriveMode::push, Subcycle::III});
  c.add_relay({sub(name, "s.r3"), carry_in, su1, st1, CouplingKind::coupled_when_one,
               DriveMode::push, std::nullopt});
  c.add_merge(sub(name, "sm"), {st0, st1}, sum);

  return AdderCellPorts{a, b, carry_in, carry_out, sum};
}

RippleAdder ripple_adder_over(Circuit& c, std::string name,
                              std::span<const ElementId> a_bits,
                              std::span<const ElementId> b_bits,
                              ElementId carry_in_control) {
  if (a_bits.empty() || a_bits.size() != b_bits.size())
    throw std::invalid_argument("ripple_adder_over: operand widths must match and be >= 1");

  // Turn the carry-in value into motion at subcycle II so every cell sees a
  // uniform moving carry element.
  Direction dir2 = pulse_direction(Subcycle::II);
  ElementId im = c.add_element(sub(name, "ci.m"), dir2);
  ElementId carry = c.add_element(sub(name, "ci"), dir2);
  c.add_relay({sub(name, "ci.r"), carry_in_control, im, carry,
               CouplingKind::coupled_when_one, DriveMode::push, Subcycle::II});

  RippleAdder result;
  for (std::size_t i = 0; i < a_bits.size(); ++i) {
    AdderCellPorts cell =
        adder_cell(c, sub(name, "c" + std::to_string(i)), a_bits[i], b_bits[i], carry);
    carry = cell.carry_out;
    result.sum_elements.push_back(cell.sum);
    result.cells.push_back(cell);
  }
  result.carry_out = carry;
  return result;
}

RippleAdder ripple_adder(Circuit& c, std::size_t width, std::string name) {
  if (width < 1) throw std::invalid_argument("ripple_adder: width must be >= 1");
  const std::vector<ElementId> a = c.add_input("a", width, Subcycle::IV).elements;
  const std::vector<ElementId> b = c.add_input("b", width, Subcycle::I).elements;
  const ElementId cin = c.add_input("cin", 1, Subcycle::II).elements[0];
  RippleAdder result = ripple_adder_over(c, std::move(name), a, b, cin);
  result.sum_probe = "sum";
  result.carry_probe = "carry";
  c.add_probe(result.sum_probe, result.sum_elements, Subcycle::III);
  c.add_probe(result.carry_probe, {result.carry_out}, Subcycle::II);
  return result;
}

}  // namespace zrelay
