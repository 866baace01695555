#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "zrelay/engine.hpp"
#include "zrelay/macros.hpp"
#include "zrelay/validate.hpp"

using namespace zrelay;

namespace {

// Operands sit one subcycle before the drive, or co-timed with it when the
// setup phase would fall outside the running cycle (drive IV).
Subcycle operand_phase(Subcycle drive) {
  Subcycle setup = setup_phase(drive);
  return cycle_offset(setup) <= cycle_offset(drive) ? setup : drive;
}

using BinaryMacro = ElementId (*)(Circuit&, std::string, ElementId, ElementId, Subcycle);

bool run_binary(BinaryMacro macro, bool va, bool vb, Subcycle drive) {
  Circuit c("g");
  Subcycle in = operand_phase(drive);
  ElementId a = c.add_input("a", 1, in).elements[0];
  ElementId b = c.add_input("b", 1, in).elements[0];
  ElementId q = macro(c, "q", a, b, drive);
  c.add_probe("out", {q}, drive);
  REQUIRE(validate(c).empty());
  Simulation sim(c, {}, Simulation::TraceMode::off);
  return sim.run_cycle({{"a", Bits{va}}, {"b", Bits{vb}}}).at("out")[0];
}

bool run_not(bool vx, Subcycle drive) {
  Circuit c("g");
  ElementId x = c.add_input("x", 1, operand_phase(drive)).elements[0];
  c.add_probe("out", {gate_not(c, "q", x, drive)}, drive);
  REQUIRE(validate(c).empty());
  Simulation sim(c, {}, Simulation::TraceMode::off);
  return sim.run_cycle({{"x", Bits{vx}}}).at("out")[0];
}

constexpr Subcycle kDrives[] = {Subcycle::I, Subcycle::II, Subcycle::III, Subcycle::IV};

}  // namespace

TEST_CASE("NOT gate matches its truth table at every drive subcycle") {
  for (Subcycle d : kDrives) {
    CHECK(run_not(false, d) == true);
    CHECK(run_not(true, d) == false);
  }
}

TEST_CASE("AND gate matches its truth table at every drive subcycle") {
  for (Subcycle d : kDrives)
    for (int v = 0; v < 4; ++v)
      CHECK(run_binary(gate_and, v & 1, v & 2, d) == ((v & 1) && (v & 2)));
}

TEST_CASE("OR gate matches its truth table at every drive subcycle") {
  for (Subcycle d : kDrives)
    for (int v = 0; v < 4; ++v)
      CHECK(run_binary(gate_or, v & 1, v & 2, d) == ((v & 1) || (v & 2)));
}

TEST_CASE("XOR gate matches its truth table at every drive subcycle") {
  for (Subcycle d : kDrives)
    for (int v = 0; v < 4; ++v)
      CHECK(run_binary(gate_xor, v & 1, v & 2, d) == (bool(v & 1) != bool(v & 2)));
}

TEST_CASE("conjunction chains compute the AND of all inputs, exhaustively") {
  for (std::size_t k = 1; k <= 10; ++k) {
    Circuit c("chain");
    const std::vector<ElementId> xs = c.add_input("xs", k, Subcycle::I).elements;
    c.add_probe("out", {conjunction_chain(c, "q", xs, Subcycle::II)}, Subcycle::II);
    REQUIRE(validate(c).empty());
    Simulation sim(c, {}, Simulation::TraceMode::off);

    for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
      sim.reset();
      bool got = sim.run_cycle({{"xs", bits_from_value(v, k)}}).at("out")[0];
      CHECK(got == (v == (std::uint64_t{1} << k) - 1));
    }
  }
}

TEST_CASE("a one-relay chain copies its input one subcycle later") {
  Circuit c("copy");
  ElementId x = c.add_input("x", 1, Subcycle::I).elements[0];
  std::vector<ElementId> xs{x};
  c.add_probe("out", {conjunction_chain(c, "q", xs, Subcycle::II)}, Subcycle::II);
  Simulation sim(c);
  CHECK(sim.run_cycle({{"x", Bits{true}}}).at("out")[0] == true);
  sim.reset();
  CHECK(sim.run_cycle({{"x", Bits{false}}}).at("out")[0] == false);
}

TEST_CASE("delay_line with n=0 returns the input element itself") {
  Circuit c("d0");
  ElementId x = c.add_input("x", 1, Subcycle::I).elements[0];
  CHECK(delay_line(c, "d", x, 0, Subcycle::II) == x);
  CHECK(c.relays().empty());
}

TEST_CASE("double negation over two subcycles restores the value") {
  for (bool v : {false, true}) {
    Circuit c("nn");
    ElementId x = c.add_input("x", 1, Subcycle::I).elements[0];
    ElementId n1 = gate_not(c, "n1", x, Subcycle::I);
    ElementId n2 = gate_not(c, "n2", n1, Subcycle::II);
    c.add_probe("out", {n2}, Subcycle::II);
    REQUIRE(validate(c).empty());
    Simulation sim(c, {}, Simulation::TraceMode::off);
    CHECK(sim.run_cycle({{"x", Bits{v}}}).at("out")[0] == v);
  }
}

TEST_CASE("adder cell follows the carry and sum case rules") {
  Circuit c("cell");
  ripple_adder(c, 1, "add");
  REQUIRE(validate(c).empty());
  Simulation sim(c, {}, Simulation::TraceMode::off);

  auto run_cell = [&](bool a, bool b, bool cin) {
    sim.reset();
    auto probes = sim.run_cycle({{"a", Bits{a}}, {"b", Bits{b}}, {"cin", Bits{cin}}});
    return std::pair<bool, bool>(probes.at("sum")[0], probes.at("carry")[0]);
  };

  // The carry is generated by (1,1) and propagated by a mixed pair.
  CHECK(run_cell(true, true, false) == std::make_pair(false, true));
  CHECK(run_cell(false, false, true) == std::make_pair(true, false));
  CHECK(run_cell(false, true, false) == std::make_pair(true, false));

  for (int v = 0; v < 8; ++v) {
    bool a = v & 1, b = v & 2, cin = v & 4;
    auto [sum, carry] = run_cell(a, b, cin);
    CHECK(sum == ((a != b) != cin));
    CHECK(carry == ((a && b) || ((a || b) && cin)));
  }
}

TEST_CASE("4-bit ripple adder worked examples") {
  Circuit c("adder4");
  ripple_adder(c, 4);
  REQUIRE(validate(c).empty());
  Simulation sim(c, {}, Simulation::TraceMode::off);

  auto add4 = [&](std::uint64_t a, std::uint64_t b) {
    sim.reset();
    auto probes = sim.run_cycle(
        {{"a", bits_from_value(a, 4)}, {"b", bits_from_value(b, 4)}, {"cin", Bits{false}}});
    return std::pair<std::uint64_t, bool>(bits_value(probes.at("sum")),
                                          probes.at("carry")[0]);
  };

  CHECK(add4(10, 6) == std::make_pair(std::uint64_t{0}, true));  // overflow exactly
  CHECK(add4(3, 1) == std::make_pair(std::uint64_t{4}, false));
  CHECK(add4(0, 0) == std::make_pair(std::uint64_t{0}, false));
}

TEST_CASE("back-to-back additions pipeline cleanly without resets") {
  Circuit c("adder6");
  ripple_adder(c, 6);
  Simulation sim(c, {}, Simulation::TraceMode::off);
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    std::uint64_t a = rng() % 64, b = rng() % 64;
    bool cin = rng() % 2;
    auto probes = sim.run_cycle(
        {{"a", bits_from_value(a, 6)}, {"b", bits_from_value(b, 6)}, {"cin", Bits{cin}}});
    std::uint64_t total = a + b + cin;
    CHECK(bits_value(probes.at("sum")) == total % 64);
    CHECK(probes.at("carry")[0] == (total >= 64));
  }
}

TEST_CASE("8-bit ripple adder zero case") {
  Circuit c("adder8");
  ripple_adder(c, 8);
  Simulation sim(c, {}, Simulation::TraceMode::off);
  auto probes = sim.run_cycle({{"a", bits_from_value(0, 8)}, {"b", bits_from_value(0, 8)}});
  CHECK(bits_value(probes.at("sum")) == 0);
  CHECK(probes.at("carry")[0] == false);
}

TEST_CASE("macro expansion never collides on names") {
  Circuit c("many");
  ElementId x = c.add_input("x", 1, Subcycle::I).elements[0];
  ElementId y = c.add_input("y", 1, Subcycle::I).elements[0];
  for (int i = 0; i < 20; ++i)
    gate_xor(c, "x" + std::to_string(i), x, y, Subcycle::II);
  CHECK(c.relays().size() == 80);
  // Reusing a name throws instead of silently renaming.
  CHECK_THROWS_AS(gate_not(c, "x0", x, Subcycle::II), CircuitError);
}

TEST_CASE("the macro library validates clean across widths") {
  for (std::size_t w : {1u, 2u, 3u, 4u}) {
    Circuit c("a" + std::to_string(w));
    ripple_adder(c, w);
    CHECK(validate(c).empty());
  }
}
