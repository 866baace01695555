#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zrelay/engine.hpp"
#include "zrelay/macros.hpp"
#include "zrelay/oracle.hpp"
#include "zrelay/validate.hpp"

using namespace zrelay;
using namespace zrelay::oracle;

TEST_CASE("boolean evaluation of elementary nets") {
  NetBuilder nb;
  NodeId x = nb.input("x");
  nb.output("not", {nb.not_op(x)});
  LogicNet net = nb.build();
  CHECK(eval_boolean(net, {{"x", false}}).at("not") == Bits{true});
  CHECK(eval_boolean(net, {{"x", true}}).at("not") == Bits{false});

  NetBuilder nb2;
  NodeId a = nb2.input("a"), b = nb2.input("b");
  nb2.output("and", {nb2.and_op(a, b)});
  LogicNet net2 = nb2.build();
  CHECK(eval_boolean(net2, {{"a", true}, {"b", true}}).at("and") == Bits{true});
  CHECK(eval_boolean(net2, {{"a", true}, {"b", false}}).at("and") == Bits{false});
}

TEST_CASE("the one-column adder net follows the case rules") {
  LogicNet net = adder_net(1);
  auto out = eval_boolean(net, {{"a", true}, {"b", false}, {"cin", true}});
  CHECK(out.at("sum") == Bits{false});
  CHECK(out.at("carry") == Bits{true});
  out = eval_boolean(net, {{"a", false}, {"b", false}, {"cin", true}});
  CHECK(out.at("sum") == Bits{true});
  CHECK(out.at("carry") == Bits{false});
}

TEST_CASE("eval_boolean requires a complete assignment and is repeatable") {
  LogicNet net = adder_net(1);
  CHECK_THROWS_AS(eval_boolean(net, {{"a", true}}), std::invalid_argument);
  std::map<std::string, bool> assignment{{"a", true}, {"b", true}, {"cin", false}};
  auto first = eval_boolean(net, assignment);
  auto second = eval_boolean(net, assignment);
  CHECK(first == second);
}

TEST_CASE("int_add reference values") {
  auto [sum, carry] = int_add(10, 6, 4);
  CHECK(bits_to_string(sum) == "0000");
  CHECK(carry == true);

  std::tie(sum, carry) = int_add(0, 0, 8);
  CHECK(bits_to_string(sum) == "00000000");
  CHECK(carry == false);

  std::tie(sum, carry) = int_add(5, 3, 8);
  CHECK(bits_to_string(sum) == "00001000");
  CHECK(carry == false);

  CHECK_THROWS_AS(int_add(16, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(int_add(0, 99, 4), std::invalid_argument);
}

TEST_CASE("exhaustive equivalence: XOR macro against its boolean net") {
  Circuit c("x");
  ElementId a = c.add_input("a", 1, Subcycle::I).elements[0];
  ElementId b = c.add_input("b", 1, Subcycle::I).elements[0];
  c.add_probe("out", {gate_xor(c, "q", a, b, Subcycle::II)}, Subcycle::II);

  NetBuilder nb;
  nb.output("out", {nb.xor_op(nb.input("a"), nb.input("b"))});
  EquivalenceReport report = exhaustive_equivalence(c, nb.build(), {"a", "b"});
  CHECK(report.cases == 4);
  CHECK(report.ok());
}

TEST_CASE("exhaustive equivalence: adder cell against its net, 8 cases") {
  Circuit c("cell");
  ripple_adder(c, 1, "add");
  EquivalenceReport report = exhaustive_equivalence(c, adder_net(1), {"a", "b", "cin"});
  CHECK(report.cases == 8);
  CHECK(report.ok());
}

TEST_CASE("a wrong reference net is reported case by case") {
  Circuit c("orc");
  ElementId a = c.add_input("a", 1, Subcycle::I).elements[0];
  ElementId b = c.add_input("b", 1, Subcycle::I).elements[0];
  c.add_probe("out", {gate_or(c, "q", a, b, Subcycle::II)}, Subcycle::II);

  NetBuilder nb;  // claims the circuit computes AND
  nb.output("out", {nb.and_op(nb.input("a"), nb.input("b"))});
  EquivalenceReport report = exhaustive_equivalence(c, nb.build(), {"a", "b"});
  CHECK(report.cases == 4);
  REQUIRE(report.mismatches.size() == 2);  // the two mixed assignments
  CHECK(report.mismatches[0].probe == "out");
  CHECK_FALSE(report.ok());
}

TEST_CASE("a mis-phased circuit is refused before any sweep runs") {
  Circuit c("late");
  ElementId a = c.add_input("a", 1, Subcycle::I).elements[0];
  ElementId b = c.add_input("b", 1, Subcycle::I).elements[0];
  // Controls are long retracted by subcycle III; the load inside the sweep
  // must refuse the circuit, so no report is produced.
  c.add_probe("out", {gate_and(c, "q", a, b, Subcycle::III)}, Subcycle::III);
  NetBuilder nb;
  nb.output("out", {nb.and_op(nb.input("a"), nb.input("b"))});
  CHECK_THROWS_AS(exhaustive_equivalence(c, nb.build(), {"a", "b"}), HazardError);
}

TEST_CASE("sweeps are capped at 20 input bits") {
  Circuit c("wide");
  c.add_input("a", 11, Subcycle::I);
  c.add_input("b", 10, Subcycle::I);
  ElementId x = c.find_element("a[0]").value();
  ElementId y = c.find_element("b[0]").value();
  c.add_probe("out", {gate_and(c, "q", x, y, Subcycle::II)}, Subcycle::II);
  NetBuilder nb;
  nb.output("out", {nb.and_op(nb.input("a[0]"), nb.input("b[0]"))});
  CHECK_THROWS_AS(exhaustive_equivalence(c, nb.build(), {"a", "b"}), std::invalid_argument);
}

TEST_CASE("equivalence sweeps can fan out across workers") {
  Circuit c("adder4");
  ripple_adder(c, 4);
  EquivalenceReport serial = exhaustive_equivalence(c, adder_net(4), {"a", "b", "cin"}, 1, 1);
  EquivalenceReport parallel =
      exhaustive_equivalence(c, adder_net(4), {"a", "b", "cin"}, 1, 4);
  CHECK(serial.cases == 512);
  CHECK(parallel.cases == 512);
  CHECK(serial.ok());
  CHECK(parallel.ok());
}
