#pragma once

// Independent correctness references: a phase-free boolean network built
// from macro-level structure (never from elaborated relays), a plain
// integer-addition reference, and an exhaustive equivalence driver that
// sweeps every input assignment through the simulator and compares probes
// against the boolean evaluation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zrelay/bits.hpp"
#include "zrelay/circuit.hpp"

namespace zrelay::oracle {

struct NodeId {
  std::uint32_t index = 0;
};

struct LogicNet {
  enum class Op : std::uint8_t { input, constant, not_op, and_op, or_op, xor_op };
  struct Node {
    Op op = Op::constant;
    std::uint32_t a = 0, b = 0;  // operand node indices
    bool value = false;          // constants
    std::string input_name;      // inputs, named per bit ("x" or "x[3]")
  };
  std::vector<Node> nodes;  // operands always precede their users
  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> outputs;
};

/// Incremental builder keeping the node list topologically ordered.
class NetBuilder {
 public:
  NodeId input(std::string bit_name);
  NodeId constant(bool value);
  NodeId not_op(NodeId x);
  NodeId and_op(NodeId a, NodeId b);
  NodeId or_op(NodeId a, NodeId b);
  NodeId xor_op(NodeId a, NodeId b);
  void output(std::string name, std::vector<NodeId> bits);
  LogicNet build() { return std::move(net_); }

 private:
  NodeId push(LogicNet::Node node);
  LogicNet net_;
};

/// Evaluates the net over a per-bit input assignment. Throws
/// std::invalid_argument when an input bit is missing from the assignment.
std::map<std::string, Bits> eval_boolean(const LogicNet& net,
                                         const std::map<std::string, bool>& assignment);

struct Mismatch {
  std::uint64_t assignment = 0;  // packed input counter, first port's bit 0 lowest
  std::string probe;
  Bits expected;
  Bits got;
};

struct EquivalenceReport {
  std::uint64_t cases = 0;
  std::vector<Mismatch> mismatches;
  double elapsed_s = 0.0;
  bool ok() const { return mismatches.empty(); }
};

/// Simulates every assignment of the named ports for `latency_cycles`
/// machine cycles (inputs applied on the first) and compares each net output
/// against the circuit probe of the same name. Total input width is capped
/// at 20 bits. `threads` 0 picks a sensible worker count.
EquivalenceReport exhaustive_equivalence(const Circuit& circuit, const LogicNet& net,
                                         const std::vector<std::string>& input_ports,
                                         int latency_cycles = 1, unsigned threads = 1);

/// (a + b) mod 2^width as bits plus the carry-out. Operands must fit the
/// width.
std::pair<Bits, bool> int_add(std::uint64_t a, std::uint64_t b, std::size_t width);

/// Textbook ripple-carry network with per-bit inputs a[i], b[i] and a `cin`
/// input, outputs `sum` and `carry`. Useful as the boolean side of adder
/// equivalence checks.
LogicNet adder_net(std::size_t width);

}  // namespace zrelay::oracle
