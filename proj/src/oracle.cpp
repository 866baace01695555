#include "zrelay/oracle.hpp"

#include <chrono>
#include <future>
#include <stdexcept>
#include <thread>

#include "zrelay/engine.hpp"

namespace zrelay::oracle {

NodeId NetBuilder::push(LogicNet::Node node) {
  net_.nodes.push_back(std::move(node));
  return NodeId{static_cast<std::uint32_t>(net_.nodes.size() - 1)};
}

NodeId NetBuilder::input(std::string bit_name) {
  LogicNet::Node n;
  n.op = LogicNet::Op::input;
  n.input_name = std::move(bit_name);
  return push(std::move(n));
}

NodeId NetBuilder::constant(bool value) {
  LogicNet::Node n;
  n.op = LogicNet::Op::constant;
  n.value = value;
  return push(std::move(n));
}

NodeId NetBuilder::not_op(NodeId x) {
  LogicNet::Node n;
  n.op = LogicNet::Op::not_op;
  n.a = x.index;
  return push(std::move(n));
}

NodeId NetBuilder::and_op(NodeId a, NodeId b) {
  LogicNet::Node n;
  n.op = LogicNet::Op::and_op;
  n.a = a.index;
  n.b = b.index;
  return push(std::move(n));
}

NodeId NetBuilder::or_op(NodeId a, NodeId b) {
  LogicNet::Node n;
  n.op = LogicNet::Op::or_op;
  n.a = a.index;
  n.b = b.index;
  return push(std::move(n));
}

NodeId NetBuilder::xor_op(NodeId a, NodeId b) {
  LogicNet::Node n;
  n.op = LogicNet::Op::xor_op;
  n.a = a.index;
  n.b = b.index;
  return push(std::move(n));
}

void NetBuilder::output(std::string name, std::vector<NodeId> bits) {
  std::vector<std::uint32_t> idx;
  idx.reserve(bits.size());
  for (NodeId b : bits) idx.push_back(b.index);
  net_.outputs.emplace_back(std::move(name), std::move(idx));
}

std::map<std::string, Bits> eval_boolean(const LogicNet& net,
                                         const std::map<std::string, bool>& assignment) {
  std::vector<bool> value(net.nodes.size(), false);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const LogicNet::Node& n = net.nodes[i];
    switch (n.op) {
      case LogicNet::Op::input: {
        auto it = assignment.find(n.input_name);
        if (it == assignment.end())
          throw std::invalid_argument("missing input '" + n.input_name + "'");
        value[i] = it->second;
        break;
      }
      case LogicNet::Op::constant: value[i] = n.value; break;
      case LogicNet::Op::not_op: value[i] = !value[n.a]; break;
      case LogicNet::Op::and_op: value[i] = value[n.a] && value[n.b]; break;
      case LogicNet::Op::or_op: value[i] = value[n.a] || value[n.b]; break;
      case LogicNet::Op::xor_op: value[i] = value[n.a] != value[n.b]; break;
    }
  }
  std::map<std::string, Bits> out;
  for (const auto& [name, bits] : net.outputs) {
    Bits v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) v[i] = value[bits[i]];
    out[name] = std::move(v);
  }
  return out;
}

namespace {

std::string bit_name(const InputPort& port, std::size_t i) {
  if (port.width == 1) return port.name;
  return port.name + "[" + std::to_string(i) + "]";
}

EquivalenceReport sweep_range(const Circuit& circuit, const LogicNet& net,
                              const std::vector<const InputPort*>& ports,
                              int latency_cycles, std::uint64_t begin, std::uint64_t end) {
  EquivalenceReport report;
  Simulation sim(circuit, ClockConfig{}, Simulation::TraceMode::off);
  for (std::uint64_t n = begin; n < end; ++n) {
    sim.reset();
    std::map<std::string, bool> assignment;
    std::uint64_t v = n;
    std::vector<std::pair<std::string, Bits>> inputs;
    for (const InputPort* port : ports) {
      Bits bits(port->width);
      for (std::size_t i = 0; i < port->width; ++i) {
        bits[i] = v & 1u;
        assignment[bit_name(*port, i)] = bits[i];
        v >>= 1;
      }
      inputs.emplace_back(port->name, std::move(bits));
    }
    std::map<std::string, Bits> probes = sim.run_cycle(inputs);
    for (int extra = 1; extra < latency_cycles; ++extra) probes = sim.run_cycle();

    std::map<std::string, Bits> expected = eval_boolean(net, assignment);
    for (const auto& [name, bits] : expected) {
      auto it = probes.find(name);
      if (it == probes.end())
        throw std::invalid_argument("net output '" + name + "' has no matching probe");
      if (it->second != bits) report.mismatches.push_back({n, name, bits, it->second});
    }
    ++report.cases;
  }
  return report;
}

}  // namespace

EquivalenceReport exhaustive_equivalence(const Circuit& circuit, const LogicNet& net,
                                         const std::vector<std::string>& input_ports,
                                         int latency_cycles, unsigned threads) {
  std::vector<const InputPort*> ports;
  std::size_t total_width = 0;
  for (const std::string& name : input_ports) {
    const InputPort* p = circuit.find_input(name);
    if (!p) throw std::invalid_argument("unknown input port '" + name + "'");
    ports.push_back(p);
    total_width += p->width;
  }
  if (total_width > 20)
    throw std::invalid_argument("exhaustive sweep capped at 20 input bits, got " +
                                std::to_string(total_width));
  if (latency_cycles < 1) throw std::invalid_argument("latency must be >= 1 cycle");

  const std::uint64_t cases = std::uint64_t{1} << total_width;
  if (threads == 0)
    threads = cases < 4096 ? 1 : std::max(1u, std::thread::hardware_concurrency());

  auto start = std::chrono::steady_clock::now();
  EquivalenceReport report;
  if (threads <= 1) {
    report = sweep_range(circuit, net, ports, latency_cycles, 0, cases);
  } else {
    std::vector<std::future<EquivalenceReport>> parts;
    std::uint64_t chunk = (cases + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t lo = t * chunk;
      std::uint64_t hi = std::min(cases, lo + chunk);
      if (lo >= hi) break;
      parts.push_back(std::async(std::launch::async, [&, lo, hi] {
        return sweep_range(circuit, net, ports, latency_cycles, lo, hi);
      }));
    }
    for (auto& f : parts) {
      EquivalenceReport part = f.get();
      report.cases += part.cases;
      report.mismatches.insert(report.mismatches.end(), part.mismatches.begin(),
                               part.mismatches.end());
    }
  }
  report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::pair<Bits, bool> int_add(std::uint64_t a, std::uint64_t b, std::size_t width) {
  if (width == 0 || width > 63) throw std::invalid_argument("width must be in 1..63");
  const std::uint64_t limit = std::uint64_t{1} << width;
  if (a >= limit || b >= limit)
    throw std::invalid_argument("operand does not fit in " + std::to_string(width) + " bits");
  std::uint64_t total = a + b;
  return {bits_from_value(total % limit, width), total >= limit};
}

LogicNet adder_net(std::size_t width) {
  NetBuilder nb;
  std::vector<NodeId> a, b, sum;
  for (std::size_t i = 0; i < width; ++i) {
    std::string suffix = width == 1 ? "" : "[" + std::to_string(i) + "]";
    a.push_back(nb.input("a" + suffix));
    b.push_back(nb.input("b" + suffix));
  }
  NodeId carry = nb.input("cin");
  for (std::size_t i = 0; i < width; ++i) {
    NodeId half = nb.xor_op(a[i], b[i]);
    sum.push_back(nb.xor_op(half, carry));
    carry = nb.or_op(nb.and_op(a[i], b[i]), nb.and_op(half, carry));
  }
  nb.output("sum", sum);
  nb.output("carry", {carry});
  return nb.build();
}

}  // namespace zrelay::oracle
