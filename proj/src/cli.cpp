#include "zrelay/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "zrelay/bits.hpp"
#include "zrelay/engine.hpp"
#include "zrelay/macros.hpp"
#include "zrelay/ndl.hpp"
#include "zrelay/oracle.hpp"

namespace zrelay::cli {
namespace {

struct Checked {
  ndl::NdlAst ast;
  Circuit circuit;
};

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot read '" << path << "'\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_hazard(std::ostream& err, const ndl::ElabHazard& h) {
  err << format_hazard(h.hazard);
  if (h.span) err << " (line " << h.span->line << ")";
  err << '\n';
}

/// Parse + elaborate; on failure prints to err and returns the exit code.
std::variant<Checked, int> check_file(const std::string& path, std::ostream& out,
                                      std::ostream& err, bool print_summary) {
  auto text = read_file(path, err);
  if (!text) return exit_usage;
  ndl::ParseResult parsed = ndl::parse(*text);
  if (const auto* e = std::get_if<ndl::ParseError>(&parsed)) {
    err << path << ": parse error\n" << ndl::render_error(*e, *text) << '\n';
    return exit_parse_error;
  }
  ndl::NdlAst ast = std::get<ndl::NdlAst>(std::move(parsed));
  ndl::ElabResult elaborated = ndl::elaborate(ast);
  if (const auto* hazards = std::get_if<std::vector<ndl::ElabHazard>>(&elaborated)) {
    for (const auto& h : *hazards) print_hazard(err, h);
    if (print_summary) out << hazards->size() << " hazards\n";
    return exit_hazards;
  }
  if (print_summary) out << "0 hazards\n";
  return Checked{std::move(ast), std::get<Circuit>(std::move(elaborated))};
}

std::optional<std::pair<std::string, Bits>> parse_input_flag(const std::string& text,
                                                             std::ostream& err) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    err << "bad --input '" << text << "', expected NAME=BITS\n";
    return std::nullopt;
  }
  auto bits = bits_from_string(text.substr(eq + 1));
  if (!bits) {
    err << "bad --input '" << text << "', bits must be 0s and 1s\n";
    return std::nullopt;
  }
  return std::make_pair(text.substr(0, eq), std::move(*bits));
}

void print_probes(std::ostream& out, const Circuit& circuit, std::uint64_t cycle,
                  const std::map<std::string, Bits>& probes) {
  out << "cycle " << cycle << ":";
  for (const Probe& p : circuit.probes()) {
    auto it = probes.find(p.name);
    if (it != probes.end()) out << ' ' << p.name << '=' << bits_to_string(it->second);
  }
  out << '\n';
}

}  // namespace

int cmd_check(const std::string& file, std::ostream& out, std::ostream& err) {
  auto result = check_file(file, out, err, /*print_summary=*/true);
  if (const int* code = std::get_if<int>(&result)) return *code;
  return exit_ok;
}

int cmd_run(const std::string& file, const RunOptions& options, std::ostream& out,
            std::ostream& err) {
  if (!(options.hz > 0.0)) {
    err << "--hz must be positive\n";
    return exit_usage;
  }
  auto result = check_file(file, out, err, /*print_summary=*/false);
  if (const int* code = std::get_if<int>(&result)) return *code;
  Checked checked = std::get<Checked>(std::move(result));
  const Circuit& circuit = checked.circuit;

  std::vector<std::pair<std::string, Bits>> base_inputs;
  for (const std::string& flag : options.inputs) {
    auto parsed = parse_input_flag(flag, err);
    if (!parsed) return exit_usage;
    const InputPort* port = circuit.find_input(parsed->first);
    if (!port) {
      err << "unknown port '" << parsed->first << "'\n";
      return exit_usage;
    }
    if (port->width != parsed->second.size()) {
      err << "port '" << port->name << "' is " << port->width << " bit(s) wide\n";
      return exit_usage;
    }
    base_inputs.push_back(std::move(*parsed));
  }

  Simulation sim(circuit, ClockConfig{options.hz});
  std::size_t mismatches = 0;
  try {
    if (!checked.ast.vectors.empty()) {
      for (std::size_t row_no = 0; row_no < checked.ast.vectors.size(); ++row_no) {
        const ndl::VectorRow& row = checked.ast.vectors[row_no];
        auto inputs = base_inputs;
        for (const auto& [port, bits_text] : row.inputs) {
          const InputPort* p = circuit.find_input(port);
          auto bits = bits_from_string(bits_text);
          if (!p || !bits || bits->size() != p->width) {
            err << "vectors line " << row.span.line << ": bad input '" << port << "="
                << bits_text << "'\n";
            return exit_usage;
          }
          inputs.emplace_back(port, std::move(*bits));
        }
        auto probes = sim.run_cycle(inputs);
        print_probes(out, circuit, sim.cycle() - 1, probes);
        for (const auto& [probe, bits_text] : row.expects) {
          auto it = probes.find(probe);
          if (it == probes.end()) {
            err << "vectors line " << row.span.line << ": unknown probe '" << probe << "'\n";
            return exit_usage;
          }
          if (bits_to_string(it->second) != bits_text) {
            err << "mismatch: row " << row_no << " probe " << probe << " expected "
                << bits_text << " got " << bits_to_string(it->second) << '\n';
            ++mismatches;
          }
        }
      }
    } else {
      for (std::uint64_t i = 0; i < options.cycles; ++i) {
        auto probes = sim.run_cycle(base_inputs);
        print_probes(out, circuit, sim.cycle() - 1, probes);
      }
    }
  } catch (const HazardError& e) {
    err << e.what() << '\n';
    return exit_hazards;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return exit_usage;
  }

  if (options.trace_path) {
    std::ofstream trace(*options.trace_path);
    if (!trace) {
      err << "cannot write '" << *options.trace_path << "'\n";
      return exit_usage;
    }
    sim.write_trace_csv(trace);
  }
  return mismatches == 0 ? exit_ok : exit_mismatch;
}

int cmd_truthtable(const std::string& file, const std::string& probe, std::ostream& out,
                   std::ostream& err) {
  auto result = check_file(file, out, err, /*print_summary=*/false);
  if (const int* code = std::get_if<int>(&result)) return *code;
  Checked checked = std::get<Checked>(std::move(result));
  const Circuit& circuit = checked.circuit;

  if (!circuit.find_probe(probe)) {
    err << "unknown probe '" << probe << "'\n";
    return exit_usage;
  }
  std::size_t total_width = 0;
  for (const InputPort& p : circuit.inputs()) total_width += p.width;
  if (total_width > 12) {
    err << "truth table capped at 12 input bits, circuit has " << total_width << '\n';
    return exit_usage;
  }

  for (std::size_t i = 0; i < circuit.inputs().size(); ++i)
    out << (i ? " " : "") << circuit.inputs()[i].name;
  out << " | " << probe << '\n';

  Simulation sim(circuit, ClockConfig{}, Simulation::TraceMode::off);
  const std::uint64_t cases = std::uint64_t{1} << total_width;
  for (std::uint64_t n = 0; n < cases; ++n) {
    sim.reset();
    std::vector<std::pair<std::string, Bits>> inputs;
    std::uint64_t v = n;
    for (const InputPort& p : circuit.inputs()) {
      Bits bits(p.width);
      for (std::size_t i = 0; i < p.width; ++i, v >>= 1) bits[i] = v & 1u;
      inputs.emplace_back(p.name, std::move(bits));
    }
    auto probes = sim.run_cycle(inputs);
    for (std::size_t i = 0; i < inputs.size(); ++i)
      out << (i ? " " : "") << bits_to_string(inputs[i].second);
    out << " | " << bits_to_string(probes.at(probe)) << '\n';
  }
  return exit_ok;
}

int cmd_verify_adder(std::size_t width, std::ostream& out, std::ostream& err) {
  if (width < 1 || width > 8) {
    err << "--width must be in 1..8\n";
    return exit_usage;
  }
  Circuit circuit("adder" + std::to_string(width));
  ripple_adder(circuit, width);

  const std::uint64_t cases = std::uint64_t{1} << (2 * width + 1);
  auto start = std::chrono::steady_clock::now();

  // Sweep every (a, b, carry-in) assignment and compare the simulated sum
  // against the integer reference.
  auto sweep = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::string> bad;
    Simulation sim(circuit, ClockConfig{}, Simulation::TraceMode::off);
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    for (std::uint64_t n = lo; n < hi; ++n) {
      std::uint64_t a = n & mask;
      std::uint64_t b = (n >> width) & mask;
      bool cin = (n >> (2 * width)) & 1u;
      sim.reset();
      auto probes = sim.run_cycle({{"a", bits_from_value(a, width)},
                                   {"b", bits_from_value(b, width)},
                                   {"cin", Bits{cin}}});
      auto [sum_bits, carry] = oracle::int_add(a, b, width);
      if (cin) {
        auto [with_cin, carry2] = oracle::int_add(bits_value(sum_bits), 1, width);
        sum_bits = std::move(with_cin);
        carry = carry || carry2;
      }
      if (probes.at("sum") != sum_bits || probes.at("carry") != Bits{carry}) {
        bad.push_back("a=" + std::to_string(a) + " b=" + std::to_string(b) +
                      " cin=" + std::to_string(cin) + ": expected sum=" +
                      bits_to_string(sum_bits) + " carry=" + (carry ? "1" : "0") +
                      ", got sum=" + bits_to_string(probes.at("sum")) + " carry=" +
                      bits_to_string(probes.at("carry")));
      }
    }
    return bad;
  };

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (cases < 4096) threads = 1;
  std::vector<std::string> mismatches;
  if (threads <= 1) {
    mismatches = sweep(0, cases);
  } else {
    std::vector<std::future<std::vector<std::string>>> parts;
    std::uint64_t chunk = (cases + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t lo = t * chunk, hi = std::min(cases, lo + chunk);
      if (lo >= hi) break;
      parts.push_back(std::async(std::launch::async, sweep, lo, hi));
    }
    for (auto& f : parts) {
      auto part = f.get();
      mismatches.insert(mismatches.end(), part.begin(), part.end());
    }
  }

  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", elapsed);
  out << "width=" << width << " cases=" << cases << " mismatches=" << mismatches.size()
      << " elapsed=" << buf << "s\n";
  for (std::size_t i = 0; i < mismatches.size() && i < 10; ++i)
    err << mismatches[i] << '\n';
  return mismatches.empty() ? exit_ok : exit_mismatch;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for Zuse-style mechanical relay logic"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "parse, elaborate and validate an NDL file");
  check->add_option("file", check_path, "NDL file")->required();

  std::string run_path;
  RunOptions run_options;
  auto* run_cmd = app.add_subcommand("run", "simulate an NDL file");
  run_cmd->add_option("file", run_path, "NDL file")->required();
  run_cmd->add_option("--input", run_options.inputs, "NAME=BITS, applied every cycle");
  run_cmd->add_option("--cycles", run_options.cycles, "machine cycles to run");
  std::string trace_path;
  auto* trace_opt = run_cmd->add_option("--trace", trace_path, "write a CSV trace here");
  run_cmd->add_option("--hz", run_options.hz, "crank frequency in cycles per second");

  std::string tt_path, tt_probe;
  auto* tt = app.add_subcommand("truthtable", "print a probe over all input assignments");
  tt->add_option("file", tt_path, "NDL file")->required();
  tt->add_option("--probe", tt_probe, "probe to tabulate")->required();

  std::size_t verify_width = 0;
  auto* verify = app.add_subcommand("verify-adder",
                                    "exhaustively check a ripple adder against integer addition");
  verify->add_option("--width", verify_width, "addend width in bits")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  if (check->parsed()) return cmd_check(check_path, out, err);
  if (run_cmd->parsed()) {
    if (trace_opt->count() > 0) run_options.trace_path = trace_path;
    return cmd_run(run_path, run_options, out, err);
  }
  if (tt->parsed()) return cmd_truthtable(tt_path, tt_probe, out, err);
  if (verify->parsed()) return cmd_verify_adder(verify_width, out, err);
  return exit_usage;
}

}  // namespace zrelay::cli
