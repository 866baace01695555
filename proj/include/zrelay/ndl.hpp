#pragma once

// Netlist Description Language: a line-oriented text format for circuits.
// One declaration per line, `#` comments, case-sensitive keywords.
//
//   circuit NAME
//   input NAME [width=INT] phase=PHASE
//   element NAME dir=DIR
//   relay NAME control=REF actuator=REF actuated=REF kind=open|closed
//         mode=push|pull [drive=PHASE] [delay]
//   lever NAME from=REF to=REF kind=reverse|cw|ccw
//   rect NAME sources=REF,REF,... target=REF
//   gate NAME = NOT|AND|OR|XOR|CHAIN (REF, ...) drive=PHASE
//   delay NAME = REF n=INT start=PHASE
//   adder NAME = ADD (REF, REF [, REF]) width=INT
//   probe NAME = REF, ... phase=PHASE
//   vectors
//   NAME=BITS, ... [-> NAME=BITS, ...]
//
// PHASE is I..IV, DIR is W/S/E/N, REF is NAME or NAME[INT]. Names may
// contain dots; macro expansion namespaces its generated parts under the
// declared name plus a dot. The trailing `delay` flag on a relay marks it
// as a delay element for depth accounting, which is how emitted delay
// lines survive a round trip.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zrelay/circuit.hpp"

namespace zrelay::ndl {

struct SourceSpan {
  std::size_t line = 1;       // 1-based
  std::size_t col_start = 1;  // 1-based
  std::size_t col_end = 1;    // inclusive, >= col_start
};

struct ParseError {
  SourceSpan span;
  std::string expected;
  std::string found;
  std::string message;
};

struct Ref {
  std::string name;
  SourceSpan span;
};

struct InputDecl {
  std::string name;
  std::size_t width = 1;
  Subcycle phase = Subcycle::I;
  SourceSpan span;
};

struct ElementDecl {
  std::string name;
  Direction dir = Direction::W;
  SourceSpan span;
};

struct RelayDecl {
  std::string name;
  Ref control, actuator, actuated;
  CouplingKind kind = CouplingKind::coupled_when_one;
  DriveMode mode = DriveMode::push;
  std::optional<Subcycle> drive;
  bool is_delay = false;
  SourceSpan span;
};

struct LeverDecl {
  std::string name;
  Ref from, to;
  LeverKind kind = LeverKind::reverse;
  SourceSpan span;
};

struct RectDecl {
  std::string name;
  std::vector<Ref> sources;
  Ref target;
  SourceSpan span;
};

enum class GateKind { not_gate, and_gate, or_gate, xor_gate, chain };

struct GateDecl {
  std::string name;
  GateKind kind = GateKind::not_gate;
  std::vector<Ref> args;
  Subcycle drive = Subcycle::I;
  SourceSpan span;
};

struct DelayDecl {
  std::string name;
  Ref source;
  std::size_t count = 0;
  Subcycle start = Subcycle::I;
  SourceSpan span;
};

struct AdderDecl {
  std::string name;
  Ref a, b;
  std::optional<Ref> carry_in;
  std::size_t width = 1;
  SourceSpan span;
};

struct ProbeDecl {
  std::string name;
  std::vector<Ref> elements;
  Subcycle phase = Subcycle::I;
  SourceSpan span;
};

using Decl = std::variant<InputDecl, ElementDecl, RelayDecl, LeverDecl, RectDecl,
                          GateDecl, DelayDecl, AdderDecl, ProbeDecl>;

/// Self-checking test vector row: inputs to apply for one cycle and, after
/// `->`, expected probe readings.
struct VectorRow {
  std::vector<std::pair<std::string, std::string>> inputs;   // port -> bit string
  std::vector<std::pair<std::string, std::string>> expects;  // probe -> bit string
  SourceSpan span;
};

struct NdlAst {
  std::string circuit_name;
  std::vector<Decl> decls;
  std::vector<VectorRow> vectors;
};

using ParseResult = std::variant<NdlAst, ParseError>;

/// Total over arbitrary byte strings: returns an AST or the first error.
ParseResult parse(std::string_view text);

/// Source line, caret line, then "line L:C: message".
std::string render_error(const ParseError& error, std::string_view text);

struct ElabHazard {
  Hazard hazard;
  std::optional<SourceSpan> span;
};

using ElabResult = std::variant<Circuit, std::vector<ElabHazard>>;

/// Expands macros into relay primitives, resolves names and validates.
ElabResult elaborate(const NdlAst& ast);

/// Canonical relay-level printer; elaborate(parse(emit(c))) rebuilds the
/// same relay-level structure.
std::string emit(const Circuit& circuit);

}  // namespace zrelay::ndl
