#include "zrelay/ndl.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "zrelay/macros.hpp"
#include "zrelay/validate.hpp"

namespace zrelay::ndl {
namespace {

// --- lexer -----------------------------------------------------------------

struct Token {
  enum class Kind { name, integer, punct, newline, end, invalid };
  Kind kind = Kind::end;
  std::string text;
  SourceSpan span;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Token::Kind kind, std::string_view t, std::size_t start_col) {
    tokens.push_back({kind, std::string(t),
                      {line, start_col, start_col + (t.empty() ? 0 : t.size() - 1)}});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      push(Token::Kind::newline, "\n", col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
        ++col;
      }
      continue;
    }
    std::size_t start = i, start_col = col;
    if (name_start(c)) {
      while (i < text.size() && name_char(text[i])) {
        ++i;
        ++col;
      }
      push(Token::Kind::name, text.substr(start, i - start), start_col);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++col;
      }
      push(Token::Kind::integer, text.substr(start, i - start), start_col);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Token::Kind::punct, "->", start_col);
      i += 2;
      col += 2;
      continue;
    }
    if (c == '=' || c == '(' || c == ')' || c == ',' || c == '[' || c == ']') {
      push(Token::Kind::punct, text.substr(start, 1), start_col);
      ++i;
      ++col;
      continue;
    }
    push(Token::Kind::invalid, text.substr(start, 1), start_col);
    ++i;
    ++col;
  }
  Token eof;
  eof.kind = Token::Kind::end;
  eof.span = {line, col > 1 ? col - 1 : 1, col > 1 ? col - 1 : 1};
  tokens.push_back(eof);
  return tokens;
}

// --- parser ----------------------------------------------------------------

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw{
      "circuit", "input", "element", "relay", "lever", "rect",
      "gate",    "delay", "adder",   "probe", "vectors"};
  return kw;
}

struct Parser {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::optional<ParseError> error;

  const Token& peek() const { return tokens[pos]; }
  const Token& get() { return tokens[pos + 1 < tokens.size() ? pos++ : pos]; }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Token::Kind::name: return "'" + t.text + "'";
      case Token::Kind::integer: return "number '" + t.text + "'";
      case Token::Kind::punct: return "'" + t.text + "'";
      case Token::Kind::newline: return "end of line";
      case Token::Kind::end: return "end of input";
      case Token::Kind::invalid: return "character '" + t.text + "'";
    }
    return "?";
  }

  bool fail(const Token& at, std::string expected, std::string message = {}) {
    if (!error) {
      std::string found = describe(at);
      if (message.empty()) {
        message = at.kind == Token::Kind::end
                      ? "unexpected end of input; expected " + expected
                      : "expected " + expected + ", found " + found;
      }
      error = ParseError{at.span, std::move(expected), std::move(found), std::move(message)};
    }
    return false;
  }

  bool accept_punct(std::string_view p) {
    if (peek().kind == Token::Kind::punct && peek().text == p) {
      get();
      return true;
    }
    return false;
  }

  bool expect_punct(std::string_view p) {
    if (accept_punct(p)) return true;
    return fail(peek(), "'" + std::string(p) + "'");
  }

  bool expect_name(std::string& out, std::string_view what) {
    if (peek().kind != Token::Kind::name) return fail(peek(), std::string(what));
    out = get().text;
    return true;
  }

  bool expect_int(std::size_t& out, std::string_view what) {
    if (peek().kind != Token::Kind::integer) return fail(peek(), std::string(what));
    const Token& t = get();
    if (t.text.size() > 9) return fail(t, std::string(what), "number '" + t.text + "' is too large");
    out = 0;
    for (char c : t.text) out = out * 10 + static_cast<std::size_t>(c - '0');
    return true;
  }

  // KEY=VALUE where the value parse is supplied by the caller.
  bool expect_key(std::string_view key) {
    if (peek().kind != Token::Kind::name || peek().text != key)
      return fail(peek(), "'" + std::string(key) + "='");
    get();
    return expect_punct("=");
  }

  bool expect_phase(Subcycle& out) {
    const Token& t = peek();
    if (t.kind == Token::Kind::name) {
      if (auto p = subcycle_from_string(t.text)) {
        out = *p;
        get();
        return true;
      }
    }
    return fail(t, "one of I, II, III, IV");
  }

  bool expect_dir(Direction& out) {
    const Token& t = peek();
    if (t.kind == Token::Kind::name) {
      if (auto d = direction_from_string(t.text)) {
        out = *d;
        get();
        return true;
      }
    }
    return fail(t, "one of W, S, E, N");
  }

  bool expect_ref(Ref& out, std::string_view what = "an element reference") {
    if (peek().kind != Token::Kind::name) return fail(peek(), std::string(what));
    Token t = get();
    out.name = t.text;
    out.span = t.span;
    if (accept_punct("[")) {
      std::size_t idx = 0;
      if (!expect_int(idx, "an index")) return false;
      if (!expect_punct("]")) return false;
      out.name += "[" + std::to_string(idx) + "]";
      out.span.col_end = tokens[pos - 1].span.col_end;
    }
    return true;
  }

  bool expect_eol() {
    const Token& t = peek();
    if (t.kind == Token::Kind::newline) {
      get();
      return true;
    }
    if (t.kind == Token::Kind::end) return true;
    return fail(t, "end of line");
  }

  void skip_newlines() {
    while (peek().kind == Token::Kind::newline) get();
  }

  bool expect_bits(std::string& out) {
    const Token& t = peek();
    if (t.kind != Token::Kind::integer) return fail(t, "a bit string of 0s and 1s");
    for (char c : t.text)
      if (c != '0' && c != '1') return fail(t, "a bit string of 0s and 1s");
    out = get().text;
    return true;
  }
};

bool parse_gate(Parser& p, GateDecl& d) {
  if (!p.expect_name(d.name, "a gate name")) return false;
  if (!p.expect_punct("=")) return false;
  const Token& kind_tok = p.peek();
  std::string kind;
  if (!p.expect_name(kind, "a gate kind")) return false;
  std::size_t arity_min = 1, arity_max = 1;
  if (kind == "NOT") {
    d.kind = GateKind::not_gate;
  } else if (kind == "AND") {
    d.kind = GateKind::and_gate;
    arity_min = arity_max = 2;
  } else if (kind == "OR") {
    d.kind = GateKind::or_gate;
    arity_min = arity_max = 2;
  } else if (kind == "XOR") {
    d.kind = GateKind::xor_gate;
    arity_min = arity_max = 2;
  } else if (kind == "CHAIN") {
    d.kind = GateKind::chain;
    arity_max = std::size_t(-1);
  } else {
    return p.fail(kind_tok, "one of NOT, AND, OR, XOR, CHAIN",
                  "unknown gate kind " + kind);
  }
  if (!p.expect_punct("(")) return false;
  do {
    Ref r;
    if (!p.expect_ref(r)) return false;
    d.args.push_back(std::move(r));
  } while (p.accept_punct(","));
  if (!p.expect_punct(")")) return false;
  if (d.args.size() < arity_min || d.args.size() > arity_max) {
    return p.fail(kind_tok, "matching arity",
                  "gate " + kind + " takes " +
                      (arity_min == arity_max ? "exactly " + std::to_string(arity_min)
                                              : "at least " + std::to_string(arity_min)) +
                      " input(s), got " + std::to_string(d.args.size()));
  }
  if (!p.expect_key("drive") || !p.expect_phase(d.drive)) return false;
  return p.expect_eol();
}

bool parse_decl(Parser& p, NdlAst& ast) {
  const Token& kw = p.peek();
  std::string keyword = kw.text;
  p.get();
  SourceSpan span = kw.span;

  if (keyword == "input") {
    InputDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "an input name")) return false;
    if (p.peek().kind == Token::Kind::name && p.peek().text == "width") {
      if (!p.expect_key("width") || !p.expect_int(d.width, "a width")) return false;
      if (d.width < 1) return p.fail(p.tokens[p.pos - 1], "a width >= 1");
    }
    if (!p.expect_key("phase") || !p.expect_phase(d.phase)) return false;
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "element") {
    ElementDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "an element name")) return false;
    if (!p.expect_key("dir") || !p.expect_dir(d.dir)) return false;
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "relay") {
    RelayDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "a relay name")) return false;
    if (!p.expect_key("control") || !p.expect_ref(d.control)) return false;
    if (!p.expect_key("actuator") || !p.expect_ref(d.actuator)) return false;
    if (!p.expect_key("actuated") || !p.expect_ref(d.actuated)) return false;
    if (!p.expect_key("kind")) return false;
    std::string kind;
    const Token& kind_tok = p.peek();
    if (!p.expect_name(kind, "open or closed")) return false;
    if (kind == "open")
      d.kind = CouplingKind::coupled_when_one;
    else if (kind == "closed")
      d.kind = CouplingKind::coupled_when_zero;
    else
      return p.fail(kind_tok, "open or closed");
    if (!p.expect_key("mode")) return false;
    std::string mode;
    const Token& mode_tok = p.peek();
    if (!p.expect_name(mode, "push or pull")) return false;
    if (mode == "push")
      d.mode = DriveMode::push;
    else if (mode == "pull")
      d.mode = DriveMode::pull;
    else
      return p.fail(mode_tok, "push or pull");
    if (p.peek().kind == Token::Kind::name && p.peek().text == "drive") {
      Subcycle drive;
      if (!p.expect_key("drive") || !p.expect_phase(drive)) return false;
      d.drive = drive;
    }
    if (p.peek().kind == Token::Kind::name && p.peek().text == "delay") {
      p.get();
      d.is_delay = true;
    }
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "lever") {
    LeverDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "a lever name")) return false;
    if (!p.expect_key("from") || !p.expect_ref(d.from)) return false;
    if (!p.expect_key("to") || !p.expect_ref(d.to)) return false;
    if (!p.expect_key("kind")) return false;
    std::string kind;
    const Token& kind_tok = p.peek();
    if (!p.expect_name(kind, "reverse, cw or ccw")) return false;
    if (auto k = lever_kind_from_string(kind))
      d.kind = *k;
    else
      return p.fail(kind_tok, "reverse, cw or ccw");
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "rect") {
    RectDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "a merge name")) return false;
    if (!p.expect_key("sources")) return false;
    do {
      Ref r;
      if (!p.expect_ref(r)) return false;
      d.sources.push_back(std::move(r));
    } while (p.accept_punct(","));
    if (!p.expect_key("target") || !p.expect_ref(d.target)) return false;
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "gate") {
    GateDecl d;
    d.span = span;
    if (!parse_gate(p, d)) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "delay") {
    DelayDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "a delay name")) return false;
    if (!p.expect_punct("=")) return false;
    if (!p.expect_ref(d.source)) return false;
    if (!p.expect_key("n") || !p.expect_int(d.count, "a subcycle count")) return false;
    if (!p.expect_key("start") || !p.expect_phase(d.start)) return false;
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "adder") {
    AdderDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "an adder name")) return false;
    if (!p.expect_punct("=")) return false;
    std::string add;
    const Token& add_tok = p.peek();
    if (!p.expect_name(add, "ADD")) return false;
    if (add != "ADD") return p.fail(add_tok, "ADD");
    if (!p.expect_punct("(")) return false;
    if (!p.expect_ref(d.a)) return false;
    if (!p.expect_punct(",")) return false;
    if (!p.expect_ref(d.b)) return false;
    if (p.accept_punct(",")) {
      Ref cin;
      if (!p.expect_ref(cin)) return false;
      d.carry_in = std::move(cin);
    }
    if (!p.expect_punct(")")) return false;
    if (!p.expect_key("width") || !p.expect_int(d.width, "a width")) return false;
    if (d.width < 1) return p.fail(p.tokens[p.pos - 1], "a width >= 1");
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "probe") {
    ProbeDecl d;
    d.span = span;
    if (!p.expect_name(d.name, "a probe name")) return false;
    if (!p.expect_punct("=")) return false;
    do {
      Ref r;
      if (!p.expect_ref(r)) return false;
      d.elements.push_back(std::move(r));
    } while (p.accept_punct(","));
    if (!p.expect_key("phase") || !p.expect_phase(d.phase)) return false;
    if (!p.expect_eol()) return false;
    ast.decls.emplace_back(std::move(d));
    return true;
  }
  if (keyword == "vectors") {
    if (!p.expect_eol()) return false;
    while (true) {
      p.skip_newlines();
      const Token& t = p.peek();
      if (t.kind == Token::Kind::end) break;
      if (t.kind == Token::Kind::name && keywords().count(t.text)) break;
      VectorRow row;
      row.span = t.span;
      do {
        std::string name, bits;
        if (!p.expect_name(name, "a port name")) return false;
        if (!p.expect_punct("=")) return false;
        if (!p.expect_bits(bits)) return false;
        row.inputs.emplace_back(std::move(name), std::move(bits));
      } while (p.accept_punct(","));
      if (p.accept_punct("->")) {
        do {
          std::string name, bits;
          if (!p.expect_name(name, "a probe name")) return false;
          if (!p.expect_punct("=")) return false;
          if (!p.expect_bits(bits)) return false;
          row.expects.emplace_back(std::move(name), std::move(bits));
        } while (p.accept_punct(","));
      }
      if (!p.expect_eol()) return false;
      ast.vectors.push_back(std::move(row));
    }
    return true;
  }
  return p.fail(kw, "a declaration keyword (input, element, relay, lever, rect, gate, "
                    "delay, adder, probe, vectors)");
}

}  // namespace

ParseResult parse(std::string_view text) {
  try {
    Parser p{lex(text)};
    NdlAst ast;
    p.skip_newlines();
    const Token& kw = p.peek();
    if (kw.kind != Token::Kind::name || kw.text != "circuit") {
      p.fail(kw, "'circuit'");
      return *p.error;
    }
    p.get();
    if (!p.expect_name(ast.circuit_name, "a circuit name")) return *p.error;
    if (!p.expect_eol()) return *p.error;
    while (true) {
      p.skip_newlines();
      if (p.peek().kind == Token::Kind::end) break;
      if (!parse_decl(p, ast)) return *p.error;
    }
    return ast;
  } catch (const std::exception& e) {
    return ParseError{{1, 1, 1}, "", "", std::string("internal parser error: ") + e.what()};
  }
}

std::string render_error(const ParseError& error, std::string_view text) {
  // Pull out the offending line.
  std::size_t line_no = 1, start = 0;
  while (line_no < error.span.line && start < text.size()) {
    if (text[start] == '\n') ++line_no;
    ++start;
  }
  std::size_t end = start;
  while (end < text.size() && text[end] != '\n') ++end;
  std::string_view line = text.substr(start, end - start);

  std::ostringstream out;
  out << line << '\n';
  std::size_t caret_at = error.span.col_start > 0 ? error.span.col_start - 1 : 0;
  std::size_t caret_len = error.span.col_end >= error.span.col_start
                              ? error.span.col_end - error.span.col_start + 1
                              : 1;
  out << std::string(caret_at, ' ') << std::string(caret_len, '^') << '\n';
  out << "line " << error.span.line << ':' << error.span.col_start << ": " << error.message;
  return out.str();
}

// --- elaboration -------------------------------------------------------------

namespace {

class Elaborator {
 public:
  explicit Elaborator(const NdlAst& ast) : ast_(ast), circuit_(ast.circuit_name) {}

  ElabResult run() {
    // Inputs and plain elements first, so relay-level declarations may refer
    // forward to them; macros and probes then resolve in declaration order.
    for (const Decl& d : ast_.decls) {
      if (const auto* in = std::get_if<InputDecl>(&d)) declare_input(*in);
      if (const auto* el = std::get_if<ElementDecl>(&d)) declare_element(*el);
    }
    for (const Decl& d : ast_.decls) std::visit([&](const auto& decl) { build(decl); }, d);
    if (hazards_.empty()) {
      for (const Hazard& h : validate(circuit_)) hazards_.push_back({h, span_of(h.location)});
    }
    if (!hazards_.empty()) return std::move(hazards_);
    return std::move(circuit_);
  }

 private:
  void report(Hazard h, std::optional<SourceSpan> span) {
    hazards_.push_back({std::move(h), span});
  }

  void remember_span(const std::string& name, SourceSpan span) { spans_.emplace(name, span); }

  std::optional<SourceSpan> span_of(const std::string& name) const {
    auto it = spans_.find(name);
    if (it != spans_.end()) return it->second;
    // Namespaced parts of a macro map back to the macro's declaration.
    auto dot = name.rfind('.');
    while (dot != std::string::npos) {
      auto up = spans_.find(name.substr(0, dot));
      if (up != spans_.end()) return up->second;
      dot = dot == 0 ? std::string::npos : name.rfind('.', dot - 1);
    }
    return std::nullopt;
  }

  std::optional<ElementId> resolve(const Ref& ref) {
    auto it = symbols_.find(ref.name);
    if (it != symbols_.end()) return it->second;
    if (auto id = circuit_.find_element(ref.name)) return id;
    report({HazardKind::dangling_reference, ref.name,
            "reference to undeclared element '" + ref.name + "'"},
           ref.span);
    return std::nullopt;
  }

  void declare_input(const InputDecl& d) {
    remember_span(d.name, d.span);
    try {
      circuit_.add_input(d.name, d.width, d.phase);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void declare_element(const ElementDecl& d) {
    remember_span(d.name, d.span);
    try {
      circuit_.add_element(d.name, d.dir);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void build(const InputDecl&) {}   // handled in the first pass
  void build(const ElementDecl&) {}

  void build(const RelayDecl& d) {
    remember_span(d.name, d.span);
    auto control = resolve(d.control);
    auto actuator = resolve(d.actuator);
    auto actuated = resolve(d.actuated);
    if (!control || !actuator || !actuated) return;
    Relay r{d.name, *control, *actuator, *actuated, d.kind, d.mode, d.drive};
    r.is_delay = d.is_delay;
    try {
      circuit_.add_relay(std::move(r));
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void build(const LeverDecl& d) {
    remember_span(d.name, d.span);
    auto from = resolve(d.from);
    auto to = resolve(d.to);
    if (!from || !to) return;
    try {
      circuit_.add_lever(d.name, *from, *to, d.kind);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void build(const RectDecl& d) {
    remember_span(d.name, d.span);
    std::vector<ElementId> sources;
    for (const Ref& r : d.sources) {
      auto id = resolve(r);
      if (!id) return;
      sources.push_back(*id);
    }
    auto target = resolve(d.target);
    if (!target) return;
    try {
      circuit_.add_merge(d.name, std::move(sources), *target);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void build(const GateDecl& d) {
    remember_span(d.name, d.span);
    std::vector<ElementId> args;
    for (const Ref& r : d.args) {
      auto id = resolve(r);
      if (!id) return;
      args.push_back(*id);
    }
    try {
      ElementId out;
      switch (d.kind) {
        case GateKind::not_gate: out = gate_not(circuit_, d.name, args[0], d.drive); break;
        case GateKind::and_gate:
          out = gate_and(circuit_, d.name, args[0], args[1], d.drive);
          break;
        case GateKind::or_gate:
          out = gate_or(circuit_, d.name, args[0], args[1], d.drive);
          break;
        case GateKind::xor_gate:
          out = gate_xor(circuit_, d.name, args[0], args[1], d.drive);
          break;
        case GateKind::chain:
          out = conjunction_chain(circuit_, d.name, args, d.drive);
          break;
      }
      symbols_.emplace(d.name, out);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void build(const DelayDecl& d) {
    remember_span(d.name, d.span);
    auto src = resolve(d.source);
    if (!src) return;
    try {
      ElementId out = delay_line(circuit_, d.name, *src, d.count, d.start);
      symbols_.emplace(d.name, out);  // n = 0 aliases the source
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  // Operand refs name input ports; missing ones are declared with the adder's
  // natural phases (a before the cycle, b at I, carry-in at II).
  std::vector<ElementId> adder_port(const Ref& ref, std::size_t width, Subcycle phase,
                                    const SourceSpan& span) {
    if (const InputPort* p = circuit_.find_input(ref.name)) {
      if (p->width != width) {
        report({HazardKind::dangling_reference, ref.name,
                "adder operand '" + ref.name + "' is " + std::to_string(p->width) +
                    " bit(s) wide, need " + std::to_string(width)},
               ref.span);
        return {};
      }
      return p->elements;
    }
    if (circuit_.find_element(ref.name) && width == 1) {
      return {*circuit_.find_element(ref.name)};
    }
    try {
      return circuit_.add_input(ref.name, width, phase).elements;
    } catch (const CircuitError& e) {
      report(e.hazard(), span);
      return {};
    }
  }

  void build(const AdderDecl& d) {
    remember_span(d.name, d.span);
    std::vector<ElementId> a = adder_port(d.a, d.width, Subcycle::IV, d.span);
    std::vector<ElementId> b = adder_port(d.b, d.width, Subcycle::I, d.span);
    std::vector<ElementId> cin;
    if (d.carry_in) {
      cin = adder_port(*d.carry_in, 1, Subcycle::II, d.span);
    } else {
      try {
        cin = circuit_.add_input(d.name + ".cin", 1, Subcycle::II).elements;
      } catch (const CircuitError& e) {
        report(e.hazard(), d.span);
      }
    }
    if (a.empty() || b.empty() || cin.empty()) return;
    try {
      RippleAdder adder = ripple_adder_over(circuit_, d.name, a, b, cin[0]);
      circuit_.add_probe(d.name, adder.sum_elements, Subcycle::III);
      circuit_.add_probe(d.name + ".carry", {adder.carry_out}, Subcycle::II);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  void build(const ProbeDecl& d) {
    remember_span(d.name, d.span);
    std::vector<ElementId> elements;
    for (const Ref& r : d.elements) {
      auto id = resolve(r);
      if (!id) return;
      elements.push_back(*id);
    }
    try {
      circuit_.add_probe(d.name, std::move(elements), d.phase);
    } catch (const CircuitError& e) {
      report(e.hazard(), d.span);
    }
  }

  const NdlAst& ast_;
  Circuit circuit_;
  std::vector<ElabHazard> hazards_;
  std::unordered_map<std::string, ElementId> symbols_;
  std::unordered_map<std::string, SourceSpan> spans_;
};

}  // namespace

ElabResult elaborate(const NdlAst& ast) { return Elaborator(ast).run(); }

std::string emit(const Circuit& circuit) {
  std::ostringstream out;
  out << "circuit " << circuit.name() << '\n';
  std::unordered_set<std::uint32_t> port_elements;
  for (const InputPort& p : circuit.inputs()) {
    for (ElementId e : p.elements) port_elements.insert(e.index);
    out << "input " << p.name;
    if (p.width > 1) out << " width=" << p.width;
    out << " phase=" << to_string(p.phase) << '\n';
  }
  for (std::uint32_t i = 0; i < circuit.elements().size(); ++i) {
    if (port_elements.count(i)) continue;
    const Element& e = circuit.elements()[i];
    out << "element " << e.name << " dir=" << to_string(e.dir) << '\n';
  }
  for (const Relay& r : circuit.relays()) {
    out << "relay " << r.name << " control=" << circuit.element_name(r.control)
        << " actuator=" << circuit.element_name(r.actuator)
        << " actuated=" << circuit.element_name(r.actuated)
        << " kind=" << to_string(r.kind) << " mode=" << to_string(r.mode);
    if (r.drive) out << " drive=" << to_string(*r.drive);
    if (r.is_delay) out << " delay";
    out << '\n';
  }
  for (const RectifiedMerge& m : circuit.merges()) {
    out << "rect " << m.name << " sources=";
    for (std::size_t i = 0; i < m.sources.size(); ++i) {
      if (i) out << ',';
      out << circuit.element_name(m.sources[i]);
    }
    out << " target=" << circuit.element_name(m.target) << '\n';
  }
  for (const Lever& l : circuit.levers()) {
    out << "lever " << l.name << " from=" << circuit.element_name(l.from)
        << " to=" << circuit.element_name(l.to) << " kind=" << to_string(l.kind) << '\n';
  }
  for (const Probe& p : circuit.probes()) {
    out << "probe " << p.name << " = ";
    for (std::size_t i = 0; i < p.elements.size(); ++i) {
      if (i) out << ',';
      out << circuit.element_name(p.elements[i]);
    }
    out << " phase=" << to_string(p.sample_phase) << '\n';
  }
  return out.str();
}

}  // namespace zrelay::ndl
