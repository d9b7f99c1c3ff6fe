#pragma once

// Knowledge-base surface language: ground facts plus '#' directives, and the
// equivalent long form
//
//   consider induction on t(X,Y) knowing t(a,b) assuming p(X,Y) or q(X,Y) defines r(X,Y).
//
// See docs/grammar.ebnf for the full grammar.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nemus/errors.hpp"
#include "nemus/symbols.hpp"
#include "nemus/syntax.hpp"
#include "nemus/task.hpp"

namespace nemus {

enum class DirectiveKind { Target, Positive, Negative, Invent, MaxBody, Tau };

struct Directive {
  DirectiveKind kind;
  std::variant<PredCode, GroundAtom, InventionBias, std::uint32_t, double> payload;
  std::size_t line = 0;
};

struct KnowledgeBase {
  std::vector<GroundAtom> facts;
  LearnTask task;
  SymbolTable symbols;
  std::vector<Directive> directives;
};

// ---------------------------------------------------------------------------
// Rendering

// Names variables X, Y, Z0, Z1, ... in the order they are first seen.
class VariableNamer {
 public:
  const std::string& name(VarCode v) {
    for (const auto& [code, text] : names_)
      if (code == v) return text;
    std::size_t n = names_.size();
    std::string text = n == 0 ? "X" : n == 1 ? "Y" : "Z" + std::to_string(n - 2);
    names_.emplace_back(v, std::move(text));
    return names_.back().second;
  }

 private:
  std::vector<std::pair<VarCode, std::string>> names_;
};

inline std::string render_atom(const Atom& atom, const SymbolTable& symbols, VariableNamer& vars) {
  std::string out = symbols.predicate(atom.pred).name;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ',';
    const Term& t = atom.args[i];
    out += t.is_var() ? vars.name(t.as_var()) : symbols.constant_name(t.as_const());
  }
  out += ')';
  return out;
}

inline std::string render_atom(const GroundAtom& atom, const SymbolTable& symbols) {
  VariableNamer unused;
  return render_atom(Atom::from(atom), symbols, unused);
}

inline std::string render_clause(const Atom& head, const std::vector<Atom>& body,
                                 const SymbolTable& symbols) {
  VariableNamer vars;
  std::string out = render_atom(head, symbols, vars);
  if (!body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += render_atom(body[i], symbols, vars);
    }
  }
  out += '.';
  return out;
}

inline std::string render_clause(const Clause& c, const SymbolTable& symbols) {
  return render_clause(c.head, c.body, symbols);
}

inline std::string render_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

inline std::string render_directive(const Directive& d, const SymbolTable& symbols) {
  auto sig = [&](PredCode p) { return to_string(symbols.predicate(p)); };
  switch (d.kind) {
    case DirectiveKind::Target:
      return "#target " + sig(std::get<PredCode>(d.payload)) + ".";
    case DirectiveKind::Positive:
      return "#positive " + render_atom(std::get<GroundAtom>(d.payload), symbols) + ".";
    case DirectiveKind::Negative:
      return "#negative " + render_atom(std::get<GroundAtom>(d.payload), symbols) + ".";
    case DirectiveKind::Invent: {
      const auto& bias = std::get<InventionBias>(d.payload);
      std::string out = "#invent " + sig(bias.invented) + " from ";
      for (std::size_t i = 0; i < bias.sources.size(); ++i) {
        if (i) out += ", ";
        out += sig(bias.sources[i]);
      }
      return out + ".";
    }
    case DirectiveKind::MaxBody:
      return "#max_body " + std::to_string(std::get<std::uint32_t>(d.payload)) + ".";
    case DirectiveKind::Tau:
      return "#tau " + render_number(std::get<double>(d.payload)) + ".";
  }
  return {};
}

// Facts in file order, then directives in file order, all in the short form.
inline std::string render_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& f : kb.facts) out += render_atom(f, kb.symbols) + ".\n";
  for (const auto& d : kb.directives) out += render_directive(d, kb.symbols) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Lexing and parsing

namespace detail {

enum class Tok { Lower, Upper, Number, LParen, RParen, Comma, Period, Slash, Neck, Hash, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Lower: return "identifier";
    case Tok::Upper: return "variable";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Period: return "'.'";
    case Tok::Slash: return "'/'";
    case Tok::Neck: return "':-'";
    case Tok::Hash: return "directive";
    case Tok::End: return "end of input";
  }
  return "token";
}

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t start = i, start_col = col;
    auto emit = [&](Tok kind, std::size_t len) {
      out.push_back(Token{kind, std::string(text.substr(start, len)), line, start_col});
      advance(len);
    };
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::islower(uc) || std::isupper(uc) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      emit(std::islower(uc) ? Tok::Lower : Tok::Upper, j - i);
    } else if (std::isdigit(uc)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      emit(Tok::Number, j - i);
    } else if (c == '#') {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      if (j == i + 1) throw ParseError("expected directive name after '#'", line, col);
      emit(Tok::Hash, j - i);
    } else if (c == ':' && i + 1 < text.size() && text[i + 1] == '-') {
      emit(Tok::Neck, 2);
    } else if (c == '(') {
      emit(Tok::LParen, 1);
    } else if (c == ')') {
      emit(Tok::RParen, 1);
    } else if (c == ',') {
      emit(Tok::Comma, 1);
    } else if (c == '.') {
      emit(Tok::Period, 1);
    } else if (c == '/') {
      emit(Tok::Slash, 1);
    } else {
      std::string shown = uc >= 0x20 && uc < 0x7f ? std::string("'") + c + "'"
                                                  : "byte 0x" + [uc] {
                                                      const char* hex = "0123456789abcdef";
                                                      return std::string{hex[uc >> 4], hex[uc & 15]};
                                                    }();
      throw ParseError("unexpected character " + shown, line, col);
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

// An atom as written, before semantic checks.
struct RawAtom {
  std::string pred;
  std::vector<Token> args;  // Lower, Upper or Number tokens
  std::size_t line;
  std::size_t column;
};

struct RawClause {
  RawAtom head;
  std::vector<RawAtom> body;
  bool is_rule;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_word(std::string_view w) const { return at(Tok::Lower) && peek().text == w; }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.line, t.column);
  }

  const Token& expect(Tok t) {
    if (!at(t)) fail(std::string("expected ") + describe(t));
    return take();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "'");
    take();
  }

  RawAtom atom() {
    const Token& name = expect(Tok::Lower);
    RawAtom a{name.text, {}, name.line, name.column};
    if (!at(Tok::LParen)) return a;
    take();
    if (at(Tok::RParen)) fail("expected argument");
    while (true) {
      if (!at(Tok::Lower) && !at(Tok::Upper) && !at(Tok::Number)) fail("expected argument");
      a.args.push_back(take());
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      expect(Tok::RParen);
      return a;
    }
  }

  RawClause clause() {
    RawClause c{atom(), {}, false};
    if (at(Tok::Neck)) {
      take();
      c.is_rule = true;
      c.body.push_back(atom());
      while (at(Tok::Comma)) {
        take();
        c.body.push_back(atom());
      }
    }
    expect(Tok::Period);
    return c;
  }

  std::pair<std::string, std::uint32_t> signature() {
    const Token& name = expect(Tok::Lower);
    expect(Tok::Slash);
    return {name.text, integer()};
  }

  std::uint32_t integer() {
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find('.') != std::string::npos) fail("expected integer");
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
    take();
    return v;
  }

  double real() {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected number");
    double v = 0;
    std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    take();
    return v;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline void check_arity(std::size_t arity, const std::string& name, std::size_t line) {
  if (arity < 1 || arity > 2)
    throw ValidationError("predicate " + name + "/" + std::to_string(arity) +
                              " has unsupported arity (only 1 and 2 are accepted)",
                          line);
}

inline void check_constant(const Token& t) {
  if (t.kind == Tok::Number && t.text.find('.') != std::string::npos)
    throw ValidationError("real number " + t.text + " is not a valid constant", t.line);
}

inline GroundAtom to_ground(const RawAtom& raw, SymbolTable& symbols, const char* what) {
  check_arity(raw.args.size(), raw.pred, raw.line);
  GroundAtom g{symbols.intern_predicate(raw.pred, static_cast<std::uint32_t>(raw.args.size())), {}};
  for (const auto& t : raw.args) {
    if (t.kind == Tok::Upper)
      throw ValidationError(std::string(what) + " must be ground, but " + raw.pred +
                                " has variable " + t.text,
                            t.line);
    check_constant(t);
    g.args.push_back(symbols.intern_constant(t.text));
  }
  return g;
}

inline Atom to_atom(const RawAtom& raw, SymbolTable& symbols) {
  check_arity(raw.args.size(), raw.pred, raw.line);
  Atom a{symbols.intern_predicate(raw.pred, static_cast<std::uint32_t>(raw.args.size())), {}};
  for (const auto& t : raw.args) {
    check_constant(t);
    a.args.push_back(t.kind == Tok::Upper ? Term::var(symbols.intern_variable(t.text))
                                          : Term::constant(symbols.intern_constant(t.text)));
  }
  return a;
}

// Signature of an atom written with variables, as in the long form.
inline PredCode to_signature(const RawAtom& raw, SymbolTable& symbols) {
  check_arity(raw.args.size(), raw.pred, raw.line);
  for (const auto& t : raw.args)
    if (t.kind == Tok::Upper) symbols.intern_variable(t.text);
  return symbols.intern_predicate(raw.pred, static_cast<std::uint32_t>(raw.args.size()));
}

inline void long_form(Parser& p, KnowledgeBase& kb) {
  std::size_t line = p.peek().line;
  p.expect_word("consider");
  p.expect_word("induction");
  p.expect_word("on");
  PredCode target = to_signature(p.atom(), kb.symbols);
  kb.directives.push_back({DirectiveKind::Target, target, line});
  if (p.at_word("knowing")) {
    p.take();
    while (true) {
      auto raw = p.atom();
      kb.directives.push_back(
          {DirectiveKind::Positive, to_ground(raw, kb.symbols, "example"), raw.line});
      if (p.at(Tok::Comma) || p.at_word("and")) {
        p.take();
        continue;
      }
      break;
    }
  }
  while (p.at_word("assuming")) {
    std::size_t bias_line = p.take().line;
    InventionBias bias;
    bias.sources.push_back(to_signature(p.atom(), kb.symbols));
    while (p.at_word("or")) {
      p.take();
      bias.sources.push_back(to_signature(p.atom(), kb.symbols));
    }
    p.expect_word("defines");
    bias.invented = to_signature(p.atom(), kb.symbols);
    kb.directives.push_back({DirectiveKind::Invent, bias, bias_line});
  }
  p.expect(Tok::Period);
}

inline void directive(Parser& p, KnowledgeBase& kb) {
  const Token name = p.take();
  const std::string& d = name.text;
  if (d == "#target") {
    auto [pred, arity] = p.signature();
    check_arity(arity, pred, name.line);
    kb.directives.push_back(
        {DirectiveKind::Target, kb.symbols.intern_predicate(pred, arity), name.line});
  } else if (d == "#positive" || d == "#negative") {
    auto raw = p.atom();
    kb.directives.push_back({d == "#positive" ? DirectiveKind::Positive : DirectiveKind::Negative,
                             to_ground(raw, kb.symbols, "example"), name.line});
  } else if (d == "#invent") {
    auto [inv, inv_arity] = p.signature();
    check_arity(inv_arity, inv, name.line);
    InventionBias bias;
    bias.invented = kb.symbols.intern_predicate(inv, inv_arity);
    p.expect_word("from");
    while (true) {
      auto [src, src_arity] = p.signature();
      check_arity(src_arity, src, name.line);
      bias.sources.push_back(kb.symbols.intern_predicate(src, src_arity));
      if (!p.at(Tok::Comma)) break;
      p.take();
    }
    kb.directives.push_back({DirectiveKind::Invent, bias, name.line});
  } else if (d == "#max_body") {
    std::uint32_t n = p.integer();
    if (n == 0) throw ValidationError("#max_body must be a positive integer", name.line);
    kb.directives.push_back({DirectiveKind::MaxBody, n, name.line});
  } else if (d == "#tau") {
    double tau = p.real();
    if (!(tau >= 0.0 && tau <= 1.0))
      throw ValidationError("#tau must lie in [0,1]", name.line);
    kb.directives.push_back({DirectiveKind::Tau, tau, name.line});
  } else {
    throw ParseError("unknown directive " + d, name.line, name.column);
  }
  p.expect(Tok::Period);
}

inline void validate(KnowledgeBase& kb) {
  const SymbolTable& sym = kb.symbols;
  LearnTask& task = kb.task;
  std::optional<std::size_t> max_body_line, tau_line;
  for (const auto& d : kb.directives) {
    switch (d.kind) {
      case DirectiveKind::Target:
        if (task.target)
          throw ValidationError("more than one #target directive", d.line);
        task.target = std::get<PredCode>(d.payload);
        break;
      case DirectiveKind::Positive:
        task.positives.push_back(std::get<GroundAtom>(d.payload));
        break;
      case DirectiveKind::Negative:
        task.negatives.push_back(std::get<GroundAtom>(d.payload));
        break;
      case DirectiveKind::Invent:
        task.biases.push_back(std::get<InventionBias>(d.payload));
        break;
      case DirectiveKind::MaxBody:
        if (max_body_line) throw ValidationError("duplicate #max_body directive", d.line);
        max_body_line = d.line;
        task.max_body = std::get<std::uint32_t>(d.payload);
        break;
      case DirectiveKind::Tau:
        if (tau_line) throw ValidationError("duplicate #tau directive", d.line);
        tau_line = d.line;
        task.tau = std::get<double>(d.payload);
        break;
    }
  }

  auto has_facts = [&](PredCode p) {
    return std::any_of(kb.facts.begin(), kb.facts.end(),
                       [p](const GroundAtom& f) { return f.pred == p; });
  };

  bool has_examples = !task.positives.empty() || !task.negatives.empty();
  if (!task.target && (has_examples || !task.biases.empty()))
    throw ValidationError("missing #target directive");

  for (const auto& d : kb.directives) {
    if (d.kind != DirectiveKind::Positive && d.kind != DirectiveKind::Negative) continue;
    const auto& e = std::get<GroundAtom>(d.payload);
    const Signature& es = sym.predicate(e.pred);
    const Signature& ts = sym.predicate(*task.target);
    if (es.name == ts.name && es.arity != ts.arity)
      throw ValidationError("arity mismatch: example " + render_atom(e, sym) +
                                " does not match target " + to_string(ts),
                            d.line);
    if (e.pred != *task.target)
      throw ValidationError("example " + render_atom(e, sym) + " is not an instance of target " +
                                to_string(ts),
                            d.line);
    if (d.kind == DirectiveKind::Positive &&
        std::find(kb.facts.begin(), kb.facts.end(), e) != kb.facts.end())
      throw ValidationError("positive example " + render_atom(e, sym) +
                                " is already a fact of the background knowledge",
                            d.line);
  }

  for (const auto& d : kb.directives) {
    if (d.kind != DirectiveKind::Invent) continue;
    const auto& bias = std::get<InventionBias>(d.payload);
    const Signature& inv = sym.predicate(bias.invented);
    for (const auto& f : kb.facts)
      if (sym.predicate(f.pred).name == inv.name)
        throw ValidationError("invented predicate " + inv.name +
                                  " is already defined by facts",
                              d.line);
    if (task.target && bias.invented == *task.target)
      throw ValidationError("the target cannot be an invented predicate", d.line);
    for (auto src : bias.sources) {
      const Signature& s = sym.predicate(src);
      if (s.arity != inv.arity)
        throw ValidationError("arity mismatch: source " + to_string(s) + " cannot define " +
                                  to_string(inv),
                              d.line);
      if (!has_facts(src))
        throw ValidationError("unknown predicate " + to_string(s) + " in #invent", d.line);
    }
  }
}

}  // namespace detail

// Parses and validates a KB file. Facts keep file order; codes are interned
// in order of first appearance.
inline KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  detail::Parser p(text);
  using detail::Tok;
  while (!p.at(Tok::End)) {
    if (p.at(Tok::Hash)) {
      detail::directive(p, kb);
    } else if (p.at_word("consider") && p.peek(1).kind == Tok::Lower &&
               p.peek(1).text == "induction") {
      detail::long_form(p, kb);
    } else {
      auto c = p.clause();
      if (c.is_rule)
        throw ValidationError("rules are not allowed in background knowledge", c.head.line);
      kb.facts.push_back(detail::to_ground(c.head, kb.symbols, "fact"));
    }
  }
  detail::validate(kb);
  return kb;
}

// Parses clause text (hypothesis files) against an existing symbol table,
// interning any new names. '%' comments are skipped, directives rejected.
inline ClauseSet parse_clauses(std::string_view text, SymbolTable& symbols) {
  ClauseSet out;
  detail::Parser p(text);
  while (!p.at(detail::Tok::End)) {
    if (p.at(detail::Tok::Hash)) p.fail("directives are not allowed in a clause file");
    auto raw = p.clause();
    Clause c{detail::to_atom(raw.head, symbols), {}};
    for (const auto& b : raw.body) c.body.push_back(detail::to_atom(b, symbols));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace nemus
