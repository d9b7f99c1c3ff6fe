#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "nemus/symbols.hpp"

namespace nemus {

struct GroundAtom {
  PredCode pred;
  std::vector<ConstCode> args;

  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;

  bool mentions(ConstCode c) const { return std::find(args.begin(), args.end(), c) != args.end(); }
};

class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const };

  static Term var(VarCode v) { return Term(Kind::Var, v.value); }
  static Term constant(ConstCode c) { return Term(Kind::Const, c.value); }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  VarCode as_var() const { return VarCode{code_}; }
  ConstCode as_const() const { return ConstCode{code_}; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind k, std::uint32_t c) : kind_(k), code_(c) {}
  Kind kind_;
  std::uint32_t code_;
};

// Possibly non-ground atom; the building block of clauses.
struct Atom {
  PredCode pred;
  std::vector<Term> args;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;

  bool is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_var(); });
  }

  bool mentions(VarCode v) const {
    return std::find(args.begin(), args.end(), Term::var(v)) != args.end();
  }

  // Precondition: is_ground().
  GroundAtom ground() const {
    GroundAtom g{pred, {}};
    g.args.reserve(args.size());
    for (const auto& t : args) g.args.push_back(t.as_const());
    return g;
  }

  static Atom from(const GroundAtom& g) {
    Atom a{g.pred, {}};
    a.args.reserve(g.args.size());
    for (auto c : g.args) a.args.push_back(Term::constant(c));
    return a;
  }
};

struct Clause {
  Atom head;
  std::vector<Atom> body;

  friend bool operator==(const Clause&, const Clause&) = default;
};

using ClauseSet = std::vector<Clause>;

inline std::vector<VarCode> variables_of(const Atom& a) {
  std::vector<VarCode> out;
  for (const auto& t : a.args)
    if (t.is_var() && std::find(out.begin(), out.end(), t.as_var()) == out.end())
      out.push_back(t.as_var());
  return out;
}

// Variables in first-use order: head left to right, then body atoms in order.
inline std::vector<VarCode> variables_of(const Clause& c) {
  std::vector<VarCode> out = variables_of(c.head);
  for (const auto& atom : c.body)
    for (auto v : variables_of(atom))
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

// Every head variable occurs somewhere in the body.
inline bool is_range_restricted(const Clause& c) {
  for (auto v : variables_of(c.head)) {
    bool found = std::any_of(c.body.begin(), c.body.end(),
                             [v](const Atom& a) { return a.mentions(v); });
    if (!found) return false;
  }
  return true;
}

// Each body atom shares a variable with the head or with an earlier-linked
// body atom (order-independent: closure from the head's variables).
inline bool is_connected(const Clause& c) {
  std::vector<VarCode> reached = variables_of(c.head);
  std::vector<bool> linked(c.body.size(), false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (linked[i]) continue;
      auto vars = variables_of(c.body[i]);
      bool touches = std::any_of(vars.begin(), vars.end(), [&](VarCode v) {
        return std::find(reached.begin(), reached.end(), v) != reached.end();
      });
      if (!touches) continue;
      linked[i] = true;
      progress = true;
      for (auto v : vars)
        if (std::find(reached.begin(), reached.end(), v) == reached.end()) reached.push_back(v);
    }
  }
  return std::all_of(linked.begin(), linked.end(), [](bool b) { return b; });
}

}  // namespace nemus
