#pragma once

// Building blocks of inductive clause learning: linkage (hook terms and
// attribute mates), inductive momentum, anti-unification, bias rewriting,
// automated invention and the recursion trigger.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nemus/errors.hpp"
#include "nemus/nemus_space.hpp"
#include "nemus/task.hpp"

namespace nemus {

// Hook terms: constants occurring in both atoms.
inline std::set<ConstCode> rho(const GroundAtom& p, const GroundAtom& q) {
  std::set<ConstCode> out;
  for (auto c : p.args)
    if (q.mentions(c)) out.insert(c);
  return out;
}

enum class Side { First, Second };

// Constants of the chosen atom that are not hook terms of the pair.
inline std::set<ConstCode> attribute_mates(const GroundAtom& p, const GroundAtom& q, Side of) {
  const GroundAtom& chosen = of == Side::First ? p : q;
  auto hooks = rho(p, q);
  std::set<ConstCode> out;
  for (auto c : chosen.args)
    if (!hooks.count(c)) out.insert(c);
  return out;
}

enum class Momentum { Consistent, Inconsistent };

inline const char* to_string(Momentum m) {
  return m == Momentum::Consistent ? "consistent" : "inconsistent";
}

// I_mu over two I-Space argument vectors: inconsistent iff both literals are
// instances of the same predicate and k, m sit at the same attribute index.
inline Momentum inductive_momentum(PredCode plus_pred, std::span<const TNode> plus_args,
                                   PredCode minus_pred, std::span<const TNode> minus_args,
                                   ConstCode k, ConstCode m) {
  auto ik = iota(k.value, plus_args);
  auto im = iota(m.value, minus_args);
  if (!ik || !im)
    throw PreconditionFault("inductive momentum: k must occur in l+ and m in l-");
  return plus_pred == minus_pred && *ik == *im ? Momentum::Inconsistent : Momentum::Consistent;
}

inline std::vector<TNode> tnodes_of(const GroundAtom& g) {
  std::vector<TNode> out;
  for (std::uint32_t a = 1; a <= g.args.size(); ++a)
    out.push_back(TNode{Space::Constant, g.args[a - 1].value, 1, a});
  return out;
}

inline Momentum inductive_momentum(const GroundAtom& l_plus, const GroundAtom& l_minus, ConstCode k,
                                   ConstCode m) {
  auto xp = tnodes_of(l_plus);
  auto xm = tnodes_of(l_minus);
  return inductive_momentum(l_plus.pred, xp, l_minus.pred, xm, k, m);
}

// theta^-1: constant -> variable, injective both ways. Fresh variables are
// numbered after every variable handed out so far.
class AntiSubstitution {
 public:
  std::optional<VarCode> lookup(ConstCode c) const {
    for (const auto& [k, v] : pairs_)
      if (k == c) return v;
    return std::nullopt;
  }

  std::optional<ConstCode> constant_for(VarCode v) const {
    for (const auto& [k, var] : pairs_)
      if (var == v) return k;
    return std::nullopt;
  }

  bool contains(ConstCode c) const { return lookup(c).has_value(); }

  void seed(ConstCode c, VarCode v) {
    auto existing = lookup(c);
    if (existing && *existing == v) return;
    if (existing || constant_for(v))
      throw PreconditionFault("anti-substitution must stay injective");
    pairs_.emplace_back(c, v);
    next_ = std::max(next_, v.value + 1);
  }

  VarCode bind(ConstCode c) {
    if (auto v = lookup(c)) return *v;
    VarCode v{next_++};
    pairs_.emplace_back(c, v);
    return v;
  }

  void reserve_variables(std::uint32_t n) { next_ = std::max(next_, n); }

  Atom generalize(const GroundAtom& g) {
    Atom out{g.pred, {}};
    for (auto c : g.args) out.args.push_back(Term::var(bind(c)));
    return out;
  }

  const std::vector<std::pair<ConstCode, VarCode>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  friend bool operator==(const AntiSubstitution&, const AntiSubstitution&) = default;

 private:
  std::vector<std::pair<ConstCode, VarCode>> pairs_;
  std::uint32_t next_ = 0;
};

inline std::pair<Atom, AntiSubstitution> anti_unify(const GroundAtom& atom, AntiSubstitution theta) {
  Atom g = theta.generalize(atom);
  return {std::move(g), std::move(theta)};
}

inline const InventionBias* bias_for_source(PredCode p, std::span<const InventionBias> biases) {
  for (const auto& b : biases)
    if (std::find(b.sources.begin(), b.sources.end(), p) != b.sources.end()) return &b;
  return nullptr;
}

inline const InventionBias* bias_for_invented(PredCode p, std::span<const InventionBias> biases) {
  for (const auto& b : biases)
    if (b.invented == p) return &b;
  return nullptr;
}

struct BiasRewrite {
  Atom atom;
  std::vector<Clause> definitions;  // empty unless this is the first trigger
};

// Renames a source predicate to the predicate it defines. The definition
// clauses are handed out once per invented predicate; `emitted` remembers.
inline BiasRewrite apply_bias(const Atom& atom, std::span<const InventionBias> biases,
                              std::set<PredCode>& emitted) {
  const InventionBias* bias = bias_for_source(atom.pred, biases);
  if (!bias) return {atom, {}};
  BiasRewrite out{Atom{bias->invented, atom.args}, {}};
  if (emitted.insert(bias->invented).second)
    for (auto src : bias->sources)
      out.definitions.push_back(
          definition_clause(bias->invented, src, static_cast<std::uint32_t>(atom.args.size())));
  return out;
}

enum class Status { Open, Closed };

// A positive-walk constant waiting to be expanded, with the constants the
// walk from each negative example reached in lockstep (one list per e-).
struct FrontierEntry {
  ConstCode constant;
  std::vector<std::vector<ConstCode>> paired;
  bool seed = false;  // an argument of e+ itself; momentum is not applied
};

struct Hypothesis {
  Atom head;
  std::vector<Atom> body;
  AntiSubstitution theta_inv;
  Status status = Status::Open;
  std::vector<FrontierEntry> frontier;
  std::vector<GroundAtom> grounding;  // ground atoms behind body, same order

  Clause clause() const { return Clause{head, body}; }
};

// Hands out inv_0, inv_1, ... skipping names the table already knows.
class InventedNames {
 public:
  explicit InventedNames(SymbolTable& symbols) : symbols_(symbols) {}

  PredCode fresh(std::uint32_t arity) {
    std::string name;
    do {
      name = "inv_" + std::to_string(next_++);
    } while (symbols_.has_predicate_name(name));
    return symbols_.intern_predicate(name, arity);
  }

 private:
  SymbolTable& symbols_;
  std::uint32_t next_ = 0;
};

// Closes a binary open hypothesis one literal short of the body cap by
// appending inv(Z, Y), where Z is the variable of the chosen frontier
// constant. The returned open hypothesis defines inv, starting from that
// constant and the unlinked head constant.
inline std::pair<Hypothesis, Hypothesis> invent_auto(const Hypothesis& open, std::size_t frontier_index,
                                                     std::uint32_t max_body, InventedNames& names) {
  if (open.status != Status::Open) throw PreconditionFault("invent_auto: hypothesis is closed");
  if (open.head.args.size() != 2) throw PreconditionFault("invent_auto: target must be binary");
  if (open.body.size() + 1 != max_body)
    throw PreconditionFault("invent_auto: needs exactly one free body slot");
  if (frontier_index >= open.frontier.size())
    throw PreconditionFault("invent_auto: no frontier constant to bridge from");
  VarCode y = open.head.args[1].as_var();
  if (std::any_of(open.body.begin(), open.body.end(), [y](const Atom& a) { return a.mentions(y); }))
    throw PreconditionFault("invent_auto: head argument Y is already linked");

  const FrontierEntry& entry = open.frontier[frontier_index];
  auto z = open.theta_inv.lookup(entry.constant);
  auto y_const = open.theta_inv.constant_for(y);
  if (!z || !y_const) throw PreconditionFault("invent_auto: frontier constant is not anti-unified");

  PredCode inv = names.fresh(2);
  Hypothesis closed = open;
  closed.body.push_back(Atom{inv, {Term::var(*z), Term::var(y)}});
  closed.status = Status::Closed;
  closed.frontier.clear();

  Hypothesis next;
  next.head = Atom{inv, {Term::var(VarCode{0}), Term::var(VarCode{1})}};
  next.theta_inv.seed(entry.constant, VarCode{0});
  next.theta_inv.seed(*y_const, VarCode{1});
  next.frontier = {entry};
  return {std::move(closed), std::move(next)};
}

struct RecursivePair {
  Clause base;       // t(X,Y) :- q(X,Y).
  Clause recursive;  // t(X,Y) :- q(X,Z0), t(Z0,Y).
};

// Similarity of the concept region behind pred: an invented predicate
// stands for the union of its sources.
inline double concept_similarity(const SharedNeMuS& nemus, PredCode pred,
                                 std::span<const InventionBias> biases) {
  if (const InventionBias* b = bias_for_invented(pred, biases)) return region_similarity(nemus, b->sources);
  return region_similarity(nemus, pred);
}

inline std::optional<RecursivePair> try_recursion(const Hypothesis& open, const Atom& next_atom,
                                                  const SharedNeMuS& nemus,
                                                  std::span<const InventionBias> biases, double tau) {
  if (open.body.empty()) throw PreconditionFault("try_recursion: body is empty");
  if (open.body.back().pred != next_atom.pred)
    throw PreconditionFault("try_recursion: next atom does not repeat the last body predicate");
  if (open.head.args.size() != 2 || next_atom.args.size() != 2) return std::nullopt;
  if (concept_similarity(nemus, next_atom.pred, biases) < tau) return std::nullopt;

  const Term x = Term::var(VarCode{0}), y = Term::var(VarCode{1}), z = Term::var(VarCode{2});
  PredCode t = open.head.pred, q = next_atom.pred;
  return RecursivePair{
      Clause{Atom{t, {x, y}}, {Atom{q, {x, y}}}},
      Clause{Atom{t, {x, y}}, {Atom{q, {x, z}}, Atom{t, {z, y}}}},
  };
}

}  // namespace nemus
