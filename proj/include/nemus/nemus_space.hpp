#pragma once

// Shared NeMuS: the compiled, cross-indexed multi-space over the background
// knowledge. Constants point at every predicate instance they occur in
// (beta), and every instance lists the constants at its attribute positions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nemus/errors.hpp"
#include "nemus/kb_lang.hpp"

namespace nemus {

// Space indices. Space 2 (functions) does not exist in a function-free language.
enum class Space : std::uint32_t { Variable = 0, Constant = 1, Predicate = 3, Clause = 4 };

// (h, c, i, a): object with code c in space h, occurrence i, attribute a.
// i and a are 1-based.
struct TNode {
  Space h;
  std::uint32_t c;
  std::uint32_t i;
  std::uint32_t a;

  friend bool operator==(const TNode&, const TNode&) = default;
};

// Importance w of object k over the occurrence addressed by target.
struct Binding {
  TNode target;
  double w = 1.0;
  std::uint32_t k;

  friend bool operator==(const Binding&, const Binding&) = default;
};

using BindingVector = std::vector<Binding>;

struct ISpace {
  std::vector<TNode> args;
  BindingVector bindings;

  friend bool operator==(const ISpace&, const ISpace&) = default;
};

using CSpace = std::vector<ISpace>;

struct PredicateSpace {
  std::vector<CSpace> positive;  // indexed by predicate code
  std::vector<CSpace> negative;

  friend bool operator==(const PredicateSpace&, const PredicateSpace&) = default;
};

struct SharedNeMuS {
  std::vector<BindingVector> variables;
  std::vector<BindingVector> constants;
  PredicateSpace predicates;
  std::vector<CSpace> clauses;
  std::vector<std::uint32_t> arity;  // by predicate code

  friend bool operator==(const SharedNeMuS&, const SharedNeMuS&) = default;
};

inline constexpr double kInitialWeight = 1.0;

// Occurrence indices count per (predicate, polarity) C-space, in file order.
// Only background facts create constant bindings; negative examples are
// stored as instances so they can be inspected, but nothing points at them.
inline SharedNeMuS compile(const KnowledgeBase& kb) {
  const SymbolTable& sym = kb.symbols;
  SharedNeMuS n;
  n.constants.resize(sym.constant_count());
  n.predicates.positive.resize(sym.predicate_count());
  n.predicates.negative.resize(sym.predicate_count());
  n.arity.reserve(sym.predicate_count());
  for (std::uint32_t p = 0; p < sym.predicate_count(); ++p)
    n.arity.push_back(sym.predicate(PredCode{p}).arity);

  for (const auto& fact : kb.facts) {
    CSpace& cspace = n.predicates.positive[fact.pred.value];
    auto occ = static_cast<std::uint32_t>(cspace.size() + 1);
    ISpace inst;
    for (std::uint32_t a = 1; a <= fact.args.size(); ++a) {
      ConstCode c = fact.args[a - 1];
      Binding b{TNode{Space::Predicate, fact.pred.value, occ, a}, kInitialWeight, c.value};
      auto& beta = n.constants[c.value];
      beta.push_back(b);
      inst.args.push_back(
          TNode{Space::Constant, c.value, static_cast<std::uint32_t>(beta.size()), a});
      inst.bindings.push_back(b);
    }
    cspace.push_back(std::move(inst));
  }

  std::vector<std::uint32_t> negative_occ(sym.constant_count(), 0);
  for (const auto& neg : kb.task.negatives) {
    CSpace& cspace = n.predicates.negative[neg.pred.value];
    ISpace inst;
    for (std::uint32_t a = 1; a <= neg.args.size(); ++a) {
      ConstCode c = neg.args[a - 1];
      inst.args.push_back(TNode{Space::Constant, c.value, ++negative_occ[c.value], a});
    }
    cspace.push_back(std::move(inst));
  }
  return n;
}

inline const BindingVector& beta(const SharedNeMuS& n, ConstCode c) {
  if (c.value >= n.constants.size())
    throw UnknownCode("unknown constant code " + std::to_string(c.value));
  return n.constants[c.value];
}

// Zero-based index of the first T-Node in x carrying code c.
inline std::optional<std::size_t> iota(std::uint32_t c, std::span<const TNode> x) {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k].c == c) return k;
  return std::nullopt;
}

inline const ISpace& instance(const SharedNeMuS& n, PredCode pred, std::uint32_t occurrence) {
  if (pred.value >= n.predicates.positive.size() || occurrence == 0 ||
      occurrence > n.predicates.positive[pred.value].size())
    throw UnknownInstance("no instance " + std::to_string(occurrence) + " of predicate code " +
                          std::to_string(pred.value));
  return n.predicates.positive[pred.value][occurrence - 1];
}

inline GroundAtom atom_of(const SharedNeMuS& n, PredCode pred, std::uint32_t occurrence) {
  const ISpace& inst = instance(n, pred, occurrence);
  GroundAtom g{pred, {}};
  for (const auto& t : inst.args) g.args.push_back(ConstCode{t.c});
  return g;
}

inline GroundAtom atom_of(const SharedNeMuS& n, const Binding& b) {
  return atom_of(n, PredCode{b.target.c}, b.target.i);
}

// All background facts, ordered by (predicate code, occurrence).
inline std::vector<GroundAtom> facts(const SharedNeMuS& n) {
  std::vector<GroundAtom> out;
  for (std::uint32_t p = 0; p < n.predicates.positive.size(); ++p)
    for (std::uint32_t i = 1; i <= n.predicates.positive[p].size(); ++i)
      out.push_back(atom_of(n, PredCode{p}, i));
  return out;
}

// Jaccard overlap between the constants seen in the first and second
// argument columns of the union of preds' instances. Weights are ignored.
inline double region_similarity(const SharedNeMuS& n, std::span<const PredCode> preds) {
  std::set<std::uint32_t> first, second;
  for (auto p : preds) {
    if (p.value >= n.arity.size())
      throw UnknownCode("unknown predicate code " + std::to_string(p.value));
    if (n.arity[p.value] != 2)
      throw ArityError("region similarity needs a binary predicate, got arity " +
                       std::to_string(n.arity[p.value]));
    for (const auto& inst : n.predicates.positive[p.value]) {
      first.insert(inst.args[0].c);
      second.insert(inst.args[1].c);
    }
  }
  std::size_t common = 0;
  for (auto c : first) common += second.count(c);
  std::size_t all = first.size() + second.size() - common;
  return all == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(all);
}

inline double region_similarity(const SharedNeMuS& n, PredCode pred) {
  return region_similarity(n, std::span<const PredCode>(&pred, 1));
}

}  // namespace nemus
