#pragma once

// Bottom-up evaluation of function-free definite programs. The least
// Herbrand model of BK plus a hypothesis decides entailment of examples.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nemus/errors.hpp"
#include "nemus/kb_lang.hpp"

namespace nemus {

struct Program {
  std::set<GroundAtom> facts;
  std::vector<Clause> rules;
};

struct HerbrandModel {
  std::set<GroundAtom> atoms;

  bool contains(const GroundAtom& a) const { return atoms.count(a) != 0; }
  std::size_t size() const { return atoms.size(); }
};

namespace detail {

struct Slot {
  bool is_var;
  std::uint32_t value;  // variable slot index or constant code
};

struct CompiledAtom {
  PredCode pred;
  std::vector<Slot> args;
};

struct CompiledRule {
  CompiledAtom head;
  std::vector<CompiledAtom> body;
  std::size_t var_count;
};

inline CompiledRule compile_rule(const Clause& c) {
  if (!is_range_restricted(c))
    throw RangeRestrictionFault("rule head variable does not occur in the body (predicate code " +
                                std::to_string(c.head.pred.value) + ")");
  auto vars = variables_of(c);
  auto slot_of = [&](const Term& t) {
    if (!t.is_var()) return Slot{false, t.as_const().value};
    auto it = std::find(vars.begin(), vars.end(), t.as_var());
    return Slot{true, static_cast<std::uint32_t>(it - vars.begin())};
  };
  auto convert = [&](const Atom& a) {
    CompiledAtom out{a.pred, {}};
    for (const auto& t : a.args) out.args.push_back(slot_of(t));
    return out;
  };
  CompiledRule r{convert(c.head), {}, vars.size()};
  for (const auto& b : c.body) r.body.push_back(convert(b));
  return r;
}

using Tuple = std::vector<ConstCode>;
using Relation = std::map<PredCode, std::vector<Tuple>>;
using Env = std::vector<std::optional<ConstCode>>;

// Binds slots of `atom` against `tuple`; records which slots were newly bound.
inline bool match(const CompiledAtom& atom, const Tuple& tuple, Env& env,
                  std::vector<std::uint32_t>& bound) {
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const Slot& s = atom.args[i];
    if (!s.is_var) {
      if (s.value != tuple[i].value) return false;
    } else if (env[s.value]) {
      if (*env[s.value] != tuple[i]) return false;
    } else {
      env[s.value] = tuple[i];
      bound.push_back(s.value);
    }
  }
  return true;
}

class Evaluator {
 public:
  Evaluator(const std::vector<CompiledRule>& rules, const Relation& full, const Relation& delta,
            const std::set<GroundAtom>& known, std::set<GroundAtom>& fresh)
      : rules_(rules), full_(full), delta_(delta), known_(known), fresh_(fresh) {}

  void run() {
    for (const auto& r : rules_) {
      for (std::size_t j = 0; j < r.body.size(); ++j) {
        auto it = delta_.find(r.body[j].pred);
        if (it == delta_.end()) continue;
        Env env(r.var_count);
        for (const auto& tuple : it->second) {
          std::vector<std::uint32_t> bound;
          if (match(r.body[j], tuple, env, bound)) join(r, j, 0, env);
          for (auto v : bound) env[v].reset();
        }
      }
    }
  }

 private:
  void join(const CompiledRule& r, std::size_t pinned, std::size_t next, Env& env) {
    if (next == pinned) return join(r, pinned, next + 1, env);
    if (next == r.body.size()) {
      GroundAtom head{r.head.pred, {}};
      for (const auto& s : r.head.args)
        head.args.push_back(s.is_var ? *env[s.value] : ConstCode{s.value});
      if (!known_.count(head)) fresh_.insert(std::move(head));
      return;
    }
    auto it = full_.find(r.body[next].pred);
    if (it == full_.end()) return;
    for (const auto& tuple : it->second) {
      std::vector<std::uint32_t> bound;
      if (match(r.body[next], tuple, env, bound)) join(r, pinned, next + 1, env);
      for (auto v : bound) env[v].reset();
    }
  }

  const std::vector<CompiledRule>& rules_;
  const Relation& full_;
  const Relation& delta_;
  const std::set<GroundAtom>& known_;
  std::set<GroundAtom>& fresh_;
};

// Size of the Herbrand base over the program's constants and predicates.
inline double herbrand_base_size(const Program& prog) {
  std::set<std::uint32_t> constants;
  std::map<PredCode, std::size_t> arity;
  for (const auto& f : prog.facts) {
    arity[f.pred] = f.args.size();
    for (auto c : f.args) constants.insert(c.value);
  }
  auto visit = [&](const Atom& a) {
    arity[a.pred] = a.args.size();
    for (const auto& t : a.args)
      if (!t.is_var()) constants.insert(t.as_const().value);
  };
  for (const auto& r : prog.rules) {
    visit(r.head);
    for (const auto& b : r.body) visit(b);
  }
  double total = 0;
  for (const auto& [p, n] : arity)
    total += std::pow(static_cast<double>(constants.size()), static_cast<double>(n));
  return total;
}

}  // namespace detail

// Semi-naive fixpoint: each round joins at least one atom derived in the
// previous round.
inline HerbrandModel least_model(const Program& prog) {
  std::vector<detail::CompiledRule> rules;
  for (const auto& r : prog.rules) rules.push_back(detail::compile_rule(r));

  HerbrandModel model{prog.facts};
  std::set<GroundAtom> delta_atoms = prog.facts;
  // Body-free rules are ground facts once range restriction holds.
  for (const auto& r : prog.rules)
    if (r.body.empty()) {
      auto g = r.head.ground();
      if (model.atoms.insert(g).second) delta_atoms.insert(g);
    }

  detail::Relation full;
  for (const auto& a : model.atoms) full[a.pred].push_back(a.args);

  const double round_cap = detail::herbrand_base_size(prog) + 1;
  std::size_t rounds = 0;
  while (!delta_atoms.empty()) {
    if (++rounds > round_cap) throw std::logic_error("least_model exceeded |HB| + 1 rounds");
    detail::Relation delta;
    for (const auto& a : delta_atoms) delta[a.pred].push_back(a.args);
    std::set<GroundAtom> fresh;
    detail::Evaluator(rules, full, delta, model.atoms, fresh).run();
    for (const auto& a : fresh) {
      model.atoms.insert(a);
      full[a.pred].push_back(a.args);
    }
    delta_atoms = std::move(fresh);
  }
  return model;
}

struct Verdict {
  enum class Kind { Verified, MissingPositive, DerivedNegative };
  Kind kind = Kind::Verified;
  std::optional<GroundAtom> example;  // the failing example

  bool verified() const { return kind == Kind::Verified; }
};

inline std::string render_verdict(const Verdict& v, const SymbolTable& symbols) {
  if (v.verified()) return "Verified";
  return "Fails(" + render_atom(*v.example, symbols) + ")";
}

inline Verdict verify(std::span<const GroundAtom> bk, std::span<const Clause> hypothesis,
                      std::span<const GroundAtom> positives, std::span<const GroundAtom> negatives) {
  Program prog{{bk.begin(), bk.end()}, {hypothesis.begin(), hypothesis.end()}};
  HerbrandModel model = least_model(prog);
  for (const auto& e : positives)
    if (!model.contains(e)) return {Verdict::Kind::MissingPositive, e};
  for (const auto& e : negatives)
    if (model.contains(e)) return {Verdict::Kind::DerivedNegative, e};
  return {};
}

// ---------------------------------------------------------------------------
// Brute-force hypothesis space

struct EnumerationCaps {
  std::uint32_t max_body = 2;
  std::uint32_t max_vars = 0;  // 0: head arity + max_body, i.e. unbounded for binary bodies
  std::uint32_t max_clauses = 1;
  bool use_invention = false;
};

struct EnumeratedSet {
  ClauseSet clauses;
  Verdict verdict;
};

// Lazily streams clause sets: first the vacuous set (bias definitions only,
// or nothing), then every combination of up to max_clauses connected,
// range-restricted target clauses drawn from a canonical pool.
class HypothesisEnumerator {
 public:
  HypothesisEnumerator(const KnowledgeBase& kb, EnumerationCaps caps)
      : bk_(kb.facts), task_(kb.task), caps_(caps) {
    if (!task_.target) throw PreconditionFault("enumeration needs a target predicate");
    head_arity_ = kb.symbols.predicate(*task_.target).arity;
    if (caps_.max_vars == 0) caps_.max_vars = head_arity_ + caps_.max_body;

    if (caps_.use_invention)
      for (const auto& bias : task_.biases)
        for (auto src : bias.sources)
          definitions_.push_back(
              definition_clause(bias.invented, src, kb.symbols.predicate(bias.invented).arity));

    std::set<PredCode> with_facts;
    for (const auto& f : bk_) with_facts.insert(f.pred);
    for (auto p : with_facts) body_preds_.push_back({p, kb.symbols.predicate(p).arity});
    if (caps_.use_invention)
      for (const auto& bias : task_.biases)
        body_preds_.push_back({bias.invented, kb.symbols.predicate(bias.invented).arity});
    slots_ = caps_.max_clauses > definitions_.size() ? caps_.max_clauses - definitions_.size() : 0;
    if (slots_ >= 2) body_preds_.push_back({*task_.target, head_arity_});

    if (slots_ > 0) build_pool();
  }

  const std::vector<Clause>& pool() const { return pool_; }

  std::optional<EnumeratedSet> next() {
    if (!started_) {
      started_ = true;
      return make({});
    }
    if (!advance()) return std::nullopt;
    return make(combo_);
  }

 private:
  struct PredInfo {
    PredCode pred;
    std::uint32_t arity;
  };

  EnumeratedSet make(const std::vector<std::size_t>& picks) const {
    ClauseSet set = definitions_;
    for (auto i : picks) set.push_back(pool_[i]);
    Verdict v = verify(bk_, set, task_.positives, task_.negatives);
    return {std::move(set), v};
  }

  // Next combination in (size, lexicographic) order.
  bool advance() {
    const std::size_t n = pool_.size();
    std::size_t k = combo_.size();
    if (k > 0) {
      for (std::size_t i = k; i-- > 0;) {
        if (combo_[i] < n - (k - i)) {
          ++combo_[i];
          for (std::size_t j = i + 1; j < k; ++j) combo_[j] = combo_[j - 1] + 1;
          return true;
        }
      }
    }
    ++k;
    if (k > slots_ || k > n) return false;
    combo_.resize(k);
    for (std::size_t i = 0; i < k; ++i) combo_[i] = i;
    return true;
  }

  void build_pool() {
    Clause c{{*task_.target, {}}, {}};
    for (std::uint32_t i = 0; i < head_arity_; ++i) c.head.args.push_back(Term::var(VarCode{i}));
    extend(c, head_arity_);
  }

  void extend(Clause& c, std::uint32_t next_var) {
    if (!c.body.empty()) consider(c);
    if (c.body.size() >= caps_.max_body) return;
    for (const auto& info : body_preds_) {
      Atom atom{info.pred, std::vector<Term>(info.arity, Term::var(VarCode{0}))};
      fill(c, atom, 0, next_var);
    }
  }

  // Restricted growth: an argument is an existing variable or the next new one.
  void fill(Clause& c, Atom& atom, std::size_t pos, std::uint32_t next_var) {
    if (pos == atom.args.size()) {
      c.body.push_back(atom);
      extend(c, next_var);
      c.body.pop_back();
      return;
    }
    std::uint32_t limit = std::min(next_var + 1, caps_.max_vars);
    for (std::uint32_t v = 0; v < limit; ++v) {
      atom.args[pos] = Term::var(VarCode{v});
      fill(c, atom, pos + 1, v == next_var ? next_var + 1 : next_var);
    }
  }

  void consider(const Clause& c) {
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (c.body[i] == c.head) return;
      for (std::size_t j = i + 1; j < c.body.size(); ++j)
        if (c.body[i] == c.body[j]) return;
    }
    bool has_target = false, has_other = false;
    for (const auto& b : c.body) (b.pred == *task_.target ? has_target : has_other) = true;
    if (has_target && !has_other) return;
    if (!is_range_restricted(c) || !is_connected(c)) return;
    Clause canon = canonical(c);
    if (seen_.insert(key(canon)).second) pool_.push_back(std::move(canon));
  }

  // Minimum over body orders of the first-use renaming of non-head variables.
  Clause canonical(const Clause& c) const {
    std::vector<std::size_t> order(c.body.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::optional<Clause> best;
    std::optional<std::vector<std::uint32_t>> best_key;
    do {
      Clause r{c.head, {}};
      std::map<std::uint32_t, std::uint32_t> rename;
      for (std::uint32_t i = 0; i < head_arity_; ++i) rename[i] = i;
      for (auto i : order) {
        Atom a = c.body[i];
        for (auto& t : a.args) {
          auto v = t.as_var().value;
          auto [it, inserted] = rename.emplace(v, static_cast<std::uint32_t>(rename.size()));
          t = Term::var(VarCode{it->second});
        }
        r.body.push_back(std::move(a));
      }
      auto k = key(r);
      if (!best_key || k < *best_key) {
        best_key = std::move(k);
        best = std::move(r);
      }
    } while (std::next_permutation(order.begin(), order.end()));
    return *best;
  }

  // The target ranks after every other predicate so recursive calls come last.
  std::vector<std::uint32_t> key(const Clause& c) const {
    std::vector<std::uint32_t> k;
    for (const auto& b : c.body) {
      k.push_back(b.pred == *task_.target ? ~0u - 1 : b.pred.value);
      for (const auto& t : b.args) k.push_back(t.as_var().value);
      k.push_back(~0u);
    }
    return k;
  }

  std::vector<GroundAtom> bk_;
  LearnTask task_;
  EnumerationCaps caps_;
  std::uint32_t head_arity_ = 0;
  std::vector<Clause> definitions_;
  std::vector<PredInfo> body_preds_;
  std::size_t slots_ = 0;
  std::vector<Clause> pool_;
  std::set<std::vector<std::uint32_t>> seen_;
  std::vector<std::size_t> combo_;
  bool started_ = false;
};

}  // namespace nemus
