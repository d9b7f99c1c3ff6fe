#pragma once

// The search: a breadth-first walk over beta-bindings from the arguments of
// each positive example. Candidates colliding with the negative walk are
// pruned by inductive momentum before they are generalized; survivors are
// anti-unified into open hypotheses that close directly, by recursion, or by
// automated invention. Every clause set is checked by the oracle before it
// is reported.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nemus/herbrand_oracle.hpp"
#include "nemus/icl_engine.hpp"

namespace nemus {

struct LearnOptions {
  bool trace = false;
  // Test hook: keep every momentum-rejected candidate as the clause it
  // would have produced (LearnResult::pruned).
  bool keep_pruned = false;
  // When the momentum-guided walk yields nothing verifiable, walk again
  // without momentum, branching from every reached constant.
  bool completion = true;
  bool automated_invention = true;
};

enum class MomentumVerdict { NotApplied, Consistent, Inconsistent };

inline const char* to_string(MomentumVerdict v) {
  switch (v) {
    case MomentumVerdict::NotApplied: return "n/a";
    case MomentumVerdict::Consistent: return "consistent";
    case MomentumVerdict::Inconsistent: return "inconsistent";
  }
  return "";
}

struct TraceRecord {
  std::size_t step;  // 1-based
  std::string phase;  // primary | invention | completion
  std::size_t level;  // body length of the hypothesis being expanded
  ConstCode frontier;
  GroundAtom candidate;
  MomentumVerdict verdict;
  std::string action;
};

struct LearnStats {
  std::size_t candidates_examined = 0;
  std::size_t pruned_by_momentum = 0;
  std::size_t frontier_peak = 0;
  std::size_t unverified_dropped = 0;
  std::size_t inventions = 0;
  bool completion_pass = false;
};

struct LearnResult {
  std::vector<ClauseSet> hypotheses;
  std::vector<PredCode> invented;
  LearnStats stats;
  SymbolTable symbols;  // input table plus automatically invented predicates
  std::vector<TraceRecord> trace;
  std::vector<Clause> pruned;

  bool empty() const { return hypotheses.empty(); }
};

inline std::string render_clause_set(const ClauseSet& set, const SymbolTable& symbols) {
  std::string out;
  for (const auto& c : set) out += render_clause(c, symbols) + "\n";
  return out;
}

class Learner {
 public:
  Learner(const SharedNeMuS& nemus, const LearnTask& task, const SymbolTable& symbols,
          LearnOptions options = {})
      : nemus_(nemus), task_(task), options_(options), names_(result_.symbols) {
    result_.symbols = symbols;
    if (!task_.target) throw PreconditionFault("learn: task has no target");
    if (task_.positives.empty()) throw PreconditionFault("learn: task has no positive example");
    bk_ = facts(nemus_);
  }

  LearnResult run() && {
    std::vector<std::vector<ClauseSet>> per_example;
    for (const auto& e : task_.positives) per_example.push_back(learn_example(e));

    if (task_.positives.size() == 1) {
      result_.hypotheses = std::move(per_example.front());
    } else {
      merge(per_example);
    }
    collect_invented();
    return std::move(result_);
  }

 private:
  // ---- per example ---------------------------------------------------------

  std::vector<ClauseSet> learn_example(const GroundAtom& e) {
    Hypothesis seed = seed_for(e);
    std::vector<ClauseSet> raw = primary(seed, 0, "primary");
    std::vector<ClauseSet> kept = keep_verified(raw, e);
    if (kept.empty() && options_.completion) {
      result_.stats.completion_pass = true;
      kept = keep_verified(completion(seed), e);
    }
    return kept;
  }

  Hypothesis seed_for(const GroundAtom& e) const {
    Hypothesis h;
    h.head = Atom{e.pred, {}};
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      // t(a,a) generalizes to t(X,X): theta^-1 stays injective.
      VarCode v = h.theta_inv.lookup(e.args[i]).value_or(VarCode{static_cast<std::uint32_t>(i)});
      h.theta_inv.seed(e.args[i], v);
      h.head.args.push_back(Term::var(v));
    }
    h.theta_inv.reserve_variables(static_cast<std::uint32_t>(e.args.size()));
    FrontierEntry entry{e.args[0], {}, true};
    for (const auto& neg : task_.negatives) entry.paired.push_back({neg.args[0]});
    h.frontier.push_back(std::move(entry));
    return h;
  }

  std::vector<ClauseSet> keep_verified(const std::vector<ClauseSet>& raw, const GroundAtom& e) {
    std::vector<ClauseSet> out;
    std::set<std::string> seen;
    const GroundAtom pos[] = {e};
    for (const auto& core : raw) {
      ClauseSet set = assemble(core);
      if (!seen.insert(render_clause_set(set, result_.symbols)).second) continue;
      if (verify(bk_, set, pos, task_.negatives).verified())
        out.push_back(std::move(set));
      else
        ++result_.stats.unverified_dropped;
    }
    return out;
  }

  // Prepends the definition clauses of every biased predicate the set uses.
  ClauseSet assemble(const ClauseSet& core) const {
    ClauseSet out;
    for (const auto& bias : task_.biases) {
      bool used = std::any_of(core.begin(), core.end(), [&](const Clause& c) {
        return std::any_of(c.body.begin(), c.body.end(),
                           [&](const Atom& a) { return a.pred == bias.invented; });
      });
      if (!used) continue;
      std::uint32_t arity = result_.symbols.predicate(bias.invented).arity;
      for (auto src : bias.sources) out.push_back(definition_clause(bias.invented, src, arity));
    }
    out.insert(out.end(), core.begin(), core.end());
    return out;
  }

  // ---- momentum-guided walk -----------------------------------------------

  // Clause lists closing seed.head; for invention, the first clause is the
  // bridged hypothesis and the rest define the invented predicate.
  std::vector<ClauseSet> primary(const Hypothesis& seed, int depth, const char* phase) {
    std::vector<ClauseSet> out;
    std::vector<Hypothesis> level{seed};
    while (!level.empty()) {
      result_.stats.frontier_peak = std::max(result_.stats.frontier_peak, level.size());
      std::vector<Hypothesis> next;
      for (const auto& h : level) expand(h, depth, phase, next, out);
      level = std::move(next);
    }
    return out;
  }

  MomentumVerdict momentum(const FrontierEntry& entry, const GroundAtom& candidate) const {
    if (entry.seed) return MomentumVerdict::NotApplied;
    for (const auto& paired : entry.paired)
      for (auto m : paired)
        for (const auto& b : beta(nemus_, m))
          if (inductive_momentum(candidate, atom_of(nemus_, b), entry.constant, m) ==
              Momentum::Inconsistent)
            return MomentumVerdict::Inconsistent;
    return MomentumVerdict::Consistent;
  }

  // Adds candidate to h; nullopt when its generalization is already in the body.
  std::optional<Hypothesis> extend(const Hypothesis& h, const FrontierEntry& entry,
                                   const GroundAtom& candidate) const {
    Hypothesis next = h;
    Atom general = next.theta_inv.generalize(candidate);
    std::set<PredCode> scratch;
    Atom rewritten = apply_bias(general, task_.biases, scratch).atom;
    if (std::find(h.body.begin(), h.body.end(), rewritten) != h.body.end()) return std::nullopt;
    next.body.push_back(std::move(rewritten));
    next.grounding.push_back(candidate);
    next.frontier.clear();

    // Attribute mates become the frontier. Each inherits, per negative
    // example, the constants at the same position of the negative walk's
    // counterpart literals: same predicate, hook at the same index.
    const auto hook = static_cast<std::size_t>(
        std::find(candidate.args.begin(), candidate.args.end(), entry.constant) -
        candidate.args.begin());
    for (std::size_t j = 0; j < candidate.args.size(); ++j) {
      ConstCode mate = candidate.args[j];
      if (h.theta_inv.contains(mate)) continue;
      if (std::any_of(next.frontier.begin(), next.frontier.end(),
                      [mate](const FrontierEntry& f) { return f.constant == mate; }))
        continue;
      FrontierEntry fe{mate, {}, false};
      for (const auto& paired : entry.paired) {
        std::vector<ConstCode> reached;
        for (auto m : paired)
          for (const auto& b : beta(nemus_, m)) {
            GroundAtom eta = atom_of(nemus_, b);
            if (eta.pred != candidate.pred || b.target.a != hook + 1) continue;
            if (std::find(reached.begin(), reached.end(), eta.args[j]) == reached.end())
              reached.push_back(eta.args[j]);
          }
        fe.paired.push_back(std::move(reached));
      }
      next.frontier.push_back(std::move(fe));
    }
    return next;
  }

  void record(const char* phase, std::size_t level, ConstCode frontier, const GroundAtom& candidate,
              MomentumVerdict verdict, std::string action) {
    if (!options_.trace) return;
    result_.trace.push_back(TraceRecord{result_.trace.size() + 1, phase, level, frontier, candidate,
                                        verdict, std::move(action)});
  }

  void expand(const Hypothesis& h, int depth, const char* phase, std::vector<Hypothesis>& queue,
              std::vector<ClauseSet>& out) {
    const bool binary = h.head.args.size() == 2;
    const std::uint32_t max_body = task_.max_body;
    bool admissible = false, closed_here = false;

    for (const auto& entry : h.frontier) {
      for (const auto& b : beta(nemus_, entry.constant)) {
        GroundAtom candidate = atom_of(nemus_, b);
        ++result_.stats.candidates_examined;
        if (std::find(h.grounding.begin(), h.grounding.end(), candidate) != h.grounding.end()) {
          record(phase, h.body.size(), entry.constant, candidate, MomentumVerdict::NotApplied, "duplicate");
          continue;
        }
        MomentumVerdict verdict = momentum(entry, candidate);
        if (verdict == MomentumVerdict::Inconsistent) {
          ++result_.stats.pruned_by_momentum;
          record(phase, h.body.size(), entry.constant, candidate, verdict, "pruned");
          if (options_.keep_pruned) {
            Hypothesis forced = h;
            Atom general = forced.theta_inv.generalize(candidate);
            std::set<PredCode> scratch;
            forced.body.push_back(apply_bias(general, task_.biases, scratch).atom);
            result_.pruned.push_back(forced.clause());
          }
          continue;
        }
        auto next = extend(h, entry, candidate);
        if (!next) {
          record(phase, h.body.size(), entry.constant, candidate, verdict, "duplicate");
          continue;
        }
        admissible = true;
        std::string action;
        auto add_action = [&action](const char* a) {
          if (!action.empty()) action += "+";
          action += a;
        };

        if (binary) {
          const bool closes = is_range_restricted(next->clause());
          if (closes) {
            out.push_back({next->clause()});
            closed_here = true;
            add_action("close");
          }
          if (!h.body.empty() && next->body.back().pred == h.body.back().pred) {
            if (auto pair = try_recursion(h, next->body.back(), nemus_, task_.biases, task_.tau)) {
              out.push_back({pair->base, pair->recursive});
              closed_here = true;
              add_action("recursion");
            }
          }
          if (!closes && next->body.size() < max_body && !next->frontier.empty()) {
            queue.push_back(std::move(*next));
            add_action("extend");
          }
        } else if (next->body.size() >= max_body) {
          out.push_back({next->clause()});
          add_action("close");
        } else {
          queue.push_back(std::move(*next));
          add_action("extend");
        }
        if (action.empty()) action = "dead-end";
        record(phase, h.body.size(), entry.constant, candidate, verdict, std::move(action));
      }
    }

    if (!binary && !h.body.empty() && !admissible) {
      // No frontier left: a monadic hypothesis closes as it stands.
      out.push_back({h.clause()});
    }

    if (binary && !closed_here && depth == 0 && options_.automated_invention &&
        !h.body.empty() && h.body.size() + 1 == max_body && !is_range_restricted(h.clause())) {
      for (std::size_t i = 0; i < h.frontier.size(); ++i) {
        auto [closed, open] = invent_auto(h, i, max_body, names_);
        ++result_.stats.inventions;
        for (auto& sub : primary(open, depth + 1, "invention")) {
          ClauseSet set{closed.clause()};
          set.insert(set.end(), sub.begin(), sub.end());
          out.push_back(std::move(set));
        }
      }
    }
  }

  // ---- completion walk ------------------------------------------------------

  // Exhaustive breadth-first growth of connected ground bodies from every
  // reached constant; each body covering the head yields one clause.
  std::vector<ClauseSet> completion(const Hypothesis& seed) {
    std::vector<ClauseSet> out;
    std::set<std::vector<GroundAtom>> visited;
    std::vector<std::vector<GroundAtom>> level{{}};
    for (std::uint32_t size = 1; size <= task_.max_body && !level.empty(); ++size) {
      result_.stats.frontier_peak = std::max(result_.stats.frontier_peak, level.size());
      std::vector<std::vector<GroundAtom>> next_level;
      for (const auto& body : level) {
        std::set<ConstCode> reached;
        for (const auto& [c, v] : seed.theta_inv.pairs()) reached.insert(c);
        for (const auto& g : body) reached.insert(g.args.begin(), g.args.end());
        for (auto c : reached) {
          for (const auto& b : beta(nemus_, c)) {
            GroundAtom candidate = atom_of(nemus_, b);
            if (std::find(body.begin(), body.end(), candidate) != body.end()) continue;
            auto grown = body;
            grown.push_back(candidate);
            auto key = grown;
            std::sort(key.begin(), key.end());
            if (!visited.insert(std::move(key)).second) continue;
            ++result_.stats.candidates_examined;

            Hypothesis h = seed;
            bool duplicate = false;
            for (const auto& g : grown) {
              std::set<PredCode> scratch;
              Atom a = apply_bias(h.theta_inv.generalize(g), task_.biases, scratch).atom;
              if (std::find(h.body.begin(), h.body.end(), a) != h.body.end()) duplicate = true;
              h.body.push_back(std::move(a));
            }
            std::string action = "extend";
            if (duplicate) {
              action = "duplicate";
            } else if (is_range_restricted(h.clause())) {
              out.push_back({h.clause()});
              action = "close";
            }
            record("completion", body.size(), c, candidate, MomentumVerdict::NotApplied, action);
            if (!duplicate && size < task_.max_body) next_level.push_back(std::move(grown));
          }
        }
      }
      level = std::move(next_level);
    }
    return out;
  }

  // ---- several positive examples --------------------------------------------

  void merge(const std::vector<std::vector<ClauseSet>>& per_example) {
    std::set<std::string> seen;
    auto consider = [&](const ClauseSet& set) {
      if (!seen.insert(render_clause_set(set, result_.symbols)).second) return;
      if (verify(bk_, set, task_.positives, task_.negatives).verified())
        result_.hypotheses.push_back(set);
      else
        ++result_.stats.unverified_dropped;
    };
    for (const auto& sets : per_example)
      for (const auto& s : sets) consider(s);

    // Union of the first solution found for each example.
    ClauseSet merged;
    std::set<std::string> clause_keys;
    for (const auto& sets : per_example) {
      if (sets.empty()) continue;
      for (const auto& c : sets.front())
        if (clause_keys.insert(render_clause(c, result_.symbols)).second) merged.push_back(c);
    }
    if (!merged.empty()) consider(merged);
  }

  void collect_invented() {
    for (const auto& set : result_.hypotheses)
      for (const auto& c : set) {
        PredCode p = c.head.pred;
        if (p == *task_.target) continue;
        if (std::find(result_.invented.begin(), result_.invented.end(), p) == result_.invented.end())
          result_.invented.push_back(p);
      }
  }

  const SharedNeMuS& nemus_;
  const LearnTask& task_;
  LearnOptions options_;
  LearnResult result_;
  InventedNames names_;
  std::vector<GroundAtom> bk_;
};

// NoHypothesis is an empty result, never an exception.
inline LearnResult learn(const SharedNeMuS& nemus, const LearnTask& task, const SymbolTable& symbols,
                         LearnOptions options = {}) {
  return Learner(nemus, task, symbols, options).run();
}

}  // namespace nemus
