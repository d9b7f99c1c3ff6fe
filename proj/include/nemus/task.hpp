#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nemus/syntax.hpp"

namespace nemus {

// "sources... defines invented": the invented predicate is the disjunction of
// its sources, all of the same arity.
struct InventionBias {
  std::vector<PredCode> sources;
  PredCode invented;

  friend bool operator==(const InventionBias&, const InventionBias&) = default;
};

// invented(X[,Y]) :- source(X[,Y]).
inline Clause definition_clause(PredCode invented, PredCode source, std::uint32_t arity) {
  Clause c{{invented, {}}, {{source, {}}}};
  for (std::uint32_t i = 0; i < arity; ++i) {
    c.head.args.push_back(Term::var(VarCode{i}));
    c.body[0].args.push_back(Term::var(VarCode{i}));
  }
  return c;
}

inline constexpr std::uint32_t kDefaultMaxBody = 3;
inline constexpr double kDefaultTau = 0.2;

struct LearnTask {
  std::optional<PredCode> target;
  std::vector<GroundAtom> positives;
  std::vector<GroundAtom> negatives;
  std::vector<InventionBias> biases;
  std::uint32_t max_body = kDefaultMaxBody;
  double tau = kDefaultTau;
};

}  // namespace nemus
