#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nemus/learner.hpp"

namespace nemus::testing {

inline const char* const kFamilyKb = R"(
father(jake, alice).
mother(alice, ted).
father(ted, bob).
mother(matilda, alice).
#target ancestor/2.
#positive ancestor(jake, bob).
#invent parent/2 from father/2, mother/2.
#max_body 2.
)";

// Smallest instantiation of the collision example: the positive walk
// a -p1-> a1 -qj-> bj mirrors the negative walk b -p1-> b1 -qj-> bj.
inline const char* const kCollisionKb = R"(
p1(a, a1).
p1(b, b1).
qj(bj, a1).
qj(bj, b1).
pk(ak, a).
r1(c1, ak).
s1(c1).
#target p/1.
#positive p(a).
#negative p(b).
#max_body 3.
)";

inline std::vector<std::string> render_all(const ClauseSet& set, const SymbolTable& symbols) {
  std::vector<std::string> out;
  for (const auto& c : set) out.push_back(render_clause(c, symbols));
  return out;
}

// Order-insensitive comparison of rendered clause sets. Rendering already
// names variables by first use, so equal strings mean equal up to renaming.
inline bool same_clauses(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline GroundAtom ground(KnowledgeBase& kb, const std::string& pred,
                         const std::vector<std::string>& args) {
  GroundAtom g{*kb.symbols.find_predicate(pred, static_cast<std::uint32_t>(args.size())), {}};
  for (const auto& a : args) g.args.push_back(*kb.symbols.find_constant(a));
  return g;
}

}  // namespace nemus::testing
