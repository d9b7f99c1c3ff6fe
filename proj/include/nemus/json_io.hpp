#pragma once

// JSON shapes for the CLI. Keys keep insertion order so output diffs cleanly.

#include <string>

#include <json.hpp>

#include "nemus/learner.hpp"
#include "nemus/nemus_space.hpp"

namespace nemus {

using Json = nlohmann::ordered_json;

inline Json to_json(const TNode& t) {
  return Json::array({static_cast<std::uint32_t>(t.h), t.c, t.i, t.a});
}

inline Json to_json(const Binding& b) {
  Json j;
  j["t"] = to_json(b.target);
  j["w"] = b.w;
  j["k"] = b.k;
  return j;
}

inline Json to_json(const BindingVector& v) {
  Json out = Json::array();
  for (const auto& b : v) out.push_back(to_json(b));
  return out;
}

inline Json to_json(const CSpace& cspace) {
  Json out = Json::array();
  for (const auto& inst : cspace) {
    Json i;
    i["args"] = Json::array();
    for (const auto& t : inst.args) i["args"].push_back(to_json(t));
    i["bindings"] = to_json(inst.bindings);
    out.push_back(std::move(i));
  }
  return out;
}

inline Json dump_nemus(const SharedNeMuS& n, const SymbolTable& symbols) {
  Json j;
  j["symbols"]["constants"] = Json::array();
  for (std::uint32_t c = 0; c < symbols.constant_count(); ++c)
    j["symbols"]["constants"].push_back(symbols.constant_name(ConstCode{c}));
  j["symbols"]["predicates"] = Json::array();
  for (std::uint32_t p = 0; p < symbols.predicate_count(); ++p) {
    const auto& sig = symbols.predicate(PredCode{p});
    j["symbols"]["predicates"].push_back(Json{{"name", sig.name}, {"arity", sig.arity}});
  }
  auto spaces = [](const std::vector<BindingVector>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
  };
  auto cspaces = [](const std::vector<CSpace>& cs) {
    Json out = Json::array();
    for (const auto& c : cs) out.push_back(to_json(c));
    return out;
  };
  j["variables"] = spaces(n.variables);
  j["constants"] = spaces(n.constants);
  j["predicates"]["positive"] = cspaces(n.predicates.positive);
  j["predicates"]["negative"] = cspaces(n.predicates.negative);
  j["clauses"] = cspaces(n.clauses);
  return j;
}

inline Json clause_to_json(const Clause& c, const SymbolTable& symbols) {
  VariableNamer vars;
  Json j;
  j["head"] = render_atom(c.head, symbols, vars);
  j["body"] = Json::array();
  for (const auto& b : c.body) j["body"].push_back(render_atom(b, symbols, vars));
  return j;
}

inline Json clause_set_to_json(const ClauseSet& set, const SymbolTable& symbols) {
  Json j;
  j["clauses"] = Json::array();
  for (const auto& c : set) j["clauses"].push_back(clause_to_json(c, symbols));
  return j;
}

inline Json stats_to_json(const LearnStats& s) {
  Json j;
  j["candidates_examined"] = s.candidates_examined;
  j["pruned_by_momentum"] = s.pruned_by_momentum;
  j["frontier_peak"] = s.frontier_peak;
  j["unverified_dropped"] = s.unverified_dropped;
  j["inventions"] = s.inventions;
  j["completion_pass"] = s.completion_pass;
  return j;
}

inline Json result_to_json(const LearnResult& r, Json config) {
  Json j;
  j["hypotheses"] = Json::array();
  for (const auto& set : r.hypotheses) j["hypotheses"].push_back(clause_set_to_json(set, r.symbols));
  j["invented"] = Json::array();
  for (auto p : r.invented) j["invented"].push_back(to_string(r.symbols.predicate(p)));
  j["stats"] = stats_to_json(r.stats);
  j["config"] = std::move(config);
  return j;
}

inline Json to_json(const TraceRecord& t, const SymbolTable& symbols) {
  Json j;
  j["step"] = t.step;
  j["phase"] = t.phase;
  j["level"] = t.level;
  j["frontier"] = symbols.constant_name(t.frontier);
  j["candidate"] = render_atom(t.candidate, symbols);
  j["momentum"] = to_string(t.verdict);
  j["action"] = t.action;
  return j;
}

}  // namespace nemus
