#pragma once

// Command driver behind tools/nemus_icl. Exit status: 0 success, 1 no
// hypothesis / verification failed, 2 bad input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "nemus/json_io.hpp"

namespace nemus {

enum class Command { Learn, Check, DumpNemus, Enumerate };
enum class OutputFormat { Text, Json };

struct CliConfig {
  Command command = Command::Learn;
  std::string kb_path;
  std::optional<std::uint32_t> max_body;
  std::optional<double> tau;
  OutputFormat output = OutputFormat::Text;
  bool trace = false;
  std::optional<std::string> hypothesis_path;  // check
  bool show_model = false;                     // check
  bool show_invented = false;                  // check --model
  std::uint32_t max_clauses = 1;               // enumerate
  bool invention = false;                      // enumerate
  std::optional<std::size_t> limit;            // enumerate
  bool color = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoResult = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string paint(bool color, const char* code, const std::string& text) {
  return color ? std::string("\x1b[") + code + "m" + text + "\x1b[0m" : text;
}

inline Json config_json(const KnowledgeBase& kb) {
  Json j;
  j["target"] = kb.task.target ? to_string(kb.symbols.predicate(*kb.task.target)) : "";
  j["max_body"] = kb.task.max_body;
  j["tau"] = kb.task.tau;
  j["positives"] = kb.task.positives.size();
  j["negatives"] = kb.task.negatives.size();
  return j;
}

inline int learn_command(const CliConfig& cfg, const KnowledgeBase& kb, std::ostream& out,
                         std::ostream& err) {
  if (!kb.task.target) throw ValidationError("missing #target directive");
  if (kb.task.positives.empty()) throw ValidationError("no #positive example to learn from");
  SharedNeMuS nemus = compile(kb);
  LearnResult r = learn(nemus, kb.task, kb.symbols, LearnOptions{.trace = cfg.trace});
  if (cfg.trace)
    for (const auto& t : r.trace) err << to_json(t, r.symbols).dump() << "\n";

  if (cfg.output == OutputFormat::Json) {
    out << result_to_json(r, config_json(kb)).dump(2) << "\n";
    return r.empty() ? kExitNoResult : kExitOk;
  }

  const auto& t = kb.task;
  out << "% target " << to_string(kb.symbols.predicate(*t.target)) << "  max_body=" << t.max_body
      << "  tau=" << render_number(t.tau) << "\n";
  if (r.empty()) out << paint(cfg.color, "31", "no hypothesis") << "\n";
  for (std::size_t i = 0; i < r.hypotheses.size(); ++i) {
    out << paint(cfg.color, "36", "% hypothesis " + std::to_string(i + 1)) << "\n";
    out << render_clause_set(r.hypotheses[i], r.symbols);
  }
  const auto& s = r.stats;
  out << "% stats: examined=" << s.candidates_examined << " pruned=" << s.pruned_by_momentum
      << " dropped=" << s.unverified_dropped << " frontier_peak=" << s.frontier_peak
      << " inventions=" << s.inventions << " completion=" << (s.completion_pass ? "yes" : "no")
      << "\n";
  return r.empty() ? kExitNoResult : kExitOk;
}

inline int check_command(const CliConfig& cfg, const KnowledgeBase& kb, std::ostream& out) {
  if (!cfg.hypothesis_path) throw ValidationError("check needs --hypothesis PATH");
  SymbolTable symbols = kb.symbols;
  ClauseSet hyp;
  try {
    hyp = parse_clauses(read_file(*cfg.hypothesis_path), symbols);
  } catch (const Error& e) {
    throw Error(*cfg.hypothesis_path + ":" + e.what());
  }
  Program prog{{kb.facts.begin(), kb.facts.end()}, hyp};
  HerbrandModel model = least_model(prog);
  Verdict v = verify(kb.facts, hyp, kb.task.positives, kb.task.negatives);

  // Predicates defined only by the hypothesis and not the target.
  std::set<PredCode> invented;
  for (const auto& c : hyp) {
    bool has_facts = std::any_of(kb.facts.begin(), kb.facts.end(),
                                 [&](const GroundAtom& f) { return f.pred == c.head.pred; });
    if (!has_facts && (!kb.task.target || c.head.pred != *kb.task.target)) invented.insert(c.head.pred);
  }
  std::vector<std::string> lines;
  if (cfg.show_model)
    for (const auto& a : model.atoms)
      if (cfg.show_invented || !invented.count(a.pred)) lines.push_back(render_atom(a, symbols));
  std::sort(lines.begin(), lines.end());

  if (cfg.output == OutputFormat::Json) {
    Json j;
    j["verdict"] = v.verified() ? "Verified" : "Fails";
    j["example"] = v.example ? Json(render_atom(*v.example, symbols)) : Json(nullptr);
    if (cfg.show_model) j["model"] = lines;
    out << j.dump(2) << "\n";
  } else {
    out << paint(cfg.color, v.verified() ? "32" : "31", render_verdict(v, symbols)) << "\n";
    for (const auto& l : lines) out << l << ".\n";
  }
  return v.verified() ? kExitOk : kExitNoResult;
}

inline int enumerate_command(const CliConfig& cfg, const KnowledgeBase& kb, std::ostream& out) {
  if (!kb.task.target) throw ValidationError("missing #target directive");
  EnumerationCaps caps;
  caps.max_body = kb.task.max_body;
  caps.max_clauses = cfg.max_clauses;
  caps.use_invention = cfg.invention;
  HypothesisEnumerator stream(kb, caps);
  std::size_t n = 0;
  while (auto item = stream.next()) {
    if (cfg.limit && n >= *cfg.limit) break;
    ++n;
    if (cfg.output == OutputFormat::Json) {
      Json j = clause_set_to_json(item->clauses, kb.symbols);
      j["verdict"] = render_verdict(item->verdict, kb.symbols);
      out << j.dump() << "\n";
    } else {
      std::string clauses;
      for (const auto& c : item->clauses) clauses += (clauses.empty() ? "" : " ") + render_clause(c, kb.symbols);
      out << render_verdict(item->verdict, kb.symbols) << "\t" << (clauses.empty() ? "{}" : clauses) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace detail

inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    KnowledgeBase kb = parse_kb(detail::read_file(cfg.kb_path));
    if (cfg.max_body) {
      if (*cfg.max_body == 0) throw ValidationError("--max-body must be positive");
      kb.task.max_body = *cfg.max_body;
    }
    if (cfg.tau) {
      if (!(*cfg.tau >= 0.0 && *cfg.tau <= 1.0)) throw ValidationError("--tau must lie in [0,1]");
      kb.task.tau = *cfg.tau;
    }
    switch (cfg.command) {
      case Command::Learn:
        return detail::learn_command(cfg, kb, out, err);
      case Command::Check:
        return detail::check_command(cfg, kb, out);
      case Command::DumpNemus:
        out << dump_nemus(compile(kb), kb.symbols).dump(2) << "\n";
        return kExitOk;
      case Command::Enumerate:
        return detail::enumerate_command(cfg, kb, out);
    }
  } catch (const ParseError& e) {
    err << cfg.kb_path << ":" << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << cfg.kb_path << ":" << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace nemus
