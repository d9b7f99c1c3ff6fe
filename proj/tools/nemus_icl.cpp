// nemus_icl: learn, check, dump-nemus, enumerate.

#include <cstdlib>
#include <iostream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "nemus/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Inductive clause learning over a Shared NeMuS index"};
  app.require_subcommand(1);

  nemus::CliConfig cfg;
  bool json = false;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sub) {
    sub->add_option("kb", cfg.kb_path, "Knowledge-base file")->required();
    sub->add_option("--max-body", cfg.max_body, "Override #max_body");
    sub->add_option("--tau", cfg.tau, "Override #tau (region-similarity threshold)");
    sub->add_flag("--json", json, "JSON output");
    // Reserved: the search is deterministic and ignores it.
    sub->add_option("--seed", seed, "Reserved, has no effect");
  };

  auto* learn = app.add_subcommand("learn", "Learn hypotheses for the #target");
  common(learn);
  learn->add_flag("--trace", cfg.trace, "Write one JSON line per search step to stderr");

  auto* check = app.add_subcommand("check", "Verify a hypothesis file against the examples");
  common(check);
  check->add_option("--hypothesis", cfg.hypothesis_path, "Clause file to verify")->required();
  check->add_flag("--model", cfg.show_model, "Print the least Herbrand model");
  check->add_flag("--show-invented", cfg.show_invented, "Include invented predicates in --model");

  auto* dump = app.add_subcommand("dump-nemus", "Print the compiled Shared NeMuS as JSON");
  common(dump);

  auto* enumerate = app.add_subcommand("enumerate", "Stream brute-force clause sets with verdicts");
  common(enumerate);
  enumerate->add_option("--max-clauses", cfg.max_clauses, "Clauses per set, bias definitions included");
  enumerate->add_flag("--invention", cfg.invention, "Use #invent biases");
  enumerate->add_option("--limit", cfg.limit, "Stop after N sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : nemus::kExitInputError;
  }

  if (learn->parsed()) cfg.command = nemus::Command::Learn;
  if (check->parsed()) cfg.command = nemus::Command::Check;
  if (dump->parsed()) cfg.command = nemus::Command::DumpNemus;
  if (enumerate->parsed()) cfg.command = nemus::Command::Enumerate;
  cfg.output = json ? nemus::OutputFormat::Json : nemus::OutputFormat::Text;

  const char* color_env = std::getenv("NEMUS_ICL_COLOR");
  cfg.color = !json && isatty(STDOUT_FILENO) && !(color_env && std::string(color_env) == "0");

  return nemus::run(cfg, std::cout, std::cerr);
}
