#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rlz/chain.hpp"
#include "rlz/combinators.hpp"
#include "rlz/corpus.hpp"
#include "rlz/forcing.hpp"
#include "rlz/formula.hpp"
#include "rlz/machine.hpp"
#include "rlz/parser.hpp"

namespace {

using namespace rlz;

// Free identifiers in command-line terms resolve to combinators, everything
// else becomes an opaque atom (the machine treats those as stuck heads).
TermPtr cli_term(const std::string& text) {
  return resolve_free_vars(parse_term(text), combinator_table(), true);
}

StackPtr cli_stack(const std::string& text) {
  return resolve_free_vars_stack(parse_stack(text), combinator_table(), true);
}

NameUniverse load_universe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open universe file: " + path);
  NameUniverse u;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::string t;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)) || !t.empty()) t += c;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.empty()) continue;
    u.add_closed(parse_name(t));
  }
  return u;
}

int run_reduce(const std::string& term_text, const std::string& stack_text, std::uint64_t fuel) {
  TermPtr t = cli_term(term_text);
  StackPtr s = cli_stack(stack_text);
  Machine::Trace tr = reduce({t, s}, fuel);
  std::cout << tr.render();
  std::cout << "-- " << status_name(tr.status) << " after " << tr.steps.size() - 1
            << " step(s)\n";
  return 0;
}

int run_tau(const std::string& text, const std::string& algebra, const std::string& stack_text) {
  TauContext ctx = load_algebra(algebra);
  Elem v;
  if (!stack_text.empty()) {
    v = tau(Process{cli_term(text), cli_stack(stack_text)}, ctx);
  } else if (text.find('*') != std::string::npos || text.find("⋆") != std::string::npos) {
    Process p = parse_process(text);
    v = tau(Process{resolve_free_vars(p.head, combinator_table(), true),
                    resolve_free_vars_stack(p.tail, combinator_table(), true)},
            ctx);
  } else {
    v = tau(cli_term(text), ctx);
  }
  std::cout << ctx.alg.name(v) << "\n";
  return 0;
}

int run_force(const std::string& text, const std::string& algebra,
              const std::string& universe_file) {
  TauContext ctx = load_algebra(algebra);
  FormulaPtr phi = parse_formula(text);
  NameUniverse u;
  if (!universe_file.empty()) u = load_universe(universe_file);
  for (const auto& n : formula_names(phi)) u.add_closed(n);
  std::cout << ctx.alg.name(forcing_value(phi, u, ctx)) << "\n";
  return 0;
}

std::string elem_set(const BoolAlg& alg, const std::vector<Elem>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += alg.name(xs[i]);
  }
  return out + "}";
}

int run_chain_check(const std::string& algebra, const std::vector<std::uint64_t>& deltas) {
  TauContext ctx = load_algebra(algebra);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    std::uint64_t d = deltas[i];
    if (deltas.size() > 1) std::cout << "delta=" << d << "\n";
    auto ba = ba_delta_cc(ctx.alg, d);
    std::cout << "delta-cc: " << (ba.holds ? "PASS" : "FAIL");
    if (ba.antichain) std::cout << " witness=" << elem_set(ctx.alg, *ba.antichain);
    std::cout << "\n";
    auto alg = algebra_delta_chain_condition(ctx, d);
    std::cout << "algebra-cc: " << (alg.holds ? "PASS" : "FAIL");
    if (!alg.holds)
      std::cout << " c=" << ctx.alg.name(*alg.context) << " seq=" << elem_set(ctx.alg, *alg.seq);
    std::cout << "\n";
    auto uni = uniform_delta_chain_condition(ctx, d);
    std::cout << "uniform-cc: " << (uni.holds ? "PASS" : "FAIL");
    if (!uni.holds)
      std::cout << " c=" << ctx.alg.name(*uni.context) << " seq=" << elem_set(ctx.alg, *uni.seq);
    std::cout << "\n";
  }
  return 0;
}

int run_verify(const std::string& corpus_path, std::uint64_t fuel, const std::string& trace_dir,
               bool no_rank_ind) {
  ProveConfig config;
  config.fuel = fuel;
  config.rank_induction = !no_rank_ind;
  auto goals = load_corpus(corpus_path);
  CorpusReport report = verify_corpus(goals, config, trace_dir);
  std::cout << report.render();
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical realizability toolkit: Krivine machine, Boolean-valued "
               "realizability algebras, names, and a realizer verifier"};
  app.require_subcommand(1);

  std::string term_text, stack_text = "?pi", stack_text2, algebra = "atoms1";
  std::string universe_file, corpus_path, formula_text, trace_dir;
  std::uint64_t fuel = 10000;
  std::vector<std::uint64_t> deltas;
  unsigned atoms = 0;
  bool no_rank_ind = false;

  auto* reduce_cmd = app.add_subcommand("reduce", "run the machine on a process");
  reduce_cmd->add_option("term", term_text, "term to run")->required();
  reduce_cmd->add_option("--stack", stack_text, "initial stack (default ?pi)");
  reduce_cmd->add_option("--fuel", fuel, "maximum machine steps");

  auto* tau_cmd = app.add_subcommand("tau", "evaluate the tau homomorphism");
  tau_cmd->add_option("term", term_text, "term or process")->required();
  tau_cmd->add_option("--stack", stack_text2, "stack (makes the input a process)");
  tau_cmd->add_option("--algebra", algebra, "algebra file or atomsN");

  auto* force_cmd = app.add_subcommand("force", "evaluate a forcing value F(phi)");
  force_cmd->add_option("formula", formula_text, "formula")->required();
  force_cmd->add_option("--algebra", algebra, "algebra file or atomsN");
  force_cmd->add_option("--universe", universe_file, "universe file for unbounded quantifiers");

  auto* chain_cmd = app.add_subcommand("chain-check", "decide chain conditions");
  chain_cmd->add_option("--algebra", algebra, "algebra file or atomsN");
  chain_cmd->add_option("--atoms", atoms, "powerset algebra shorthand");
  chain_cmd->add_option("--delta", deltas, "delta values")->required()->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "check a goal corpus");
  verify_cmd->add_option("corpus", corpus_path, "corpus file")->required();
  verify_cmd->add_option("--fuel", fuel, "machine steps per ANTI-EVAL");
  verify_cmd->add_option("--trace-dir", trace_dir, "write one trace file per goal");
  verify_cmd->add_flag("--no-rank-ind", no_rank_ind, "disable induction hypotheses");

  auto* corpus_cmd = app.add_subcommand("corpus", "alias of verify");
  corpus_cmd->add_option("corpus", corpus_path, "corpus file")->required();
  corpus_cmd->add_option("--fuel", fuel, "machine steps per ANTI-EVAL");
  corpus_cmd->add_option("--trace-dir", trace_dir, "write one trace file per goal");
  corpus_cmd->add_flag("--no-rank-ind", no_rank_ind, "disable induction hypotheses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (reduce_cmd->parsed()) return run_reduce(term_text, stack_text, fuel);
    if (tau_cmd->parsed()) return run_tau(term_text, algebra, stack_text2);
    if (force_cmd->parsed()) return run_force(formula_text, algebra, universe_file);
    if (chain_cmd->parsed()) {
      if (atoms > 0) algebra = "atoms" + std::to_string(atoms);
      return run_chain_check(algebra, deltas);
    }
    if (verify_cmd->parsed() || corpus_cmd->parsed())
      return run_verify(corpus_path, fuel, trace_dir, no_rank_ind);
  } catch (const rlz::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
