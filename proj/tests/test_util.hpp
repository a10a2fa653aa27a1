#pragma once

#include <random>
#include <string>
#include <vector>

#include "rlz/combinators.hpp"
#include "rlz/parser.hpp"
#include "rlz/term.hpp"

namespace rlz::testutil {

struct GenOptions {
  std::vector<std::string> bottoms = {"b"};
  bool allow_enum = false;   // nu literals
  bool allow_instr = false;  // #chi
  int max_stack_depth = 3;
};

inline TermPtr gen_term(std::mt19937& rng, int size, const GenOptions& opt,
                        std::vector<std::string> scope = {});

inline StackPtr gen_stack(std::mt19937& rng, int depth, const GenOptions& opt) {
  std::uniform_int_distribution<int> coin(0, 99);
  if (depth <= 0 || coin(rng) < 25) {
    std::uniform_int_distribution<std::size_t> pick(0, opt.bottoms.size() - 1);
    return mk_bottom(opt.bottoms[pick(rng)]);
  }
  TermPtr head = gen_term(rng, 2, opt);
  return mk_push(head, gen_stack(rng, depth - 1, opt));
}

inline TermPtr gen_term(std::mt19937& rng, int size, const GenOptions& opt,
                        std::vector<std::string> scope) {
  std::uniform_int_distribution<int> coin(0, 99);
  if (size <= 1) {
    int c = coin(rng);
    if (!scope.empty() && c < 40) {
      std::uniform_int_distribution<std::size_t> pick(0, scope.size() - 1);
      return mk_var(scope[pick(rng)]);
    }
    if (c < 55) return mk_cc();
    if (opt.allow_enum && c < 70) {
      std::uniform_int_distribution<std::uint64_t> idx(0, 10);
      return mk_enum(idx(rng));
    }
    if (opt.allow_instr && c < 80) return mk_instr("chi");
    if (c < 90) return mk_kont(gen_stack(rng, 1, opt));
    // a tiny closed abstraction
    return mk_abs("z", mk_var("z"));
  }
  if (coin(rng) < 45) {
    std::string v = "x" + std::to_string(scope.size());
    scope.push_back(v);
    return mk_abs(v, gen_term(rng, size - 1, opt, std::move(scope)));
  }
  std::uniform_int_distribution<int> split(1, size - 1);
  int left = split(rng);
  TermPtr fn = gen_term(rng, left, opt, scope);
  TermPtr arg = gen_term(rng, size - left, opt, scope);
  return mk_app(fn, arg);
}

inline TermPtr gen_closed_term(std::mt19937& rng, int size, const GenOptions& opt) {
  // close over any leftover free variables by abstracting them away
  TermPtr t = gen_term(rng, size, opt);
  for (const auto& v : free_vars(t)) t = mk_abs(v, t);
  return t;
}

inline Process gen_process(std::mt19937& rng, int size, const GenOptions& opt) {
  return {gen_closed_term(rng, size, opt), gen_stack(rng, opt.max_stack_depth, opt)};
}

}  // namespace rlz::testutil
