#include "rlz/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rlz/combinators.hpp"
#include "rlz/parser.hpp"

namespace rlz {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '{' || c == '(' || c == '[') ++depth;
    if (c == '}' || c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty()) out.push_back(strip(cur));
  return out;
}

struct PendingClaim {
  enum class Kind { None, Realizes, InPole, InFalsity } kind = Kind::None;
  std::string text;
};

// Claim terms may name combinators and hypothesis atoms by identifier.
TermPtr resolve_claim_term(const TermPtr& raw, const CorpusGoal& g) {
  std::vector<std::pair<std::string, TermPtr>> table = combinator_table();
  for (const auto& h : g.goal.realizer_hyps) table.emplace_back(h.id, mk_opaque(h.id));
  TermPtr t = resolve_free_vars(raw, table, false);
  auto frees = free_vars(t);
  if (!frees.empty())
    throw std::runtime_error("goal " + g.id + ": unbound identifier '" + *frees.begin() +
                             "' in claim");
  return t;
}

StackPtr resolve_claim_stack(const StackPtr& raw, const CorpusGoal& g) {
  std::vector<std::pair<std::string, TermPtr>> table = combinator_table();
  for (const auto& h : g.goal.realizer_hyps) table.emplace_back(h.id, mk_opaque(h.id));
  return resolve_free_vars_stack(raw, table, false);
}

void finish_claim(CorpusGoal& g, const PendingClaim& pc) {
  switch (pc.kind) {
    case PendingClaim::Kind::None:
      throw std::runtime_error("goal " + g.id + ": missing claim");
    case PendingClaim::Kind::Realizes: {
      std::size_t colon = pc.text.rfind(" : ");
      if (colon == std::string::npos)
        throw std::runtime_error("goal " + g.id + ": claim realizes needs '<term> : <formula>'");
      TermPtr term = resolve_claim_term(parse_term(pc.text.substr(0, colon)), g);
      FormulaPtr phi = parse_formula(pc.text.substr(colon + 3));
      g.goal.claim = GoalRealizes{term, phi};
      break;
    }
    case PendingClaim::Kind::InPole: {
      Process p = parse_process(pc.text);
      p.head = resolve_claim_term(p.head, g);
      p.tail = resolve_claim_stack(p.tail, g);
      g.goal.claim = GoalInPole{p};
      break;
    }
    case PendingClaim::Kind::InFalsity: {
      std::size_t colon = pc.text.rfind(" : ");
      if (colon == std::string::npos)
        throw std::runtime_error("goal " + g.id +
                                 ": claim infalsity needs '<stack> : <formula>'");
      StackPtr s = resolve_claim_stack(parse_stack(pc.text.substr(0, colon)), g);
      FormulaPtr phi = parse_formula(pc.text.substr(colon + 3));
      g.goal.claim = GoalInFalsity{s, phi};
      break;
    }
  }
}

}  // namespace

std::vector<CorpusGoal> parse_corpus(const std::string& content) {
  std::vector<CorpusGoal> out;
  CorpusGoal cur;
  PendingClaim claim;
  bool open = false;

  auto flush = [&] {
    if (!open) return;
    finish_claim(cur, claim);
    out.push_back(cur);
    cur = CorpusGoal{};
    claim = PendingClaim{};
  };

  std::istringstream in(content);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (auto h = line.find('#'); h != std::string::npos) line = strip(line.substr(0, h));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    try {
      if (word == "goal") {
        flush();
        open = true;
        std::string id, kw, expect;
        ls >> id >> kw >> expect;
        if (kw != "expect" || (expect != "accept" && expect != "reject"))
          throw std::runtime_error("goal header needs 'goal <id> expect accept|reject'");
        cur.id = id;
        cur.expect_accept = expect == "accept";
      } else if (!open) {
        throw std::runtime_error("directive before the first goal");
      } else if (word == "universe") {
        std::string rest;
        std::getline(ls, rest);
        for (const auto& expr : split_commas(rest)) cur.universe.add_closed(parse_name(expr));
      } else if (word == "hyp") {
        std::string kind, id, colon;
        ls >> kind >> id >> colon;
        if (colon != ":") throw std::runtime_error("hyp needs 'hyp <kind> <id> : <formula>'");
        std::string rest;
        std::getline(ls, rest);
        FormulaPtr phi = parse_formula(rest);
        if (kind == "realizer")
          cur.goal.realizer_hyps.push_back({id, phi});
        else if (kind == "falsity")
          cur.goal.falsity_hyps.push_back({id, phi});
        else
          throw std::runtime_error("hyp kind must be realizer or falsity");
      } else if (word == "claim") {
        std::string kind;
        ls >> kind;
        std::string rest;
        std::getline(ls, rest);
        claim.text = strip(rest);
        if (kind == "realizes")
          claim.kind = PendingClaim::Kind::Realizes;
        else if (kind == "inpole")
          claim.kind = PendingClaim::Kind::InPole;
        else if (kind == "infalsity")
          claim.kind = PendingClaim::Kind::InFalsity;
        else
          throw std::runtime_error("claim kind must be realizes, inpole or infalsity");
      } else if (word == "using") {
        std::string kw;
        ls >> kw;
        if (kw != "lemma") throw std::runtime_error("expected 'using lemma <ids>'");
        std::string rest;
        std::getline(ls, rest);
        for (const auto& id : split_commas(rest)) cur.using_lemmas.push_back(id);
      } else if (word == "bound") {
        ls >> cur.bound;
      } else if (word == "mode") {
        std::string m;
        ls >> m;
        if (m == "rank-ind")
          cur.goal.rank_induction = true;
        else if (m == "no-rank-ind")
          cur.goal.rank_induction = false;
        else
          throw std::runtime_error("unknown mode: " + m);
      } else if (word == "check") {
        std::string c;
        ls >> c;
        if (c != "uniform") throw std::runtime_error("unknown check: " + c);
        cur.check_uniform = true;
      } else {
        throw std::runtime_error("unknown directive: " + word);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  flush();
  return out;
}

std::vector<CorpusGoal> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

CorpusReport verify_corpus(const std::vector<CorpusGoal>& goals, const ProveConfig& config,
                           const std::string& trace_dir) {
  CorpusReport report;
  std::vector<LemmaEntry> store;
  std::vector<std::string> store_ids;

  for (const auto& g : goals) {
    GoalReport gr;
    gr.id = g.id;
    try {
      NameUniverse universe = g.universe;
      // hypotheses and claims may mention names the universe lines omitted
      auto collect = [&universe](const FormulaPtr& phi) {
        for (const auto& n : formula_names(phi)) universe.add_closed(n);
      };
      for (const auto& h : g.goal.realizer_hyps) collect(h.phi);
      for (const auto& h : g.goal.falsity_hyps) collect(h.phi);
      if (auto* r = std::get_if<GoalRealizes>(&g.goal.claim)) collect(r->phi);
      if (auto* f = std::get_if<GoalInFalsity>(&g.goal.claim)) collect(f->phi);

      Engine engine(universe, config);
      std::vector<LemmaEntry> visible;
      for (const auto& want : g.using_lemmas) {
        bool found = false;
        for (std::size_t i = 0; i < store.size(); ++i) {
          if (store_ids[i] == want) {
            visible.push_back(store[i]);
            found = true;
          }
        }
        if (!found)
          throw std::runtime_error("goal " + g.id + " cites unknown or unaccepted lemma '" +
                                   want + "'");
      }
      engine.set_lemmas(visible);

      gr.result = engine.prove(g.goal);
      gr.outcome = gr.result.outcome;
      gr.steps = gr.result.trace.size();
      bool accepted = gr.outcome == Outcome::Accepted;
      gr.pass = gr.outcome != Outcome::FuelOut && accepted == g.expect_accept;
      if (g.check_uniform && accepted) {
        auto violations = uniformity_violations(gr.result.trace);
        if (!violations.empty()) {
          gr.pass = false;
          gr.note = "uniformity: " + violations.front();
        }
      }
      if (g.bound > 0) {
        if (!gr.note.empty()) gr.note += "; ";
        gr.note += "truncated at bound " + std::to_string(g.bound);
      }
      if (!gr.pass && gr.note.empty()) gr.note = gr.result.reject_reason;

      if (accepted && g.expect_accept) {
        if (auto* r = std::get_if<GoalRealizes>(&g.goal.claim)) {
          if (g.goal.realizer_hyps.empty() && g.goal.falsity_hyps.empty()) {
            store.push_back({g.id, r->term, resolve(r->phi)});
            store_ids.push_back(g.id);
          }
        }
      }
      if (!trace_dir.empty()) {
        std::ofstream tf(trace_dir + "/" + g.id + ".trace");
        tf << outcome_name(gr.outcome) << "\n" << gr.result.trace.render();
      }
    } catch (const std::exception& e) {
      gr.outcome = Outcome::Rejected;
      gr.pass = false;
      gr.note = e.what();
    }
    report.all_pass = report.all_pass && gr.pass;
    report.goals.push_back(std::move(gr));
  }
  return report;
}

std::string CorpusReport::render() const {
  std::ostringstream out;
  for (const auto& g : goals) {
    std::string verdict = g.outcome == Outcome::FuelOut ? "FUEL" : g.pass ? "PASS" : "FAIL";
    out << g.id << ' ' << verdict << ' ' << g.steps;
    if (!g.note.empty()) out << "  (" << g.note << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace rlz
