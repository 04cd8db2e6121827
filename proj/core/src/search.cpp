#include "gp/search.hpp"

#include <algorithm>

namespace gp {

namespace {

thread_local std::size_t g_live_nodes = 0;

bool worse(const SearchNode& l, const SearchNode& r) noexcept {
  return r.cost() < l.cost();
}

}  // namespace

Vocabulary::Vocabulary(const std::vector<ActionSchema>& actions,
                       std::size_t pointer_count) {
  const auto z = pointer_count;
  for (std::size_t a = 0; a < z; ++a)
    actions_.push_back(Instruction::primitive(Primitive::Inc, a));
  for (std::size_t a = 0; a < z; ++a)
    actions_.push_back(Instruction::primitive(Primitive::Dec, a));
  for (auto op : {Primitive::Cmp, Primitive::CmpContent, Primitive::Set})
    for (std::size_t a = 0; a < z; ++a)
      for (std::size_t b = 0; b < z; ++b)
        if (a != b) actions_.push_back(Instruction::primitive(op, a, b));

  for (std::size_t k = 0; k < actions.size(); ++k) {
    const auto& schema = actions[k];
    if (schema.arity() == 1) {
      for (std::size_t a = 0; a < z; ++a)
        actions_.push_back(Instruction::content(k, a));
      continue;
    }
    for (std::size_t a = 0; a < z; ++a) {
      for (std::size_t b = 0; b < z; ++b) {
        if (schema.symmetric && b < a) continue;
        if ((schema.symmetric || schema.distinct_args) && a == b) continue;
        actions_.push_back(Instruction::content(k, a, b));
      }
    }
  }
}

std::vector<Instruction> candidate_instructions(const PlanningProgram& program,
                                                std::size_t line,
                                                const Vocabulary& vocab) {
  const auto n = program.size();
  std::vector<Instruction> out(vocab.actions());
  for (std::size_t target = 0; target < n; ++target) {
    if (!legal_goto_target(line, target, n)) continue;
    for (auto c : kConditions) out.push_back(Instruction::jump(target, c));
  }
  out.push_back(Instruction::end());
  return out;
}

SearchNode::SearchNode(PlanningProgram program, CostVector cost,
                       std::size_t pcmax)
    : program_(std::move(program)), cost_(cost), pcmax_(pcmax) {
  ++g_live_nodes;
}

SearchNode::SearchNode(const SearchNode& other)
    : program_(other.program_), cost_(other.cost_), pcmax_(other.pcmax_) {
  ++g_live_nodes;
}

SearchNode::SearchNode(SearchNode&& other) noexcept
    : program_(std::move(other.program_)),
      cost_(other.cost_),
      pcmax_(other.pcmax_) {
  ++g_live_nodes;
}

SearchNode::~SearchNode() { --g_live_nodes; }

std::size_t SearchNode::live_count() noexcept { return g_live_nodes; }

std::string_view search_status_name(SearchStatus s) noexcept {
  switch (s) {
    case SearchStatus::Solution: return "solution";
    case SearchStatus::NoSolution: return "no_solution";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

Expansion expand(const SearchNode& node, const GPProblem& problem,
                 const Vocabulary& vocab, const SearchOptions& opts,
                 std::uint64_t& next_seq, const SearchHooks* hooks) {
  Expansion out;
  const auto line = node.pcmax();
  const auto base = run_all(node.program(), problem, opts.run, false);
  for (const auto& instr : candidate_instructions(node.program(), line, vocab)) {
    PlanningProgram child = node.program();
    child.set(line, instr);
    ++out.generated;
    if (hooks && hooks->on_generated) hooks->on_generated(child);

    auto status = run_all_from(child, problem, base, opts.run, true);
    switch (status.kind) {
      case ProblemStatus::Kind::Solution:
        out.solution = std::move(child);
        return out;
      case ProblemStatus::Kind::DeadEnd:
        ++out.dead_ends;
        break;
      case ProblemStatus::Kind::Open: {
        auto cost = evaluate(child, status, problem, opts.config, next_seq++);
        out.children.emplace_back(std::move(child), cost, status.pcmax);
        break;
      }
    }
  }
  return out;
}

SearchResult bfgp(const GPProblem& problem, std::size_t n,
                  const SearchOptions& opts, const SearchHooks& hooks) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  SearchResult result;
  auto& stats = result.stats;
  const std::size_t node_bytes =
      sizeof(SearchNode) + n * sizeof(Instruction);
  auto finish = [&](SearchStatus status) {
    stats.elapsed_s =
        std::chrono::duration<double>(Clock::now() - start).count();
    stats.peak_memory_bytes = stats.peak_live * node_bytes;
    result.status = status;
    return result;
  };

  const Vocabulary vocab(problem.actions(), problem.pointer_count());
  PlanningProgram root(n);
  if (hooks.on_generated) hooks.on_generated(root);
  stats.generated = 1;
  auto root_status = run_all(root, problem, opts.run, true);
  if (root_status.kind == ProblemStatus::Kind::Solution) {
    result.program = root;
    return finish(SearchStatus::Solution);
  }
  if (root_status.kind == ProblemStatus::Kind::DeadEnd) {
    stats.dead_ends = 1;
    return finish(SearchStatus::NoSolution);
  }

  std::uint64_t seq = 0;
  std::vector<SearchNode> open;
  open.emplace_back(root, evaluate(root, root_status, problem, opts.config, seq++),
                    root_status.pcmax);
  stats.evaluated = 1;
  stats.peak_open = stats.peak_live = 1;

  while (!open.empty()) {
    if (Clock::now() - start >= opts.budget.time)
      return finish(SearchStatus::BudgetExhausted);

    const std::size_t open_before = open.size();
    std::pop_heap(open.begin(), open.end(), worse);
    const SearchNode node = std::move(open.back());
    open.pop_back();
    ++stats.expanded;

    auto expansion = expand(node, problem, vocab, opts, seq, &hooks);
    stats.generated += expansion.generated;
    stats.dead_ends += expansion.dead_ends;
    stats.evaluated += expansion.children.size();

    const std::size_t live = SearchNode::live_count();
    stats.peak_live = std::max(stats.peak_live, live);
    if (hooks.on_expanded)
      hooks.on_expanded({open_before, expansion.children.size(), live});

    if (expansion.solution) {
      result.program = std::move(expansion.solution);
      return finish(SearchStatus::Solution);
    }
    for (auto& child : expansion.children) {
      open.push_back(std::move(child));
      std::push_heap(open.begin(), open.end(), worse);
    }
    stats.peak_open = std::max(stats.peak_open, open.size());
    if (opts.budget.max_evaluated != 0 &&
        stats.evaluated >= opts.budget.max_evaluated)
      return finish(SearchStatus::BudgetExhausted);
  }
  return finish(SearchStatus::NoSolution);
}

}  // namespace gp
