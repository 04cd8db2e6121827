#pragma once

// Best-first frontier search in the space of planning programs. Only the
// open list is stored; each node's successors program its PC^MAX line.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gp/evaluation.hpp"
#include "gp/interpreter.hpp"
#include "gp/model.hpp"
#include "gp/program.hpp"

namespace gp {

// Action instantiations available to synthesis. Order: primitives (inc,
// dec per pointer; cmp, cmp*, set per ordered pair of distinct pointers),
// then content actions in declaration order.
class Vocabulary {
 public:
  Vocabulary(const std::vector<ActionSchema>& actions,
             std::size_t pointer_count);

  const std::vector<Instruction>& actions() const noexcept { return actions_; }

 private:
  std::vector<Instruction> actions_;
};

// Candidates for an undefined line: actions, then legal gotos ordered by
// (target, condition), then End.
std::vector<Instruction> candidate_instructions(const PlanningProgram& program,
                                                std::size_t line,
                                                const Vocabulary& vocab);

class SearchNode {
 public:
  SearchNode(PlanningProgram program, CostVector cost, std::size_t pcmax);
  SearchNode(const SearchNode& other);
  SearchNode(SearchNode&& other) noexcept;
  SearchNode& operator=(const SearchNode&) = default;
  SearchNode& operator=(SearchNode&&) noexcept = default;
  ~SearchNode();

  const PlanningProgram& program() const noexcept { return program_; }
  const CostVector& cost() const noexcept { return cost_; }
  std::size_t pcmax() const noexcept { return pcmax_; }

  // Number of SearchNode objects alive on this thread.
  static std::size_t live_count() noexcept;

 private:
  PlanningProgram program_;
  CostVector cost_;
  std::size_t pcmax_;
};

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t evaluated = 0;  // scored nodes, root included
  std::uint64_t generated = 0;  // every executed candidate child
  std::uint64_t dead_ends = 0;
  double elapsed_s = 0.0;
  std::size_t peak_open = 0;
  std::size_t peak_live = 0;
  std::size_t peak_memory_bytes = 0;  // live-node estimate
};

struct SearchBudget {
  std::chrono::duration<double> time = std::chrono::hours(1);
  std::uint64_t max_evaluated = 0;  // 0: unlimited
};

struct SearchOptions {
  std::vector<EvalFunction> config = {EvalFunction::H5, EvalFunction::F1};
  SearchBudget budget;
  RunOptions run{RevisitDetection::SavedState, 2'000, false};
};

struct FrontierSnapshot {
  std::size_t open_size;  // before popping the expanded node
  std::size_t children;   // OPEN children produced by this expansion
  std::size_t live;       // SearchNode::live_count() with the children built
};

struct SearchHooks {
  std::function<void(const PlanningProgram&)> on_generated;
  std::function<void(const FrontierSnapshot&)> on_expanded;
};

struct Expansion {
  std::vector<SearchNode> children;
  std::optional<PlanningProgram> solution;
  std::uint64_t generated = 0;
  std::uint64_t dead_ends = 0;
};

// Programs node.pcmax() with every candidate. Stops at the first child that
// solves the problem. `next_seq` numbers the scored children in order.
Expansion expand(const SearchNode& node, const GPProblem& problem,
                 const Vocabulary& vocab, const SearchOptions& opts,
                 std::uint64_t& next_seq, const SearchHooks* hooks = nullptr);

enum class SearchStatus : std::uint8_t { Solution, NoSolution, BudgetExhausted };

std::string_view search_status_name(SearchStatus s) noexcept;

struct SearchResult {
  SearchStatus status = SearchStatus::NoSolution;
  std::optional<PlanningProgram> program;
  SearchStats stats;
};

// Searches programs with n lines over problem.pointer_count() pointers.
SearchResult bfgp(const GPProblem& problem, std::size_t n,
                  const SearchOptions& opts, const SearchHooks& hooks = {});

}  // namespace gp
