#pragma once

// Evaluation and heuristic functions over planning programs. All are
// costs: lower is better.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gp/interpreter.hpp"
#include "gp/model.hpp"
#include "gp/program.hpp"

namespace gp {

enum class EvalFunction : std::uint8_t { F1, F2, F3, H4, H5, F6 };

inline constexpr std::size_t kMaxEvalFunctions = 6;

std::string_view eval_name(EvalFunction f) noexcept;
std::optional<EvalFunction> parse_eval(std::string_view token) noexcept;

// Parses "h5,f1". Throws std::invalid_argument on unknown or repeated ids
// or an empty list.
std::vector<EvalFunction> parse_eval_list(std::string_view text);
std::string eval_list_text(std::span<const EvalFunction> config);

// Structural functions read the program only.
std::int64_t f1_gotos(const PlanningProgram& program) noexcept;
std::int64_t f2_undefined(const PlanningProgram& program) noexcept;
std::int64_t f3_repeated_actions(const PlanningProgram& program);

// Performance functions read execution results.
std::int64_t h4_remaining_lines(const PlanningProgram& program,
                                std::size_t pcmax) noexcept;
// Sum over instances of squared goal distance at each halting state.
// Saturates at INT64_MAX.
std::int64_t h5_goal_distance(std::span<const ExecutionRecord> records,
                              const GPProblem& problem) noexcept;
std::int64_t f6_plan_length(std::span<const ExecutionRecord> records) noexcept;

// Lexicographic cost, then generation sequence number.
class CostVector {
 public:
  CostVector() = default;
  CostVector(std::span<const std::int64_t> costs, std::uint64_t seq);

  std::size_t size() const noexcept { return size_; }
  std::int64_t operator[](std::size_t i) const noexcept { return costs_[i]; }
  std::uint64_t seq() const noexcept { return seq_; }

  friend bool operator==(const CostVector&, const CostVector&) = default;
  friend bool operator<(const CostVector& l, const CostVector& r) noexcept {
    for (std::size_t i = 0; i < l.size_ && i < r.size_; ++i)
      if (l.costs_[i] != r.costs_[i]) return l.costs_[i] < r.costs_[i];
    return l.seq_ < r.seq_;
  }

 private:
  std::array<std::int64_t, kMaxEvalFunctions> costs_{};
  std::uint8_t size_ = 0;
  std::uint64_t seq_ = 0;
};

// Computes every configured function in order. `status` must be Open and
// carry the records of every instance when a performance function is
// configured; otherwise std::invalid_argument is thrown.
CostVector evaluate(const PlanningProgram& program, const ProblemStatus& status,
                    const GPProblem& problem,
                    std::span<const EvalFunction> config, std::uint64_t seq);

bool needs_execution(std::span<const EvalFunction> config) noexcept;

}  // namespace gp
