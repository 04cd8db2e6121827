#include "gp/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace gp {

namespace {

constexpr std::array<EvalFunction, 6> kAll = {
    EvalFunction::F1, EvalFunction::F2, EvalFunction::F3,
    EvalFunction::H4, EvalFunction::H5, EvalFunction::F6};

std::int64_t saturating_add(std::int64_t a, std::int64_t b) noexcept {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    return std::numeric_limits<std::int64_t>::max();
  return out;
}

}  // namespace

std::string_view eval_name(EvalFunction f) noexcept {
  switch (f) {
    case EvalFunction::F1: return "f1";
    case EvalFunction::F2: return "f2";
    case EvalFunction::F3: return "f3";
    case EvalFunction::H4: return "h4";
    case EvalFunction::H5: return "h5";
    case EvalFunction::F6: return "f6";
  }
  return "?";
}

std::optional<EvalFunction> parse_eval(std::string_view token) noexcept {
  for (auto f : kAll)
    if (eval_name(f) == token) return f;
  return std::nullopt;
}

std::vector<EvalFunction> parse_eval_list(std::string_view text) {
  std::vector<EvalFunction> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto token = text.substr(start, comma - start);
    const auto f = parse_eval(token);
    if (!f) throw std::invalid_argument("unknown evaluation function '" +
                                        std::string(token) + "'");
    if (std::find(out.begin(), out.end(), *f) != out.end())
      throw std::invalid_argument("evaluation function '" + std::string(token) +
                                  "' listed twice");
    out.push_back(*f);
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty evaluation list");
  return out;
}

std::string eval_list_text(std::span<const EvalFunction> config) {
  std::string out;
  for (auto f : config) {
    if (!out.empty()) out += ',';
    out += eval_name(f);
  }
  return out;
}

std::int64_t f1_gotos(const PlanningProgram& program) noexcept {
  return std::count_if(program.lines().begin(), program.lines().end(),
                       [](const Instruction& i) {
                         return i.kind() == Instruction::Kind::Goto;
                       });
}

std::int64_t f2_undefined(const PlanningProgram& program) noexcept {
  return std::count_if(program.lines().begin(), program.lines().end(),
                       [](const Instruction& i) {
                         return i.kind() == Instruction::Kind::Undefined;
                       });
}

std::int64_t f3_repeated_actions(const PlanningProgram& program) {
  std::vector<Instruction> seen;
  std::int64_t repeats = 0;
  for (const auto& i : program.lines()) {
    if (!i.is_action()) continue;
    if (std::find(seen.begin(), seen.end(), i) != seen.end())
      ++repeats;
    else
      seen.push_back(i);
  }
  return repeats;
}

std::int64_t h4_remaining_lines(const PlanningProgram& program,
                                std::size_t pcmax) noexcept {
  return static_cast<std::int64_t>(program.size()) -
         static_cast<std::int64_t>(pcmax);
}

std::int64_t h5_goal_distance(std::span<const ExecutionRecord> records,
                              const GPProblem& problem) noexcept {
  std::int64_t total = 0;
  const auto& instances = problem.instances();
  for (std::size_t t = 0; t < records.size() && t < instances.size(); ++t) {
    const auto& vars = records[t].final.vars;
    for (const auto& atom : instances[t].goal) {
      std::int64_t diff, sq;
      if (__builtin_sub_overflow(vars[atom.var], atom.value, &diff) ||
          __builtin_mul_overflow(diff, diff, &sq))
        return std::numeric_limits<std::int64_t>::max();
      total = saturating_add(total, sq);
    }
  }
  return total;
}

std::int64_t f6_plan_length(std::span<const ExecutionRecord> records) noexcept {
  std::int64_t total = 0;
  for (const auto& r : records)
    total = saturating_add(total, static_cast<std::int64_t>(r.actions_applied));
  return total;
}

CostVector::CostVector(std::span<const std::int64_t> costs, std::uint64_t seq)
    : size_(static_cast<std::uint8_t>(costs.size())), seq_(seq) {
  if (costs.size() > kMaxEvalFunctions)
    throw std::invalid_argument("too many cost components");
  std::copy(costs.begin(), costs.end(), costs_.begin());
}

bool needs_execution(std::span<const EvalFunction> config) noexcept {
  return std::any_of(config.begin(), config.end(), [](EvalFunction f) {
    return f == EvalFunction::H4 || f == EvalFunction::H5 ||
           f == EvalFunction::F6;
  });
}

CostVector evaluate(const PlanningProgram& program, const ProblemStatus& status,
                    const GPProblem& problem,
                    std::span<const EvalFunction> config, std::uint64_t seq) {
  if (config.empty() || config.size() > kMaxEvalFunctions)
    throw std::invalid_argument("evaluation config must list 1-6 functions");
  if (needs_execution(config) &&
      (status.kind != ProblemStatus::Kind::Open ||
       status.records.size() != problem.instances().size()))
    throw std::invalid_argument(
        "performance functions need the records of an open node");

  std::array<std::int64_t, kMaxEvalFunctions> costs{};
  for (std::size_t k = 0; k < config.size(); ++k) {
    switch (config[k]) {
      case EvalFunction::F1: costs[k] = f1_gotos(program); break;
      case EvalFunction::F2: costs[k] = f2_undefined(program); break;
      case EvalFunction::F3: costs[k] = f3_repeated_actions(program); break;
      case EvalFunction::H4:
        costs[k] = h4_remaining_lines(program, status.pcmax);
        break;
      case EvalFunction::H5:
        costs[k] = h5_goal_distance(status.records, problem);
        break;
      case EvalFunction::F6: costs[k] = f6_plan_length(status.records); break;
    }
  }
  return CostVector(std::span(costs.data(), config.size()), seq);
}

}  // namespace gp
