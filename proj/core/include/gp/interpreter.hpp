#pragma once

// Deterministic execution of planning programs on RAM-extended instances.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gp/model.hpp"
#include "gp/program.hpp"

namespace gp {

enum class Halt : std::uint8_t {
  EndGoal,
  EndNoGoal,
  UndefinedLine,
  Inapplicable,
  Infinite,
  StepLimit,
};

std::string_view halt_name(Halt h) noexcept;

struct ProgramState {
  std::size_t line = 0;
  MachineState machine;

  friend bool operator==(const ProgramState&, const ProgramState&) = default;
};

enum class RevisitDetection : std::uint8_t {
  Off,
  // Every program state is remembered; halts at the first repeat.
  EveryState,
  // Brent's cycle check over the states seen at goto lines: one saved
  // state, no hashing. Every cycle passes through a goto, so the same runs
  // are classified INFINITE; the halt may come a few cycles later.
  SavedState,
};

struct RunOptions {
  RevisitDetection revisit = RevisitDetection::EveryState;
  // Cap on executed instructions; applies with and without detection.
  std::uint64_t max_steps = 10'000'000;
  bool record_plan = true;
};

// One applied action. For content actions `operands` are the dereferenced
// variable indices; for primitives they are pointer indices.
struct AppliedAction {
  Instruction instr;
  std::array<Value, 2> operands{};

  friend bool operator==(const AppliedAction&, const AppliedAction&) = default;
};

struct ExecutionRecord {
  Halt halt = Halt::UndefinedLine;
  std::size_t halt_line = 0;
  MachineState final;
  std::vector<AppliedAction> plan;  // filled when RunOptions::record_plan
  std::uint64_t actions_applied = 0;
  std::uint64_t gotos_evaluated = 0;
  // Instructions executed plus the halting event.
  std::uint64_t steps = 0;
  std::uint64_t states_stored = 0;

  friend bool operator==(const ExecutionRecord&,
                         const ExecutionRecord&) = default;
};

struct StepHalt {
  Halt reason;
};
using StepResult = std::variant<ProgramState, StepHalt>;

// One instruction. pstate.line must be < program.size().
StepResult step(const PlanningProgram& program,
                const std::vector<ActionSchema>& actions,
                const Instance& instance, const ProgramState& pstate);

ExecutionRecord run(const PlanningProgram& program,
                    const std::vector<ActionSchema>& actions,
                    const Instance& instance, const RunOptions& opts = {});

// Continues `halted`, a run of an earlier version of `program` that stopped
// at an undefined line the program now defines. Counters and the plan carry
// over, so the result equals a fresh run except that a non-terminating
// execution may be reported as INFINITE where a fresh run reports
// STEP_LIMIT, or the reverse.
ExecutionRecord resume(const PlanningProgram& program,
                       const std::vector<ActionSchema>& actions,
                       const Instance& instance, const ExecutionRecord& halted,
                       const RunOptions& opts = {});

struct ProblemStatus {
  enum class Kind : std::uint8_t { Solution, DeadEnd, Open };

  Kind kind = Kind::Open;
  std::size_t pcmax = 0;           // Open only
  Halt dead_reason = Halt::EndGoal;  // DeadEnd only
  std::size_t dead_instance = 0;   // DeadEnd only
  std::vector<ExecutionRecord> records;
};

// Runs the program on every instance. With stop_at_dead_end the scan stops
// at the first failing instance and `records` holds only the runs so far.
ProblemStatus run_all(const PlanningProgram& program, const GPProblem& problem,
                      const RunOptions& opts = {},
                      bool stop_at_dead_end = false);

// run_all for a program that extends the one `base` was computed on by
// defining lines that were undefined. Records that halted at a now-defined
// line are resumed; the rest are reused. `base` must hold every record.
ProblemStatus run_all_from(const PlanningProgram& program,
                           const GPProblem& problem, const ProblemStatus& base,
                           const RunOptions& opts = {},
                           bool stop_at_dead_end = false);

enum class PlanFilter : std::uint8_t { All, DomainOnly };

std::vector<AppliedAction> induced_plan(const ExecutionRecord& record,
                                        PlanFilter filter);

// "swap(x1,x6)" for content actions (1-based variable names), "inc(z1)"
// for primitives.
std::string applied_action_text(const AppliedAction& action,
                                const std::vector<ActionSchema>& actions);

}  // namespace gp
