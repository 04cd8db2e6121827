#include "gp/interpreter.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace gp {

std::string_view halt_name(Halt h) noexcept {
  switch (h) {
    case Halt::EndGoal: return "END_GOAL";
    case Halt::EndNoGoal: return "END_NO_GOAL";
    case Halt::UndefinedLine: return "UNDEFINED_LINE";
    case Halt::Inapplicable: return "INAPPLICABLE";
    case Halt::Infinite: return "INFINITE";
    case Halt::StepLimit: return "STEP_LIMIT";
  }
  return "?";
}

namespace {

enum class Event : std::uint8_t { Action, Goto, Halted };

struct Outcome {
  Event event;
  Halt halt = Halt::EndGoal;
};

// Executes the instruction at `line`, updating line and machine in place.
// On Action, *applied receives the operands.
Outcome execute(const PlanningProgram& program,
                const std::vector<ActionSchema>& actions,
                const Instance& instance, std::size_t& line, MachineState& m,
                AppliedAction* applied) noexcept {
  const Instruction& ins = program[line];
  switch (ins.kind()) {
    case Instruction::Kind::Undefined:
      return {Event::Halted, Halt::UndefinedLine};
    case Instruction::Kind::End:
      return {Event::Halted,
              holds_goal(m, instance.goal) ? Halt::EndGoal : Halt::EndNoGoal};
    case Instruction::Kind::Goto:
      line = holds(ins.condition(), m.flags) ? ins.target() : line + 1;
      return {Event::Goto};
    case Instruction::Kind::Primitive: {
      const auto a = ins.arg(0), b = ins.arg(1);
      if (applied) {
        applied->instr = ins;
        applied->operands = {static_cast<Value>(a), static_cast<Value>(b)};
      }
      if (!apply_primitive_in_place(ins.primitive_op(), a, b, m))
        return {Event::Halted, Halt::Inapplicable};
      ++line;
      return {Event::Action};
    }
    case Instruction::Kind::Content: {
      const auto& schema = actions[ins.action_index()];
      const auto a = ins.arg(0), b = ins.arg(1);
      if (applied) {
        applied->instr = ins;
        applied->operands = {m.pointers[a],
                             schema.arity() > 1 ? m.pointers[b] : Value{0}};
      }
      if (!apply_content_in_place(schema, a, b, m, instance.space))
        return {Event::Halted, Halt::Inapplicable};
      ++line;
      return {Event::Action};
    }
  }
  return {Event::Halted, Halt::UndefinedLine};
}

// Visited program states packed into one arena; the hash set stores
// offsets into it.
class VisitedStates {
 public:
  explicit VisitedStates(std::size_t width)
      : width_(width), index_(64, Hash{this}, Equal{this}) {}

  // Returns false if the state was already present.
  bool insert(std::size_t line, const MachineState& m) {
    const std::size_t offset = arena_.size();
    arena_.push_back(static_cast<Value>(line));
    arena_.push_back((m.flags.zero ? 1 : 0) | (m.flags.carry ? 2 : 0));
    arena_.insert(arena_.end(), m.pointers.begin(), m.pointers.end());
    arena_.insert(arena_.end(), m.vars.begin(), m.vars.end());
    if (index_.insert(offset).second) return true;
    arena_.resize(offset);
    return false;
  }

  std::size_t size() const noexcept { return index_.size(); }

 private:
  struct Hash {
    const VisitedStates* self;
    std::size_t operator()(std::size_t offset) const noexcept {
      std::uint64_t h = 0x9E3779B97F4A7C15ull;
      const Value* p = self->arena_.data() + offset;
      for (std::size_t i = 0; i < self->width_; ++i) {
        h ^= static_cast<std::uint64_t>(p[i]) + 0x9E3779B97F4A7C15ull +
             (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };
  struct Equal {
    const VisitedStates* self;
    bool operator()(std::size_t l, std::size_t r) const noexcept {
      const Value* a = self->arena_.data() + l;
      return std::equal(a, a + self->width_, self->arena_.data() + r);
    }
  };

  std::size_t width_;
  std::vector<Value> arena_;
  std::unordered_set<std::size_t, Hash, Equal> index_;
};

}  // namespace

StepResult step(const PlanningProgram& program,
                const std::vector<ActionSchema>& actions,
                const Instance& instance, const ProgramState& pstate) {
  ProgramState next = pstate;
  const auto out =
      execute(program, actions, instance, next.line, next.machine, nullptr);
  if (out.event == Event::Halted) return StepHalt{out.halt};
  return next;
}

namespace {

// Runs from rec.halt_line / rec.final with rec's counters as the starting
// point.
void continue_run(const PlanningProgram& program,
                  const std::vector<ActionSchema>& actions,
                  const Instance& instance, const RunOptions& opts,
                  ExecutionRecord& rec) {
  MachineState& m = rec.final;
  std::size_t line = rec.halt_line;
  std::uint64_t executed = rec.steps == 0 ? 0 : rec.steps - 1;

  std::optional<VisitedStates> visited;
  if (opts.revisit == RevisitDetection::EveryState)
    visited.emplace(2 + m.pointers.size() + m.vars.size());
  const bool brent = opts.revisit == RevisitDetection::SavedState;
  ProgramState saved{program.size(), {}};
  std::uint64_t power = 1, lambda = 0;

  AppliedAction applied;
  for (;;) {
    const auto kind = program[line].kind();
    if (visited && (kind == Instruction::Kind::Goto || program[line].is_action()) &&
        !visited->insert(line, m)) {
      rec.halt = Halt::Infinite;
      break;
    }
    if (brent && kind == Instruction::Kind::Goto) {
      if (saved.line == line && saved.machine == m) {
        rec.halt = Halt::Infinite;
        break;
      }
      if (++lambda == power) {
        saved.line = line;
        saved.machine = m;
        power *= 2;
        lambda = 0;
      }
    }
    if (executed >= opts.max_steps && (kind == Instruction::Kind::Goto ||
                                       program[line].is_action())) {
      rec.halt = Halt::StepLimit;
      break;
    }
    const std::size_t at = line;
    const auto out = execute(program, actions, instance, line, m, &applied);
    if (out.event == Event::Halted) {
      rec.halt = out.halt;
      line = at;
      break;
    }
    ++executed;
    if (out.event == Event::Action) {
      ++rec.actions_applied;
      if (opts.record_plan) rec.plan.push_back(applied);
    } else {
      ++rec.gotos_evaluated;
    }
  }
  rec.halt_line = line;
  rec.steps = executed + 1;
  rec.states_stored = visited ? visited->size() : 0;
}

}  // namespace

ExecutionRecord run(const PlanningProgram& program,
                    const std::vector<ActionSchema>& actions,
                    const Instance& instance, const RunOptions& opts) {
  ExecutionRecord rec;
  rec.final = instance.init;
  continue_run(program, actions, instance, opts, rec);
  return rec;
}

ExecutionRecord resume(const PlanningProgram& program,
                       const std::vector<ActionSchema>& actions,
                       const Instance& instance, const ExecutionRecord& halted,
                       const RunOptions& opts) {
  ExecutionRecord rec = halted;
  continue_run(program, actions, instance, opts, rec);
  return rec;
}

namespace {

template <class RunOne>
ProblemStatus classify_runs(std::size_t count, bool stop_at_dead_end,
                            RunOne run_one) {
  ProblemStatus status;
  status.records.reserve(count);
  bool dead = false;
  bool open = false;
  std::size_t pcmax = 0;
  for (std::size_t t = 0; t < count; ++t) {
    status.records.push_back(run_one(t));
    const auto& rec = status.records.back();
    if (rec.halt == Halt::EndGoal) continue;
    if (rec.halt == Halt::UndefinedLine) {
      open = true;
      pcmax = std::max(pcmax, rec.halt_line);
      continue;
    }
    if (!dead) {
      dead = true;
      status.dead_reason = rec.halt;
      status.dead_instance = t;
    }
    if (stop_at_dead_end) break;
  }
  if (dead) {
    status.kind = ProblemStatus::Kind::DeadEnd;
  } else if (open) {
    status.kind = ProblemStatus::Kind::Open;
    status.pcmax = pcmax;
  } else {
    status.kind = ProblemStatus::Kind::Solution;
  }
  return status;
}

}  // namespace

ProblemStatus run_all(const PlanningProgram& program, const GPProblem& problem,
                      const RunOptions& opts, bool stop_at_dead_end) {
  const auto& instances = problem.instances();
  return classify_runs(instances.size(), stop_at_dead_end, [&](std::size_t t) {
    return run(program, problem.actions(), instances[t], opts);
  });
}

ProblemStatus run_all_from(const PlanningProgram& program,
                           const GPProblem& problem, const ProblemStatus& base,
                           const RunOptions& opts, bool stop_at_dead_end) {
  const auto& instances = problem.instances();
  if (base.records.size() != instances.size())
    throw std::invalid_argument("run_all_from: base must hold every record");
  return classify_runs(instances.size(), stop_at_dead_end, [&](std::size_t t) {
    const auto& rec = base.records[t];
    if (rec.halt != Halt::UndefinedLine ||
        program[rec.halt_line].kind() == Instruction::Kind::Undefined)
      return rec;
    return resume(program, problem.actions(), instances[t], rec, opts);
  });
}

std::vector<AppliedAction> induced_plan(const ExecutionRecord& record,
                                        PlanFilter filter) {
  if (filter == PlanFilter::All) return record.plan;
  std::vector<AppliedAction> out;
  std::copy_if(record.plan.begin(), record.plan.end(), std::back_inserter(out),
               [](const AppliedAction& a) {
                 return a.instr.kind() == Instruction::Kind::Content;
               });
  return out;
}

std::string applied_action_text(const AppliedAction& action,
                                const std::vector<ActionSchema>& actions) {
  if (action.instr.kind() == Instruction::Kind::Primitive)
    return instruction_text(action.instr, actions);
  const auto& schema = actions.at(action.instr.action_index());
  std::string s = schema.name + "(x" + std::to_string(action.operands[0] + 1);
  if (schema.arity() > 1) s += ",x" + std::to_string(action.operands[1] + 1);
  return s + ")";
}

}  // namespace gp
