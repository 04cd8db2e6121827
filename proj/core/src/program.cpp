#include "gp/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace gp {

std::string_view condition_name(Condition c) noexcept {
  switch (c) {
    case Condition::EQ: return "EQ";
    case Condition::NE: return "NE";
    case Condition::GT: return "GT";
    case Condition::LT: return "LT";
    case Condition::GE: return "GE";
    case Condition::LE: return "LE";
  }
  return "??";
}

std::optional<Condition> parse_condition(std::string_view token) noexcept {
  for (auto c : kConditions)
    if (condition_name(c) == token) return c;
  return std::nullopt;
}

PlanningProgram::PlanningProgram(std::size_t n) {
  if (n == 0) throw std::invalid_argument("a program needs at least one line");
  if (n > 0xFFFF) throw std::invalid_argument("program too long");
  lines_.assign(n, Instruction::undefined());
  lines_.back() = Instruction::end();
}

void PlanningProgram::set(std::size_t line, const Instruction& instr) {
  const auto n = lines_.size();
  if (line >= n) throw std::invalid_argument("line out of range");
  if (line == n - 1 && instr.kind() != Instruction::Kind::End)
    throw std::invalid_argument("the last line of a program is always end");
  if (instr.kind() == Instruction::Kind::Goto &&
      !legal_goto_target(line, instr.target(), n))
    throw std::invalid_argument("illegal goto target " +
                                std::to_string(instr.target()) + " at line " +
                                std::to_string(line));
  lines_[line] = instr;
}

std::string PlanningProgram::key() const {
  std::string out;
  out.reserve(lines_.size() * 5);
  for (const auto& i : lines_) {
    out.push_back(static_cast<char>(i.kind()));
    switch (i.kind()) {
      case Instruction::Kind::Primitive:
      case Instruction::Kind::Content:
        out.push_back(static_cast<char>(i.action_index()));
        out.push_back(static_cast<char>(i.arg(0)));
        out.push_back(static_cast<char>(i.arg(1)));
        break;
      case Instruction::Kind::Goto:
        out.push_back(static_cast<char>(i.condition()));
        out.push_back(static_cast<char>(i.target() & 0xFF));
        out.push_back(static_cast<char>(i.target() >> 8));
        break;
      default:
        break;
    }
  }
  return out;
}

std::string instruction_text(const Instruction& instr,
                             const std::vector<ActionSchema>& actions) {
  auto z = [](std::size_t p) { return "z" + std::to_string(p + 1); };
  switch (instr.kind()) {
    case Instruction::Kind::Undefined:
      return "-- undefined";
    case Instruction::Kind::End:
      return "end";
    case Instruction::Kind::Goto:
      return "goto(" + std::to_string(instr.target()) + "," +
             std::string(condition_name(instr.condition())) + ")";
    case Instruction::Kind::Primitive: {
      const auto op = instr.primitive_op();
      std::string s(primitive_name(op));
      if (arity(op) == 1) return s + "(" + z(instr.arg(0)) + ")";
      const std::string star = op == Primitive::CmpContent ? "*" : "";
      return s + "(" + star + z(instr.arg(0)) + "," + star + z(instr.arg(1)) +
             ")";
    }
    case Instruction::Kind::Content: {
      const auto& schema = actions.at(instr.action_index());
      std::string s = schema.name + "(*" + z(instr.arg(0));
      if (schema.arity() > 1) s += ",*" + z(instr.arg(1));
      return s + ")";
    }
  }
  return "?";
}

std::size_t pointers_referenced(const PlanningProgram& program) {
  std::size_t count = 0;
  for (const auto& i : program.lines()) {
    if (!i.is_action()) continue;
    count = std::max(count, i.arg(0) + 1);
    const bool binary = i.kind() == Instruction::Kind::Primitive
                            ? arity(i.primitive_op()) > 1
                            : true;
    if (binary) count = std::max(count, i.arg(1) + 1);
  }
  return count;
}

}  // namespace gp
