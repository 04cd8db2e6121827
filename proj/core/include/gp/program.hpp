#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gp/model.hpp"

namespace gp {

// Jump conditions over (zero, carry). The mnemonic reads as "res <cond> 0"
// for the last result-producing operation.
enum class Condition : std::uint8_t { EQ, NE, GT, LT, GE, LE };

inline constexpr std::array<Condition, 6> kConditions = {
    Condition::EQ, Condition::NE, Condition::GT,
    Condition::LT, Condition::GE, Condition::LE};

constexpr bool holds(Condition c, Flags f) noexcept {
  switch (c) {
    case Condition::EQ: return f.zero;
    case Condition::NE: return !f.zero;
    case Condition::GT: return f.carry;
    case Condition::LT: return !f.zero && !f.carry;
    case Condition::GE: return f.zero || f.carry;
    case Condition::LE: return !f.carry;
  }
  return false;
}

std::string_view condition_name(Condition c) noexcept;
std::optional<Condition> parse_condition(std::string_view token) noexcept;

class Instruction {
 public:
  enum class Kind : std::uint8_t { Undefined, Primitive, Content, Goto, End };

  constexpr Instruction() = default;

  static constexpr Instruction undefined() { return Instruction{}; }
  static constexpr Instruction end() {
    Instruction i;
    i.kind_ = Kind::End;
    return i;
  }
  static constexpr Instruction primitive(Primitive p, std::size_t a,
                                         std::size_t b = 0) {
    Instruction i;
    i.kind_ = Kind::Primitive;
    i.code_ = static_cast<std::uint8_t>(p);
    i.arg0_ = static_cast<std::uint8_t>(a);
    i.arg1_ = static_cast<std::uint8_t>(arity(p) > 1 ? b : 0);
    return i;
  }
  // `action` indexes the problem's content-action list.
  static constexpr Instruction content(std::size_t action, std::size_t a,
                                       std::size_t b = 0) {
    Instruction i;
    i.kind_ = Kind::Content;
    i.code_ = static_cast<std::uint8_t>(action);
    i.arg0_ = static_cast<std::uint8_t>(a);
    i.arg1_ = static_cast<std::uint8_t>(b);
    return i;
  }
  static constexpr Instruction jump(std::size_t target, Condition c) {
    Instruction i;
    i.kind_ = Kind::Goto;
    i.target_ = static_cast<std::uint16_t>(target);
    i.code_ = static_cast<std::uint8_t>(c);
    return i;
  }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_action() const noexcept {
    return kind_ == Kind::Primitive || kind_ == Kind::Content;
  }
  constexpr Primitive primitive_op() const noexcept {
    return static_cast<Primitive>(code_);
  }
  constexpr std::size_t action_index() const noexcept { return code_; }
  constexpr std::size_t arg(std::size_t k) const noexcept {
    return k == 0 ? arg0_ : arg1_;
  }
  constexpr std::size_t target() const noexcept { return target_; }
  constexpr Condition condition() const noexcept {
    return static_cast<Condition>(code_);
  }

  friend constexpr bool operator==(const Instruction&,
                                   const Instruction&) = default;

 private:
  Kind kind_ = Kind::Undefined;
  std::uint8_t code_ = 0;
  std::uint8_t arg0_ = 0;
  std::uint8_t arg1_ = 0;
  std::uint16_t target_ = 0;
};

// A goto at `line` may target 0 <= t < line or line+1 < t < n.
constexpr bool legal_goto_target(std::size_t line, std::size_t target,
                                 std::size_t n) noexcept {
  return target < line || (target > line + 1 && target < n);
}

class PlanningProgram {
 public:
  // All lines undefined except the final End.
  explicit PlanningProgram(std::size_t n);

  std::size_t size() const noexcept { return lines_.size(); }
  const Instruction& operator[](std::size_t line) const { return lines_[line]; }
  const std::vector<Instruction>& lines() const noexcept { return lines_; }

  // Throws std::invalid_argument for an illegal goto target, for
  // overwriting the final End with anything else, or for line >= n.
  void set(std::size_t line, const Instruction& instr);

  // Compact byte encoding, unique per program. Used as a hash key.
  std::string key() const;

  friend bool operator==(const PlanningProgram&,
                         const PlanningProgram&) = default;

 private:
  std::vector<Instruction> lines_;
};

// Human-readable instruction text in the canonical program syntax, e.g.
// "swap(*z1,*z2)", "cmp(z2,z1)", "goto(0,GE)". Pointer names are 1-based.
std::string instruction_text(const Instruction& instr,
                             const std::vector<ActionSchema>& actions);

// Largest pointer index referenced by an action instruction plus one; 0
// when the program references no pointer.
std::size_t pointers_referenced(const PlanningProgram& program);

}  // namespace gp
