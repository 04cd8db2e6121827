#pragma once

// Planning model extended with a random-access machine: state variables,
// pointers over those variables, zero/carry flags, the five pointer
// primitives, and pointer-parameterized content actions.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gp {

using Value = std::int64_t;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  bool zero = false;
  bool carry = false;

  friend bool operator==(const Flags&, const Flags&) = default;
};

// zero := (res == 0), carry := (res > 0)
constexpr Flags update_flags(Value res) noexcept {
  return Flags{res == 0, res > 0};
}

struct Bounds {
  Value lower;
  Value upper;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

class VariableSpace {
 public:
  explicit VariableSpace(std::size_t count,
                         std::vector<std::optional<Bounds>> bounds = {});

  std::size_t size() const noexcept { return bounds_.size(); }
  const std::optional<Bounds>& bounds(std::size_t var) const {
    return bounds_.at(var);
  }
  bool admits(std::size_t var, Value value) const noexcept {
    const auto& b = bounds_[var];
    return !b || (b->lower <= value && value <= b->upper);
  }
  bool has_bounds() const noexcept;

  friend bool operator==(const VariableSpace&, const VariableSpace&) = default;

 private:
  std::vector<std::optional<Bounds>> bounds_;
};

// Valuation of X_Z = X u Y u Z. Pointer values index into vars.
struct MachineState {
  std::vector<Value> vars;
  Flags flags;
  std::vector<Value> pointers;

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

enum class Primitive : std::uint8_t { Inc, Dec, Cmp, CmpContent, Set };

inline constexpr std::array<Primitive, 5> kPrimitives = {
    Primitive::Inc, Primitive::Dec, Primitive::Cmp, Primitive::CmpContent,
    Primitive::Set};

constexpr std::size_t arity(Primitive p) noexcept {
  return (p == Primitive::Inc || p == Primitive::Dec) ? 1 : 2;
}
std::string_view primitive_name(Primitive p) noexcept;

// Content-level effect of an action schema. The set is closed: every
// benchmark domain is expressed with these.
enum class Effect : std::uint8_t {
  Increment,  // *a += 1
  Decrement,  // *a -= 1
  Add,        // *a += *b
  Subtract,   // *a -= *b
  Assign,     // *a := *b
  Swap,       // *a <-> *b
  Pick,       // *a == *b  =>  *a := 2     (object a taken from room *b)
  Drop,       // *a == 2   =>  *a := *b    (object a released in room *b)
  Move,       // *a in {0,1}  =>  *a := 1 - *a
};

// Which variables an argument may be bound to. Head is variable 0 (the
// agent in layouts that have one); Rest is every other variable.
enum class ArgRole : std::uint8_t { Any, Head, Rest };

struct ActionSchema {
  std::string name;
  Effect effect = Effect::Increment;
  std::vector<ArgRole> roles;  // one entry per (dereferenced) argument
  bool symmetric = false;      // f(a,b) == f(b,a): enumerate a < b only
  bool distinct_args = false;  // f(a,a) is excluded from enumeration
  bool declares_result = false;

  std::size_t arity() const noexcept { return roles.size(); }

  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

// The shared content-action library: inc, dec, add, sub, set, swap, pick,
// drop, move.
const std::vector<ActionSchema>& action_library();
// Throws ModelError for unknown names.
const ActionSchema& library_action(std::string_view name);

// Pure applications. std::nullopt means INAPPLICABLE. Pointer indices must
// be < state.pointers.size(); violating that throws std::out_of_range.
std::optional<MachineState> apply_primitive(Primitive op,
                                            std::span<const std::size_t> args,
                                            const MachineState& state);
std::optional<MachineState> apply_content_action(
    const ActionSchema& schema, std::span<const std::size_t> args,
    const MachineState& state, const VariableSpace& space);

// In-place variants used by the interpreter. On failure the state is left
// unchanged and false is returned. Indices are not range-checked.
bool apply_primitive_in_place(Primitive op, std::size_t a, std::size_t b,
                              MachineState& state) noexcept;
bool apply_content_in_place(const ActionSchema& schema, std::size_t a,
                            std::size_t b, MachineState& state,
                            const VariableSpace& space) noexcept;

struct GoalAtom {
  std::size_t var;
  Value value;

  friend bool operator==(const GoalAtom&, const GoalAtom&) = default;
};
using Goal = std::vector<GoalAtom>;  // partial state, sorted by var

bool holds_goal(const MachineState& state, const Goal& goal) noexcept;

struct PointerInit {
  std::size_t pointer;
  Value value;

  friend bool operator==(const PointerInit&, const PointerInit&) = default;
};

// A classical instance as stored on disk: variables, initial values, goal,
// and optional pointer initializations for the RAM extension.
struct ClassicalInstance {
  std::string domain;
  VariableSpace space{1};
  std::vector<Value> init;
  Goal goal;
  std::vector<PointerInit> pointer_init;

  friend bool operator==(const ClassicalInstance&,
                         const ClassicalInstance&) = default;
};

// The RAM-extended instance P_Z.
struct Instance {
  VariableSpace space{1};
  MachineState init;
  Goal goal;
};

// Builds P_Z: flags false, pointers zero unless overridden. Throws
// ModelError on inconsistent input (override out of range, init outside
// bounds, goal index out of range).
Instance extend_instance(const ClassicalInstance& base,
                         std::size_t pointer_count);
Instance extend_instance(const ClassicalInstance& base,
                         std::size_t pointer_count,
                         std::span<const PointerInit> overrides);

// T instances sharing actions and pointer count.
class GPProblem {
 public:
  GPProblem(std::vector<Instance> instances, std::vector<ActionSchema> actions,
            std::size_t pointer_count);

  static GPProblem from_classical(std::span<const ClassicalInstance> instances,
                                  std::vector<ActionSchema> actions,
                                  std::size_t pointer_count);

  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const std::vector<ActionSchema>& actions() const noexcept { return actions_; }
  std::size_t pointer_count() const noexcept { return pointer_count_; }

 private:
  std::vector<Instance> instances_;
  std::vector<ActionSchema> actions_;
  std::size_t pointer_count_;
};

inline constexpr std::size_t kMaxPointers = 64;

}  // namespace gp
