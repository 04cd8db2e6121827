#include "gp/model.hpp"

#include <algorithm>
#include <string>

namespace gp {

VariableSpace::VariableSpace(std::size_t count,
                             std::vector<std::optional<Bounds>> bounds)
    : bounds_(std::move(bounds)) {
  if (count == 0) throw ModelError("variable space must have at least one variable");
  if (bounds_.empty()) bounds_.resize(count);
  if (bounds_.size() != count)
    throw ModelError("bounds list size does not match variable count");
  for (std::size_t i = 0; i < count; ++i) {
    if (bounds_[i] && bounds_[i]->lower > bounds_[i]->upper)
      throw ModelError("variable " + std::to_string(i) + " has lower > upper");
  }
}

bool VariableSpace::has_bounds() const noexcept {
  return std::any_of(bounds_.begin(), bounds_.end(),
                     [](const auto& b) { return b.has_value(); });
}

std::string_view primitive_name(Primitive p) noexcept {
  switch (p) {
    case Primitive::Inc: return "inc";
    case Primitive::Dec: return "dec";
    case Primitive::Cmp: return "cmp";
    case Primitive::CmpContent: return "cmp";
    case Primitive::Set: return "set";
  }
  return "?";
}

const std::vector<ActionSchema>& action_library() {
  using R = ArgRole;
  static const std::vector<ActionSchema> library = {
      {"inc", Effect::Increment, {R::Any}, false, false, true},
      {"dec", Effect::Decrement, {R::Any}, false, false, true},
      {"add", Effect::Add, {R::Any, R::Any}, false, false, true},
      {"sub", Effect::Subtract, {R::Any, R::Any}, false, false, true},
      {"set", Effect::Assign, {R::Any, R::Any}, false, true, true},
      {"swap", Effect::Swap, {R::Any, R::Any}, true, true, false},
      {"pick", Effect::Pick, {R::Rest, R::Head}, false, true, false},
      {"drop", Effect::Drop, {R::Rest, R::Head}, false, true, false},
      {"move", Effect::Move, {R::Head}, false, false, false},
  };
  return library;
}

const ActionSchema& library_action(std::string_view name) {
  for (const auto& schema : action_library())
    if (schema.name == name) return schema;
  throw ModelError("unknown action '" + std::string(name) + "'");
}

bool apply_primitive_in_place(Primitive op, std::size_t a, std::size_t b,
                              MachineState& state) noexcept {
  auto& ptr = state.pointers;
  const auto size = static_cast<Value>(state.vars.size());
  switch (op) {
    case Primitive::Inc: {
      const Value res = ptr[a] + 1;
      if (res >= size) return false;
      ptr[a] = res;
      state.flags = update_flags(res);
      return true;
    }
    case Primitive::Dec: {
      const Value res = ptr[a] - 1;
      if (res < 0) return false;
      ptr[a] = res;
      state.flags = update_flags(res);
      return true;
    }
    case Primitive::Cmp:
      state.flags = update_flags(ptr[a] - ptr[b]);
      return true;
    case Primitive::CmpContent: {
      // Sign of *a - *b without risking overflow.
      const Value x = state.vars[static_cast<std::size_t>(ptr[a])];
      const Value y = state.vars[static_cast<std::size_t>(ptr[b])];
      state.flags = Flags{x == y, x > y};
      return true;
    }
    case Primitive::Set:
      ptr[a] = ptr[b];
      state.flags = update_flags(ptr[a]);
      return true;
  }
  return false;
}

namespace {

bool role_allows(ArgRole role, std::size_t var) noexcept {
  switch (role) {
    case ArgRole::Any: return true;
    case ArgRole::Head: return var == 0;
    case ArgRole::Rest: return var != 0;
  }
  return false;
}

void check_pointer_args(std::span<const std::size_t> args, std::size_t expected,
                        const MachineState& state) {
  if (args.size() != expected)
    throw std::out_of_range("wrong number of pointer arguments");
  for (auto a : args)
    if (a >= state.pointers.size())
      throw std::out_of_range("pointer index out of range");
}

}  // namespace

bool apply_content_in_place(const ActionSchema& schema, std::size_t a,
                            std::size_t b, MachineState& state,
                            const VariableSpace& space) noexcept {
  const auto va = static_cast<std::size_t>(state.pointers[a]);
  const std::size_t vb =
      schema.arity() > 1 ? static_cast<std::size_t>(state.pointers[b]) : va;
  if (!role_allows(schema.roles[0], va)) return false;
  if (schema.arity() > 1 && !role_allows(schema.roles[1], vb)) return false;

  Value& x = state.vars[va];
  const Value y = state.vars[vb];
  Value next = x;
  switch (schema.effect) {
    case Effect::Increment:
      if (__builtin_add_overflow(x, Value{1}, &next)) return false;
      break;
    case Effect::Decrement:
      if (__builtin_sub_overflow(x, Value{1}, &next)) return false;
      break;
    case Effect::Add:
      if (__builtin_add_overflow(x, y, &next)) return false;
      break;
    case Effect::Subtract:
      if (__builtin_sub_overflow(x, y, &next)) return false;
      break;
    case Effect::Assign:
      next = y;
      break;
    case Effect::Swap:
      if (!space.admits(va, y) || !space.admits(vb, x)) return false;
      state.vars[vb] = x;
      state.vars[va] = y;
      return true;
    case Effect::Pick:
      if (x != y) return false;
      next = 2;
      break;
    case Effect::Drop:
      if (x != 2) return false;
      next = y;
      break;
    case Effect::Move:
      if (x != 0 && x != 1) return false;
      next = 1 - x;
      break;
  }
  if (!space.admits(va, next)) return false;
  x = next;
  if (schema.declares_result) state.flags = update_flags(next);
  return true;
}

std::optional<MachineState> apply_primitive(Primitive op,
                                            std::span<const std::size_t> args,
                                            const MachineState& state) {
  check_pointer_args(args, arity(op), state);
  MachineState next = state;
  if (!apply_primitive_in_place(op, args[0], args.size() > 1 ? args[1] : args[0],
                                next))
    return std::nullopt;
  return next;
}

std::optional<MachineState> apply_content_action(
    const ActionSchema& schema, std::span<const std::size_t> args,
    const MachineState& state, const VariableSpace& space) {
  check_pointer_args(args, schema.arity(), state);
  MachineState next = state;
  if (!apply_content_in_place(schema, args[0],
                              args.size() > 1 ? args[1] : args[0], next, space))
    return std::nullopt;
  return next;
}

bool holds_goal(const MachineState& state, const Goal& goal) noexcept {
  for (const auto& atom : goal)
    if (atom.var >= state.vars.size() || state.vars[atom.var] != atom.value)
      return false;
  return true;
}

Instance extend_instance(const ClassicalInstance& base,
                         std::size_t pointer_count) {
  return extend_instance(base, pointer_count, base.pointer_init);
}

Instance extend_instance(const ClassicalInstance& base,
                         std::size_t pointer_count,
                         std::span<const PointerInit> overrides) {
  const auto& space = base.space;
  if (pointer_count == 0 || pointer_count > kMaxPointers)
    throw ModelError("pointer count must be in [1, " +
                     std::to_string(kMaxPointers) + "]");
  if (base.init.size() != space.size())
    throw ModelError("initial state has " + std::to_string(base.init.size()) +
                     " values but the instance declares " +
                     std::to_string(space.size()) + " variables");
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!space.admits(i, base.init[i]))
      throw ModelError("initial value of variable " + std::to_string(i) +
                       " violates its bounds");

  Instance out;
  out.space = space;
  out.init.vars = base.init;
  out.init.flags = Flags{};
  out.init.pointers.assign(pointer_count, 0);
  for (const auto& o : overrides) {
    if (o.pointer >= pointer_count)
      throw ModelError("pointer z" + std::to_string(o.pointer + 1) +
                       " is out of range for " + std::to_string(pointer_count) +
                       " pointers");
    if (o.value < 0 || o.value >= static_cast<Value>(space.size()))
      throw ModelError("pointer z" + std::to_string(o.pointer + 1) +
                       " initialized outside [0, " +
                       std::to_string(space.size()) + ")");
    out.init.pointers[o.pointer] = o.value;
  }

  out.goal = base.goal;
  std::sort(out.goal.begin(), out.goal.end(),
            [](const GoalAtom& l, const GoalAtom& r) { return l.var < r.var; });
  for (std::size_t i = 0; i < out.goal.size(); ++i) {
    if (out.goal[i].var >= space.size())
      throw ModelError("goal refers to variable " +
                       std::to_string(out.goal[i].var) + " outside the space");
    if (i > 0 && out.goal[i].var == out.goal[i - 1].var)
      throw ModelError("goal constrains variable " +
                       std::to_string(out.goal[i].var) + " twice");
  }
  return out;
}

GPProblem::GPProblem(std::vector<Instance> instances,
                     std::vector<ActionSchema> actions,
                     std::size_t pointer_count)
    : instances_(std::move(instances)),
      actions_(std::move(actions)),
      pointer_count_(pointer_count) {
  if (instances_.empty()) throw ModelError("a GP problem needs at least one instance");
  if (pointer_count_ == 0 || pointer_count_ > kMaxPointers)
    throw ModelError("invalid pointer count");
  for (const auto& inst : instances_)
    if (inst.init.pointers.size() != pointer_count_)
      throw ModelError("instance pointer count differs from the problem's");
  for (const auto& a : actions_)
    if (a.arity() == 0 || a.arity() > 2)
      throw ModelError("action '" + a.name + "' must take one or two arguments");
}

GPProblem GPProblem::from_classical(std::span<const ClassicalInstance> instances,
                                    std::vector<ActionSchema> actions,
                                    std::size_t pointer_count) {
  std::vector<Instance> extended;
  extended.reserve(instances.size());
  for (const auto& c : instances)
    extended.push_back(extend_instance(c, pointer_count));
  return GPProblem(std::move(extended), std::move(actions), pointer_count);
}

}  // namespace gp
