#include "gp/domains.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace gp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(a ^ splitmix64(b));
}

std::vector<Value> random_values(std::size_t count, Value lo, Value hi,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Value> dist(lo, hi);
  std::vector<Value> out(count);
  for (auto& v : out) v = dist(rng);
  return out;
}

Goal goal_from_values(std::span<const Value> values, std::size_t offset = 0) {
  Goal goal;
  for (std::size_t i = 0; i < values.size(); ++i)
    goal.push_back({offset + i, values[i]});
  return goal;
}

// Looks up content action names in the domain's action list.
class ProgramBuilder {
 public:
  ProgramBuilder(const DomainSpec& spec, std::size_t n)
      : spec_(spec), program_(n) {}

  ProgramBuilder& prim(Primitive p, std::size_t a, std::size_t b = 0) {
    return put(Instruction::primitive(p, a, b));
  }
  ProgramBuilder& act(std::string_view name, std::size_t a, std::size_t b = 0) {
    const auto it = std::find(spec_.actions.begin(), spec_.actions.end(), name);
    if (it == spec_.actions.end())
      throw std::logic_error("reference program uses an action outside its domain");
    return put(Instruction::content(
        static_cast<std::size_t>(it - spec_.actions.begin()), a, b));
  }
  ProgramBuilder& jump(std::size_t target, Condition c) {
    return put(Instruction::jump(target, c));
  }
  ProgramBuilder& end() { return put(Instruction::end()); }

  PlanningProgram build() const { return program_; }

 private:
  ProgramBuilder& put(const Instruction& instr) {
    program_.set(line_++, instr);
    return *this;
  }

  const DomainSpec& spec_;
  PlanningProgram program_;
  std::size_t line_ = 0;
};

constexpr std::size_t kZ1 = 0, kZ2 = 1, kZ3 = 2;

}  // namespace

Value triangular_number(Value t) noexcept { return t * (t + 1) / 2; }

Value fibonacci_number(Value t) noexcept {
  Value a = 0, b = 1;  // Fib(0), Fib(1)
  for (Value i = 0; i < t; ++i) {
    const Value next = a + b;
    a = b;
    b = next;
  }
  return a;
}

const std::vector<DomainSpec>& all_domains() {
  static const std::vector<DomainSpec> domains = {
      {Domain::TriangularSum, "t-sum", {"add", "dec"},
       "[acc=0, k=t]; goal acc = t(t+1)/2", 5, 2, 1, 1'000'000, 10, 44'709},
      {Domain::Corridor, "corridor", {"inc", "dec"},
       "[pos=0, g]; goal pos = g", 7, 2, 1, 1'000'000, 10, 1'000},
      {Domain::Reverse, "reverse", {"swap"},
       "v[0..L); goal v reversed; z2 = L-1", 7, 3, 2, 100'000, 10, 50},
      {Domain::Select, "select", {"set"},
       "[out=v1, v1..vL]; goal out = min(v); z2 = 1, z3 = L", 7, 3, 2, 100'000,
       10, 50},
      {Domain::Find, "find", {"inc"},
       "[count=0, sentinel=0, v1..vL]; goal count = #zeros(v); z2 = 1, z3 = L+1",
       7, 3, 1, 100'000, 10, 50},
      {Domain::Fibonacci, "fibonacci", {"add", "swap", "dec"},
       "[a=0, b=1, k=t-1]; goal b = Fib(t)", 8, 3, 1, 92, 10, 33},
      {Domain::Gripper, "gripper", {"pick", "drop", "move"},
       "[robot=0, b1..bn = 0]; goal every b = 1; z2 = n", 8, 4, 1, 100'000, 10,
       1'000},
      {Domain::Sorting, "sorting", {"swap"},
       "v[0..L); goal v ascending; z3 = L-1", 9, 3, 2, 10'000, 10, 20},
  };
  return domains;
}

const DomainSpec& domain_spec(std::string_view name) {
  for (const auto& d : all_domains())
    if (d.name == name) return d;
  throw std::invalid_argument("unknown domain '" + std::string(name) + "'");
}

const DomainSpec& domain_spec(Domain id) {
  for (const auto& d : all_domains())
    if (d.id == id) return d;
  throw std::invalid_argument("unknown domain id");
}

std::vector<ActionSchema> domain_actions(const DomainSpec& spec) {
  std::vector<ActionSchema> out;
  for (const auto& name : spec.actions) out.push_back(library_action(name));
  return out;
}

ClassicalInstance make_reverse_instance(std::span<const Value> values) {
  if (values.size() < 2) throw std::out_of_range("reverse needs L >= 2");
  ClassicalInstance inst;
  inst.domain = "reverse";
  inst.space = VariableSpace(values.size());
  inst.init.assign(values.begin(), values.end());
  std::vector<Value> target(values.rbegin(), values.rend());
  inst.goal = goal_from_values(target);
  inst.pointer_init = {{kZ2, static_cast<Value>(values.size() - 1)}};
  return inst;
}

ClassicalInstance make_select_instance(std::span<const Value> values) {
  if (values.empty()) throw std::out_of_range("select needs L >= 1");
  ClassicalInstance inst;
  inst.domain = "select";
  inst.space = VariableSpace(values.size() + 1);
  inst.init.push_back(values.front());
  inst.init.insert(inst.init.end(), values.begin(), values.end());
  inst.goal = {{0, *std::min_element(values.begin(), values.end())}};
  inst.pointer_init = {{kZ2, 1}, {kZ3, static_cast<Value>(values.size())}};
  return inst;
}

ClassicalInstance make_find_instance(std::span<const Value> values) {
  if (values.empty()) throw std::out_of_range("find needs L >= 1");
  ClassicalInstance inst;
  inst.domain = "find";
  inst.space = VariableSpace(values.size() + 2);
  inst.init = {0, 0};
  inst.init.insert(inst.init.end(), values.begin(), values.end());
  inst.goal = {{0, static_cast<Value>(
                       std::count(values.begin(), values.end(), Value{0}))}};
  inst.pointer_init = {{kZ2, 1}, {kZ3, static_cast<Value>(values.size() + 1)}};
  return inst;
}

ClassicalInstance make_sorting_instance(std::span<const Value> values) {
  if (values.size() < 2) throw std::out_of_range("sorting needs L >= 2");
  ClassicalInstance inst;
  inst.domain = "sorting";
  inst.space = VariableSpace(values.size());
  inst.init.assign(values.begin(), values.end());
  std::vector<Value> target(values.begin(), values.end());
  std::sort(target.begin(), target.end());
  inst.goal = goal_from_values(target);
  inst.pointer_init = {{kZ3, static_cast<Value>(values.size() - 1)}};
  return inst;
}

ClassicalInstance generate_instance(const DomainSpec& spec, std::size_t size,
                                    std::uint64_t seed) {
  if (size < spec.min_size || size > spec.max_size)
    throw std::out_of_range(std::string(spec.name) + " size " +
                            std::to_string(size) + " outside [" +
                            std::to_string(spec.min_size) + ", " +
                            std::to_string(spec.max_size) + "]");
  const std::uint64_t rseed = mix(mix(seed, static_cast<std::uint64_t>(spec.id)), size);
  const auto t = static_cast<Value>(size);
  ClassicalInstance inst;
  inst.domain = std::string(spec.name);
  switch (spec.id) {
    case Domain::TriangularSum:
      inst.space = VariableSpace(2);
      inst.init = {0, t};
      inst.goal = {{0, triangular_number(t)}};
      return inst;
    case Domain::Corridor:
      inst.space = VariableSpace(2);
      inst.init = {0, t};
      inst.goal = {{0, t}};
      return inst;
    case Domain::Reverse:
      return make_reverse_instance(random_values(size, 1, 100, rseed));
    case Domain::Select:
      return make_select_instance(random_values(size, 0, 9, rseed));
    case Domain::Find:
      return make_find_instance(random_values(size, 0, 3, rseed));
    case Domain::Fibonacci:
      inst.space = VariableSpace(3);
      inst.init = {0, 1, t - 1};
      inst.goal = {{1, fibonacci_number(t)}};
      return inst;
    case Domain::Gripper: {
      std::vector<std::optional<Bounds>> bounds(size + 1, Bounds{0, 2});
      bounds[0] = Bounds{0, 1};
      inst.space = VariableSpace(size + 1, std::move(bounds));
      inst.init.assign(size + 1, 0);
      for (std::size_t b = 1; b <= size; ++b) inst.goal.push_back({b, 1});
      inst.pointer_init = {{kZ2, t}};
      return inst;
    }
    case Domain::Sorting:
      return make_sorting_instance(random_values(size, 1, 100, rseed));
  }
  throw std::logic_error("unhandled domain");
}

PlanningProgram reference_program(const DomainSpec& spec) {
  using P = Primitive;
  using C = Condition;
  switch (spec.id) {
    case Domain::TriangularSum:
      return ProgramBuilder(spec, 5)
          .prim(P::Inc, kZ2)
          .act("add", kZ1, kZ2)
          .act("dec", kZ2)
          .jump(1, C::GT)
          .end()
          .build();
    case Domain::Corridor:
      return ProgramBuilder(spec, 5)
          .prim(P::Inc, kZ2)
          .act("inc", kZ1)
          .prim(P::CmpContent, kZ2, kZ1)
          .jump(1, C::GT)
          .end()
          .build();
    case Domain::Reverse:
      return ProgramBuilder(spec, 6)
          .act("swap", kZ1, kZ2)
          .prim(P::Inc, kZ1)
          .prim(P::Dec, kZ2)
          .prim(P::Cmp, kZ2, kZ1)
          .jump(0, C::GE)
          .end()
          .build();
    case Domain::Select:
      return ProgramBuilder(spec, 6)
          .prim(P::CmpContent, kZ1, kZ3)
          .jump(3, C::LE)
          .act("set", kZ1, kZ3)
          .prim(P::Dec, kZ3)
          .jump(0, C::NE)
          .end()
          .build();
    case Domain::Find:
      return ProgramBuilder(spec, 7)
          .prim(P::CmpContent, kZ3, kZ2)
          .jump(3, C::NE)
          .act("inc", kZ1)
          .prim(P::Dec, kZ3)
          .prim(P::Cmp, kZ3, kZ2)
          .jump(0, C::NE)
          .end()
          .build();
    case Domain::Fibonacci:
      return ProgramBuilder(spec, 8)
          .prim(P::Inc, kZ2)
          .prim(P::Inc, kZ3)
          .prim(P::Inc, kZ3)
          .act("add", kZ1, kZ2)
          .act("swap", kZ1, kZ2)
          .act("dec", kZ3)
          .jump(3, C::GT)
          .end()
          .build();
    case Domain::Gripper:
      return ProgramBuilder(spec, 7)
          .act("pick", kZ2, kZ1)
          .act("move", kZ1)
          .act("drop", kZ2, kZ1)
          .act("move", kZ1)
          .prim(P::Dec, kZ2)
          .jump(0, C::NE)
          .end()
          .build();
    case Domain::Sorting:
      return ProgramBuilder(spec, 11)
          .prim(P::Set, kZ2, kZ1)
          .prim(P::Inc, kZ2)
          .prim(P::CmpContent, kZ1, kZ2)
          .jump(5, C::LE)
          .act("swap", kZ1, kZ2)
          .prim(P::Cmp, kZ3, kZ2)
          .jump(1, C::NE)
          .prim(P::Inc, kZ1)
          .prim(P::Cmp, kZ3, kZ1)
          .jump(0, C::NE)
          .end()
          .build();
  }
  throw std::logic_error("unhandled domain");
}

std::vector<std::size_t> training_sizes(const DomainSpec& spec,
                                        std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(spec.min_size + i);
  return out;
}

std::vector<std::size_t> validation_sizes(const DomainSpec& spec,
                                          std::size_t count,
                                          std::size_t training_count) {
  // Reverse and Fibonacci validate on the full range starting at the
  // smallest size (lengths 2.., t = 1..); the rest continue after training.
  std::size_t first = spec.min_size + training_count;
  if (spec.id == Domain::Reverse || spec.id == Domain::Fibonacci)
    first = spec.min_size;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(first + i);
  return out;
}

Suite build_suite(const DomainSpec& spec, std::size_t training_count,
                  std::size_t validation_count, std::uint64_t seed) {
  Suite suite;
  const auto train = training_sizes(spec, training_count);
  const auto valid = validation_sizes(spec, validation_count, training_count);
  for (std::size_t i = 0; i < train.size(); ++i)
    suite.training.push_back(generate_instance(spec, train[i], mix(seed, 2 * i)));
  for (std::size_t i = 0; i < valid.size(); ++i)
    suite.validation.push_back(
        generate_instance(spec, valid[i], mix(seed, 2 * i + 1)));
  return suite;
}

}  // namespace gp
