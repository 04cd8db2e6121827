#include <doctest.h>

#include <random>

#include "gp/domains.hpp"
#include "gp/model.hpp"

using namespace gp;

namespace {

MachineState machine(std::vector<Value> vars, std::vector<Value> pointers) {
  return MachineState{std::move(vars), Flags{}, std::move(pointers)};
}

std::optional<MachineState> prim(Primitive op, std::vector<std::size_t> args,
                                 const MachineState& s) {
  return apply_primitive(op, args, s);
}

std::optional<MachineState> act(const char* name, std::vector<std::size_t> args,
                                const MachineState& s,
                                const VariableSpace& space) {
  return apply_content_action(library_action(name), args, s, space);
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("update_flags") {
  CHECK(update_flags(0) == Flags{true, false});
  CHECK(update_flags(4) == Flags{false, true});
  CHECK(update_flags(-1) == Flags{false, false});
  static_assert(update_flags(7).carry && !update_flags(7).zero);
}

TEST_CASE("inc moves one pointer and sets flags from the new value") {
  const auto s = machine({0, 0, 0, 0, 0, 0}, {3, 1});
  const auto r = prim(Primitive::Inc, {0}, s);
  REQUIRE(r);
  CHECK(r->pointers == std::vector<Value>{4, 1});
  CHECK(r->flags == Flags{false, true});
  CHECK(r->vars == s.vars);
}

TEST_CASE("inc and dec are inapplicable at the pointer domain edges") {
  const auto s = machine({1, 2, 3}, {0, 2});
  CHECK_FALSE(prim(Primitive::Dec, {0}, s));
  CHECK_FALSE(prim(Primitive::Inc, {1}, s));
  const auto r = prim(Primitive::Dec, {1}, s);
  REQUIRE(r);
  CHECK(r->pointers[1] == 1);
  CHECK(r->flags == Flags{false, true});
}

TEST_CASE("dec to zero sets the zero flag") {
  const auto r = prim(Primitive::Dec, {0}, machine({5, 5}, {1}));
  REQUIRE(r);
  CHECK(r->flags == Flags{true, false});
}

TEST_CASE("cmp over pointers leaves pointers alone") {
  const auto s = machine({6, 3, 4, 2, 5, 1}, {1, 5});
  const auto r = prim(Primitive::Cmp, {1, 0}, s);
  REQUIRE(r);
  CHECK(r->pointers == s.pointers);
  CHECK(r->vars == s.vars);
  CHECK(r->flags == Flags{false, true});

  const auto back = prim(Primitive::Cmp, {0, 1}, s);
  CHECK(back->flags == Flags{false, false});
}

TEST_CASE("cmp over contents compares the dereferenced values") {
  const auto s = machine({6, 3, 4, 2, 5, 1}, {0, 5});
  CHECK(prim(Primitive::CmpContent, {0, 1}, s)->flags == Flags{false, true});
  CHECK(prim(Primitive::CmpContent, {1, 0}, s)->flags == Flags{false, false});
  const auto same = machine({7, 7}, {0, 1});
  CHECK(prim(Primitive::CmpContent, {0, 1}, same)->flags == Flags{true, false});
}

TEST_CASE("cmp over contents at the extremes of the value range") {
  const auto s = machine({INT64_MIN, INT64_MAX}, {0, 1});
  CHECK(prim(Primitive::CmpContent, {0, 1}, s)->flags == Flags{false, false});
  CHECK(prim(Primitive::CmpContent, {1, 0}, s)->flags == Flags{false, true});
}

TEST_CASE("set copies a pointer") {
  const auto r = prim(Primitive::Set, {0, 1}, machine({1, 2, 3, 4, 5}, {4, 0}));
  REQUIRE(r);
  CHECK(r->pointers == std::vector<Value>{0, 0});
  CHECK(r->flags == Flags{true, false});
}

TEST_CASE("bad pointer index is a caller error") {
  const auto s = machine({1, 2}, {0, 1});
  CHECK_THROWS_AS(prim(Primitive::Inc, {2}, s), std::out_of_range);
  CHECK_THROWS_AS(prim(Primitive::Cmp, {0}, s), std::out_of_range);
}

TEST_CASE("swap exchanges contents and leaves flags alone") {
  const VariableSpace space(6);
  auto s = machine({6, 3, 4, 2, 5, 1}, {0, 5});
  s.flags = Flags{false, true};
  const auto r = act("swap", {0, 1}, s, space);
  REQUIRE(r);
  CHECK(r->vars == std::vector<Value>{1, 3, 4, 2, 5, 6});
  CHECK(r->flags == Flags{false, true});
}

TEST_CASE("add declares the new first argument as result") {
  const auto r = act("add", {0, 1}, machine({0, 5}, {0, 1}), VariableSpace(2));
  REQUIRE(r);
  CHECK(r->vars == std::vector<Value>{5, 5});
  CHECK(r->flags == Flags{false, true});
}

TEST_CASE("arithmetic content actions") {
  const VariableSpace space(2);
  const auto s = machine({3, 5}, {0, 1});
  CHECK(act("sub", {0, 1}, s, space)->vars == std::vector<Value>{-2, 5});
  CHECK(act("sub", {0, 1}, s, space)->flags == Flags{false, false});
  CHECK(act("set", {0, 1}, s, space)->vars == std::vector<Value>{5, 5});
  CHECK(act("inc", {1}, s, space)->vars == std::vector<Value>{3, 6});
  const auto dec = act("dec", {0}, machine({1, 0}, {0, 1}), space);
  CHECK(dec->vars == std::vector<Value>{0, 0});
  CHECK(dec->flags == Flags{true, false});
}

TEST_CASE("overflow makes an arithmetic action inapplicable") {
  const VariableSpace space(2);
  CHECK_FALSE(act("inc", {0}, machine({INT64_MAX, 0}, {0}), space));
  CHECK_FALSE(act("dec", {0}, machine({INT64_MIN, 0}, {0}), space));
  CHECK_FALSE(act("add", {0, 1}, machine({INT64_MAX, 1}, {0, 1}), space));
  CHECK_FALSE(act("sub", {0, 1}, machine({INT64_MIN, 1}, {0, 1}), space));
}

TEST_CASE("bounds make an action inapplicable") {
  const VariableSpace space(2, {Bounds{0, 1}, std::nullopt});
  CHECK_FALSE(act("inc", {0}, machine({1, 0}, {0}), space));
  CHECK(act("inc", {0}, machine({0, 0}, {0}), space));
  CHECK_FALSE(act("swap", {0, 1}, machine({0, 5}, {0, 1}), space));
}

TEST_CASE("gripper actions") {
  // [robot, b1, b2]: robot in room 1 (B), b1 in room 0 (A)
  std::vector<std::optional<Bounds>> bounds(3, Bounds{0, 2});
  bounds[0] = Bounds{0, 1};
  const VariableSpace space(3, bounds);
  const auto s = machine({1, 0, 0}, {0, 1});
  CHECK_FALSE(act("pick", {1, 0}, s, space));

  const auto at_a = machine({0, 0, 0}, {0, 1});
  const auto held = act("pick", {1, 0}, at_a, space);
  REQUIRE(held);
  CHECK(held->vars == std::vector<Value>{0, 2, 0});
  const auto moved = act("move", {0}, *held, space);
  CHECK(moved->vars == std::vector<Value>{1, 2, 0});
  const auto dropped = act("drop", {1, 0}, *moved, space);
  CHECK(dropped->vars == std::vector<Value>{1, 1, 0});
  CHECK(dropped->flags == Flags{});
  // the robot is not an object; pick on it is inapplicable
  CHECK_FALSE(act("pick", {0, 0}, at_a, space));
  CHECK_FALSE(act("move", {1}, at_a, space));
}

TEST_CASE("holds_goal") {
  const Goal reversed = {{0, 1}, {1, 5}, {2, 2}, {3, 4}, {4, 3}, {5, 6}};
  CHECK(holds_goal(machine({1, 5, 2, 4, 3, 6}, {}), reversed));
  CHECK_FALSE(holds_goal(machine({6, 3, 4, 2, 5, 1}, {}), reversed));
  CHECK(holds_goal(machine({6, 3}, {}), Goal{}));
}

TEST_CASE("extend_instance") {
  const auto base = make_reverse_instance(std::vector<Value>{6, 3, 4, 2, 5, 1});
  const auto three = extend_instance(base, 3);
  CHECK(three.init.pointers == std::vector<Value>{0, 5, 0});
  CHECK(three.init.flags == Flags{});
  CHECK(three.goal == base.goal);

  ClassicalInstance plain;
  plain.space = VariableSpace(2);
  plain.init = {4, 4};
  CHECK(extend_instance(plain, 2).init.pointers == std::vector<Value>{0, 0});

  const std::vector<PointerInit> bad = {{8, 1}};
  CHECK_THROWS_AS(extend_instance(base, 3, bad), ModelError);
  const std::vector<PointerInit> far = {{1, 6}};
  CHECK_THROWS_AS(extend_instance(base, 3, far), ModelError);
}

TEST_CASE("extend_instance rejects inconsistent bases") {
  ClassicalInstance base;
  base.space = VariableSpace(2, {Bounds{0, 1}, std::nullopt});
  base.init = {3, 0};
  CHECK_THROWS_AS(extend_instance(base, 1), ModelError);
  base.init = {0, 0};
  base.goal = {{5, 1}};
  CHECK_THROWS_AS(extend_instance(base, 1), ModelError);
  base.goal = {};
  base.init = {0};
  CHECK_THROWS_AS(extend_instance(base, 1), ModelError);
}

TEST_CASE("variable space invariants") {
  CHECK_THROWS(VariableSpace(0));
  CHECK_THROWS(VariableSpace(1, {Bounds{2, 1}}));
  CHECK(VariableSpace(3).size() == 3);
  CHECK_FALSE(VariableSpace(3).has_bounds());
}

TEST_CASE("random primitive sequences keep pointers in range and vars fixed") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t vars = 1 + rng() % 6, ptrs = 1 + rng() % 3;
    MachineState s = machine(std::vector<Value>(vars), std::vector<Value>(ptrs));
    for (auto& v : s.vars) v = static_cast<Value>(rng() % 21) - 10;
    const auto vars_before = s.vars;
    for (int k = 0; k < 100; ++k) {
      const auto op = kPrimitives[rng() % kPrimitives.size()];
      std::vector<std::size_t> args = {rng() % ptrs};
      if (arity(op) > 1) args.push_back(rng() % ptrs);
      const auto before = s;
      const auto r = apply_primitive(op, args, s);
      CHECK(s == before);  // input untouched
      if (!r) continue;
      s = *r;
      CHECK_FALSE((s.flags.zero && s.flags.carry));
      for (auto p : s.pointers) CHECK((p >= 0 && p < static_cast<Value>(vars)));
    }
    CHECK(s.vars == vars_before);
  }
}

TEST_CASE("apply functions are pure") {
  const auto s = machine({6, 3, 4}, {0, 2});
  const std::vector<std::size_t> args = {0, 1};
  CHECK(apply_primitive(Primitive::Set, args, s) ==
        apply_primitive(Primitive::Set, args, s));
  CHECK(act("swap", {0, 1}, s, VariableSpace(3)) ==
        act("swap", {0, 1}, s, VariableSpace(3)));
}

TEST_CASE("library lookup") {
  CHECK(library_action("swap").symmetric);
  CHECK_FALSE(library_action("swap").declares_result);
  CHECK(library_action("add").declares_result);
  CHECK_THROWS_AS(library_action("teleport"), ModelError);
}

}  // TEST_SUITE
