#pragma once

// Benchmark domains: instance generators, goal computation, suites, and a
// hand-written reference program per domain.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gp/model.hpp"
#include "gp/program.hpp"

namespace gp {

enum class Domain : std::uint8_t {
  TriangularSum,
  Corridor,
  Reverse,
  Select,
  Find,
  Fibonacci,
  Gripper,
  Sorting,
};

struct DomainSpec {
  Domain id;
  std::string_view name;          // CLI token
  std::vector<std::string> actions;  // content actions, in order
  std::string_view layout;        // one-line description of the variables
  std::size_t lines;              // synthesis budget n
  std::size_t pointers;           // synthesis budget |Z|
  std::size_t min_size;
  std::size_t max_size;
  std::size_t training_count;     // default training-set size
  std::size_t validation_count;   // default validation-set size
};

const std::vector<DomainSpec>& all_domains();
// Throws std::invalid_argument for unknown names.
const DomainSpec& domain_spec(std::string_view name);
const DomainSpec& domain_spec(Domain id);

std::vector<ActionSchema> domain_actions(const DomainSpec& spec);

// Deterministic in (domain, size, seed). Throws std::out_of_range when size
// is outside [min_size, max_size].
ClassicalInstance generate_instance(const DomainSpec& spec, std::size_t size,
                                    std::uint64_t seed);

// Fixed-content constructors for the domains whose instances carry a list.
ClassicalInstance make_reverse_instance(std::span<const Value> values);
ClassicalInstance make_select_instance(std::span<const Value> values);
ClassicalInstance make_find_instance(std::span<const Value> values);
ClassicalInstance make_sorting_instance(std::span<const Value> values);

// Hand-written solution. Sorting's reference uses 11 lines, above the
// domain's synthesis budget; the others fit their budget.
PlanningProgram reference_program(const DomainSpec& spec);

std::vector<std::size_t> training_sizes(const DomainSpec& spec,
                                        std::size_t count);
std::vector<std::size_t> validation_sizes(const DomainSpec& spec,
                                          std::size_t count,
                                          std::size_t training_count);

struct Suite {
  std::vector<ClassicalInstance> training;
  std::vector<ClassicalInstance> validation;
};

Suite build_suite(const DomainSpec& spec, std::size_t training_count,
                  std::size_t validation_count, std::uint64_t seed);

// Closed-form goal values used by generators and tests.
Value triangular_number(Value t) noexcept;
Value fibonacci_number(Value t) noexcept;

}  // namespace gp
