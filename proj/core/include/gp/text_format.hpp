#pragma once

// Text formats for planning programs and instances.
//
// Program, one instruction per line:
//   0. swap(*z1,*z2)
//   1. inc(z1)
//   4. goto(0,GE)
//   5. end
// Undefined lines print as "-- undefined". Pointer names are 1-based.
//
// Instance, key-value lines ('#' starts a comment):
//   domain: reverse
//   vars: 6
//   init: 6 3 4 2 5 1
//   goal: 0=1 1=5 2=2 3=4 4=3 5=6
//   ptr_init: z2=5
//   bounds: 0=0..1

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gp/model.hpp"
#include "gp/program.hpp"

namespace gp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// n == 0 infers the program length from the listed lines.
PlanningProgram parse_program(std::string_view text, std::size_t n,
                              std::size_t pointer_count,
                              const std::vector<ActionSchema>& actions);
std::string serialize_program(const PlanningProgram& program,
                              const std::vector<ActionSchema>& actions);

ClassicalInstance parse_instance(std::string_view text);
std::string serialize_instance(const ClassicalInstance& instance);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Every *.txt file of a directory, sorted by file name.
std::vector<std::pair<std::filesystem::path, ClassicalInstance>>
load_instances(const std::filesystem::path& dir);

}  // namespace gp
