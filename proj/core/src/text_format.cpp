#include "gp/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace gp {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto p = s.find(sep, start);
    if (p == std::string_view::npos) p = s.size();
    out.push_back(trim(s.substr(start, p - start)));
    start = p + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename Int>
std::optional<Int> to_int(std::string_view s) {
  Int v{};
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end || s.empty()) return std::nullopt;
  return v;
}

struct Arg {
  bool deref;
  std::size_t pointer;
};

Instruction parse_instruction(std::string_view text, std::size_t line_no,
                              std::size_t line, std::size_t n,
                              std::size_t pointer_count,
                              const std::vector<ActionSchema>& actions) {
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(line_no, msg);
  };
  if (text == "end") return Instruction::end();
  if (text == "-- undefined") return Instruction::undefined();

  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw fail("malformed instruction '" + std::string(text) + "'");
  const auto name = trim(text.substr(0, open));
  const auto args = split(text.substr(open + 1, text.size() - open - 2), ',');

  if (name == "goto") {
    if (args.size() != 2) throw fail("goto takes a target and a condition");
    const auto target = to_int<std::size_t>(args[0]);
    if (!target) throw fail("malformed goto target '" + std::string(args[0]) + "'");
    const auto cond = parse_condition(args[1]);
    if (!cond) throw fail("unknown condition '" + std::string(args[1]) + "'");
    if (!legal_goto_target(line, *target, n))
      throw fail("illegal goto target " + std::to_string(*target) + " at line " +
                 std::to_string(line));
    return Instruction::jump(*target, *cond);
  }

  std::vector<Arg> parsed;
  for (auto a : args) {
    Arg arg{false, 0};
    if (!a.empty() && a.front() == '*') {
      arg.deref = true;
      a.remove_prefix(1);
    }
    if (a.size() < 2 || a.front() != 'z')
      throw fail("malformed pointer argument '" + std::string(a) + "'");
    const auto k = to_int<std::size_t>(a.substr(1));
    if (!k || *k == 0) throw fail("malformed pointer name '" + std::string(a) + "'");
    if (*k > pointer_count)
      throw fail("pointer z" + std::to_string(*k) + " out of range (" +
                 std::to_string(pointer_count) + " pointers)");
    arg.pointer = *k - 1;
    parsed.push_back(arg);
  }
  const bool all_plain = std::none_of(parsed.begin(), parsed.end(),
                                      [](const Arg& a) { return a.deref; });
  const bool all_deref = std::all_of(parsed.begin(), parsed.end(),
                                     [](const Arg& a) { return a.deref; });

  auto expect_arity = [&](std::size_t k) {
    if (parsed.size() != k)
      throw fail(std::string(name) + " takes " + std::to_string(k) +
                 " argument(s)");
  };

  // Primitives use plain pointer names; cmp over contents uses starred ones.
  if (all_plain && (name == "inc" || name == "dec")) {
    expect_arity(1);
    return Instruction::primitive(name == "inc" ? Primitive::Inc : Primitive::Dec,
                                  parsed[0].pointer);
  }
  if (name == "cmp") {
    expect_arity(2);
    if (!all_plain && !all_deref)
      throw fail("cmp arguments must be all pointers or all contents");
    return Instruction::primitive(all_plain ? Primitive::Cmp : Primitive::CmpContent,
                                  parsed[0].pointer, parsed[1].pointer);
  }
  if (all_plain && name == "set") {
    expect_arity(2);
    return Instruction::primitive(Primitive::Set, parsed[0].pointer,
                                  parsed[1].pointer);
  }

  const auto it = std::find_if(actions.begin(), actions.end(),
                               [&](const ActionSchema& s) { return s.name == name; });
  if (it == actions.end()) throw fail("unknown action '" + std::string(name) + "'");
  if (!all_plain && !all_deref)
    throw fail("mixed pointer and content arguments in '" + std::string(text) + "'");
  expect_arity(it->arity());
  return Instruction::content(static_cast<std::size_t>(it - actions.begin()),
                              parsed[0].pointer,
                              parsed.size() > 1 ? parsed[1].pointer : 0);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

PlanningProgram parse_program(std::string_view text, std::size_t n,
                              std::size_t pointer_count,
                              const std::vector<ActionSchema>& actions) {
  struct Entry {
    std::size_t line_no;
    std::string_view body;
  };
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto dot = line.find('.');
    const auto idx = dot == std::string_view::npos
                         ? std::nullopt
                         : to_int<std::size_t>(line.substr(0, dot));
    if (!idx) throw ParseError(line_no, "expected '<index>. <instruction>'");
    if (*idx != entries.size())
      throw ParseError(line_no, "line index " + std::to_string(*idx) +
                                    " out of sequence (expected " +
                                    std::to_string(entries.size()) + ")");
    entries.push_back({line_no, trim(line.substr(dot + 1))});
  }
  if (entries.empty()) throw ParseError(line_no, "empty program");
  if (n == 0) n = entries.size();
  if (entries.size() > n)
    throw ParseError(entries[n].line_no,
                     "program has more than " + std::to_string(n) + " lines");

  PlanningProgram program(n);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto instr = parse_instruction(entries[i].body, entries[i].line_no, i,
                                         n, pointer_count, actions);
    if (i == n - 1 && instr.kind() != Instruction::Kind::End)
      throw ParseError(entries[i].line_no, "the last line must be end");
    program.set(i, instr);
  }
  return program;
}

std::string serialize_program(const PlanningProgram& program,
                              const std::vector<ActionSchema>& actions) {
  std::string out;
  for (std::size_t i = 0; i < program.size(); ++i)
    out += std::to_string(i) + ". " + instruction_text(program[i], actions) + "\n";
  return out;
}

ClassicalInstance parse_instance(std::string_view text) {
  std::optional<std::size_t> vars;
  std::optional<std::string> domain;
  std::vector<Value> init;
  bool have_init = false;
  Goal goal;
  std::vector<PointerInit> pointer_init;
  std::vector<std::pair<std::size_t, Bounds>> bounds;
  std::size_t line_no = 0;

  auto pair_of = [&](std::string_view token) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, "expected <key>=<value>, got '" +
                                    std::string(token) + "'");
    return std::pair{token.substr(0, eq), token.substr(eq + 1)};
  };
  auto value_of = [&](std::string_view token) {
    const auto v = to_int<Value>(token);
    if (!v) throw ParseError(line_no, "malformed integer '" + std::string(token) + "'");
    return *v;
  };
  auto index_of = [&](std::string_view token) {
    const auto v = to_int<std::size_t>(token);
    if (!v) throw ParseError(line_no, "malformed index '" + std::string(token) + "'");
    return *v;
  };

  for (auto raw : split_lines(text)) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_no, "expected '<key>: <value>'");
    const auto key = trim(line.substr(0, colon));
    const auto tokens = split_ws(trim(line.substr(colon + 1)));
    if (key == "domain") {
      if (tokens.size() != 1) throw ParseError(line_no, "domain takes one name");
      domain = std::string(tokens[0]);
    } else if (key == "vars") {
      if (tokens.size() != 1) throw ParseError(line_no, "vars takes one count");
      vars = index_of(tokens[0]);
      if (*vars == 0) throw ParseError(line_no, "vars must be positive");
    } else if (key == "init") {
      have_init = true;
      for (auto t : tokens) init.push_back(value_of(t));
    } else if (key == "goal") {
      for (auto t : tokens) {
        auto [k, v] = pair_of(t);
        goal.push_back({index_of(k), value_of(v)});
      }
    } else if (key == "ptr_init") {
      for (auto t : tokens) {
        auto [k, v] = pair_of(t);
        if (k.size() < 2 || k.front() != 'z')
          throw ParseError(line_no, "pointer names look like z1, z2, ...");
        const auto p = index_of(k.substr(1));
        if (p == 0) throw ParseError(line_no, "pointer names are 1-based");
        pointer_init.push_back({p - 1, value_of(v)});
      }
    } else if (key == "bounds") {
      for (auto t : tokens) {
        auto [k, v] = pair_of(t);
        const auto dots = v.find("..");
        if (dots == std::string_view::npos)
          throw ParseError(line_no, "bounds look like <idx>=<lo>..<hi>");
        bounds.push_back({index_of(k), Bounds{value_of(v.substr(0, dots)),
                                              value_of(v.substr(dots + 2))}});
      }
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }

  if (!domain) throw ParseError(line_no, "missing 'domain:'");
  if (!vars) throw ParseError(line_no, "missing 'vars:'");
  if (!have_init) throw ParseError(line_no, "missing 'init:'");
  if (init.size() != *vars)
    throw ParseError(line_no, "init lists " + std::to_string(init.size()) +
                                  " values for " + std::to_string(*vars) +
                                  " variables");
  for (const auto& g : goal)
    if (g.var >= *vars)
      throw ParseError(line_no, "goal index " + std::to_string(g.var) +
                                    " out of range");
  for (const auto& p : pointer_init)
    if (p.value < 0 || p.value >= static_cast<Value>(*vars))
      throw ParseError(line_no, "ptr_init value outside [0, vars)");

  std::vector<std::optional<Bounds>> b(*vars);
  for (const auto& [idx, bound] : bounds) {
    if (idx >= *vars)
      throw ParseError(line_no, "bounds index " + std::to_string(idx) +
                                    " out of range");
    b[idx] = bound;
  }

  ClassicalInstance inst;
  inst.domain = *domain;
  try {
    inst.space = VariableSpace(*vars, std::move(b));
  } catch (const ModelError& e) {
    throw ParseError(line_no, e.what());
  }
  inst.init = std::move(init);
  std::sort(goal.begin(), goal.end(),
            [](const GoalAtom& l, const GoalAtom& r) { return l.var < r.var; });
  inst.goal = std::move(goal);
  inst.pointer_init = std::move(pointer_init);
  return inst;
}

std::string serialize_instance(const ClassicalInstance& instance) {
  std::ostringstream out;
  out << "domain: " << instance.domain << "\n";
  out << "vars: " << instance.space.size() << "\n";
  out << "init:";
  for (auto v : instance.init) out << ' ' << v;
  out << "\ngoal:";
  for (const auto& g : instance.goal) out << ' ' << g.var << '=' << g.value;
  out << "\n";
  if (!instance.pointer_init.empty()) {
    out << "ptr_init:";
    for (const auto& p : instance.pointer_init)
      out << " z" << p.pointer + 1 << '=' << p.value;
    out << "\n";
  }
  if (instance.space.has_bounds()) {
    out << "bounds:";
    for (std::size_t i = 0; i < instance.space.size(); ++i)
      if (const auto& b = instance.space.bounds(i))
        out << ' ' << i << '=' << b->lower << ".." << b->upper;
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::vector<std::pair<std::filesystem::path, ClassicalInstance>>
load_instances(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::pair<fs::path, ClassicalInstance>> out;
  for (const auto& f : files) {
    try {
      out.emplace_back(f, parse_instance(read_file(f)));
    } catch (const ParseError& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  if (out.empty()) throw std::runtime_error("no *.txt instances in " + dir.string());
  return out;
}

}  // namespace gp
