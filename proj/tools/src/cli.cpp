#include "gp/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gp/domains.hpp"
#include "gp/interpreter.hpp"
#include "gp/report.hpp"
#include "gp/search.hpp"
#include "gp/text_format.hpp"

namespace gp {

namespace {

namespace fs = std::filesystem;

struct SynthArgs {
  std::string domain;
  std::string instances;
  std::size_t lines = 0;
  std::size_t pointers = 0;
  std::string eval = "h5,f1";
  double timeout_s = 3600.0;
  std::uint64_t max_steps = SearchOptions{}.run.max_steps;
  std::string out;
};

struct ValidateArgs {
  std::string program;
  std::string instances;
  bool no_detection = false;
  std::uint64_t max_steps = RunOptions{}.max_steps;
  std::size_t pointers = 0;
};

struct GenArgs {
  std::string domain;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string split = "training";
};

struct BenchArgs {
  std::string suite = "smoke";
  std::string out;
  double timeout_s = 3600.0;
  std::uint64_t seed = 1;
  std::string programs;
};

std::vector<ClassicalInstance> instances_of(
    const fs::path& dir, std::string& domain) {
  auto loaded = load_instances(dir);
  if (loaded.empty())
    throw std::runtime_error("no instance files (*.txt) in " + dir.string());
  std::vector<ClassicalInstance> out;
  for (auto& [path, inst] : loaded) {
    if (domain.empty()) domain = inst.domain;
    if (inst.domain != domain)
      throw std::runtime_error(path.string() + ": domain '" + inst.domain +
                               "', expected '" + domain + "'");
    out.push_back(std::move(inst));
  }
  return out;
}

int synth(const SynthArgs& a, std::ostream& out) {
  const auto& spec = domain_spec(a.domain);
  std::string domain(spec.name);
  const auto instances = instances_of(a.instances, domain);
  const std::size_t lines = a.lines ? a.lines : spec.lines;
  const std::size_t pointers = a.pointers ? a.pointers : spec.pointers;

  SearchOptions opts;
  opts.config = parse_eval_list(a.eval);
  opts.budget.time = std::chrono::duration<double>(a.timeout_s);
  opts.run.max_steps = a.max_steps;
  const auto actions = domain_actions(spec);
  const auto problem = GPProblem::from_classical(instances, actions, pointers);
  const auto result = bfgp(problem, lines, opts);

  if (result.program) write_file(a.out, serialize_program(*result.program, actions));
  const auto row = make_row(spec.name, lines, pointers,
                            eval_list_text(opts.config), result,
                            MemorySource::PeakRss);
  out << csv_comment(MemorySource::PeakRss) << '\n'
      << kCsvHeader << '\n'
      << csv_row(row) << '\n';
  switch (result.status) {
    case SearchStatus::Solution: return kExitOk;
    case SearchStatus::NoSolution: return kExitFailure;
    case SearchStatus::BudgetExhausted: return kExitBudget;
  }
  return kExitError;
}

int validate(const ValidateArgs& a, std::ostream& out) {
  const auto loaded = load_instances(a.instances);
  if (loaded.empty())
    throw std::runtime_error("no instance files (*.txt) in " + a.instances);
  const auto& spec = domain_spec(loaded.front().second.domain);
  const auto actions = domain_actions(spec);
  const auto program =
      parse_program(read_file(a.program), 0, kMaxPointers, actions);

  std::size_t pointers = std::max<std::size_t>(a.pointers, 1);
  pointers = std::max(pointers, pointers_referenced(program));
  for (const auto& [path, inst] : loaded) {
    if (inst.domain != spec.name)
      throw std::runtime_error(path.string() + ": domain '" + inst.domain +
                               "', expected '" + std::string(spec.name) + "'");
    for (const auto& p : inst.pointer_init)
      pointers = std::max(pointers, p.pointer + 1);
  }

  RunOptions opts;
  opts.revisit = a.no_detection ? RevisitDetection::Off
                                : RevisitDetection::EveryState;
  opts.max_steps = a.max_steps;
  opts.record_plan = false;

  std::array<std::size_t, 6> totals{};
  std::uint64_t peak_states = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [path, inst] : loaded) {
    const auto rec =
        run(program, actions, extend_instance(inst, pointers), opts);
    ++totals[static_cast<std::size_t>(rec.halt)];
    peak_states = std::max(peak_states, rec.states_stored);
    out << path.filename().string() << ": " << halt_name(rec.halt)
        << " line=" << rec.halt_line << " steps=" << rec.steps << '\n';
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();

  out << "total=" << loaded.size();
  for (std::size_t h = 0; h < totals.size(); ++h)
    out << ' ' << halt_name(static_cast<Halt>(h)) << '=' << totals[h];
  char buf[96];
  std::snprintf(buf, sizeof buf, "time_s=%.3f peak_states=%llu", secs,
                static_cast<unsigned long long>(peak_states));
  out << '\n' << buf << '\n';
  return totals[static_cast<std::size_t>(Halt::EndGoal)] == loaded.size()
             ? kExitOk
             : kExitFailure;
}

int gen(const GenArgs& a, std::ostream& out) {
  const auto& spec = domain_spec(a.domain);
  const bool training = a.split == "training";
  const auto suite =
      training ? build_suite(spec, a.count, 0, a.seed)
               : build_suite(spec, spec.training_count, a.count, a.seed);
  const auto& list = training ? suite.training : suite.validation;
  fs::create_directories(a.out);
  char name[160];
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::snprintf(name, sizeof name, "%s-%s-%06zu.txt",
                  std::string(spec.name).c_str(), a.split.c_str(), i);
    write_file(fs::path(a.out) / name, serialize_instance(list[i]));
  }
  out << "wrote " << list.size() << " instances to " << a.out << '\n';
  return kExitOk;
}

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchOptions opts;
  opts.suite = a.suite;
  opts.timeout_s = a.timeout_s;
  opts.seed = a.seed;
  opts.programs_dir = a.programs;
  opts.threads = bench_threads_from_env();
  bench_suite(opts.suite);  // rejects unknown names before any work
  const auto csv = run_bench(opts, err);
  write_file(a.out, csv);
  out << csv;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Generalized planning as best-first search over planning programs",
               "bfgp"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a planning program");
  synth_cmd->add_option("--domain", sa.domain, "Domain name")->required();
  synth_cmd->add_option("--instances", sa.instances, "Training instance directory")
      ->required();
  synth_cmd->add_option("--lines", sa.lines, "Program lines n (default: domain)");
  synth_cmd->add_option("--pointers", sa.pointers, "Pointers |Z| (default: domain)");
  synth_cmd->add_option("--eval", sa.eval, "Evaluation functions, e.g. h5,f1")
      ->capture_default_str();
  synth_cmd->add_option("--timeout", sa.timeout_s, "Time budget in seconds")
      ->capture_default_str();
  synth_cmd->add_option("--max-steps", sa.max_steps,
                        "Step cap per candidate execution")
      ->capture_default_str();
  synth_cmd->add_option("--out", sa.out, "Program output file")->required();

  ValidateArgs va;
  auto* val_cmd = app.add_subcommand("validate", "Run a program on instances");
  val_cmd->add_option("--program", va.program, "Program file")->required();
  val_cmd->add_option("--instances", va.instances, "Instance directory")->required();
  val_cmd->add_flag("--no-infinite-detection", va.no_detection,
                    "Do not store states to detect revisits");
  val_cmd->add_option("--max-steps", va.max_steps, "Step cap per instance")
      ->capture_default_str();
  val_cmd->add_option("--pointers", va.pointers,
                      "Pointer count (default: inferred)");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instance files");
  gen_cmd->add_option("--domain", ga.domain, "Domain name")->required();
  gen_cmd->add_option("--count", ga.count, "Number of instances")->required();
  gen_cmd->add_option("--seed", ga.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out", ga.out, "Output directory")->required();
  gen_cmd->add_option("--split", ga.split, "training or validation sizes")
      ->check(CLI::IsMember({"training", "validation"}))
      ->capture_default_str();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
  bench_cmd->add_option("--suite", ba.suite, "paper, desk or smoke")
      ->check(CLI::IsMember({"paper", "desk", "smoke"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", ba.out, "CSV output file")->required();
  bench_cmd->add_option("--timeout", ba.timeout_s, "Per-cell time budget (s)")
      ->capture_default_str();
  bench_cmd->add_option("--seed", ba.seed, "Suite seed")->capture_default_str();
  bench_cmd->add_option("--programs", ba.programs,
                        "Directory for synthesized programs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*synth_cmd) return synth(sa, out);
    if (*val_cmd) return validate(va, out);
    if (*gen_cmd) return gen(ga, out);
    if (*bench_cmd) return bench(ba, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace gp
