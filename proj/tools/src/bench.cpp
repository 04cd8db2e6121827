#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gp/cli.hpp"
#include "gp/domains.hpp"
#include "gp/report.hpp"
#include "gp/search.hpp"
#include "gp/text_format.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>
#define GP_HAVE_FORK 1
#endif

namespace gp {

namespace {

namespace fs = std::filesystem;

using E = EvalFunction;

struct CellResult {
  std::string row;      // csv_row text
  std::string program;  // serialized program, empty when none
  std::string status;
};

CellResult run_cell(const BenchCell& cell, const BenchOptions& opts,
                    MemorySource source) {
  const auto& spec = domain_spec(cell.domain);
  const auto suite = build_suite(spec, spec.training_count, 0, opts.seed);
  const auto actions = domain_actions(spec);
  const auto problem =
      GPProblem::from_classical(suite.training, actions, spec.pointers);
  SearchOptions so;
  so.config = cell.config;
  so.budget.time = std::chrono::duration<double>(opts.timeout_s);
  const auto result = bfgp(problem, spec.lines, so);
  CellResult out;
  out.row = csv_row(make_row(spec.name, spec.lines, spec.pointers,
                             eval_list_text(cell.config), result, source));
  out.status = std::string(search_status_name(result.status));
  if (result.program) out.program = serialize_program(*result.program, actions);
  return out;
}

std::string error_row(const BenchCell& cell, const std::string& what) {
  const auto& spec = domain_spec(cell.domain);
  ResultRow row;
  row.domain = cell.domain;
  row.n = spec.lines;
  row.pointers = spec.pointers;
  row.eval = eval_list_text(cell.config);
  row.status = "error: " + what;
  return csv_row(row);
}

std::string program_file_name(const BenchCell& cell) {
  std::string eval = eval_list_text(cell.config);
  for (auto& c : eval)
    if (c == ',') c = '_';
  return cell.domain + "-" + eval + ".txt";
}

#ifdef GP_HAVE_FORK

// Child output: status line, csv row line, then the program text.
std::string encode(const CellResult& r) {
  return r.status + '\n' + r.row + '\n' + r.program;
}

CellResult decode(const std::string& s) {
  const auto a = s.find('\n');
  const auto b = a == std::string::npos ? a : s.find('\n', a + 1);
  if (b == std::string::npos) throw std::runtime_error("truncated cell output");
  return {s.substr(a + 1, b - a - 1), s.substr(b + 1), s.substr(0, a)};
}

void write_all(int fd, const std::string& s) {
  std::size_t done = 0;
  while (done < s.size()) {
    const auto n = ::write(fd, s.data() + done, s.size() - done);
    if (n <= 0) return;
    done += static_cast<std::size_t>(n);
  }
}

struct Running {
  std::size_t cell;
  int fd;
  std::string data;
};

std::vector<CellResult> run_forked(const std::vector<BenchCell>& cells,
                                   const BenchOptions& opts,
                                   std::ostream& log) {
  std::vector<CellResult> results(cells.size());
  std::map<pid_t, Running> running;
  std::size_t next = 0;
  const std::size_t cap = std::max<std::size_t>(opts.threads, 1);

  auto finish = [&](pid_t pid, Running& r) {
    int wstatus = 0;
    ::waitpid(pid, &wstatus, 0);
    const auto& cell = cells[r.cell];
    try {
      if (!WIFEXITED(wstatus) || WEXITSTATUS(wstatus) != 0)
        throw std::runtime_error("cell process failed");
      results[r.cell] = decode(r.data);
    } catch (const std::exception& e) {
      results[r.cell] = {error_row(cell, e.what()), "", "error"};
    }
    log << "[" << r.cell + 1 << "/" << cells.size() << "] " << cell.domain
        << " " << eval_list_text(cell.config) << ": "
        << results[r.cell].status << '\n';
  };

  while (next < cells.size() || !running.empty()) {
    while (next < cells.size() && running.size() < cap) {
      int fds[2];
      if (::pipe(fds) != 0) throw std::runtime_error("pipe failed");
      const pid_t pid = ::fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) {
        ::close(fds[0]);
        try {
          write_all(fds[1], encode(run_cell(cells[next], opts,
                                            MemorySource::PeakRss)));
        } catch (const std::exception& e) {
          write_all(fds[1], "error\n" + error_row(cells[next], e.what()) + "\n");
        }
        ::close(fds[1]);
        std::_Exit(0);
      }
      ::close(fds[1]);
      running.emplace(pid, Running{next, fds[0], {}});
      ++next;
    }

    std::vector<pollfd> polls;
    for (const auto& [pid, r] : running) polls.push_back({r.fd, POLLIN, 0});
    if (::poll(polls.data(), polls.size(), -1) < 0) continue;
    for (const auto& p : polls) {
      if (!(p.revents & (POLLIN | POLLHUP | POLLERR))) continue;
      auto it = std::find_if(running.begin(), running.end(), [&](auto& kv) {
        return kv.second.fd == p.fd;
      });
      char buf[4096];
      const auto n = ::read(p.fd, buf, sizeof buf);
      if (n > 0) {
        it->second.data.append(buf, static_cast<std::size_t>(n));
        continue;
      }
      ::close(p.fd);
      finish(it->first, it->second);
      running.erase(it);
    }
  }
  return results;
}

#endif

}  // namespace

std::vector<BenchCell> bench_suite(const std::string& name) {
  const std::vector<E> combined = {E::H5, E::F1};
  std::vector<BenchCell> cells;
  if (name == "smoke") {
    for (const char* d : {"t-sum", "reverse"}) cells.push_back({d, combined});
  } else if (name == "desk") {
    for (const char* d : {"t-sum", "corridor", "reverse", "select", "find"})
      cells.push_back({d, combined});
  } else if (name == "paper") {
    const std::vector<std::vector<E>> configs = {
        {E::F1}, {E::F2}, {E::F3}, {E::H4}, {E::H5}, {E::F6},
        {E::F1, E::H5}, {E::H5, E::F1}};
    for (const auto& spec : all_domains())
      for (const auto& config : configs)
        cells.push_back({std::string(spec.name), config});
  } else {
    throw std::invalid_argument("unknown bench suite '" + name + "'");
  }
  return cells;
}

std::size_t bench_threads_from_env() {
  const char* v = std::getenv("GP_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const auto n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n == 0) return 1;
  return n;
}

std::string run_bench(const BenchOptions& opts, std::ostream& log) {
  const auto cells = bench_suite(opts.suite);
#ifdef GP_HAVE_FORK
  const auto source = MemorySource::PeakRss;
  const auto results = run_forked(cells, opts, log);
#else
  const auto source = MemorySource::LiveNodeEstimate;
  std::vector<CellResult> results;
  for (const auto& cell : cells) {
    results.push_back(run_cell(cell, opts, source));
    log << cell.domain << " " << eval_list_text(cell.config) << ": "
        << results.back().status << '\n';
  }
#endif

  if (!opts.programs_dir.empty()) {
    fs::create_directories(opts.programs_dir);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!results[i].program.empty())
        write_file(fs::path(opts.programs_dir) / program_file_name(cells[i]),
                   results[i].program);
  }

  std::ostringstream csv;
  csv << csv_comment(source) << '\n' << kCsvHeader << '\n';
  for (const auto& r : results) csv << r.row << '\n';
  return csv.str();
}

}  // namespace gp
