#include "gp/report.hpp"

#include <cstdio>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#define GP_HAVE_RUSAGE 1
#endif

namespace gp {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string quoted(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string csv_comment(MemorySource source) {
  return source == MemorySource::PeakRss
             ? "# mem_mb: peak resident set size of the search process"
             : "# mem_mb: live search-node estimate (peak RSS unavailable)";
}

std::string csv_row(const ResultRow& row) {
  return quoted(row.domain) + "," + std::to_string(row.n) + "," +
         std::to_string(row.pointers) + "," + quoted(row.eval) + "," +
         fixed(row.time_s, 3) + "," + fixed(row.mem_mb, 1) + "," +
         std::to_string(row.expanded) + "," + std::to_string(row.evaluated) +
         "," + quoted(row.status);
}

std::optional<double> peak_rss_mb() {
#ifdef GP_HAVE_RUSAGE
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
#ifdef __APPLE__
  return static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
#else
  return static_cast<double>(usage.ru_maxrss) / 1024.0;
#endif
#else
  return std::nullopt;
#endif
}

ResultRow make_row(std::string_view domain, std::size_t n, std::size_t pointers,
                   std::string_view eval, const SearchResult& result,
                   MemorySource source) {
  ResultRow row;
  row.domain = std::string(domain);
  row.n = n;
  row.pointers = pointers;
  row.eval = std::string(eval);
  row.time_s = result.stats.elapsed_s;
  const auto rss = source == MemorySource::PeakRss ? peak_rss_mb() : std::nullopt;
  row.mem_mb = rss ? *rss
                   : static_cast<double>(result.stats.peak_memory_bytes) /
                         (1024.0 * 1024.0);
  row.expanded = result.stats.expanded;
  row.evaluated = result.stats.evaluated;
  row.status = std::string(search_status_name(result.status));
  return row;
}

}  // namespace gp
