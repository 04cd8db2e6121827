#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gp/search.hpp"

namespace gp {

struct ResultRow {
  std::string domain;
  std::size_t n = 0;
  std::size_t pointers = 0;
  std::string eval;  // e.g. "h5,f1"
  double time_s = 0.0;
  double mem_mb = 0.0;
  std::uint64_t expanded = 0;
  std::uint64_t evaluated = 0;
  std::string status;
};

enum class MemorySource : std::uint8_t { PeakRss, LiveNodeEstimate };

inline constexpr std::string_view kCsvHeader =
    "domain,n,pointers,eval,time_s,mem_mb,expanded,evaluated,status";

// "# mem_mb: ..." line naming where the memory column comes from.
std::string csv_comment(MemorySource source);
std::string csv_row(const ResultRow& row);

// Process peak resident set size in MiB, when the platform reports it.
std::optional<double> peak_rss_mb();

ResultRow make_row(std::string_view domain, std::size_t n, std::size_t pointers,
                   std::string_view eval, const SearchResult& result,
                   MemorySource source);

}  // namespace gp
