#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sycos/core_types.hpp"

namespace sycos {

struct IngestSpec {
  std::string x_path;
  std::string y_path;  // empty: both columns come from x_path
  std::string x_column = "x";
  std::string y_column = "y";
  std::optional<std::string> timestamp_column;
  std::optional<std::int64_t> aggregate;  // bucket width in timestamp units
  bool detie = true;
  std::uint64_t seed = 42;
};

TimeSeriesPair ingest(const IngestSpec& spec);

struct ReportEntry {
  Index start_index = 0;
  Index end_index = 0;  // inclusive
  std::optional<std::int64_t> start_time;
  std::optional<std::int64_t> end_time;
  double mi = 0.0;
  double normalized_mi = 0.0;
  std::string method;
};

struct WindowReport {
  std::vector<ReportEntry> windows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

WindowReport make_report(const ResultSet& rs, const TimeSeriesPair& pair,
                         nlohmann::ordered_json metadata = nlohmann::ordered_json::object());
ResultSet report_windows(const WindowReport& report);

std::string to_json(const WindowReport& report);
WindowReport report_from_json(const std::string& text);
std::string to_csv(const WindowReport& report);

void write_pair_csv(const std::string& path, const TimeSeriesPair& pair);

}  // namespace sycos
