#pragma once

// CSV metric rows and line-delimited JSON event logs. Both writers are
// byte-stable: rows are sorted before emission and numbers use a fixed format.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "relaypay/cell_sim.hpp"

namespace relaypay {

struct OutputRow {
  std::string experiment;
  std::string scheme;
  std::uint64_t seed = 0;
  double coordinate = 0.0;  ///< slot, sweep value or sub-routine index
  std::string metric;
  double value = 0.0;
};

inline constexpr const char* kCsvHeader = "experiment,scheme,seed,coordinate,metric,value";

/// Orders by (experiment, scheme, seed, coordinate, metric).
void sort_rows(std::vector<OutputRow>& rows);

/// Header plus sorted rows, 9 significant digits, '\n' line ends.
std::string format_csv(std::vector<OutputRow> rows);

/// Throws std::runtime_error when the file cannot be written.
void write_csv(const std::vector<OutputRow>& rows, const std::filesystem::path& path);

/// Events of one (scheme, seed) run, in emission order.
struct EventLog {
  std::string scheme;
  std::uint64_t seed = 0;
  std::vector<SlotEvent> events;
};

/// One JSON object per event. Logs are written in (scheme, seed) order.
std::string format_events(std::vector<const EventLog*> logs);
void write_events(const std::vector<EventLog>& logs, const std::filesystem::path& path);

}  // namespace relaypay
