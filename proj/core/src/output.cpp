#include "relaypay/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace relaypay {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_file(const std::string& content, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

void sort_rows(std::vector<OutputRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const OutputRow& a, const OutputRow& b) {
    return std::tie(a.experiment, a.scheme, a.seed, a.coordinate, a.metric) <
           std::tie(b.experiment, b.scheme, b.seed, b.coordinate, b.metric);
  });
}

std::string format_csv(std::vector<OutputRow> rows) {
  sort_rows(rows);
  std::string out = kCsvHeader;
  out += '\n';
  for (const OutputRow& r : rows) {
    out += r.experiment;
    out += ',';
    out += r.scheme;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += number(r.coordinate);
    out += ',';
    out += r.metric;
    out += ',';
    out += number(r.value);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<OutputRow>& rows, const std::filesystem::path& path) {
  write_file(format_csv(rows), path);
}

std::string format_events(std::vector<const EventLog*> logs) {
  std::stable_sort(logs.begin(), logs.end(), [](const EventLog* a, const EventLog* b) {
    return std::tie(a->scheme, a->seed) < std::tie(b->scheme, b->seed);
  });
  std::string out;
  for (const EventLog* log : logs) {
    for (const SlotEvent& e : log->events) {
      nlohmann::ordered_json j;
      j["scheme"] = log->scheme;
      j["seed"] = log->seed;
      j["slot"] = e.slot;
      j["source"] = e.source;
      j["mode"] = std::string(to_string(e.mode));
      j["helper"] = e.helper ? nlohmann::ordered_json(*e.helper) : nlohmann::ordered_json(nullptr);
      j["source_energy"] = e.source_energy;
      j["helper_energy"] = e.helper_energy;
      j["payment"] = e.payment;
      j["outcome"] = std::string(to_string(e.outcome));
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

void write_events(const std::vector<EventLog>& logs, const std::filesystem::path& path) {
  std::vector<const EventLog*> ptrs;
  ptrs.reserve(logs.size());
  for (const EventLog& l : logs) ptrs.push_back(&l);
  write_file(format_events(std::move(ptrs)), path);
}

}  // namespace relaypay
