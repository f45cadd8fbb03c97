#pragma once

// Sweep result serialization and the run manifest.
//
// The delimited-text table has a fixed column order, renders every real with
// up to 10 significant digits through std::to_chars (locale independent), and
// ends every line with a single '\n'. Columns that do not apply to a row's
// setup are left empty (null in JSON).

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdcsim/association.hpp"
#include "pdcsim/config.hpp"
#include "pdcsim/sweep.hpp"

namespace pdcsim {

enum class OutputFormat { Csv, Json };

inline constexpr int kRecordDigits = 10;

inline std::vector<std::string> record_columns() {
  std::vector<std::string> cols{"setup",  "r_d_m", "n_m",   "h_l_m", "h_h_m",    "h_s_m",       "satellite",
                                "policy", "seed",  "n_real", "coverage", "ci95", "outage_share"};
  for (PathType p : kAllPathTypes) cols.push_back("share_" + std::string(to_string(p)));
  return cols;
}

namespace detail {

// Typed cell; Empty marks a column that does not apply to the row's setup.
struct Cell {
  enum class Kind { Text, Real, Integer, Boolean, Empty } kind = Kind::Empty;
  std::string text;
  double real = 0.0;
  std::uint64_t integer = 0;
  bool boolean = false;
};

inline Cell text(std::string s) { return {Cell::Kind::Text, std::move(s)}; }
inline Cell real(double v) { return {Cell::Kind::Real, {}, v}; }
inline Cell integer(std::uint64_t v) { return {Cell::Kind::Integer, {}, 0.0, v}; }
inline Cell boolean(bool v) { return {Cell::Kind::Boolean, {}, 0.0, 0, v}; }
inline Cell empty() { return {}; }

inline std::vector<Cell> record_cells(const SweepRecord& r) {
  const ScenarioConfig& c = r.config;
  const bool small = c.setup == Setup::SmallDisaster;
  const CoverageEstimate& e = r.estimate;
  std::vector<Cell> cells{
      text(std::string(to_string(c.setup))),
      real(c.r_d),
      small ? integer(c.n_m) : empty(),
      small ? real(c.tier(Tier::LAP).altitude) : empty(),
      small ? empty() : real(c.tier(Tier::HAP).altitude),
      small ? empty() : real(c.tier(Tier::SAT).altitude),
      small ? empty() : boolean(c.satellite_enabled),
      text(std::string(to_string(c.interference))),
      integer(e.master_seed),
      integer(e.n_realizations),
      real(e.p_hat),
      real(e.ci95_half_width),
      real(e.path_shares.outage),
  };
  for (PathType p : kAllPathTypes) cells.push_back(real(e.path_shares[p]));
  return cells;
}

inline std::string render_cell(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Text: return c.text;
    case Cell::Kind::Real: return format_double(c.real, kRecordDigits);
    case Cell::Kind::Integer: return std::to_string(c.integer);
    case Cell::Kind::Boolean: return c.boolean ? "true" : "false";
    case Cell::Kind::Empty: return {};
  }
  return {};
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Text: return c.text;
    // Same 10-digit rounding as the table, stored as a number.
    case Cell::Kind::Real: {
      const std::string t = format_double(c.real, kRecordDigits);
      double v = 0.0;
      std::from_chars(t.data(), t.data() + t.size(), v);
      return v;
    }
    case Cell::Kind::Integer: return c.integer;
    case Cell::Kind::Boolean: return c.boolean;
    case Cell::Kind::Empty: return nullptr;
  }
  return nullptr;
}

}  // namespace detail

inline std::string render_records(const std::vector<SweepRecord>& records, OutputFormat format) {
  const auto cols = record_columns();
  if (format == OutputFormat::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      const auto cells = detail::record_cells(r);
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < cols.size(); ++i) obj[cols[i]] = detail::json_cell(cells[i]);
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : records) {
    const auto cells = detail::record_cells(r);
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + detail::render_cell(cells[i]);
    out += '\n';
  }
  return out;
}

inline void write_records(const std::vector<SweepRecord>& records, std::ostream& sink, OutputFormat format) {
  const std::string text = render_records(records, format);
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  sink.flush();
  if (!sink) throw Error("failed writing records to output sink");
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string config;  // rendered, all defaults materialized
  std::vector<SweepAxis> axes;
  std::uint64_t master_seed = 0;
  std::string started_at;
  std::string output_digest;  // fnv1a64 of the output bytes

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["master_seed"] = master_seed;
    j["started_at"] = started_at;
    j["output_digest"] = output_digest;
    j["config"] = config;
    auto ax = nlohmann::ordered_json::array();
    for (const auto& a : axes) ax.push_back({{"key", a.key}, {"values", a.values}});
    j["axes"] = std::move(ax);
    return j;
  }
};

}  // namespace pdcsim
