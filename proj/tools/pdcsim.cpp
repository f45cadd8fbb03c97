// pdcsim: command-line front end.
//
//   pdcsim run      --config base.cfg --seed 7 --out point.csv
//   pdcsim sweep    --preset setup1 --threads auto --out setup1.csv
//   pdcsim sweep    --config base.cfg --axis r_d_m=1000,5000 --axis n_m=0,100
//   pdcsim oracle
//   pdcsim defaults --setup large
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdcsim/oracle.hpp"
#include "pdcsim/pdcsim.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::string threads;
  std::string setup;
  std::vector<std::string> sets;
  std::vector<std::string> axes;
  std::string preset;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pdcsim::ConfigError("", 0, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw pdcsim::ConfigError(s, 0, "expected key=value");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::size_t resolve_thread_option(const std::string& flag) {
  std::string value = flag;
  if (value.empty()) {
    if (const char* env = std::getenv("PDCSIM_THREADS")) value = env;
  }
  if (value.empty() || value == "auto") return 0;
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(value, &used);
    if (used != value.size() || n == 0) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw pdcsim::ConfigError("threads", 0, "expected a positive integer or 'auto', got '" + value + "'");
  }
  return n;
}

pdcsim::OutputFormat resolve_format(const std::string& f) {
  if (f == "csv") return pdcsim::OutputFormat::Csv;
  if (f == "json") return pdcsim::OutputFormat::Json;
  throw pdcsim::ConfigError("format", 0, "expected csv or json, got '" + f + "'");
}

pdcsim::ScenarioConfig load_config(const Options& o) {
  std::vector<std::pair<std::string, std::string>> overrides;
  if (!o.setup.empty()) overrides.emplace_back("setup", o.setup);
  for (const auto& s : o.sets) overrides.push_back(split_assignment(s));
  if (o.seed_given) overrides.emplace_back("seed", std::to_string(o.seed));
  const std::string text = o.config_path.empty() ? std::string{} : read_file(o.config_path);
  return pdcsim::parse_config(text, overrides);
}

std::vector<pdcsim::SweepAxis> load_axes(const Options& o, pdcsim::ScenarioConfig& base) {
  std::vector<pdcsim::SweepAxis> axes;
  if (o.preset == "setup1") {
    if (base.setup != pdcsim::Setup::SmallDisaster) throw pdcsim::ConfigError("preset", 0, "setup1 needs setup = small");
    axes = pdcsim::small_disaster_axes();
  } else if (o.preset == "setup2") {
    if (base.setup != pdcsim::Setup::LargeDisaster) throw pdcsim::ConfigError("preset", 0, "setup2 needs setup = large");
    axes = pdcsim::large_disaster_axes();
  } else if (!o.preset.empty()) {
    throw pdcsim::ConfigError("preset", 0, "expected setup1 or setup2, got '" + o.preset + "'");
  }
  for (const auto& a : o.axes) {
    auto [key, list] = split_assignment(a);
    pdcsim::SweepAxis axis{key, {}};
    std::stringstream ss(list);
    for (std::string v; std::getline(ss, v, ',');) axis.values.push_back(v);
    axes.push_back(std::move(axis));
  }
  return axes;
}

void emit(const std::vector<pdcsim::SweepRecord>& records, const Options& o, const std::string& command,
          const pdcsim::ScenarioConfig& base, const std::vector<pdcsim::SweepAxis>& axes, const std::string& started) {
  const auto format = resolve_format(o.format);
  const std::string text = pdcsim::render_records(records, format);
  if (o.out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  {
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw pdcsim::Error("cannot open output file '" + o.out_path + "'");
    pdcsim::write_records(records, out, format);
  }
  pdcsim::RunManifest m;
  m.tool_version = pdcsim::kVersion;
  m.command = command;
  m.config = pdcsim::render_config(base);
  m.axes = axes;
  m.master_seed = base.seed;
  m.started_at = started;
  m.output_digest = pdcsim::hex64(pdcsim::fnv1a64(text));
  std::ofstream mf(o.out_path + ".manifest.json", std::ios::binary);
  mf << m.to_json().dump(2) << '\n';
  if (!mf) throw pdcsim::Error("cannot write manifest next to '" + o.out_path + "'");
}

void add_config_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "Configuration document (key = value lines)");
  cmd->add_option("--setup", o.setup, "small | large (overrides the document)");
  cmd->add_option("--set", o.sets, "Override one key, key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "Master seed")->each([&o](const std::string&) { o.seed_given = true; });
  cmd->add_option("--threads", o.threads, "Worker threads, n or auto (fallback: PDCSIM_THREADS)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out_path, "Output file (default: stdout); a .manifest.json is written beside it");
  cmd->add_option("--format", o.format, "csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo coverage simulator for post-disaster multi-tier networks"};
  app.set_version_flag("--version", std::string(pdcsim::kVersion));
  app.require_subcommand(1);
  Options o;
  std::string defaults_setup = "small";

  auto* run = app.add_subcommand("run", "Estimate coverage for one configuration");
  add_config_flags(run, o);
  add_output_flags(run, o);

  auto* sweep = app.add_subcommand("sweep", "Estimate coverage over a Cartesian grid of keys");
  add_config_flags(sweep, o);
  add_output_flags(sweep, o);
  sweep->add_option("--axis", o.axes, "Axis key=v1,v2,... (repeatable; first is outermost)");
  sweep->add_option("--preset", o.preset, "setup1 (r_d x n_m) or setup2 (r_d x h_h x h_s x satellite)");

  auto* oracle = app.add_subcommand("oracle", "Run the closed-form self checks");
  oracle->add_option("--threads", o.threads, "Worker threads, n or auto");

  auto* defaults = app.add_subcommand("defaults", "Print the default configuration");
  defaults->add_option("--setup", defaults_setup, "small | large");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string started = pdcsim::utc_timestamp();
  try {
    if (*defaults) {
      std::cout << pdcsim::render_config(pdcsim::parse_config("", {{"setup", defaults_setup}}));
      return 0;
    }
    const std::size_t threads = resolve_thread_option(o.threads);
    if (*oracle) {
      bool ok = true;
      for (const auto& c : pdcsim::run_oracle_suite(threads)) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": observed " << pdcsim::format_double(c.observed, 6)
                  << ", expected " << pdcsim::format_double(c.expected, 6) << " +/- "
                  << pdcsim::format_double(c.tolerance, 3) << '\n';
        ok = ok && c.pass;
      }
      return ok ? 0 : kExitRuntime;
    }

    pdcsim::ScenarioConfig base = load_config(o);
    if (*run) {
      std::vector<pdcsim::SweepRecord> records{{base, {}, pdcsim::estimate_coverage(base, threads)}};
      emit(records, o, "run", base, {}, started);
      return 0;
    }
    const auto axes = load_axes(o, base);
    const auto records = pdcsim::run_sweep(base, axes, threads);
    emit(records, o, "sweep", base, axes, started);
    return 0;
  } catch (const pdcsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
