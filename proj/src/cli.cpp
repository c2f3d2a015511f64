#include "risjam/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "risjam/config.hpp"
#include "risjam/report.hpp"

namespace risjam {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string schemes;
};

std::shared_ptr<spdlog::logger> logger() {
  static const auto log = [] {
    auto l = spdlog::stderr_logger_mt("risjw");
    const char* env = std::getenv("RISJW_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return log;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? parse_config("") : load_config(opts.config_path);
  if (opts.seed) cfg.sweep.base_seed = *opts.seed;
  if (opts.trials) cfg.sweep.n_trials = *opts.trials;
  if (!opts.schemes.empty()) {
    // reuse the config grammar so CLI and file accept the same scheme lists
    cfg.sweep.schemes = parse_config("sweep.schemes = " + opts.schemes).sweep.schemes;
  }
  if (auto problems = validate(cfg); !problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

void add_common(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--config", opts.config_path, "Config file (flat key = value)");
  cmd.add_option("--seed", opts.seed, "Override sweep.base_seed");
  cmd.add_option("--trials", opts.trials, "Override sweep.n_trials");
  cmd.add_option("--schemes", opts.schemes, "Comma-separated scheme list or 'all'");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  f << content;
}

void print_summary(std::ostream& out, const SweepSpec& spec, const SweepTable& table) {
  out << fmt::format("{:>12} {:<13} {:>6} {:>6} {:>12} {:>12} {:>7}\n", sweep_parameter_name(spec.parameter), "scheme",
                     "SMP", "SJP", "mean P_J [W]", "SNR_M [dB]", "failed");
  for (const auto& row : table) {
    const auto& m = row.metrics;
    out << fmt::format("{:>12.6g} {:<13} {:>6.3f} {:>6.3f} {:>12.5g} {:>12.3f} {:>7}\n", row.value,
                       scheme_name(row.scheme), m.smp, m.sjp, m.mean_p_j, m.mean_gamma_m_db, m.n_failed);
  }
}

int do_run(const CommonOptions& opts, const std::string& out_dir, int parallel, std::vector<std::string> command,
           std::ostream& out) {
  const auto cfg = resolve_config(opts);
  auto log = logger();
  log->info("sweep {} over {} values, {} schemes, {} trials, seed {}", sweep_parameter_name(cfg.sweep.parameter),
            cfg.sweep.values.size(), cfg.sweep.schemes.size(), cfg.sweep.n_trials, cfg.sweep.base_seed);

  const auto start = std::chrono::steady_clock::now();
  const auto table = run_sweep(cfg.sweep, cfg.scenario, cfg.settings, parallel);
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log->info("sweep finished in {:.2f} s", secs);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const auto csv_path = dir / "results.csv";
  const auto json_path = dir / "results.json";
  const auto manifest_path = dir / "manifest.json";

  RunManifest manifest;
  manifest.version = std::string(library_version());
  manifest.timestamp = utc_timestamp();
  manifest.base_seed = cfg.sweep.base_seed;
  manifest.config_snapshot = to_config_text(cfg);
  manifest.outputs = {csv_path.string(), json_path.string(), manifest_path.string()};
  manifest.command = std::move(command);

  write_file(csv_path, results_csv(table));
  write_file(json_path, results_json(cfg.sweep, table, manifest).dump(2) + "\n");
  write_file(manifest_path, manifest_json(manifest).dump(2) + "\n");

  print_summary(out, cfg.sweep, table);
  out << fmt::format("wrote {}, {}, {}\n", csv_path.string(), json_path.string(), manifest_path.string());
  return kExitOk;
}

int do_validate(const CommonOptions& opts, std::ostream& out) {
  const auto cfg = resolve_config(opts);
  out << fmt::format("config OK: {} sweep over {} values x {} schemes x {} trials\n",
                     sweep_parameter_name(cfg.sweep.parameter), cfg.sweep.values.size(), cfg.sweep.schemes.size(),
                     cfg.sweep.n_trials);
  return kExitOk;
}

int do_sweep_list(const CommonOptions& opts, std::ostream& out) {
  const auto cfg = resolve_config(opts);
  out << fmt::format("parameter {} | trials per cell {} | base seed {}\n", sweep_parameter_name(cfg.sweep.parameter),
                     cfg.sweep.n_trials, cfg.sweep.base_seed);
  for (double v : cfg.sweep.values)
    for (SchemeId id : cfg.sweep.schemes) out << fmt::format("{:.10g},{}\n", v, scheme_name(id));
  out << fmt::format("{} cells, {} trials total\n", cfg.sweep.values.size() * cfg.sweep.schemes.size(),
                     cfg.sweep.values.size() * cfg.sweep.schemes.size() * static_cast<std::size_t>(cfg.sweep.n_trials));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo simulator for RIS-assisted monitoring and jamming", "risjw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));

  CommonOptions run_opts, validate_opts, list_opts;
  std::string out_dir = "results";
  int parallel = 0;

  auto* run = app.add_subcommand("run", "Run the configured sweep and write results.csv, results.json, manifest.json");
  add_common(*run, run_opts);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--parallel", parallel, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

  auto* val = app.add_subcommand("validate", "Check a config without running anything");
  add_common(*val, validate_opts);

  auto* list = app.add_subcommand("sweep-list", "Print the (value, scheme) cells a run would execute");
  add_common(*list, list_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      std::vector<std::string> command(argv, argv + argc);
      return do_run(run_opts, out_dir, parallel, std::move(command), out);
    }
    if (*val) return do_validate(validate_opts, out);
    if (*list) return do_sweep_list(list_opts, out);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace risjam
