#include "risjam/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace risjam {

namespace {

using Setter = std::function<std::optional<std::string>(RunConfig&, std::string_view)>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> to_int(std::string_view s) {
  s = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

Setter real(std::function<void(RunConfig&, double)> set) {
  return [set = std::move(set)](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    const auto d = to_double(v);
    if (!d) return fmt::format("expected a number, got '{}'", v);
    set(c, *d);
    return std::nullopt;
  };
}

Setter integer(std::function<void(RunConfig&, long long)> set) {
  return [set = std::move(set)](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    const auto i = to_int<long long>(v);
    if (!i) return fmt::format("expected an integer, got '{}'", v);
    set(c, *i);
    return std::nullopt;
  };
}

Setter boolean(std::function<void(RunConfig&, bool)> set) {
  return [set = std::move(set)](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    const auto b = to_bool(v);
    if (!b) return fmt::format("expected true or false, got '{}'", v);
    set(c, *b);
    return std::nullopt;
  };
}

Setter position(std::function<Position3D&(RunConfig&)> field) {
  return [field = std::move(field)](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    const auto parts = split(v, ',');
    if (parts.size() != 3) return fmt::format("expected 'x,y,z', got '{}'", v);
    std::array<double, 3> xyz{};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto d = to_double(parts[i]);
      if (!d) return fmt::format("expected a number for coordinate {}, got '{}'", i, parts[i]);
      xyz[i] = *d;
    }
    field(c) = {xyz[0], xyz[1], xyz[2]};
    return std::nullopt;
  };
}

int clamp_int(long long v) {
  return static_cast<int>(std::clamp<long long>(v, std::numeric_limits<int>::min(), std::numeric_limits<int>::max()));
}

// Keys applied before every other key regardless of their position in the file.
constexpr std::array<std::string_view, 2> kEarlyKeys = {"scenario.pl0_db", "scenario.d0_m"};

std::map<std::string, Setter, std::less<>> make_setters() {
  std::map<std::string, Setter, std::less<>> s;
  s["scenario.m_t"] = integer([](RunConfig& c, long long v) { c.scenario.m_t = clamp_int(v); });
  s["scenario.n_elements"] = integer([](RunConfig& c, long long v) { c.scenario.n_elements = clamp_int(v); });
  s["scenario.k_jammers"] = integer([](RunConfig& c, long long v) { c.scenario.k_jammers = clamp_int(v); });
  s["scenario.st_position"] = position([](RunConfig& c) -> Position3D& { return c.scenario.st; });
  s["scenario.sr_position"] = position([](RunConfig& c) -> Position3D& { return c.scenario.sr; });
  s["scenario.ris_position"] = position([](RunConfig& c) -> Position3D& { return c.scenario.ris; });
  s["scenario.deployment_center"] = position([](RunConfig& c) -> Position3D& { return c.scenario.deployment_center; });
  s["scenario.deployment_radius_m"] = real([](RunConfig& c, double v) { c.scenario.deployment_radius = v; });
  s["scenario.redraw_positions"] = boolean([](RunConfig& c, bool v) { c.scenario.redraw_positions = v; });
  s["scenario.noise_sr_dbm"] = real([](RunConfig& c, double v) { c.scenario.sigma2_sr = dbm_to_watts(v); });
  s["scenario.noise_m_dbm"] = real([](RunConfig& c, double v) { c.scenario.sigma2_m = dbm_to_watts(v); });
  s["scenario.noise_sr_w"] = real([](RunConfig& c, double v) { c.scenario.sigma2_sr = v; });
  s["scenario.noise_m_w"] = real([](RunConfig& c, double v) { c.scenario.sigma2_m = v; });
  s["scenario.gamma_sr_th_db"] = real([](RunConfig& c, double v) { c.scenario.gamma_sr_th = db_to_linear(v); });
  s["scenario.gamma_m_th_db"] = real([](RunConfig& c, double v) { c.scenario.gamma_m_th = db_to_linear(v); });
  s["scenario.gamma_sr_th"] = real([](RunConfig& c, double v) { c.scenario.gamma_sr_th = v; });
  s["scenario.gamma_m_th"] = real([](RunConfig& c, double v) { c.scenario.gamma_m_th = v; });
  s["scenario.p_st_w"] = real([](RunConfig& c, double v) { c.scenario.p_st = v; });
  s["scenario.p_j_max_w"] = real([](RunConfig& c, double v) { c.scenario.p_j_max = v; });
  s["scenario.pl0_db"] = real([](RunConfig& c, double v) {
    for (auto& l : c.scenario.links) l.path_loss.pl0_db = v;
  });
  s["scenario.d0_m"] = real([](RunConfig& c, double v) {
    for (auto& l : c.scenario.links) l.path_loss.d0 = v;
  });

  for (Link link : kAllLinks) {
    const std::string prefix = fmt::format("link.{}.", link_name(link));
    s[prefix + "fading"] = [link](RunConfig& c, std::string_view v) -> std::optional<std::string> {
      v = trim(v);
      if (v == "rayleigh")
        c.scenario.link(link).fading.kind = FadingKind::Rayleigh;
      else if (v == "rician")
        c.scenario.link(link).fading.kind = FadingKind::Rician;
      else
        return fmt::format("expected 'rayleigh' or 'rician', got '{}'", v);
      return std::nullopt;
    };
    s[prefix + "kappa"] = real([link](RunConfig& c, double v) { c.scenario.link(link).fading.rician_factor = v; });
    s[prefix + "pl0_db"] = real([link](RunConfig& c, double v) { c.scenario.link(link).path_loss.pl0_db = v; });
    s[prefix + "d0_m"] = real([link](RunConfig& c, double v) { c.scenario.link(link).path_loss.d0 = v; });
    s[prefix + "exponent"] = real([link](RunConfig& c, double v) { c.scenario.link(link).path_loss.exponent = v; });
  }

  s["solver.r_max"] = integer([](RunConfig& c, long long v) { c.settings.solver.r_max = clamp_int(v); });
  s["solver.t_max"] = integer([](RunConfig& c, long long v) { c.settings.solver.t_max = clamp_int(v); });
  s["solver.n_particles"] = integer([](RunConfig& c, long long v) { c.settings.solver.n_particles = clamp_int(v); });
  s["solver.c1"] = real([](RunConfig& c, double v) { c.settings.solver.c1 = v; });
  s["solver.c2"] = real([](RunConfig& c, double v) { c.settings.solver.c2 = v; });
  s["solver.w_min"] = real([](RunConfig& c, double v) { c.settings.solver.w_min = v; });
  s["solver.w_max"] = real([](RunConfig& c, double v) { c.settings.solver.w_max = v; });
  s["solver.c_p"] = real([](RunConfig& c, double v) { c.settings.solver.c_p = v; });
  s["solver.eps_th"] = real([](RunConfig& c, double v) { c.settings.solver.eps_th = v; });
  s["solver.init_jitter"] = real([](RunConfig& c, double v) { c.settings.solver.init_jitter = v; });

  s["sa.initial_temperature"] = real([](RunConfig& c, double v) { c.settings.sa.initial_temperature = v; });
  s["sa.cooling_ratio"] = real([](RunConfig& c, double v) { c.settings.sa.cooling_ratio = v; });
  s["sa.steps_per_temperature"] =
      integer([](RunConfig& c, long long v) { c.settings.sa.steps_per_temperature = clamp_int(v); });
  s["sa.proposal_width"] = real([](RunConfig& c, double v) { c.settings.sa.proposal_width = v; });
  s["sa.min_temperature"] = real([](RunConfig& c, double v) { c.settings.sa.min_temperature = v; });

  s["sweep.parameter"] = [](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    const auto p = parse_sweep_parameter(trim(v));
    if (!p) return fmt::format("expected one of P_ST, RIS_Y, N_ELEMENTS, GAMMA_SR_TH, got '{}'", v);
    c.sweep.parameter = *p;
    return std::nullopt;
  };
  s["sweep.values"] = [](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    std::vector<double> values;
    for (auto part : split(v, ',')) {
      const auto d = to_double(part);
      if (!d) return fmt::format("expected a comma-separated list of numbers, got '{}'", part);
      values.push_back(*d);
    }
    c.sweep.values = std::move(values);
    return std::nullopt;
  };
  s["sweep.schemes"] = [](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    if (trim(v) == "all") {
      c.sweep.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
      return std::nullopt;
    }
    std::vector<SchemeId> schemes;
    for (auto part : split(v, ',')) {
      const auto id = parse_scheme(part);
      if (!id) return fmt::format("unknown scheme '{}'", part);
      schemes.push_back(*id);
    }
    c.sweep.schemes = std::move(schemes);
    return std::nullopt;
  };
  s["sweep.n_trials"] = integer([](RunConfig& c, long long v) { c.sweep.n_trials = clamp_int(v); });
  s["sweep.base_seed"] = [](RunConfig& c, std::string_view v) -> std::optional<std::string> {
    const auto seed = to_int<std::uint64_t>(v);
    if (!seed) return fmt::format("expected a non-negative integer, got '{}'", v);
    c.sweep.base_seed = *seed;
    return std::nullopt;
  };
  return s;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = make_setters();
  return table;
}

struct Entry {
  int line;
  std::string key;
  std::string value;
};

std::string number(double v) { return fmt::format("{:.17g}", v); }

std::string position_text(const Position3D& p) { return fmt::format("{},{},{}", number(p.x), number(p.y), number(p.z)); }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::vector<std::string> validate(const RunConfig& cfg) {
  auto errs = cfg.scenario.validate();
  for (auto& e : cfg.settings.solver.validate()) errs.push_back(std::move(e));
  for (auto& e : cfg.settings.sa.validate()) errs.push_back(std::move(e));
  for (auto& e : cfg.sweep.validate()) errs.push_back(std::move(e));
  return errs;
}

RunConfig parse_config(std::string_view text) {
  std::multimap<int, std::string> problems;  // by line, so reports follow the file
  std::vector<Entry> entries;
  std::map<std::string, int, std::less<>> seen;

  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of("=:");
    if (sep == std::string_view::npos) {
      problems.emplace(line_no, fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
      continue;
    }
    const auto key = trim(line.substr(0, sep));
    const auto value = trim(line.substr(sep + 1));
    if (key.empty()) {
      problems.emplace(line_no, fmt::format("line {}: missing key", line_no));
      continue;
    }
    if (!setters().contains(key)) {
      problems.emplace(line_no, fmt::format("line {}: unknown key '{}'", line_no, key));
      continue;
    }
    if (const auto it = seen.find(key); it != seen.end()) {
      problems.emplace(line_no, fmt::format("line {}: key '{}' already set on line {}", line_no, key, it->second));
      continue;
    }
    seen.emplace(std::string(key), line_no);
    entries.push_back({line_no, std::string(key), std::string(value)});
  }

  std::stable_partition(entries.begin(), entries.end(), [](const Entry& e) {
    return std::find(kEarlyKeys.begin(), kEarlyKeys.end(), e.key) != kEarlyKeys.end();
  });

  RunConfig cfg;
  for (const auto& e : entries) {
    if (auto err = setters().find(e.key)->second(cfg, e.value))
      problems.emplace(e.line, fmt::format("line {}: key '{}': {}", e.line, e.key, *err));
  }
  if (!problems.empty()) {
    std::vector<std::string> ordered;
    for (auto& [line, msg] : problems) ordered.push_back(std::move(msg));
    throw ConfigError(std::move(ordered));
  }
  if (auto errs = validate(cfg); !errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError({fmt::format("cannot open config file '{}'", path.string())});
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const RunConfig& cfg) {
  const auto& sc = cfg.scenario;
  const auto& so = cfg.settings.solver;
  const auto& sa = cfg.settings.sa;
  const auto& sw = cfg.sweep;
  std::string out;
  auto put = [&out](std::string_view key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };

  put("scenario.m_t", std::to_string(sc.m_t));
  put("scenario.n_elements", std::to_string(sc.n_elements));
  put("scenario.k_jammers", std::to_string(sc.k_jammers));
  put("scenario.st_position", position_text(sc.st));
  put("scenario.sr_position", position_text(sc.sr));
  put("scenario.ris_position", position_text(sc.ris));
  put("scenario.deployment_center", position_text(sc.deployment_center));
  put("scenario.deployment_radius_m", number(sc.deployment_radius));
  put("scenario.redraw_positions", sc.redraw_positions ? "true" : "false");
  put("scenario.noise_sr_w", number(sc.sigma2_sr));
  put("scenario.noise_m_w", number(sc.sigma2_m));
  put("scenario.gamma_sr_th", number(sc.gamma_sr_th));
  put("scenario.gamma_m_th", number(sc.gamma_m_th));
  put("scenario.p_st_w", number(sc.p_st));
  put("scenario.p_j_max_w", number(sc.p_j_max));
  for (Link link : kAllLinks) {
    const auto& l = sc.link(link);
    const auto prefix = fmt::format("link.{}.", link_name(link));
    put(prefix + "fading", l.fading.kind == FadingKind::Rician ? "rician" : "rayleigh");
    put(prefix + "kappa", number(l.fading.rician_factor));
    put(prefix + "pl0_db", number(l.path_loss.pl0_db));
    put(prefix + "d0_m", number(l.path_loss.d0));
    put(prefix + "exponent", number(l.path_loss.exponent));
  }
  put("solver.r_max", std::to_string(so.r_max));
  put("solver.t_max", std::to_string(so.t_max));
  put("solver.n_particles", std::to_string(so.n_particles));
  put("solver.c1", number(so.c1));
  put("solver.c2", number(so.c2));
  put("solver.w_min", number(so.w_min));
  put("solver.w_max", number(so.w_max));
  put("solver.c_p", number(so.c_p));
  put("solver.eps_th", number(so.eps_th));
  put("solver.init_jitter", number(so.init_jitter));
  put("sa.initial_temperature", number(sa.initial_temperature));
  put("sa.cooling_ratio", number(sa.cooling_ratio));
  put("sa.steps_per_temperature", std::to_string(sa.steps_per_temperature));
  put("sa.proposal_width", number(sa.proposal_width));
  put("sa.min_temperature", number(sa.min_temperature));
  put("sweep.parameter", std::string(sweep_parameter_name(sw.parameter)));
  std::vector<std::string> values, schemes;
  for (double v : sw.values) values.push_back(number(v));
  for (SchemeId id : sw.schemes) schemes.emplace_back(scheme_name(id));
  put("sweep.values", fmt::format("{}", fmt::join(values, ",")));
  put("sweep.schemes", fmt::format("{}", fmt::join(schemes, ",")));
  put("sweep.n_trials", std::to_string(sw.n_trials));
  put("sweep.base_seed", std::to_string(sw.base_seed));
  return out;
}

}  // namespace risjam
