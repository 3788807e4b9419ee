#include "reebflow/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace reebflow {

bool operator==(const FlowOptions& a, const FlowOptions& b) {
  return a.dt0 == b.dt0 && a.grad_tol == b.grad_tol && a.t_max == b.t_max &&
         a.boundary_guard == b.boundary_guard && a.max_halvings == b.max_halvings;
}

bool operator==(const QuadSettings& a, const QuadSettings& b) {
  return a.rule == b.rule && a.points == b.points && a.mc_samples == b.mc_samples &&
         a.mc_seed == b.mc_seed;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.n == b.n && a.quad == b.quad && a.flow == b.flow && a.flow_start == b.flow_start &&
         a.soliton_weights == b.soliton_weights && a.sweep.ratio_min == b.sweep.ratio_min &&
         a.sweep.ratio_max == b.sweep.ratio_max && a.sweep.steps == b.sweep.steps &&
         a.soliton_grid_points == b.soliton_grid_points && a.output_dir == b.output_dir &&
         a.verbosity == b.verbosity;
}

std::vector<double> SweepSpec::ratios() const {
  std::vector<double> r;
  if (steps == 1) return {ratio_min};
  for (int k = 0; k < steps; ++k) {
    r.push_back(k == steps - 1 ? ratio_max
                               : ratio_min + (ratio_max - ratio_min) * k / (steps - 1.0));
  }
  return r;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Field {
  int line;
  std::string key;
  std::string_view value;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line, key, what); }

  double real(double lo, double hi, bool lo_open = false) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
      fail("malformed number '" + std::string(value) + "'");
    }
    if ((lo_open ? v <= lo : v < lo) || v > hi) {
      fail("value " + std::string(value) + " out of range " + (lo_open ? "(" : "[") +
           format_real(lo) + ", " + format_real(hi) + "]");
    }
    return v;
  }

  template <class Int>
  Int integer(Int lo, Int hi) const {
    Int v{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      fail("malformed integer '" + std::string(value) + "'");
    }
    if (v < lo || v > hi) {
      fail("value " + std::string(value) + " out of range [" + std::to_string(lo) + ", " +
           std::to_string(hi) + "]");
    }
    return v;
  }

  std::vector<double> reals() const {
    try {
      return parse_real_list(value);
    } catch (const InvalidInput& e) {
      fail(e.what());
    }
  }
};

void apply(RunConfig& c, const Field& f) {
  const std::string& k = f.key;
  if (k == "n") {
    c.n = f.integer<int>(1, 4);
  } else if (k == "quad.rule") {
    if (f.value != "gauss") f.fail("unknown rule '" + std::string(f.value) + "' (supported: gauss)");
    c.quad.rule = std::string(f.value);
  } else if (k == "quad.points") {
    c.quad.points = f.integer<int>(2, 1024);
  } else if (k == "quad.mc_samples") {
    c.quad.mc_samples = f.integer<std::int64_t>(1000, 1'000'000'000);
  } else if (k == "quad.mc_seed") {
    c.quad.mc_seed = f.integer<std::uint64_t>(0, UINT64_MAX);
  } else if (k == "flow.dt0") {
    c.flow.dt0 = f.real(0.0, 1.0, true);
  } else if (k == "flow.grad_tol") {
    c.flow.grad_tol = f.real(0.0, 1e-2, true);
  } else if (k == "flow.t_max") {
    c.flow.t_max = f.real(0.0, 1e6, true);
  } else if (k == "flow.boundary_guard") {
    c.flow.boundary_guard = f.real(1e-8, 0.1);
  } else if (k == "flow.start") {
    auto v = f.reals();
    for (double a : v) {
      if (!(a > 0.0)) f.fail("entries must be positive (start must lie in the Reeb cone)");
    }
    if (v.size() < 2) f.fail("need at least 2 entries");
    c.flow_start = std::move(v);
  } else if (k == "soliton.weights") {
    auto v = f.reals();
    if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > 0.0)) f.fail("need two positive weights a0,a1");
    c.soliton_weights = std::move(v);
  } else if (k == "soliton.sweep") {
    try {
      c.sweep = parse_sweep(f.value);
    } catch (const InvalidInput& e) {
      f.fail(e.what());
    }
  } else if (k == "soliton.grid_points") {
    c.soliton_grid_points = f.integer<int>(3, 100001);
  } else if (k == "output.dir") {
    if (f.value.empty()) f.fail("empty path");
    c.output_dir = std::string(f.value);
  } else if (k == "verbosity") {
    c.verbosity = f.integer<int>(0, 3);
  } else {
    f.fail("unknown key");
  }
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find(':', pos);
    parts.push_back(trim(text.substr(pos, end == std::string_view::npos ? text.npos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  if (parts.size() != 3) throw InvalidInput("sweep must be r_min:r_max:steps");
  SweepSpec s;
  const auto lo = parse_real_list(parts[0]);
  const auto hi = parse_real_list(parts[1]);
  if (lo.size() != 1 || hi.size() != 1) throw InvalidInput("sweep must be r_min:r_max:steps");
  s.ratio_min = lo[0];
  s.ratio_max = hi[0];
  int steps = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), steps);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) {
    throw InvalidInput("malformed sweep step count '" + std::string(parts[2]) + "'");
  }
  s.steps = steps;
  if (!(s.ratio_min > 0.0) || s.ratio_max < s.ratio_min || s.steps < 1 || s.steps > 10000) {
    throw InvalidInput("sweep needs 0 < r_min <= r_max and 1 <= steps <= 10000");
  }
  return s;
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  int line_no = 0;
  int start_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, std::string(line), "expected 'key = value'");
    }
    Field f{line_no, std::string(trim(line.substr(0, eq))), trim(line.substr(eq + 1))};
    if (f.key == "flow.start") start_line = line_no;
    apply(c, f);
  }
  if (c.flow_start && static_cast<int>(c.flow_start->size()) != c.n + 1) {
    throw ConfigError(start_line, "flow.start",
                      "has " + std::to_string(c.flow_start->size()) + " entries, n = " +
                          std::to_string(c.n) + " needs " + std::to_string(c.n + 1));
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "n = " << c.n << "\n";
  out << "quad.rule = " << c.quad.rule << "\n";
  if (c.quad.points > 0) out << "quad.points = " << c.quad.points << "\n";
  out << "quad.mc_samples = " << c.quad.mc_samples << "\n";
  out << "quad.mc_seed = " << c.quad.mc_seed << "\n";
  out << "flow.dt0 = " << format_real(c.flow.dt0) << "\n";
  out << "flow.grad_tol = " << format_real(c.flow.grad_tol) << "\n";
  out << "flow.t_max = " << format_real(c.flow.t_max) << "\n";
  out << "flow.boundary_guard = " << format_real(c.flow.boundary_guard) << "\n";
  if (c.flow_start) out << "flow.start = " << format_reeb(*c.flow_start) << "\n";
  out << "soliton.weights = " << format_reeb(c.soliton_weights) << "\n";
  out << "soliton.sweep = " << format_real(c.sweep.ratio_min) << ":" << format_real(c.sweep.ratio_max)
      << ":" << c.sweep.steps << "\n";
  out << "soliton.grid_points = " << c.soliton_grid_points << "\n";
  out << "output.dir = " << c.output_dir << "\n";
  out << "verbosity = " << c.verbosity << "\n";
  return out.str();
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_env_overrides(RunConfig& config) {
  if (const char* seed = std::getenv("REEBFLOW_SEED")) {
    Field f{0, "REEBFLOW_SEED", trim(seed)};
    config.quad.mc_seed = f.integer<std::uint64_t>(0, UINT64_MAX);
  }
}

ReebVector default_start(const RunConfig& config) {
  if (config.flow_start) return normalize_to_slice(ReebVector(*config.flow_start));
  switch (config.n) {
    case 1: return ReebVector{0.5, 1.5};
    case 2: return ReebVector{0.2, 0.8, 2.0};
    default: {
      // 1, 2, ..., n+1 rescaled onto the slice
      std::vector<double> a;
      for (int i = 0; i <= config.n; ++i) a.push_back(i + 1.0);
      return normalize_to_slice(ReebVector(std::move(a)));
    }
  }
}

}  // namespace reebflow
