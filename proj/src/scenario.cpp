#include "scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace hypersim {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view sv) {
  std::size_t b = 0, e = sv.size();
  while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
  return std::string(sv.substr(b, e - b));
}

double parse_real(const std::string& token, int line) {
  const std::string t = trim(token);
  if (t.empty()) fail(line, "empty number");
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;  // from_chars rejects an explicit plus
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) fail(line, "malformed number '" + t + "'");
  return value;
}

std::uint64_t parse_uint(const std::string& token, int line) {
  const std::string t = trim(token);
  if (t.empty()) fail(line, "empty number");
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail(line, "malformed integer '" + t + "'");
  }
  return value;
}

// `re`, `imj`, or `re+imj` (sign of im may be '-').
cplx parse_complex(const std::string& token, int line) {
  std::string t = trim(token);
  if (t.empty()) fail(line, "empty complex number");
  if (t.back() != 'j') return cplx{parse_real(t, line), 0.0};
  t.pop_back();
  // split before the sign of the imaginary part (skip exponents and a
  // leading sign)
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return cplx{0.0, parse_real(t, line)};
  const double re = parse_real(t.substr(0, split), line);
  std::string im = t.substr(split);
  if (im == "+" || im == "-") im += "1";
  return cplx{re, parse_real(im, line)};
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(std::string_view(value).substr(start)));
      break;
    }
    out.push_back(trim(std::string_view(value).substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

DofAmps parse_pair(const std::string& value, const std::string& key, int line) {
  const auto items = split_list(value);
  if (items.size() != 2) fail(line, key + " needs two complex amplitudes");
  DofAmps v{parse_complex(items[0], line), parse_complex(items[1], line)};
  const double norm = std::norm(v.c0) + std::norm(v.c1);
  if (std::abs(norm - 1.0) > 1e-10) {
    fail(line, key + " amplitudes are not normalized (|c0|^2+|c1|^2 = " +
                   std::to_string(norm) + ")");
  }
  return v;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(cplx z) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

}  // namespace

SystemParams ScenarioConfig::params() const {
  SystemParams p;
  p.g = g_over_kappa;
  p.gamma = gamma_over_kappa;
  p.omega_c = delta_c;
  p.omega_d = delta_d;
  p.omega_p = 0.0;
  return p;
}

SweepSpec ScenarioConfig::sweep_spec() const {
  if (!sweep_g) throw ConfigError("scenario has no sweep grid (sweep_g)");
  SweepSpec spec;
  spec.g_grid = *sweep_g;
  spec.gamma_over_kappa = gamma_over_kappa;
  spec.delta_c = delta_c;
  spec.delta_d = delta_d;
  spec.seed = seed;
  validate(spec);
  return spec;
}

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  bool have_variant = false;
  bool have_g = false;

  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (value.empty()) fail(line, "empty value for '" + key + "'");

    try {
      if (key == "variant") {
        cfg.variant = variant_from_name(value);
        have_variant = true;
      } else if (key == "g_over_kappa") {
        cfg.g_over_kappa = parse_real(value, line);
        have_g = true;
      } else if (key == "gamma_over_kappa") {
        cfg.gamma_over_kappa = parse_real(value, line);
      } else if (key == "delta_c_over_kappa") {
        cfg.delta_c = parse_real(value, line);
      } else if (key == "delta_d_over_kappa") {
        cfg.delta_d = parse_real(value, line);
      } else if (key == "mode") {
        if (value == "exhaustive") {
          cfg.mode = RunMode::exhaustive;
        } else if (value == "sampled") {
          cfg.mode = RunMode::sampled;
        } else {
          fail(line, "mode must be 'exhaustive' or 'sampled'");
        }
      } else if (key == "seed") {
        cfg.seed = parse_uint(value, line);
      } else if (key == "pol_a") {
        cfg.input.pol_a = parse_pair(value, key, line);
      } else if (key == "pol_b") {
        cfg.input.pol_b = parse_pair(value, key, line);
      } else if (key == "pol_c") {
        cfg.input.pol_c = parse_pair(value, key, line);
      } else if (key == "spat_a") {
        cfg.input.spat_a = parse_pair(value, key, line);
      } else if (key == "spat_b") {
        cfg.input.spat_b = parse_pair(value, key, line);
      } else if (key == "spat_c") {
        cfg.input.spat_c = parse_pair(value, key, line);
      } else if (key == "spin_init") {
        const auto items = split_list(value);
        if (items.size() != kSpinCount) {
          fail(line, "spin_init needs four entries (+1/-1)");
        }
        std::array<int, kSpinCount> spins{};
        for (int i = 0; i < kSpinCount; ++i) {
          const double v = parse_real(items[i], line);
          if (v != 1.0 && v != -1.0) fail(line, "spin_init entries must be +1 or -1");
          spins[i] = static_cast<int>(v);
        }
        cfg.spin_init = spins;
      } else if (key == "sweep_g") {
        std::vector<double> grid;
        for (const std::string& item : split_list(value)) {
          grid.push_back(parse_real(item, line));
        }
        cfg.sweep_g = std::move(grid);
      } else if (key == "sweep_g_range") {
        const auto items = split_list(value);
        if (items.size() != 3) fail(line, "sweep_g_range needs start, stop, count");
        const double start = parse_real(items[0], line);
        const double stop = parse_real(items[1], line);
        const long count = std::lround(parse_real(items[2], line));
        if (count < 2 || stop <= start) {
          fail(line, "sweep_g_range needs stop > start and count >= 2");
        }
        std::vector<double> grid(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
          grid[static_cast<std::size_t>(i)] =
              start + (stop - start) * static_cast<double>(i) /
                          static_cast<double>(count - 1);
        }
        cfg.sweep_g = std::move(grid);
      } else if (key == "out") {
        cfg.out_path = value;
      } else if (key == "rus_rounds") {
        cfg.rus_rounds = static_cast<int>(parse_uint(value, line));
        if (cfg.rus_rounds < 1) fail(line, "rus_rounds must be >= 1");
      } else if (key == "rus_trials") {
        cfg.rus_trials = static_cast<long>(parse_uint(value, line));
        if (cfg.rus_trials < 1) fail(line, "rus_trials must be >= 1");
      } else {
        fail(line, "unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    }

    // Parameter invariants that are representable per-line.
    if (key == "gamma_over_kappa" && cfg.gamma_over_kappa < 0.0) {
      fail(line, "gamma_over_kappa must be non-negative");
    }
    if (key == "g_over_kappa" && cfg.g_over_kappa < 0.0) {
      fail(line, "g_over_kappa must be non-negative");
    }
  }

  if (!have_variant) throw ConfigError("missing required key 'variant'");
  if (!have_g) throw ConfigError("missing required key 'g_over_kappa'");
  if (cfg.sweep_g) {
    SweepSpec spec;
    spec.g_grid = *cfg.sweep_g;
    validate(spec);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "variant = " << variant_name(cfg.variant) << "\n";
  os << "g_over_kappa = " << format_real(cfg.g_over_kappa) << "\n";
  os << "gamma_over_kappa = " << format_real(cfg.gamma_over_kappa) << "\n";
  os << "delta_c_over_kappa = " << format_real(cfg.delta_c) << "\n";
  os << "delta_d_over_kappa = " << format_real(cfg.delta_d) << "\n";
  os << "mode = " << (cfg.mode == RunMode::exhaustive ? "exhaustive" : "sampled")
     << "\n";
  os << "seed = " << cfg.seed << "\n";
  const std::pair<const char*, const DofAmps*> pairs[] = {
      {"pol_a", &cfg.input.pol_a},   {"pol_b", &cfg.input.pol_b},
      {"pol_c", &cfg.input.pol_c},   {"spat_a", &cfg.input.spat_a},
      {"spat_b", &cfg.input.spat_b}, {"spat_c", &cfg.input.spat_c},
  };
  for (const auto& [key, amps] : pairs) {
    os << key << " = " << format_complex(amps->c0) << ", "
       << format_complex(amps->c1) << "\n";
  }
  if (cfg.spin_init) {
    os << "spin_init = ";
    for (int i = 0; i < kSpinCount; ++i) {
      os << (i ? ", " : "") << ((*cfg.spin_init)[i] > 0 ? "+1" : "-1");
    }
    os << "\n";
  }
  if (cfg.sweep_g) {
    os << "sweep_g = ";
    for (std::size_t i = 0; i < cfg.sweep_g->size(); ++i) {
      os << (i ? ", " : "") << format_real((*cfg.sweep_g)[i]);
    }
    os << "\n";
  }
  if (!cfg.out_path.empty()) os << "out = " << cfg.out_path << "\n";
  os << "rus_rounds = " << cfg.rus_rounds << "\n";
  os << "rus_trials = " << cfg.rus_trials << "\n";
  return os.str();
}

}  // namespace hypersim
