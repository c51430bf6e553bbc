#include "biotfs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <type_traits>

namespace biotfs {

std::vector<double> SweepSpec::d_values() const {
  std::vector<double> d(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    d[static_cast<std::size_t>(k)] =
        count == 1 ? d_min : d_min + (d_max - d_min) * k / static_cast<double>(count - 1);
  }
  return d;
}

void ExperimentConfig::validate() const {
  try {
    material.validate();
    (void)time.steps();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  // L is chosen per run, so only the run-independent solver fields are checked
  if (!(solver.eps_r > 0.0)) throw ConfigError("solver: eps_r must be positive");
  if (solver.max_iter < 1) throw ConfigError("solver: max_iter must be at least 1");
  if (!(solver.inner_tol > 0.0)) throw ConfigError("solver: inner_tol must be positive");
  if (meshes.empty()) throw ConfigError("mesh: at least one n is required");
  for (const auto n : meshes) {
    if (n < 2) throw ConfigError("mesh: n must be at least 2 (n = 1 has no interior pressure dof)");
  }
  if (sweep.count < 2) throw ConfigError("sweep: count must be at least 2");
  if (!(sweep.d_min > 0.0) || !(sweep.d_max > sweep.d_min)) {
    throw ConfigError("sweep: need 0 < D_min < D_max");
  }
  if (!(spectral.tol > 0.0) || !(spectral.coarse_tol > 0.0)) {
    throw ConfigError("spectral: tolerances must be positive");
  }
  if (spectral.maxit < 1) throw ConfigError("spectral: maxit must be at least 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& text, const std::string& key, std::size_t line) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" +
                          text + "'",
                      line);
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key, std::size_t line) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects true/false", line);
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, std::size_t)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto number = [&t](const std::string& key, auto accessor) {
      t[key] = [key, accessor](ExperimentConfig& c, const std::string& v, std::size_t line) {
        auto& field = accessor(c);
        field = parse_number<std::remove_reference_t<decltype(field)>>(v, key, line);
      };
    };
    number("material.mu", [](ExperimentConfig& c) -> double& { return c.material.mu; });
    number("material.lambda", [](ExperimentConfig& c) -> double& { return c.material.lambda; });
    number("material.alpha", [](ExperimentConfig& c) -> double& { return c.material.alpha; });
    number("material.inv_M", [](ExperimentConfig& c) -> double& { return c.material.inv_M; });
    number("material.kappa", [](ExperimentConfig& c) -> double& { return c.material.kappa; });
    number("time.t0", [](ExperimentConfig& c) -> double& { return c.time.t0; });
    number("time.tau", [](ExperimentConfig& c) -> double& { return c.time.tau; });
    number("time.T", [](ExperimentConfig& c) -> double& { return c.time.T; });
    number("solver.eps_r", [](ExperimentConfig& c) -> double& { return c.solver.eps_r; });
    number("solver.max_iter", [](ExperimentConfig& c) -> int& { return c.solver.max_iter; });
    number("solver.inner_tol", [](ExperimentConfig& c) -> double& { return c.solver.inner_tol; });
    number("sweep.D_min", [](ExperimentConfig& c) -> double& { return c.sweep.d_min; });
    number("sweep.D_max", [](ExperimentConfig& c) -> double& { return c.sweep.d_max; });
    number("sweep.count", [](ExperimentConfig& c) -> int& { return c.sweep.count; });
    number("spectral.tol", [](ExperimentConfig& c) -> double& { return c.spectral.tol; });
    number("spectral.coarse_tol", [](ExperimentConfig& c) -> double& { return c.spectral.coarse_tol; });
    number("spectral.maxit", [](ExperimentConfig& c) -> int& { return c.spectral.maxit; });
    number("spectral.seed", [](ExperimentConfig& c) -> std::uint64_t& { return c.spectral.seed; });

    t["mesh.n"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.meshes.clear();
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) {
        c.meshes.push_back(parse_number<std::size_t>(trim(item), "mesh.n", line));
      }
    };
    t["solver.inner"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      if (v == "direct") {
        c.inner_solver = InnerSolver::Direct;
      } else if (v == "cg") {
        c.inner_solver = InnerSolver::ConjugateGradient;
      } else {
        throw ConfigError("line " + std::to_string(line) + ": solver.inner must be direct or cg", line);
      }
    };
    t["spectral.mode"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      if (v == "fine") {
        c.spectral.mode = SpectralMode::Fine;
      } else if (v == "coarse") {
        c.spectral.mode = SpectralMode::Coarse;
      } else {
        throw ConfigError("line " + std::to_string(line) + ": spectral.mode must be fine or coarse", line);
      }
    };
    t["spectral.l2_bulk_modulus"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.spectral.l2_bulk_modulus = parse_bool(v, "spectral.l2_bulk_modulus", line);
    };
    t["sources.enabled"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.sources = parse_bool(v, "sources.enabled", line);
    };
    return t;
  }();
  return table;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig config;
  std::string section;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigError("line " + std::to_string(line) + ": unterminated section header", line);
      }
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", line);
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": key outside of any [section]", line);
    }
    const std::string key = section + "." + trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", line);
    }
    it->second(config, value, line);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(is);
}

std::string write_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[material]\n"
     << "mu = " << shortest(c.material.mu) << '\n'
     << "lambda = " << shortest(c.material.lambda) << '\n'
     << "alpha = " << shortest(c.material.alpha) << '\n'
     << "inv_M = " << shortest(c.material.inv_M) << '\n'
     << "kappa = " << shortest(c.material.kappa) << '\n';
  os << "\n[time]\n"
     << "t0 = " << shortest(c.time.t0) << '\n'
     << "tau = " << shortest(c.time.tau) << '\n'
     << "T = " << shortest(c.time.T) << '\n';
  os << "\n[mesh]\nn = ";
  for (std::size_t i = 0; i < c.meshes.size(); ++i) os << (i ? ", " : "") << c.meshes[i];
  os << "\n\n[solver]\n"
     << "eps_r = " << shortest(c.solver.eps_r) << '\n'
     << "max_iter = " << c.solver.max_iter << '\n'
     << "inner_tol = " << shortest(c.solver.inner_tol) << '\n'
     << "inner = " << (c.inner_solver == InnerSolver::Direct ? "direct" : "cg") << '\n';
  os << "\n[sweep]\n"
     << "D_min = " << shortest(c.sweep.d_min) << '\n'
     << "D_max = " << shortest(c.sweep.d_max) << '\n'
     << "count = " << c.sweep.count << '\n';
  os << "\n[spectral]\n"
     << "tol = " << shortest(c.spectral.tol) << '\n'
     << "coarse_tol = " << shortest(c.spectral.coarse_tol) << '\n'
     << "maxit = " << c.spectral.maxit << '\n'
     << "seed = " << c.spectral.seed << '\n'
     << "mode = " << (c.spectral.mode == SpectralMode::Fine ? "fine" : "coarse") << '\n'
     << "l2_bulk_modulus = " << (c.spectral.l2_bulk_modulus ? "true" : "false") << '\n';
  os << "\n[sources]\nenabled = " << (c.sources ? "true" : "false") << '\n';
  return os.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : write_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace biotfs
