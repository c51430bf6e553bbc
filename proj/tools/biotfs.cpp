// biotfs: spectral estimates, time-marched solves, stabilization sweeps and
// the dense-oracle verification battery for the fixed-stress scheme.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "biotfs/config.hpp"
#include "biotfs/errors.hpp"
#include "biotfs/experiment.hpp"
#include "biotfs/matrix_market.hpp"
#include "biotfs/mesh.hpp"
#include "biotfs/report.hpp"
#include "biotfs/verification.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kDiverged = 3, kVerifyFailed = 4 };

struct Options {
  std::string config_path;
  std::optional<std::size_t> mesh_n;
  std::string L = "optimal";
  std::string out;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::string dump_dir;
  bool zero_sources = false;
};

biotfs::ExperimentConfig resolve_config(const Options& o) {
  biotfs::ExperimentConfig c = o.config_path.empty() ? biotfs::ExperimentConfig{}
                                                     : biotfs::load_config(o.config_path);
  if (o.mesh_n) c.meshes = {*o.mesh_n};
  if (o.mode == "fine") c.spectral.mode = biotfs::SpectralMode::Fine;
  if (o.mode == "coarse") c.spectral.mode = biotfs::SpectralMode::Coarse;
  if (o.seed) c.spectral.seed = *o.seed;
  if (o.zero_sources) c.sources = false;
  c.validate();
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw biotfs::Error("cannot open '" + path + "' for writing");
  os << text;
  if (text.empty() || text.back() != '\n') os << '\n';
}

// JSON goes to --out when given, stdout otherwise.
void emit_json(const Options& o, const std::string& json) {
  if (o.out.empty()) {
    std::cout << json << '\n';
  } else {
    write_text(o.out, json);
  }
}

void dump_matrices(const std::string& dir, const biotfs::ExperimentConfig& c) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const auto n : c.meshes) {
    const biotfs::BiotProblem problem = biotfs::make_problem(n, c.material, c.sources, c.inner_options());
    const std::string tag = "_n" + std::to_string(n);
    const auto& sys = problem.system;
    biotfs::write_matrix_market(fs::path(dir) / ("A" + tag + ".mtx"), sys.A(), true);
    biotfs::write_matrix_market(fs::path(dir) / ("B" + tag + ".mtx"), sys.B(), false);
    biotfs::write_matrix_market(fs::path(dir) / ("Mp" + tag + ".mtx"), sys.Mp(), true);
    biotfs::write_matrix_market(fs::path(dir) / ("Ddiv" + tag + ".mtx"), sys.Ddiv(), true);
    std::ofstream mesh(fs::path(dir) / ("mesh" + tag + ".txt"));
    biotfs::write_mesh(mesh, problem.disc.mesh);
    std::cerr << "dumped operators for n = " << n << " to " << dir << '\n';
  }
}

int cmd_estimate(const Options& o) {
  const auto c = resolve_config(o);
  if (!o.dump_dir.empty()) dump_matrices(o.dump_dir, c);
  const auto report = biotfs::run_estimate(c);
  for (const auto& e : report.entries) {
    const auto& s = e.estimates;
    std::fprintf(stderr,
                 "n=%zu lambda_max=%.6e lambda_min=%.6e K*=%.6e beta=%.6e L_opt=%.6e D_opt=%.6e "
                 "rho=%.4f%s\n",
                 e.n, s.lambda_max, s.lambda_min, s.k_star, s.beta, s.l_opt, s.d_opt, s.rho_opt,
                 s.converged ? "" : " (power iteration hit maxit)");
  }
  emit_json(o, biotfs::to_json(report));
  return kOk;
}

int cmd_solve(const Options& o) {
  const auto c = resolve_config(o);
  if (c.meshes.size() != 1) {
    throw biotfs::ConfigError("solve needs a single mesh: pass --mesh-n or list one n in [mesh]");
  }
  std::optional<double> L;
  if (o.L != "optimal") {
    try {
      std::size_t used = 0;
      L = std::stod(o.L, &used);
      if (used != o.L.size()) throw std::invalid_argument(o.L);
    } catch (const std::exception&) {
      throw biotfs::ConfigError("--L expects a number or 'optimal', got '" + o.L + "'");
    }
    if (!(*L >= 0.0)) throw biotfs::ConfigError("--L must be non-negative");
  }
  if (!o.dump_dir.empty()) dump_matrices(o.dump_dir, c);
  const auto report = biotfs::run_solve(c, c.meshes.front(), L);
  std::fprintf(stderr, "n=%zu L=%.6e D=%.6e average=%.4g%s\n", report.n, report.L, report.D,
               report.average, report.diverged ? " DIVERGED" : "");
  emit_json(o, biotfs::to_json(report));
  return report.diverged ? kDiverged : kOk;
}

int cmd_sweep(const Options& o) {
  const auto c = resolve_config(o);
  if (!o.dump_dir.empty()) dump_matrices(o.dump_dir, c);
  const auto report = biotfs::run_sweep(c, [](const biotfs::SweepRow& r) {
    std::fprintf(stderr, "n=%zu D=%.4e avg=%.4g%s\n", r.n, r.D, r.avg_iterations,
                 r.diverged ? " diverged" : "");
  });
  if (o.out.empty()) {
    biotfs::write_sweep_csv(std::cout, report);
  } else {
    std::ofstream csv(o.out);
    if (!csv) throw biotfs::Error("cannot open '" + o.out + "' for writing");
    biotfs::write_sweep_csv(csv, report);
    const std::string sidecar = std::filesystem::path(o.out).replace_extension(".json").string();
    write_text(sidecar, biotfs::to_json(report));
  }
  // per-row divergence is data here, not a failure of the run
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto c = resolve_config(o);
  const auto report = biotfs::run_verify(c);
  std::printf("%-32s %4s %14s %14s  %s\n", "check", "n", "measured", "bound", "verdict");
  for (const auto& ch : report.checks) {
    std::printf("%-32s %4zu %14.6e %14.6e  %s\n", ch.name.c_str(), ch.n, ch.measured, ch.bound,
                ch.passed ? "PASS" : "FAIL");
  }
  if (!o.out.empty()) write_text(o.out, biotfs::to_json(report));
  std::printf("%s\n", report.passed() ? "verify: PASS" : "verify: FAIL");
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-stress splitting for impermeable Biot media"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(biotfs::version()));

  Options o;
  app.add_option("--config", o.config_path, "Sectioned key-value config file")->check(CLI::ExistingFile);
  app.add_option("--mesh-n", o.mesh_n, "Use a single mesh with n subdivisions per side")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  app.add_option("--L", o.L, "Stabilization parameter (1/Pa) or 'optimal' (solve only)");
  app.add_option("--out", o.out, "Output path (JSON; CSV for sweep, with a .json sidecar)");
  app.add_option("--mode", o.mode, "Power iteration tolerance preset")
      ->check(CLI::IsMember({"fine", "coarse"}));
  app.add_option("--seed", o.seed, "Seed of the power iteration start vector");
  app.add_option("--dump-matrices", o.dump_dir, "Write A, B, Mp, Ddiv (Matrix Market) and the mesh");
  app.add_flag("--zero-sources", o.zero_sources, "Replace the manufactured sources by zero data");

  auto* estimate = app.add_subcommand("estimate", "Spectral estimates and L_opt per mesh");
  auto* solve = app.add_subcommand("solve", "Time-march one mesh with a given or optimal L");
  auto* sweep = app.add_subcommand("sweep", "Average iterations over the D grid");
  auto* verify = app.add_subcommand("verify", "Dense-oracle verification battery (n <= 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(o);
    if (solve->parsed()) return cmd_solve(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const biotfs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const biotfs::NonConvergence& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return kDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
