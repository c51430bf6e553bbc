#include "biotfs/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "biotfs/errors.hpp"

namespace biotfs {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double read_number(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

ordered_json to_json_value(const SpectralEstimates& e) {
  ordered_json j;
  j["lambda_max"] = number(e.lambda_max);
  j["lambda_min"] = number(e.lambda_min);
  j["K_star"] = number(e.k_star);
  j["beta"] = number(e.beta);
  j["omega_opt"] = number(e.omega_opt);
  j["L_opt"] = number(e.l_opt);
  j["rho_opt"] = number(e.rho_opt);
  j["D_opt"] = number(e.d_opt);
  j["K_dr"] = number(e.k_dr);
  j["steps_max"] = e.steps_max;
  j["steps_min"] = e.steps_min;
  j["converged"] = e.converged;
  return j;
}

SpectralEstimates estimates_from_json(const ordered_json& j) {
  SpectralEstimates e;
  e.lambda_max = read_number(j.at("lambda_max"));
  e.lambda_min = read_number(j.at("lambda_min"));
  e.k_star = read_number(j.at("K_star"));
  e.beta = read_number(j.at("beta"));
  e.omega_opt = read_number(j.at("omega_opt"));
  e.l_opt = read_number(j.at("L_opt"));
  e.rho_opt = read_number(j.at("rho_opt"));
  e.d_opt = read_number(j.at("D_opt"));
  e.k_dr = read_number(j.at("K_dr"));
  e.steps_max = j.at("steps_max").get<int>();
  e.steps_min = j.at("steps_min").get<int>();
  e.converged = j.at("converged").get<bool>();
  return e;
}

ordered_json to_json_value(const EstimateEntry& e) {
  ordered_json j;
  j["n"] = e.n;
  j["h"] = number(e.h);
  j["mode"] = e.mode;
  j["tol"] = number(e.tol);
  j["estimates"] = to_json_value(e.estimates);
  j["K_star_L2"] = e.k_star_l2 ? number(*e.k_star_l2) : ordered_json(nullptr);
  j["K_star_L2_steps"] = e.k_star_l2_steps ? ordered_json(*e.k_star_l2_steps) : ordered_json(nullptr);
  return j;
}

EstimateEntry entry_from_json(const ordered_json& j) {
  EstimateEntry e;
  e.n = j.at("n").get<std::size_t>();
  e.h = read_number(j.at("h"));
  e.mode = j.at("mode").get<std::string>();
  e.tol = read_number(j.at("tol"));
  e.estimates = estimates_from_json(j.at("estimates"));
  if (!j.at("K_star_L2").is_null()) e.k_star_l2 = j.at("K_star_L2").get<double>();
  if (!j.at("K_star_L2_steps").is_null()) e.k_star_l2_steps = j.at("K_star_L2_steps").get<int>();
  return e;
}

ordered_json to_json_value(const MaterialParams& m) {
  ordered_json j;
  j["mu"] = m.mu;
  j["lambda"] = m.lambda;
  j["alpha"] = m.alpha;
  j["inv_M"] = m.inv_M;
  j["kappa"] = m.kappa;
  return j;
}

ordered_json header(const std::string& kind, const std::string& version, const std::string& hash) {
  ordered_json j;
  j["kind"] = kind;
  j["version"] = version;
  j["config_hash"] = hash;
  return j;
}

ordered_json parse_document(const std::string& text, const std::string& kind) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InvalidArgument(std::string("report: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != kind) {
    throw InvalidArgument("report: expected a '" + kind + "' document");
  }
  return j;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const ordered_json::exception& e) {
    throw InvalidArgument(std::string("report: ") + e.what());
  }
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_json(const EstimateReport& report) {
  ordered_json j = header("estimate", report.version, report.config_hash);
  j["material"] = to_json_value(report.material);
  j["entries"] = ordered_json::array();
  for (const auto& e : report.entries) j["entries"].push_back(to_json_value(e));
  return j.dump(2);
}

EstimateReport estimate_report_from_json(const std::string& text) {
  const ordered_json j = parse_document(text, "estimate");
  return guarded([&] {
    EstimateReport r;
    r.version = j.at("version").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    const auto& m = j.at("material");
    r.material.mu = m.at("mu").get<double>();
    r.material.lambda = m.at("lambda").get<double>();
    r.material.alpha = m.at("alpha").get<double>();
    r.material.inv_M = m.at("inv_M").get<double>();
    r.material.kappa = m.at("kappa").get<double>();
    for (const auto& e : j.at("entries")) r.entries.push_back(entry_from_json(e));
    return r;
  });
}

std::string to_json(const SolveReport& report) {
  ordered_json j = header("solve", report.version, report.config_hash);
  j["n"] = report.n;
  j["L"] = number(report.L);
  j["D"] = number(report.D);
  j["optimal"] = report.optimal;
  j["estimates"] = report.estimates ? to_json_value(*report.estimates) : ordered_json(nullptr);
  j["iterations"] = report.iterations;
  j["avg_iterations"] = number(report.average);
  j["diverged"] = report.diverged;
  j["u_energy_norm"] = number(report.u_energy_norm);
  j["p_mass_norm"] = number(report.p_mass_norm);
  return j.dump(2);
}

std::string to_json(const SweepReport& report) {
  ordered_json j = header("sweep", report.version, report.config_hash);
  j["alpha"] = report.alpha;
  j["max_iter"] = report.max_iter;
  j["estimates"] = ordered_json::array();
  for (const auto& e : report.estimates) j["estimates"].push_back(to_json_value(e));
  j["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["n"] = r.n;
    row["h"] = r.h;
    row["D"] = r.D;
    row["L"] = r.L;
    row["avg_iterations"] = number(r.avg_iterations);
    row["diverged"] = r.diverged;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

SweepReport sweep_report_from_json(const std::string& text) {
  const ordered_json j = parse_document(text, "sweep");
  return guarded([&] {
    SweepReport r;
    r.version = j.at("version").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.alpha = j.at("alpha").get<double>();
    r.max_iter = j.at("max_iter").get<int>();
    for (const auto& e : j.at("estimates")) r.estimates.push_back(entry_from_json(e));
    for (const auto& row : j.at("rows")) {
      r.rows.push_back({row.at("n").get<std::size_t>(), row.at("h").get<double>(),
                        row.at("D").get<double>(), row.at("L").get<double>(),
                        read_number(row.at("avg_iterations")), row.at("diverged").get<bool>()});
    }
    return r;
  });
}

std::string to_json(const VerificationReport& report) {
  ordered_json j = header("verify", report.version, report.config_hash);
  j["passed"] = report.passed();
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["n"] = c.n;
    cj["measured"] = number(c.measured);
    cj["bound"] = number(c.bound);
    cj["passed"] = c.passed;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    j["checks"].push_back(std::move(cj));
  }
  return j.dump(2);
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
  os << "n,h,D,L,avg_iterations,diverged\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << shortest(r.h) << ',' << shortest(r.D) << ',' << shortest(r.L) << ','
       << shortest(r.avg_iterations) << ',' << (r.diverged ? 1 : 0) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "n,h,D,L,avg_iterations,diverged") {
    throw InvalidArgument("sweep csv: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw InvalidArgument("sweep csv: line " + std::to_string(lineno) + " needs 6 fields");
    }
    auto num = [&](const std::string& s, auto& out) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidArgument("sweep csv: line " + std::to_string(lineno) + ": bad number '" + s + "'");
      }
    };
    SweepRow r;
    int diverged = 0;
    num(fields[0], r.n);
    num(fields[1], r.h);
    num(fields[2], r.D);
    num(fields[3], r.L);
    num(fields[4], r.avg_iterations);
    num(fields[5], diverged);
    r.diverged = diverged != 0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace biotfs
