#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "biotfs/errors.hpp"
#include "biotfs/report.hpp"

using namespace biotfs;

namespace {

ExperimentConfig tiny_sweep() {
  ExperimentConfig c;
  c.meshes = {3, 2};
  c.sweep = {1.0e11, 1.3e11, 3};
  c.spectral.mode = SpectralMode::Coarse;
  return c;
}

}  // namespace

TEST(Report, SweepRowsAreOrderedAndConsistent) {
  const ExperimentConfig c = tiny_sweep();
  const SweepReport r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows.front().n, 2u);
  EXPECT_EQ(r.rows.back().n, 3u);
  ASSERT_EQ(r.estimates.size(), 2u);
  for (const auto& row : r.rows) {
    // L D = alpha^2
    EXPECT_NEAR(row.L * row.D, 1.0, 1e-15);
    EXPECT_EQ(row.h, 1.0 / static_cast<double>(row.n));
  }
}

TEST(Report, SweepCsvIsDeterministicAndRoundTrips) {
  const ExperimentConfig c = tiny_sweep();
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep(c));
  const SweepReport r = run_sweep(c);
  write_sweep_csv(b, r);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "n,h,D,L,avg_iterations,diverged");
  std::istringstream is(a.str());
  EXPECT_EQ(read_sweep_csv(is), r.rows);
}

TEST(Report, SweepJsonRoundTrips) {
  const SweepReport r = run_sweep(tiny_sweep());
  EXPECT_EQ(sweep_report_from_json(to_json(r)), r);
}

TEST(Report, DivergedRowsKeepTheirFlag) {
  SweepReport r;
  r.version = "x";
  r.max_iter = 7;
  r.rows.push_back({4, 0.25, 2e11, 5e-12, 7.0, true});
  std::ostringstream os;
  write_sweep_csv(os, r);
  EXPECT_NE(os.str().find("4,0.25,2e+11,5e-12,7,1"), std::string::npos);
  EXPECT_EQ(sweep_report_from_json(to_json(r)), r);
}

TEST(Report, EstimateJsonRoundTrips) {
  ExperimentConfig c;
  c.meshes = {3};
  const EstimateReport r = run_estimate(c);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_GE(r.entries[0].estimates.k_star, c.material.drained_bulk_modulus());
  EXPECT_FALSE(r.entries[0].k_star_l2.has_value());
  EXPECT_EQ(estimate_report_from_json(to_json(r)), r);

  c.spectral.l2_bulk_modulus = true;
  const EstimateReport l2 = run_estimate(c);
  ASSERT_TRUE(l2.entries[0].k_star_l2.has_value());
  EXPECT_GE(*l2.entries[0].k_star_l2, c.material.drained_bulk_modulus() * (1 - 1e-6));
  EXPECT_LE(*l2.entries[0].k_star_l2, l2.entries[0].estimates.k_star * (1 + 1e-6));
  EXPECT_EQ(estimate_report_from_json(to_json(l2)), l2);
}

TEST(Report, NonFiniteNumbersBecomeNull) {
  SolveReport s;
  s.average = std::numeric_limits<double>::infinity();
  s.diverged = true;
  const std::string j = to_json(s);
  EXPECT_NE(j.find("\"avg_iterations\": null"), std::string::npos);
}

TEST(Report, MalformedInputIsRejected) {
  EXPECT_THROW(sweep_report_from_json("{"), InvalidArgument);
  EXPECT_THROW(sweep_report_from_json(R"({"kind": "estimate"})"), InvalidArgument);
  EXPECT_THROW(sweep_report_from_json(R"({"kind": "sweep", "version": "1"})"), InvalidArgument);
  std::istringstream bad_header("n,h,D\n");
  EXPECT_THROW(read_sweep_csv(bad_header), InvalidArgument);
  std::istringstream bad_row("n,h,D,L,avg_iterations,diverged\n1,2,3\n");
  EXPECT_THROW(read_sweep_csv(bad_row), InvalidArgument);
}

TEST(Report, VerificationBatteryPassesOnReferenceMaterials) {
  const VerificationReport v = run_verify(ExperimentConfig{});
  EXPECT_TRUE(v.passed());
  EXPECT_GE(v.checks.size(), 15u);
  for (const auto& c : v.checks) EXPECT_TRUE(c.passed) << c.name << " n=" << c.n << " measured " << c.measured;
  EXPECT_NE(to_json(v).find("\"passed\": true"), std::string::npos);
}
