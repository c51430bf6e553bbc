#include <gtest/gtest.h>

#include <cmath>

#include "biotfs/errors.hpp"
#include "biotfs/solver.hpp"
#include "biotfs/spectral.hpp"
#include "oracles.hpp"

using namespace biotfs;

namespace {

BiotSystem loaded_system(std::size_t n, double t = 0.5) {
  const BiotProblem prob = make_problem(n, MaterialParams{});
  BiotSystem s = prob.system;
  s.f = assemble_momentum_rhs(prob.disc, s, prob.force, t);
  const Vector pz(prob.disc.dofs.num_pressure(), 0.0);
  const Vector uz(prob.disc.dofs.num_displacement(), 0.0);
  s.g = assemble_flow_rhs(prob.disc, pz, uz, t, 0.1, prob.source);
  return s;
}

double rel_m(const SparseMatrix& m, const Vector& a, const Vector& b) {
  Vector d = a;
  axpy(-1.0, b, d);
  return m_norm(m, d) / m_norm(m, b);
}

}  // namespace

TEST(SolverConfig, Validation) {
  const MaterialParams params;
  SolverConfig c;
  c.L = 1e-11;
  EXPECT_NO_THROW(c.validate(params));
  c.L = -1.0;
  EXPECT_THROW(c.validate(params), InvalidArgument);
  c.L = 0.0;  // with inv_M = 0 the flow block would be singular
  EXPECT_THROW(c.validate(params), InvalidArgument);
  c = {};
  c.L = 1e-11;
  c.eps_r = 0.0;
  EXPECT_THROW(c.validate(params), InvalidArgument);
}

TEST(TimeGrid, StepCount) {
  EXPECT_EQ((TimeGrid{0.0, 0.1, 1.0}).steps(), 10);
  EXPECT_DOUBLE_EQ((TimeGrid{0.0, 0.1, 1.0}).time(3), 0.30000000000000004);
  EXPECT_THROW((TimeGrid{0.0, 0.3, 1.0}).steps(), InvalidArgument);
  EXPECT_THROW((TimeGrid{0.0, 0.0, 1.0}).steps(), InvalidArgument);
}

TEST(FixedStress, ConvergesToMonolithicSolution) {
  const BiotSystem s = loaded_system(6);
  const SpectralEstimates est = estimate_spectrum(s, {1e-8, 50000, 42});
  SolverConfig c;
  c.L = est.l_opt;
  c.eps_r = 1e-12;
  c.max_iter = 500;
  const Vector u0(s.num_displacement(), 0.0), p0(s.num_pressure(), 0.0);
  const auto res = fixed_stress_solve(s, c, u0, p0);
  ASSERT_TRUE(res.trace.converged);
  const BlockState ref = monolithic_solve(s);
  EXPECT_LT(rel_m(s.Mp(), res.state.p, ref.p), 1e-9);
  EXPECT_LT(rel_m(s.A(), res.state.u, ref.u), 1e-9);
  EXPECT_LT(block_residual(s, res.state), 1e-9);
}

TEST(FixedStress, StepIsFlowSolveThenMechanics) {
  const BiotSystem s = loaded_system(3);
  const double L = 1e-11;
  const Vector u = seeded_start_vector(s.num_displacement(), 1);
  const Vector p = seeded_start_vector(s.num_pressure(), 2);
  const BlockState next = fixed_stress_step(s, u, p, L);

  const Eigen::MatrixXd A = oracle::dense(s.A()), B = oracle::dense(s.B()), M = oracle::dense(s.Mp());
  const Eigen::VectorXd pv = oracle::vec(p);
  const Eigen::VectorXd p_ref = pv + (L * M).llt().solve(oracle::vec(s.g) - B * oracle::vec(u));
  const Eigen::VectorXd u_ref = A.llt().solve(oracle::vec(s.f) + B.transpose() * p_ref);
  EXPECT_LT((oracle::vec(next.p) - p_ref).norm() / p_ref.norm(), 1e-10);
  EXPECT_LT((oracle::vec(next.u) - u_ref).norm() / u_ref.norm(), 1e-10);
}

TEST(FixedStress, PressureIteratesEqualRichardsonIterates) {
  const BiotSystem s = loaded_system(4);
  const double L = 1.0 / MaterialParams{}.drained_bulk_modulus();
  const Vector g_tilde = schur_rhs(s);
  Vector p = seeded_start_vector(s.num_pressure(), 9);
  Vector rhs = s.f;
  axpy(1.0, matvec_transpose(s.B(), p), rhs);
  BlockState fs{s.solve_elasticity(rhs), p};
  for (int k = 0; k < 15; ++k) {
    fs = fixed_stress_step(s, fs.u, fs.p, L);
    p = richardson_step(s, p, 1.0 / L, g_tilde);
    EXPECT_LT(rel_m(s.Mp(), fs.p, p), 1e-10) << "iteration " << k;
  }
}

TEST(Richardson, ZeroStepSizeIsIdentity) {
  const BiotSystem s = loaded_system(3);
  const Vector p = seeded_start_vector(s.num_pressure(), 4);
  EXPECT_EQ(richardson_step(s, p, 0.0), p);
  EXPECT_THROW(richardson_step(s, p, -1.0), InvalidArgument);
  EXPECT_THROW(richardson_step(s, Vector(1, 0.0), 1.0), DimensionMismatch);
}

TEST(FixedStress, OverlySmallStabilizationIsFlaggedNotThrown) {
  const BiotSystem s = loaded_system(4);
  const SpectralEstimates est = estimate_spectrum(s, {1e-8, 50000, 42});
  SolverConfig c;
  c.L = 0.4 * est.lambda_max;  // omega = 1 / L = 2.5 / lambda_max
  c.max_iter = 2000;
  const auto res = fixed_stress_solve(s, c, Vector(s.num_displacement(), 0.0), Vector(s.num_pressure(), 0.0));
  EXPECT_FALSE(res.trace.converged);
  EXPECT_LT(res.trace.iterations, c.max_iter);  // stopped on blow-up, before the cap
}

TEST(FixedStress, KeepsIteratesOnRequest) {
  const BiotSystem s = loaded_system(3);
  SolverConfig c;
  c.L = 1.0 / MaterialParams{}.drained_bulk_modulus();
  c.keep_iterates = true;
  const auto res = fixed_stress_solve(s, c, Vector(s.num_displacement(), 0.0), Vector(s.num_pressure(), 0.0));
  EXPECT_EQ(res.trace.pressure_iterates.size(), static_cast<std::size_t>(res.trace.iterations));
  EXPECT_EQ(res.trace.records.size(), static_cast<std::size_t>(res.trace.iterations));
}

TEST(TimeMarch, ZeroSourcesConvergeInOneIteration) {
  const BiotProblem prob = make_problem(4, MaterialParams{}, false);
  SolverConfig c;
  c.L = 1e-11;
  const auto res = time_march(prob, c, TimeGrid{});
  EXPECT_EQ(res.iterations.size(), 10u);
  EXPECT_DOUBLE_EQ(res.average, 1.0);
  EXPECT_FALSE(res.diverged);
}

TEST(TimeMarch, IterationCapMarksDivergence) {
  const BiotProblem prob = make_problem(4, MaterialParams{});
  SolverConfig c;
  c.L = 1e-11;
  c.max_iter = 1;
  const auto res = time_march(prob, c, TimeGrid{});
  EXPECT_TRUE(res.diverged);
  EXPECT_TRUE(std::isinf(res.average));
  EXPECT_EQ(res.iterations.size(), 1u);
  EXPECT_EQ(res.iterations.front(), 1);
}

TEST(TimeMarch, OptimalBeatsPhysicalBulkModulus) {
  const BiotProblem prob = make_problem(8, MaterialParams{});
  const SpectralEstimates est = estimate_spectrum(prob.system, {1e-8, 50000, 42});
  SolverConfig c;
  c.max_iter = 500;
  c.L = est.l_opt;
  const auto opt = time_march(prob, c, TimeGrid{});
  c.L = 1.0 / MaterialParams{}.drained_bulk_modulus();
  const auto phys = time_march(prob, c, TimeGrid{});
  ASSERT_FALSE(opt.diverged);
  ASSERT_FALSE(phys.diverged);
  EXPECT_LE(opt.average, phys.average);
}
