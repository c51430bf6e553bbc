#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's kernels, quadrature or solvers.

#include <array>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "biotfs/sparse.hpp"
#include "biotfs/system.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const biotfs::SparseMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                            static_cast<Eigen::Index>(a.cols()));
  const auto off = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) += vals[k];
    }
  }
  return m;
}

inline Eigen::VectorXd vec(const biotfs::Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Dense S = inv_M Mp + B A^{-1} B^T.
inline Eigen::MatrixXd schur(const biotfs::BiotSystem& sys) {
  const Eigen::MatrixXd A = dense(sys.A());
  const Eigen::MatrixXd B = dense(sys.B());
  Eigen::MatrixXd S = B * A.llt().solve(B.transpose()) + sys.params().inv_M * dense(sys.Mp());
  return 0.5 * (S + S.transpose());
}

/// Ascending eigenvalues of the symmetric-definite pencil (K, W).
inline Eigen::VectorXd pencil_eigenvalues(const Eigen::MatrixXd& K, const Eigen::MatrixXd& W) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, W, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// 5-point Gauss-Legendre rule on [0, 1], exact to degree 9.
inline constexpr std::array<double, 5> kGaussX = {
    0.046910077030668003601, 0.23076534494715845448, 0.5, 0.76923465505284154552,
    0.95308992296933199640};
inline constexpr std::array<double, 5> kGaussW = {
    0.11846344252809454376, 0.23931433524968323402, 0.28444444444444444444,
    0.23931433524968323402, 0.11846344252809454376};

using Vertices = std::array<std::array<double, 2>, 3>;

/// Integrates g(lambda0, lambda1, lambda2) over the triangle via the Duffy map
/// of the unit square, s = xi, t = eta (1 - xi).
inline double integrate(const Vertices& v, const std::function<double(double, double, double)>& g) {
  const double area = 0.5 * std::abs((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
                                     (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]));
  double sum = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const double s = kGaussX[i];
      const double t = kGaussX[j] * (1.0 - s);
      sum += kGaussW[i] * kGaussW[j] * (1.0 - s) * g(1.0 - s - t, s, t);
    }
  }
  return 2.0 * area * sum;
}

/// Gradients of the barycentric coordinates.
inline std::array<std::array<double, 2>, 3> barycentric_gradients(const Vertices& v) {
  const double det = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
                     (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
  std::array<std::array<double, 2>, 3> g{};
  for (int i = 0; i < 3; ++i) {
    const auto& b = v[(i + 1) % 3];
    const auto& c = v[(i + 2) % 3];
    g[i] = {(b[1] - c[1]) / det, (c[0] - b[0]) / det};
  }
  return g;
}

/// P2 basis gradient at barycentric point l: vertices l_i (2 l_i - 1), then
/// 4 l_0 l_1, 4 l_1 l_2, 4 l_2 l_0.
inline std::array<double, 2> p2_gradient(const Vertices& v, int a, const std::array<double, 3>& l) {
  const auto g = barycentric_gradients(v);
  std::array<double, 2> out{};
  for (int d = 0; d < 2; ++d) {
    if (a < 3) {
      out[d] = (4.0 * l[a] - 1.0) * g[a][d];
    } else {
      const int i = a - 3;
      const int j = (i + 1) % 3;
      out[d] = 4.0 * (l[i] * g[j][d] + l[j] * g[i][d]);
    }
  }
  return out;
}

/// Local stiffness 2 mu (eps(phi), eps(psi)) + lambda (div phi, div psi) with
/// vector basis phi_{a,c} = N_a e_c at index 2 a + c.
inline Eigen::MatrixXd elasticity(const Vertices& v, double mu, double lambda) {
  Eigen::MatrixXd K(12, 12);
  for (int r = 0; r < 12; ++r) {
    for (int s = 0; s < 12; ++s) {
      K(r, s) = integrate(v, [&](double l0, double l1, double l2) {
        const std::array<double, 3> l{l0, l1, l2};
        const auto ga = p2_gradient(v, r / 2, l);
        const auto gb = p2_gradient(v, s / 2, l);
        // grad(phi)_{ij} = d_j phi_i
        double Ga[2][2] = {}, Gb[2][2] = {};
        for (int j = 0; j < 2; ++j) {
          Ga[r % 2][j] = ga[j];
          Gb[s % 2][j] = gb[j];
        }
        double eps = 0.0;
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            eps += 0.5 * (Ga[i][j] + Ga[j][i]) * 0.5 * (Gb[i][j] + Gb[j][i]);
          }
        }
        const double div_a = Ga[0][0] + Ga[1][1];
        const double div_b = Gb[0][0] + Gb[1][1];
        return 2.0 * mu * eps + lambda * div_a * div_b;
      });
    }
  }
  return K;
}

/// alpha (div phi_{a,c}, psi_q) with P1 psi_q = lambda_q.
inline Eigen::MatrixXd coupling(const Vertices& v, double alpha) {
  Eigen::MatrixXd C(3, 12);
  for (int q = 0; q < 3; ++q) {
    for (int s = 0; s < 12; ++s) {
      C(q, s) = alpha * integrate(v, [&](double l0, double l1, double l2) {
        const std::array<double, 3> l{l0, l1, l2};
        return p2_gradient(v, s / 2, l)[s % 2] * l[q];
      });
    }
  }
  return C;
}

inline Eigen::MatrixXd pressure_mass(const Vertices& v) {
  Eigen::MatrixXd M(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      M(i, j) = integrate(v, [&](double l0, double l1, double l2) {
        const std::array<double, 3> l{l0, l1, l2};
        return l[i] * l[j];
      });
    }
  }
  return M;
}

}  // namespace oracle
