#pragma once

#include <string>
#include <vector>

#include "biotfs/config.hpp"
#include "biotfs/dense.hpp"
#include "biotfs/system.hpp"

namespace biotfs {

struct VerificationCheck {
  std::string name;
  std::size_t n = 0;
  double measured = 0.0;
  double bound = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::string version;
  std::string config_hash;
  std::vector<VerificationCheck> checks;

  bool passed() const;
};

/// Dense S = inv_M Mp + B A^{-1} B^T, with A^{-1} applied by a dense Cholesky
/// factorization independent of the sparse one.
DenseMatrix dense_schur(const BiotSystem& system);

/// Dense-oracle battery on small meshes (n = 4 and n = 8) with the config's
/// material: Richardson equivalence, contraction bound, eigenvalue
/// identifications, power iteration accuracy and the ordering chain
/// beta >= K*_dr >= K_dr.
VerificationReport run_verify(const ExperimentConfig& config);

}  // namespace biotfs
