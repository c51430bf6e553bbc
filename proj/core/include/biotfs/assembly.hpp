#pragma once

#include <array>
#include <functional>
#include <span>

#include "biotfs/dofs.hpp"
#include "biotfs/mesh.hpp"
#include "biotfs/sparse.hpp"

namespace biotfs {

/// Material coefficients of the impermeable Biot model.
struct MaterialParams {
  double mu = 41.667e9;      ///< shear modulus (Pa)
  double lambda = 27.778e9;  ///< second Lame parameter (Pa)
  double alpha = 1.0;        ///< Biot-Willis coefficient
  double inv_M = 0.0;        ///< 1/M, storage compressibility (1/Pa)
  double kappa = 0.0;        ///< permeability; only 0 is supported
  int dim = 2;

  /// Physical drained bulk modulus 2 mu / d + lambda.
  double drained_bulk_modulus() const { return 2.0 * mu / dim + lambda; }

  /// Throws InvalidArgument unless mu > 0, lambda >= 0, alpha in (0, 1],
  /// inv_M >= 0, kappa == 0 and dim == 2.
  void validate() const;
};

using ScalarField = std::function<double(double x, double y, double t)>;
using VectorField = std::function<Point2(double x, double y, double t)>;

/// Manufactured right-hand sides with parabolic profiles vanishing on the
/// boundary: S_f = t x(1-x) y(1-y), f = force_scale * S_f * (1, 1).
struct ManufacturedSources {
  double force_scale = 1e9;
  double flow_scale = 1.0;

  Point2 body_force(double x, double y, double t) const;
  double flow_source(double x, double y, double t) const;
};

ManufacturedSources manufactured_sources(const MaterialParams& params);

namespace element {

using Vertices = std::array<Point2, 3>;

/// Local matrices in the ordering (node a, component c) -> 2 a + c for the six
/// P2 nodes, and vertex order for P1. Throws InvalidArgument on zero area.
std::array<std::array<double, 12>, 12> elasticity(const Vertices& v, double mu, double lambda);
std::array<std::array<double, 12>, 12> divdiv(const Vertices& v);
std::array<std::array<double, 12>, 3> coupling(const Vertices& v, double alpha);
std::array<std::array<double, 3>, 3> pressure_mass(const Vertices& v);

}  // namespace element

/// Full (boundary conditions not applied) operators over all dofs.
SparseMatrix assemble_elasticity(const Mesh& mesh, const DofMap& dofs, const MaterialParams& params);
SparseMatrix assemble_coupling(const Mesh& mesh, const DofMap& dofs, double alpha);
SparseMatrix assemble_pressure_mass(const Mesh& mesh, const DofMap& dofs);
SparseMatrix assemble_divdiv(const Mesh& mesh, const DofMap& dofs);

/// Load vectors over all displacement / pressure dofs at time t.
Vector assemble_body_force(const Mesh& mesh, const DofMap& dofs, const VectorField& f, double t);
Vector assemble_pressure_load(const Mesh& mesh, const DofMap& dofs, const ScalarField& s, double t);

/// Global vectors interpolating a field at the P2 nodes / P1 vertices.
Vector interpolate_displacement(const DofMap& dofs, const VectorField& u, double t = 0.0);
Vector interpolate_pressure(const Mesh& mesh, const ScalarField& p, double t = 0.0);

}  // namespace biotfs
