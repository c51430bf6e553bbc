#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "biotfs/mesh.hpp"

namespace biotfs {

enum class BoundaryTag {
  Interior,
  DirichletMomentum,  ///< u = 0
  NeumannTop,         ///< traction-free top boundary y = 1
  DirichletFlow,      ///< p = 0
};

const char* to_string(BoundaryTag tag);

/// Taylor-Hood degrees of freedom: P2 vector displacement, P1 pressure.
///
/// P2 nodes are the mesh vertices (indices 0..V-1) followed by the edge
/// midpoints (V + edge index). Displacement dof 2 * node + c is component c at
/// that node. Pressure dof k lives at vertex k.
struct DofMap {
  std::vector<Point2> p2_nodes;
  /// Local P2 nodes per triangle: three vertices, then midpoints of the edges
  /// (v0,v1), (v1,v2), (v2,v0).
  std::vector<std::array<std::size_t, 6>> cell_nodes;
  std::vector<BoundaryTag> displacement_tags;
  std::vector<BoundaryTag> pressure_tags;

  std::size_t num_displacement() const { return displacement_tags.size(); }
  std::size_t num_pressure() const { return pressure_tags.size(); }

  /// Displacement dofs not carrying a Dirichlet condition, ascending.
  std::vector<std::size_t> free_displacement_dofs() const;
  /// Pressure dofs not on the boundary, ascending.
  std::vector<std::size_t> interior_pressure_dofs() const;
};

DofMap build_taylor_hood_dofs(const Mesh& mesh);

}  // namespace biotfs
