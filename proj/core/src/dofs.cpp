#include "biotfs/dofs.hpp"

#include "biotfs/errors.hpp"

namespace biotfs {

namespace {

bool on_boundary(const Point2& p) {
  return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

// Corners of the top side stay Dirichlet: they also touch the clamped sides.
BoundaryTag displacement_tag(const Point2& p) {
  if (p.y == 1.0 && p.x > 0.0 && p.x < 1.0) return BoundaryTag::NeumannTop;
  return on_boundary(p) ? BoundaryTag::DirichletMomentum : BoundaryTag::Interior;
}

}  // namespace

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Interior: return "Interior";
    case BoundaryTag::DirichletMomentum: return "DirichletMomentum";
    case BoundaryTag::NeumannTop: return "NeumannTop";
    case BoundaryTag::DirichletFlow: return "DirichletFlow";
  }
  return "?";
}

DofMap build_taylor_hood_dofs(const Mesh& mesh) {
  if (mesh.n == 0 || mesh.vertices.empty() || mesh.triangles.empty()) {
    throw InvalidArgument("build_taylor_hood_dofs: empty mesh");
  }
  DofMap dofs;
  const std::size_t nv = mesh.vertices.size();

  dofs.p2_nodes = mesh.vertices;
  dofs.p2_nodes.reserve(nv + mesh.edges.size());
  for (const auto& e : mesh.edges) {
    const Point2& a = mesh.vertices[e[0]];
    const Point2& b = mesh.vertices[e[1]];
    dofs.p2_nodes.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
  }

  dofs.cell_nodes.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    if (t[0] >= nv || t[1] >= nv || t[2] >= nv) {
      throw InvalidArgument("build_taylor_hood_dofs: triangle references missing vertex");
    }
    dofs.cell_nodes.push_back({t[0], t[1], t[2], nv + mesh.edge_index(t[0], t[1]),
                               nv + mesh.edge_index(t[1], t[2]),
                               nv + mesh.edge_index(t[2], t[0])});
  }

  dofs.displacement_tags.reserve(2 * dofs.p2_nodes.size());
  for (const auto& p : dofs.p2_nodes) {
    const BoundaryTag tag = displacement_tag(p);
    dofs.displacement_tags.push_back(tag);
    dofs.displacement_tags.push_back(tag);
  }

  dofs.pressure_tags.reserve(nv);
  for (const auto& p : mesh.vertices) {
    dofs.pressure_tags.push_back(on_boundary(p) ? BoundaryTag::DirichletFlow
                                                : BoundaryTag::Interior);
  }
  return dofs;
}

std::vector<std::size_t> DofMap::free_displacement_dofs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < displacement_tags.size(); ++i) {
    if (displacement_tags[i] != BoundaryTag::DirichletMomentum) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> DofMap::interior_pressure_dofs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pressure_tags.size(); ++i) {
    if (pressure_tags[i] != BoundaryTag::DirichletFlow) out.push_back(i);
  }
  return out;
}

}  // namespace biotfs
