#include "biotfs/assembly.hpp"

#include <cmath>
#include <string>

#include "biotfs/errors.hpp"
#include "biotfs/quadrature.hpp"

namespace biotfs {

void MaterialParams::validate() const {
  if (!(mu > 0.0)) throw InvalidArgument("material: mu must be positive");
  if (!(lambda >= 0.0)) throw InvalidArgument("material: lambda must be non-negative");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("material: alpha must lie in (0, 1]");
  if (!(inv_M >= 0.0)) throw InvalidArgument("material: inv_M must be non-negative");
  if (kappa != 0.0) {
    throw InvalidArgument("material: kappa must be 0, only impermeable media are supported");
  }
  if (dim != 2) throw InvalidArgument("material: only dim = 2 is supported");
}

Point2 ManufacturedSources::body_force(double x, double y, double t) const {
  const double s = force_scale * t * x * (1.0 - x) * y * (1.0 - y);
  return {s, s};
}

double ManufacturedSources::flow_source(double x, double y, double t) const {
  return flow_scale * t * x * (1.0 - x) * y * (1.0 - y);
}

ManufacturedSources manufactured_sources(const MaterialParams& params) {
  params.validate();
  return ManufacturedSources{};
}

namespace {

// Affine element geometry: area and constant barycentric gradients.
struct Geometry {
  double area;
  std::array<Point2, 3> grad_bary;
};

Geometry geometry(const element::Vertices& v) {
  const double j11 = v[1].x - v[0].x, j12 = v[2].x - v[0].x;
  const double j21 = v[1].y - v[0].y, j22 = v[2].y - v[0].y;
  const double det = j11 * j22 - j12 * j21;
  const double scale = std::abs(j11 * j22) + std::abs(j12 * j21);
  if (!(std::abs(det) > 1e-14 * scale) || det == 0.0) {
    throw InvalidArgument("degenerate triangle (zero area)");
  }
  Geometry g;
  g.area = 0.5 * std::abs(det);
  // rows of J^{-1} are the gradients of lambda_1 and lambda_2
  g.grad_bary[1] = {j22 / det, -j12 / det};
  g.grad_bary[2] = {-j21 / det, j11 / det};
  g.grad_bary[0] = {-g.grad_bary[1].x - g.grad_bary[2].x, -g.grad_bary[1].y - g.grad_bary[2].y};
  return g;
}

constexpr std::array<std::array<int, 2>, 3> kEdgeVertices{{{0, 1}, {1, 2}, {2, 0}}};

std::array<double, 6> p2_values(const std::array<double, 3>& l) {
  std::array<double, 6> n{};
  for (int i = 0; i < 3; ++i) n[i] = l[i] * (2.0 * l[i] - 1.0);
  for (int e = 0; e < 3; ++e) n[3 + e] = 4.0 * l[kEdgeVertices[e][0]] * l[kEdgeVertices[e][1]];
  return n;
}

std::array<Point2, 6> p2_gradients(const Geometry& g, const std::array<double, 3>& l) {
  std::array<Point2, 6> d{};
  for (int i = 0; i < 3; ++i) {
    const double s = 4.0 * l[i] - 1.0;
    d[i] = {s * g.grad_bary[i].x, s * g.grad_bary[i].y};
  }
  for (int e = 0; e < 3; ++e) {
    const int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
    d[3 + e] = {4.0 * (l[a] * g.grad_bary[b].x + l[b] * g.grad_bary[a].x),
                4.0 * (l[a] * g.grad_bary[b].y + l[b] * g.grad_bary[a].y)};
  }
  return d;
}

double component(const Point2& p, int c) { return c == 0 ? p.x : p.y; }

Point2 physical_point(const element::Vertices& v, const std::array<double, 3>& l) {
  return {l[0] * v[0].x + l[1] * v[1].x + l[2] * v[2].x,
          l[0] * v[0].y + l[1] * v[1].y + l[2] * v[2].y};
}

element::Vertices cell_vertices(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  return {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
}

template <class Local>
void scatter_square(std::vector<Triplet>& trip, const Local& local,
                    const std::array<std::size_t, 12>& map) {
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) trip.push_back({map[i], map[j], local[i][j]});
  }
}

std::array<std::size_t, 12> displacement_map(const DofMap& dofs, std::size_t t) {
  std::array<std::size_t, 12> map{};
  for (std::size_t a = 0; a < 6; ++a) {
    map[2 * a] = 2 * dofs.cell_nodes[t][a];
    map[2 * a + 1] = 2 * dofs.cell_nodes[t][a] + 1;
  }
  return map;
}

void check_compatible(const Mesh& mesh, const DofMap& dofs) {
  if (dofs.cell_nodes.size() != mesh.triangles.size() ||
      dofs.num_pressure() != mesh.vertices.size()) {
    throw InvalidArgument("dof map does not belong to this mesh");
  }
}

}  // namespace

namespace element {

std::array<std::array<double, 12>, 12> elasticity(const Vertices& v, double mu, double lambda) {
  const Geometry g = geometry(v);
  std::array<std::array<double, 12>, 12> k{};
  for (const auto& q : kTriangleRuleDeg4) {
    const auto d = p2_gradients(g, q.bary);
    const double w = q.weight * g.area;
    for (int a = 0; a < 6; ++a) {
      for (int c = 0; c < 2; ++c) {
        for (int b = 0; b < 6; ++b) {
          for (int e = 0; e < 2; ++e) {
            // 2 mu eps(N_a e_c) : eps(N_b e_e) + lambda div(N_a e_c) div(N_b e_e)
            const double grad_dot = c == e ? d[a].x * d[b].x + d[a].y * d[b].y : 0.0;
            const double strain = mu * (grad_dot + component(d[a], e) * component(d[b], c));
            const double div = lambda * component(d[a], c) * component(d[b], e);
            k[2 * a + c][2 * b + e] += w * (strain + div);
          }
        }
      }
    }
  }
  return k;
}

std::array<std::array<double, 12>, 12> divdiv(const Vertices& v) {
  const Geometry g = geometry(v);
  std::array<std::array<double, 12>, 12> k{};
  for (const auto& q : kTriangleRuleDeg4) {
    const auto d = p2_gradients(g, q.bary);
    const double w = q.weight * g.area;
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        k[i][j] += w * component(d[i / 2], i % 2) * component(d[j / 2], j % 2);
      }
    }
  }
  return k;
}

std::array<std::array<double, 12>, 3> coupling(const Vertices& v, double alpha) {
  const Geometry g = geometry(v);
  std::array<std::array<double, 12>, 3> k{};
  for (const auto& q : kTriangleRuleDeg4) {
    const auto d = p2_gradients(g, q.bary);
    const double w = q.weight * g.area;
    for (int p = 0; p < 3; ++p) {
      for (int j = 0; j < 12; ++j) {
        k[p][j] += w * alpha * q.bary[p] * component(d[j / 2], j % 2);
      }
    }
  }
  return k;
}

std::array<std::array<double, 3>, 3> pressure_mass(const Vertices& v) {
  const Geometry g = geometry(v);
  std::array<std::array<double, 3>, 3> k{};
  for (const auto& q : kTriangleRuleDeg4) {
    const double w = q.weight * g.area;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) k[i][j] += w * q.bary[i] * q.bary[j];
    }
  }
  return k;
}

}  // namespace element

SparseMatrix assemble_elasticity(const Mesh& mesh, const DofMap& dofs,
                                 const MaterialParams& params) {
  check_compatible(mesh, dofs);
  std::vector<Triplet> trip;
  trip.reserve(144 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    scatter_square(trip, element::elasticity(cell_vertices(mesh, t), params.mu, params.lambda),
                   displacement_map(dofs, t));
  }
  return SparseMatrix::from_triplets(dofs.num_displacement(), dofs.num_displacement(),
                                     std::move(trip));
}

SparseMatrix assemble_divdiv(const Mesh& mesh, const DofMap& dofs) {
  check_compatible(mesh, dofs);
  std::vector<Triplet> trip;
  trip.reserve(144 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    scatter_square(trip, element::divdiv(cell_vertices(mesh, t)), displacement_map(dofs, t));
  }
  return SparseMatrix::from_triplets(dofs.num_displacement(), dofs.num_displacement(),
                                     std::move(trip));
}

SparseMatrix assemble_coupling(const Mesh& mesh, const DofMap& dofs, double alpha) {
  check_compatible(mesh, dofs);
  std::vector<Triplet> trip;
  trip.reserve(36 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto local = element::coupling(cell_vertices(mesh, t), alpha);
    const auto map = displacement_map(dofs, t);
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t j = 0; j < 12; ++j) {
        trip.push_back({mesh.triangles[t][p], map[j], local[p][j]});
      }
    }
  }
  return SparseMatrix::from_triplets(dofs.num_pressure(), dofs.num_displacement(),
                                     std::move(trip));
}

SparseMatrix assemble_pressure_mass(const Mesh& mesh, const DofMap& dofs) {
  check_compatible(mesh, dofs);
  std::vector<Triplet> trip;
  trip.reserve(9 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto local = element::pressure_mass(cell_vertices(mesh, t));
    const auto& tri = mesh.triangles[t];
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) trip.push_back({tri[i], tri[j], local[i][j]});
    }
  }
  return SparseMatrix::from_triplets(dofs.num_pressure(), dofs.num_pressure(), std::move(trip));
}

Vector assemble_body_force(const Mesh& mesh, const DofMap& dofs, const VectorField& f,
                           double t) {
  check_compatible(mesh, dofs);
  Vector load(dofs.num_displacement(), 0.0);
  for (std::size_t c = 0; c < mesh.triangles.size(); ++c) {
    const auto v = cell_vertices(mesh, c);
    const Geometry g = geometry(v);
    const auto map = displacement_map(dofs, c);
    for (const auto& q : kTriangleRuleDeg4) {
      const Point2 x = physical_point(v, q.bary);
      const Point2 fx = f(x.x, x.y, t);
      const auto n = p2_values(q.bary);
      const double w = q.weight * g.area;
      for (std::size_t a = 0; a < 6; ++a) {
        load[map[2 * a]] += w * fx.x * n[a];
        load[map[2 * a + 1]] += w * fx.y * n[a];
      }
    }
  }
  return load;
}

Vector assemble_pressure_load(const Mesh& mesh, const DofMap& dofs, const ScalarField& s,
                              double t) {
  check_compatible(mesh, dofs);
  Vector load(dofs.num_pressure(), 0.0);
  for (std::size_t c = 0; c < mesh.triangles.size(); ++c) {
    const auto v = cell_vertices(mesh, c);
    const Geometry g = geometry(v);
    for (const auto& q : kTriangleRuleDeg4) {
      const Point2 x = physical_point(v, q.bary);
      const double w = q.weight * g.area * s(x.x, x.y, t);
      for (std::size_t i = 0; i < 3; ++i) load[mesh.triangles[c][i]] += w * q.bary[i];
    }
  }
  return load;
}

Vector interpolate_displacement(const DofMap& dofs, const VectorField& u, double t) {
  Vector out(dofs.num_displacement());
  for (std::size_t k = 0; k < dofs.p2_nodes.size(); ++k) {
    const Point2 val = u(dofs.p2_nodes[k].x, dofs.p2_nodes[k].y, t);
    out[2 * k] = val.x;
    out[2 * k + 1] = val.y;
  }
  return out;
}

Vector interpolate_pressure(const Mesh& mesh, const ScalarField& p, double t) {
  Vector out(mesh.vertices.size());
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    out[k] = p(mesh.vertices[k].x, mesh.vertices[k].y, t);
  }
  return out;
}

}  // namespace biotfs
