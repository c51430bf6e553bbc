#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "biotfs/dofs.hpp"
#include "biotfs/errors.hpp"
#include "biotfs/mesh.hpp"

using namespace biotfs;

class MeshCounts : public ::testing::TestWithParam<std::size_t> {};

TEST_P(MeshCounts, EntityCountsAndOrientation) {
  const std::size_t n = GetParam();
  const Mesh m = build_structured_mesh(n);
  EXPECT_EQ(m.vertices.size(), (n + 1) * (n + 1));
  EXPECT_EQ(m.triangles.size(), 2 * n * n);
  EXPECT_EQ(m.edges.size(), 3 * n * n + 2 * n);
  double area = 0.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const double a = signed_area(m, t);
    EXPECT_NEAR(a, 0.5 / static_cast<double>(n * n), 1e-15);
    area += a;
  }
  EXPECT_NEAR(area, 1.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(m.edges.begin(), m.edges.end()));
  for (const auto& e : m.edges) EXPECT_LT(e[0], e[1]);
}

INSTANTIATE_TEST_SUITE_P(Sizes, MeshCounts, ::testing::Values(1, 2, 3, 8));

TEST(Mesh, VertexNumberingAndDiagonal) {
  const Mesh m = build_structured_mesh(2);
  // vertex (i, j) at index j (n + 1) + i
  EXPECT_EQ(m.vertices[5], (Point2{1.0, 0.5}));
  EXPECT_EQ(m.vertices[4], (Point2{0.5, 0.5}));
  EXPECT_EQ(m.vertices[2], (Point2{1.0, 0.0}));
  // the first cell is split along its (+1, +1) diagonal
  EXPECT_NO_THROW(m.edge_index(0, 4));
  EXPECT_THROW(m.edge_index(1, 3), InvalidArgument);
  EXPECT_EQ(m.edge_index(4, 0), m.edge_index(0, 4));
  EXPECT_EQ(m.h(), 0.5);
}

TEST(Mesh, ZeroSubdivisionsRejected) { EXPECT_THROW(build_structured_mesh(0), InvalidArgument); }

TEST(Mesh, DumpFormat) {
  std::ostringstream os;
  write_mesh(os, build_structured_mesh(1));
  std::istringstream is(os.str());
  int v = 0, t = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("t ", 0) == 0) ++t;
  }
  EXPECT_EQ(v, 4);
  EXPECT_EQ(t, 2);
}

TEST(TaylorHood, NodeAndDofCounts) {
  for (std::size_t n : {1, 2, 4, 16}) {
    const Mesh m = build_structured_mesh(n);
    const DofMap d = build_taylor_hood_dofs(m);
    EXPECT_EQ(d.p2_nodes.size(), (2 * n + 1) * (2 * n + 1));
    EXPECT_EQ(d.num_displacement(), 2 * (2 * n + 1) * (2 * n + 1));
    EXPECT_EQ(d.num_pressure(), (n + 1) * (n + 1));
    EXPECT_EQ(d.interior_pressure_dofs().size(), (n - 1) * (n - 1));
    // clamped: bottom, left, right and the two top corners; the open top keeps 2 (2n - 1) dofs
    const std::size_t interior_nodes = (2 * n - 1) * (2 * n - 1);
    EXPECT_EQ(d.free_displacement_dofs().size(), 2 * (interior_nodes + 2 * n - 1));
  }
}

TEST(TaylorHood, MidpointsAndCellNodes) {
  const Mesh m = build_structured_mesh(3);
  const DofMap d = build_taylor_hood_dofs(m);
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const auto& a = m.vertices[m.edges[e][0]];
    const auto& b = m.vertices[m.edges[e][1]];
    const auto& mid = d.p2_nodes[m.vertices.size() + e];
    EXPECT_DOUBLE_EQ(mid.x, 0.5 * (a.x + b.x));
    EXPECT_DOUBLE_EQ(mid.y, 0.5 * (a.y + b.y));
  }
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const auto& cn = d.cell_nodes[t];
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(cn[k], tri[k]);
      EXPECT_EQ(cn[3 + k], m.vertices.size() + m.edge_index(tri[k], tri[(k + 1) % 3]));
    }
  }
}

TEST(TaylorHood, BoundaryTags) {
  const Mesh m = build_structured_mesh(2);
  const DofMap d = build_taylor_hood_dofs(m);
  auto tag_at = [&](double x, double y) {
    for (std::size_t k = 0; k < d.p2_nodes.size(); ++k) {
      if (d.p2_nodes[k] == Point2{x, y}) return d.displacement_tags[2 * k];
    }
    ADD_FAILURE() << "no node at " << x << ", " << y;
    return BoundaryTag::Interior;
  };
  EXPECT_EQ(tag_at(0.5, 1.0), BoundaryTag::NeumannTop);
  EXPECT_EQ(tag_at(0.25, 1.0), BoundaryTag::NeumannTop);
  EXPECT_EQ(tag_at(0.0, 1.0), BoundaryTag::DirichletMomentum);
  EXPECT_EQ(tag_at(1.0, 1.0), BoundaryTag::DirichletMomentum);
  EXPECT_EQ(tag_at(0.5, 0.0), BoundaryTag::DirichletMomentum);
  EXPECT_EQ(tag_at(0.0, 0.75), BoundaryTag::DirichletMomentum);
  EXPECT_EQ(tag_at(0.5, 0.5), BoundaryTag::Interior);
  // both components share the node tag
  for (std::size_t k = 0; k < d.p2_nodes.size(); ++k) {
    EXPECT_EQ(d.displacement_tags[2 * k], d.displacement_tags[2 * k + 1]);
  }
  // every boundary pressure dof, top included, is Dirichlet
  std::size_t flow = 0;
  for (const auto t : d.pressure_tags) flow += t == BoundaryTag::DirichletFlow;
  EXPECT_EQ(flow, 8u);
  EXPECT_STREQ(to_string(BoundaryTag::NeumannTop), "NeumannTop");
}
