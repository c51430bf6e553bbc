#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace biotfs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Structured triangulation of the unit square. Each of the n x n cells is
/// split along its (+1,+1) diagonal; vertices are numbered lexicographically by
/// (y, x), so vertex (i, j) has index j * (n + 1) + i.
struct Mesh {
  std::size_t n = 0;
  std::vector<Point2> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;  ///< counter-clockwise
  std::vector<std::array<std::size_t, 2>> edges;      ///< (a, b) with a < b, sorted

  double h() const { return 1.0 / static_cast<double>(n); }

  /// Edge index of the (unordered) vertex pair; throws if not an edge.
  std::size_t edge_index(std::size_t a, std::size_t b) const;

  friend bool operator==(const Mesh&, const Mesh&) = default;
};

Mesh build_structured_mesh(std::size_t n);

double signed_area(const Mesh& mesh, std::size_t triangle);

/// Debug dump: `v x y` per vertex then `t i j k` per triangle.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace biotfs
