#include "biotfs/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <string>

#include "biotfs/errors.hpp"

namespace biotfs {

Mesh build_structured_mesh(std::size_t n) {
  if (n == 0) throw InvalidArgument("build_structured_mesh: n must be at least 1");

  Mesh mesh;
  mesh.n = n;
  const std::size_t nv = n + 1;
  const auto dn = static_cast<double>(n);
  mesh.vertices.reserve(nv * nv);
  for (std::size_t j = 0; j < nv; ++j) {
    for (std::size_t i = 0; i < nv; ++i) {
      mesh.vertices.push_back({static_cast<double>(i) / dn, static_cast<double>(j) / dn});
    }
  }

  mesh.triangles.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v00 = j * nv + i;
      const std::size_t v10 = v00 + 1;
      const std::size_t v01 = v00 + nv;
      const std::size_t v11 = v01 + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }

  mesh.edges.reserve(3 * n * n + 2 * n);
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = t[k];
      const std::size_t b = t[(k + 1) % 3];
      mesh.edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(mesh.edges.begin(), mesh.edges.end());
  mesh.edges.erase(std::unique(mesh.edges.begin(), mesh.edges.end()), mesh.edges.end());
  return mesh;
}

std::size_t Mesh::edge_index(std::size_t a, std::size_t b) const {
  const std::array<std::size_t, 2> key{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) {
    throw InvalidArgument("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not in the mesh");
  }
  return static_cast<std::size_t>(it - edges.begin());
}

double signed_area(const Mesh& mesh, std::size_t triangle) {
  const auto& t = mesh.triangles.at(triangle);
  const Point2& a = mesh.vertices[t[0]];
  const Point2& b = mesh.vertices[t[1]];
  const Point2& c = mesh.vertices[t[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  char buf[64];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
  };
  for (const auto& v : mesh.vertices) {
    os << "v ";
    put(v.x);
    os << ' ';
    put(v.y);
    os << '\n';
  }
  for (const auto& t : mesh.triangles) {
    os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

}  // namespace biotfs
