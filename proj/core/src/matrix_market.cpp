#include "biotfs/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "biotfs/errors.hpp"

namespace biotfs {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

void write_matrix_market(std::ostream& os, const SparseMatrix& a, bool symmetric) {
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();

  std::size_t count = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      if (!symmetric || col[k] <= i) ++count;
    }
  }
  os << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
     << '\n';
  os << a.rows() << ' ' << a.cols() << ' ' << count << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      if (symmetric && col[k] > i) continue;
      os << i + 1 << ' ' << col[k] + 1 << ' ' << shortest(val[k]) << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a,
                         bool symmetric) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_matrix_market(os, a, symmetric);
}

SparseMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("matrix market: empty input");
  std::istringstream header(lower(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
    throw Error("matrix market: only 'matrix coordinate' files are supported");
  }
  if (field != "real" && field != "integer") {
    throw Error("matrix market: unsupported field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw Error("matrix market: unsupported symmetry '" + symmetry + "'");
  }

  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> nrows >> ncols >> nnz)) throw Error("matrix market: bad size line");
  }

  std::vector<Triplet> trip;
  trip.reserve(symmetric ? 2 * nnz : nnz);
  for (std::size_t e = 0; e < nnz; ++e) {
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(is >> i >> j >> v)) throw Error("matrix market: truncated entry list");
    if (i == 0 || j == 0 || i > nrows || j > ncols) {
      throw Error("matrix market: entry index out of range");
    }
    trip.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) trip.push_back({j - 1, i - 1, v});
  }
  return SparseMatrix::from_triplets(nrows, ncols, std::move(trip));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  return read_matrix_market(is);
}

}  // namespace biotfs
