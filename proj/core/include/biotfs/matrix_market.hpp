#pragma once

#include <filesystem>
#include <iosfwd>

#include "biotfs/sparse.hpp"

namespace biotfs {

// Matrix Market coordinate format. Values are written with round-trip
// precision. When `symmetric` is set only the lower triangle is stored and the
// header says `symmetric`; the caller is responsible for the matrix actually
// being symmetric.
void write_matrix_market(std::ostream& os, const SparseMatrix& a, bool symmetric = false);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a,
                         bool symmetric = false);

// Reads `coordinate real|integer general|symmetric`. Symmetric files are
// expanded to full storage.
SparseMatrix read_matrix_market(std::istream& is);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

}  // namespace biotfs
