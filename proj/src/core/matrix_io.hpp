// Binary matrix dump: 16-byte header (magic "HLAB", u32 N, 8 reserved bytes),
// then the N x N matrix row-major as little-endian float64 re/im pairs.
// JSON export is provided for small matrices.
#pragma once

#include <string>

#include "core/operators.hpp"

namespace hlab {

void write_matrix(const std::string& path, const Matrix& M);
Matrix read_matrix(const std::string& path);

// [[re,im], ...] rows; refuses N > 64 to keep reports readable.
std::string matrix_to_json(const Matrix& M);

}  // namespace hlab
