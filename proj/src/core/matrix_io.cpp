#include "core/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "matrix dump assumes a little-endian host");

namespace hlab {

namespace {
constexpr char kMagic[4] = {'H', 'L', 'A', 'B'};
}

void write_matrix(const std::string& path, const Matrix& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("write_matrix: matrix must be square");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");

  char header[16] = {};
  std::memcpy(header, kMagic, 4);
  const std::uint32_t n = static_cast<std::uint32_t>(M.rows());
  std::memcpy(header + 4, &n, 4);
  out.write(header, sizeof header);

  std::vector<double> row(2 * static_cast<std::size_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      row[2 * j] = M(i, j).real();
      row[2 * j + 1] = M(i, j).imag();
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

  char header[16] = {};
  in.read(header, sizeof header);
  if (!in || std::memcmp(header, kMagic, 4) != 0)
    throw std::runtime_error("'" + path + "' is not a matrix dump (bad magic)");
  std::uint32_t n = 0;
  std::memcpy(&n, header + 4, 4);

  Matrix M(n, n);
  std::vector<double> row(2 * static_cast<std::size_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
    if (!in) throw std::runtime_error("'" + path + "' is truncated");
    for (std::uint32_t j = 0; j < n; ++j)
      M(i, j) = cplx(row[2 * j], row[2 * j + 1]);
  }
  return M;
}

std::string matrix_to_json(const Matrix& M) {
  if (M.rows() > 64 || M.cols() > 64)
    throw std::invalid_argument("matrix_to_json: only matrices up to 64x64");
  std::ostringstream out;
  out.precision(17);
  out << '[';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (i) out << ',';
    out << '[';
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out << ',';
      out << '[' << M(i, j).real() << ',' << M(i, j).imag() << ']';
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace hlab
