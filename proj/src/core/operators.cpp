#include "core/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace hlab {

Matrix mult_matrix(const PowerSeries& f, int N) {
  if (N < 1) throw std::invalid_argument("mult_matrix: N must be >= 1");
  if (int(f.size()) < N) throw std::invalid_argument("mult_matrix: series order below N");
  Matrix M = Matrix::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = j; i < N; ++i) M(i, j) = f[size_t(i - j)];
  return M;
}

Matrix transformation_matrix(const std::vector<PowerSeries>& F, int N) {
  if (N < 1) throw std::invalid_argument("transformation_matrix: N must be >= 1");
  if (int(F.size()) < N) throw std::invalid_argument("transformation_matrix: needs >= N series");
  Matrix X(N, N);
  for (int j = 0; j < N; ++j) {
    if (int(F[size_t(j)].size()) < N)
      throw std::invalid_argument("transformation_matrix: series order below N");
    for (int i = 0; i < N; ++i) X(i, j) = F[size_t(j)][size_t(i)];
  }
  return X;
}

Matrix scale_conjugate(const Matrix& X, const WeightSequence& seq, ScaleDirection dir) {
  const long rows = X.rows(), cols = X.cols();
  std::vector<double> lb(size_t(std::max(rows, cols)));
  for (long k = 0; k < long(lb.size()); ++k) lb[size_t(k)] = seq.log_beta(k);
  const double sign = dir == ScaleDirection::Beta ? 1.0 : -1.0;
  Matrix Y(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i)
      Y(i, j) = X(i, j) * std::exp(sign * (lb[size_t(i)] - lb[size_t(j)]));
  return Y;
}

Matrix left_shift_matrix(int N) {
  if (N < 1) throw std::invalid_argument("left_shift_matrix: N must be >= 1");
  Matrix S = Matrix::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i) S(i, i + 1) = 1.0;
  return S;
}

Matrix bbar_of_S(const BlaschkeProduct& b, int N) {
  if (N < 1) throw std::invalid_argument("bbar_of_S: N must be >= 1");
  const PowerSeries bhat = blaschke_series(b, N);
  Matrix M = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) M(i, j) = std::conj(bhat[size_t(j - i)]);
  return M;
}

namespace {

// D_beta X_F as a dense matrix: row k of the coefficient matrix scaled by beta_k.
Matrix scaled_coefficient_matrix(const std::vector<PowerSeries>& F, const WeightSequence& seq) {
  if (F.empty()) throw std::invalid_argument("gram: empty family");
  const size_t order = F[0].size();
  for (const PowerSeries& f : F)
    if (f.size() != order) throw std::invalid_argument("gram: series orders differ");
  Matrix DX(long(order), long(F.size()));
  for (long j = 0; j < long(F.size()); ++j)
    for (long k = 0; k < long(order); ++k)
      DX(k, j) = seq.beta(k) * F[size_t(j)][size_t(k)];
  return DX;
}

}  // namespace

Matrix gram(const std::vector<PowerSeries>& F, const WeightSequence& seq) {
  const Matrix DX = scaled_coefficient_matrix(F, seq);
  return DX.adjoint() * DX;  // entry(i,j) = <f_j, f_i>
}

Matrix gram_factored(const std::vector<PowerSeries>& F, const WeightSequence& seq) {
  if (F.empty()) throw std::invalid_argument("gram_factored: empty family");
  const size_t order = F[0].size();
  Matrix X(long(order), long(F.size()));
  for (long j = 0; j < long(F.size()); ++j) {
    if (F[size_t(j)].size() != order)
      throw std::invalid_argument("gram_factored: series orders differ");
    for (long k = 0; k < long(order); ++k) X(k, j) = F[size_t(j)][size_t(k)];
  }
  const Matrix left = scale_conjugate(X.adjoint(), seq, ScaleDirection::BetaInverse);
  const Matrix right = scale_conjugate(X, seq, ScaleDirection::Beta);
  return left * right;
}

std::vector<PowerSeries> normalize_family(std::vector<PowerSeries> F, const WeightSequence& seq) {
  for (size_t n = 0; n < F.size(); ++n) {
    const double s = std::exp(-seq.log_beta(long(n)));
    for (cplx& c : F[n]) c *= s;
  }
  return F;
}

Matrix diag_dw(const WeightSequence& seq, int N) {
  if (N < 1) throw std::invalid_argument("diag_dw: N must be >= 1");
  Matrix D = Matrix::Zero(N, N);
  for (int k = 0; k < N; ++k) D(k, k) = seq.w(k + 1);
  return D;
}

Matrix diag_dplus(int N) {
  if (N < 1) throw std::invalid_argument("diag_dplus: N must be >= 1");
  Matrix D = Matrix::Zero(N, N);
  for (int k = 0; k < N; ++k) D(k, k) = double(k + 2) / double(k + 1);
  return D;
}

}  // namespace hlab
