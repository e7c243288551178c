// Monomial-basis matrix compressions: M_f, transformation operators X_F,
// the left shift S and its Blaschke calculus Bbar(S), D_beta conjugations,
// diagonal factors, and Gram matrices.
//
// Convention: entry (i,j) = coefficient of z^i in the image of z^j
// (columns are images of monomials).
#pragma once

#include <Eigen/Dense>

#include "core/series.hpp"

namespace hlab {

using Matrix = Eigen::MatrixXcd;

// Lower-triangular Toeplitz compression of M_f; requires f order >= N.
Matrix mult_matrix(const PowerSeries& f, int N);

// Column j = coefficients of F[j]; requires |F| >= N and each order >= N.
Matrix transformation_matrix(const std::vector<PowerSeries>& F, int N);

enum class ScaleDirection { Beta, BetaInverse };
// Beta: entry(i,j) *= beta_i/beta_j (i.e. D_beta X D_beta^-1); BetaInverse the
// reciprocal. Ratios are formed as exp(log beta_i - log beta_j) so extreme
// weights cannot overflow.
Matrix scale_conjugate(const Matrix& X, const WeightSequence& seq, ScaleDirection dir);

Matrix left_shift_matrix(int N);  // superdiagonal ones: the backward shift S

// Upper-triangular Toeplitz entry(i,j) = conj(Bhat(j-i)): the compression of
// the functional calculus sum_k conj(Bhat(k)) S^k.
Matrix bbar_of_S(const BlaschkeProduct& b, int N);

// Gram matrix entry(i,j) = <f_j, f_i>_{H^2_beta}; Hermitian PSD.
Matrix gram(const std::vector<PowerSeries>& F, const WeightSequence& seq);
// The factored form (D_beta^-1 X* D_beta)(D_beta X D_beta^-1) built from the
// raw transformation matrix X_F; equals gram() of the beta-normalized family.
Matrix gram_factored(const std::vector<PowerSeries>& F, const WeightSequence& seq);
std::vector<PowerSeries> normalize_family(std::vector<PowerSeries> F, const WeightSequence& seq);

Matrix diag_dw(const WeightSequence& seq, int N);  // diag(w_1..w_N)
Matrix diag_dplus(int N);                          // diag((k+2)/(k+1)) = 2, 3/2, 4/3, ...

}  // namespace hlab
