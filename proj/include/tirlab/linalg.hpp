#pragma once

#include <cstddef>
#include <vector>

#include "tirlab/matrix.hpp"

namespace tirlab {

/// Singular values in non-increasing order, length min(rows, cols).
struct SingularSpectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Eigenvalues of a symmetric positive semidefinite matrix, sorted
/// descending. Cyclic Jacobi rotations; small negative values from rounding
/// (above -1e-9) clamp to zero, anything below that is rejected.
std::vector<double> sym_eigenvalues(const Matrix& g);

/// Singular values via the eigendecomposition of the smaller Gram matrix
/// (P^T P when cols <= rows, P P^T otherwise).
SingularSpectrum singular_values(const Matrix& p);

/// Sum of singular values.
double nuclear_norm(const Matrix& p);

/// Entrywise root-sum-of-squares.
double frobenius_norm(const Matrix& p);

/// Sum of sigma_i^(1/k) for k >= 1. At k = 1 this is the nuclear norm;
/// larger k damps the contribution of large singular values.
double weighted_nuclear_norm(const Matrix& p, double k);

/// Linear decay of the weighting exponent from k_ini at round 0 to exactly
/// 1 at round `total_rounds`.
double k_schedule(long round, long total_rounds, double k_ini);

Matrix matmul(const Matrix& a, const Matrix& b);

}  // namespace tirlab
