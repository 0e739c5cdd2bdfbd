#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <array>
#include <cstddef>
#include <vector>

#include "tirlab/dynamics.hpp"
#include "tirlab/matrix.hpp"
#include "tirlab/rng.hpp"

namespace oracle {

// Closed-form eigenvalues of [[a, b], [b, c]], descending.
std::array<double, 2> eig2x2(double a, double b, double c);

// Closed-form eigenvalues of a symmetric 3x3 matrix (trigonometric solution
// of the characteristic cubic), descending.
std::array<double, 3> eig3x3(const tirlab::Matrix& m);

// Brute-force classical Jacobi: pick the largest off-diagonal pivot, apply
// the rotation as an explicit matrix product, repeat to machine precision.
std::vector<double> sym_eigenvalues(tirlab::Matrix a);

// Singular values as square roots of the Gram eigenvalues, via the
// brute-force eigensolver above, descending.
std::vector<double> singular_values(const tirlab::Matrix& p);

// Plain scalar re-implementation of the two-layer forward map.
std::vector<double> mlp_forward(const tirlab::Mlp& net, const std::vector<double>& x);

// Mean squared-error loss over a batch, evaluated with the scalar forward.
double mlp_batch_loss(const tirlab::Mlp& net, const std::vector<std::vector<double>>& xs,
                      const std::vector<std::vector<double>>& ys);

// Central finite differences of the mean batch loss for every parameter.
tirlab::Mlp finite_diff_gradients(const tirlab::Mlp& net,
                                  const std::vector<std::vector<double>>& xs,
                                  const std::vector<std::vector<double>>& ys, double eps);

// Mean over output dimensions of the across-member population variance.
double variance_reward(const std::vector<std::vector<double>>& predictions);

// Random dense matrix with entries uniform in [lo, hi].
tirlab::Matrix random_matrix(tirlab::Rng& rng, std::size_t rows, std::size_t cols, double lo,
                             double hi);

// Random symmetric PSD matrix (B^T B for random B).
tirlab::Matrix random_psd(tirlab::Rng& rng, std::size_t n);

// Random orthogonal matrix composed from plane rotations.
tirlab::Matrix random_orthogonal(tirlab::Rng& rng, std::size_t n);

}  // namespace oracle
