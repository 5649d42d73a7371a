#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dpa {

// Small dense symmetric/triangular helpers; everything here works on
// row-major n x n matrices stored in std::vector<double>. Window sizes top
// out around a hundred, so no blocking or pivoting.

/// Solves L * X = B in place for unit-lower-triangular L. B holds ncols
/// right-hand sides as columns and is overwritten with X.
void solve_unit_lower(std::size_t n, std::span<const double> l,
                      std::span<double> b, std::size_t ncols);

/// L^{-1} * A * L^{-T} for unit-lower-triangular L and symmetric A.
std::vector<double> sandwich_unit_lower_inverse(std::size_t n,
                                                std::span<const double> l,
                                                std::span<const double> a);

/// Cholesky factor (lower) of a symmetric positive definite matrix.
/// Returns false if a nonpositive pivot shows up.
bool cholesky(std::size_t n, std::span<const double> a,
              std::vector<double>& lower);

/// x^T A^{-1} x via a precomputed Cholesky factor of A.
double quadratic_form_inverse(std::size_t n, std::span<const double> lower,
                              std::span<const double> x);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(std::size_t n,
                                          std::span<const double> a);

/// max |A - A^T| entry.
double max_asymmetry(std::size_t n, std::span<const double> a);

}  // namespace dpa
