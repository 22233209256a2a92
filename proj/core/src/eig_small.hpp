#pragma once

// Internal eigenvalue helpers for the small dense matrices this library
// works with. Not installed.

#include <complex>
#include <vector>

#include "liedirac/matrix.hpp"

namespace liedirac::detail {

/// Characteristic polynomial coefficients by Faddeev-LeVerrier:
/// p(z) = z^n + c[1] z^{n-1} + ... + c[n], returned as c[0..n] with c[0] = 1.
std::vector<double> char_poly(const Matrix& a);

/// All eigenvalues via Durand-Kerner iteration on the characteristic
/// polynomial, conjugate-paired (the input is real). Adequate for the
/// well-separated spectra the decomposition contracts require; clustered
/// spectra are the caller's responsibility to detect.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// Jacobi eigendecomposition of a symmetric matrix: s = evec * diag(eval) *
/// evec^t with evec orthogonal.
void jacobi_symmetric(const Matrix& s, Matrix& evec, std::vector<double>& eval);

/// Nullspace basis of a complex matrix with the given rank tolerance
/// (relative to the largest pivot). Columns are orthonormal.
std::vector<std::vector<std::complex<double>>> complex_nullspace(const ComplexMatrix& m,
                                                                 double rel_tol);

}  // namespace liedirac::detail
