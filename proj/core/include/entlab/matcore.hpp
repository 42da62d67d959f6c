#pragma once

#include <cstdint>

#include "entlab/common.hpp"

namespace entlab {

/// Result of a Hermitian eigendecomposition: ascending eigenvalues and the
/// matching orthonormal eigenvector columns, in a deterministic order (each
/// column's largest-magnitude entry is made real positive; columns of equal
/// eigenvalue are sorted lexicographically).
struct HermitianSpectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// Frobenius distance between m and its adjoint.
double hermiticity_error(const Matrix& m);

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

/// Eigendecomposition of a Hermitian matrix.
/// Throws NotHermitian if ||m - m^dag||_F > 1e-8, NumericalFailure if the
/// iteration does not converge.
HermitianSpectrum eig_hermitian(const Matrix& m);

/// Kronecker product, row index convention (a, b) -> a * dim(B) + b.
/// Throws DimensionOverflow past the configured cap.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Haar-distributed n x n unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phase fix. Deterministic in (n, seed).
Matrix haar_unitary(int n, std::uint64_t seed);

/// First r columns of haar_unitary(m, seed); columns orthonormal.
Matrix haar_isometry(int m, int r, std::uint64_t seed);

}  // namespace entlab
