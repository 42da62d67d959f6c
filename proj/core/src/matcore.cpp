#include "entlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "entlab/rng.hpp"

namespace entlab {

double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

bool all_finite(const Vector& v) {
  return v.allFinite();
}

namespace {

// Multiplies each column so its largest-magnitude entry becomes real
// positive; ties in magnitude go to the lowest index.
void fix_column_phases(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      double mag = std::abs(vectors(r, c));
      if (mag > best + 1e-15) {
        best = mag;
        pivot = r;
      }
    }
    Complex p = vectors(pivot, c);
    if (std::abs(p) > 0.0) {
      vectors.col(c) *= std::conj(p) / std::abs(p);
    }
  }
}

bool lex_greater(const Matrix& vectors, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
    const Complex& x = vectors(r, a);
    const Complex& y = vectors(r, b);
    if (x.real() != y.real()) return x.real() > y.real();
    if (x.imag() != y.imag()) return x.imag() > y.imag();
  }
  return false;
}

// Columns of equal eigenvalue are interchangeable; order them descending
// lexicographically so structured inputs (identity, diagonal) come out in
// the standard basis order.
void sort_degenerate_columns(RealVector& values, Matrix& vectors) {
  const Eigen::Index n = values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values(end) == values(start)) ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> order(static_cast<std::size_t>(end - start));
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return lex_greater(vectors, a, b);
                       });
      Matrix block(vectors.rows(), end - start);
      for (Eigen::Index k = 0; k < end - start; ++k) {
        block.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
      }
      vectors.middleCols(start, end - start) = block;
    }
    start = end;
  }
}

}  // namespace

HermitianSpectrum eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw BadShape("eig_hermitian needs a nonempty square matrix");
  }
  if (!all_finite(m)) {
    throw NotHermitian("matrix has non-finite entries");
  }
  if (hermiticity_error(m) > kHermitianTol) {
    throw NotHermitian("Frobenius distance to the adjoint exceeds 1e-8");
  }
  // Symmetrize so roundoff asymmetry cannot leak into the spectrum.
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge");
  }
  HermitianSpectrum spectrum{solver.eigenvalues(), solver.eigenvectors()};
  fix_column_phases(spectrum.eigenvectors);
  sort_degenerate_columns(spectrum.eigenvalues, spectrum.eigenvectors);
  return spectrum;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw BadShape("tensor expects square factors");
  }
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  if (na * nb > max_dim()) {
    throw DimensionOverflow("tensor product dimension exceeds the cap");
  }
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    }
  }
  return out;
}

Matrix haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw BadShape("haar_unitary needs n >= 1");
  if (n > max_dim()) {
    throw DimensionOverflow("haar_unitary dimension exceeds the cap");
  }
  CounterRng rng(seed);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phases with the R diagonal so the distribution is Haar, not
  // merely unitary (Mezzadri's recipe).
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Matrix haar_isometry(int m, int r, std::uint64_t seed) {
  if (r < 1 || m < r) throw BadShape("haar_isometry needs m >= r >= 1");
  return haar_unitary(m, seed).leftCols(r);
}

}  // namespace entlab
