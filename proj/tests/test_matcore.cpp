#include <cmath>
#include <complex>

#include <doctest.h>

#include "entlab/matcore.hpp"
#include "entlab/rng.hpp"
#include "test_support.hpp"

using namespace entlab;

namespace {

Matrix random_hermitian(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = rng.complex_normal();
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("eig_hermitian on diagonal input sorts ascending") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  auto spec = eig_hermitian(m);
  CHECK(spec.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian on the identity returns the standard basis") {
  Matrix id = Matrix::Identity(4, 4);
  auto spec = eig_hermitian(id);
  for (int i = 0; i < 4; ++i) {
    CHECK(spec.eigenvalues(i) == doctest::Approx(1.0));
  }
  CHECK((spec.eigenvectors - id).norm() < 1e-12);
}

TEST_CASE("eig_hermitian matches the 2x2 closed form") {
  // Oracle: eigenvalues of [[a, c], [conj(c), b]] are
  // (a+b)/2 +- sqrt(((a-b)/2)^2 + |c|^2).
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  const double mean = 0.0;
  const double split = std::sqrt(0.0 + 1.0);
  auto spec = eig_hermitian(m);
  CHECK(spec.eigenvalues(0) == doctest::Approx(mean - split).epsilon(1e-12));
  CHECK(spec.eigenvalues(1) == doctest::Approx(mean + split).epsilon(1e-12));
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(eig_hermitian(m), NotHermitian);
}

TEST_CASE("eig_hermitian reconstruction and trace identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 15);
    Matrix m = random_hermitian(n, 1000 + seed);
    auto spec = eig_hermitian(m);
    Matrix rebuilt = spec.eigenvectors *
                     spec.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                     spec.eigenvectors.adjoint();
    CHECK((rebuilt - m).norm() <= 1e-10 * std::max(1.0, m.norm()));
    CHECK((spec.eigenvectors.adjoint() * spec.eigenvectors -
           Matrix::Identity(n, n))
              .norm() < 1e-10);
    CHECK(spec.eigenvalues.sum() ==
          doctest::Approx(m.trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("tensor of identities is the identity") {
  Matrix i2 = Matrix::Identity(2, 2);
  CHECK((tensor(i2, i2) - Matrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("tensor of diagonals follows the row-major convention") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 0.3;
  b(1, 1) = 0.7;
  Matrix t = tensor(a, b);
  CHECK(t(0, 0) == Complex(0.3, 0.0));
  CHECK(t(1, 1) == Complex(0.7, 0.0));
  CHECK(t(2, 2) == Complex(0.0, 0.0));
  CHECK(t(3, 3) == Complex(0.0, 0.0));
}

TEST_CASE("tensor trace factorizes") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(seed);
    Matrix a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        a(i, j) = rng.complex_normal();
        b(i, j) = rng.complex_normal();
      }
    }
    // Direct multiply-and-sum oracle.
    Complex tra = 0.0, trb = 0.0;
    for (int i = 0; i < 3; ++i) {
      tra += a(i, i);
      trb += b(i, i);
    }
    CHECK(std::abs(tensor(a, b).trace() - tra * trb) < 1e-12);
  }
}

TEST_CASE("tensor is associative with exact entries") {
  CounterRng rng(5);
  Matrix a(2, 2), b(3, 3), c(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = rng.complex_normal();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = rng.complex_normal();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = rng.complex_normal();
  Matrix left = tensor(tensor(a, b), c);
  Matrix right = tensor(a, tensor(b, c));
  CHECK((left - right).norm() == 0.0);
}

TEST_CASE("tensor respects the dimension cap") {
  Matrix a = Matrix::Identity(70, 70);
  Matrix b = Matrix::Identity(60, 60);
  CHECK_THROWS_AS(tensor(a, b), DimensionOverflow);
}

TEST_CASE("haar_unitary n=1 gives a unit-modulus scalar") {
  Matrix u = haar_unitary(1, 99);
  CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("haar_unitary is unitary across sizes and seeds") {
  for (int n = 1; n <= 16; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Matrix u = haar_unitary(n, seed);
      CHECK((u.adjoint() * u - Matrix::Identity(n, n)).norm() < 1e-10);
    }
  }
}

TEST_CASE("haar_unitary is a deterministic function of (n, seed)") {
  Matrix a = haar_unitary(8, 12345);
  Matrix b = haar_unitary(8, 12345);
  CHECK((a - b).norm() == 0.0);
  Matrix c = haar_unitary(8, 12346);
  CHECK((a - c).norm() > 1e-3);
}

TEST_CASE("haar_isometry columns are orthonormal") {
  Matrix w = haar_isometry(6, 2, 7);
  CHECK((w.adjoint() * w - Matrix::Identity(2, 2)).norm() < 1e-10);
  CHECK(w.rows() == 6);
  CHECK(w.cols() == 2);
}

TEST_CASE("haar_isometry with m=r is the full unitary") {
  Matrix w = haar_isometry(5, 5, 3);
  Matrix u = haar_unitary(5, 3);
  CHECK((w - u).norm() == 0.0);
}

TEST_CASE("haar_isometry rejects m < r") {
  CHECK_THROWS_AS(haar_isometry(2, 3, 0), BadShape);
}

TEST_CASE("haar_isometry has full column rank") {
  // Singular-value oracle, independent of the Hermitian eigensolver.
  Matrix w = haar_isometry(5, 3, 11);
  Eigen::JacobiSVD<Matrix> svd(w);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1e-10) ++rank;
  }
  CHECK(rank == 3);
}

TEST_CASE("counter rng is reproducible and stateless across copies") {
  CounterRng a(42);
  CounterRng b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  double mean = 0.0;
  CounterRng c(7);
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) mean += c.normal();
  mean /= samples;
  CHECK(std::abs(mean) < 0.05);
}
