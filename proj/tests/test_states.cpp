#include <cmath>

#include <doctest.h>

#include "entlab/entropy.hpp"
#include "entlab/rng.hpp"
#include "entlab/states.hpp"
#include "test_support.hpp"

using namespace entlab;
using testutil::kLn2;

TEST_CASE("partial_trace of a product state recovers the factors") {
  DensityMatrix rho1 = testutil::diagonal_density({0.25, 0.75},
                                                  SubsystemDims({2}));
  DensityMatrix rho2 = testutil::diagonal_density({0.6, 0.4},
                                                  SubsystemDims({2}));
  DensityMatrix product(tensor(rho1.mat(), rho2.mat()),
                        SubsystemDims({2, 2}));
  CHECK((partial_trace(product, {1}).mat() - rho1.mat()).norm() < 1e-14);
  CHECK((partial_trace(product, {0}).mat() - rho2.mat()).norm() < 1e-14);
}

TEST_CASE("partial_trace of the Bell state is maximally mixed") {
  DensityMatrix bell = testutil::bell_state().to_density();
  DensityMatrix reduced = partial_trace(bell, {1});
  CHECK((reduced.mat() - Matrix::Identity(2, 2) * 0.5).norm() < 1e-14);
}

TEST_CASE("partial_trace composes") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensityMatrix rho = random_density(SubsystemDims({2, 2, 2}), 8, seed);
    DensityMatrix two_step =
        partial_trace(partial_trace(rho, {2}), {1});
    DensityMatrix one_step = partial_trace(rho, {1, 2});
    CHECK((two_step.mat() - one_step.mat()).norm() < 1e-12);
  }
}

TEST_CASE("partial_trace preserves trace and positivity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix rho =
        random_density(SubsystemDims({2, 3, 2}), 5 + static_cast<int>(seed % 7),
                       700 + seed);
    DensityMatrix reduced = partial_trace(rho, {1});
    CHECK(std::abs(reduced.mat().trace().real() - 1.0) < 1e-12);
    auto spec = eig_hermitian(reduced.mat());
    CHECK(spec.eigenvalues.minCoeff() > -1e-10);
  }
}

TEST_CASE("partial_trace rejects empty and full subsystem sets") {
  DensityMatrix rho = testutil::maximally_mixed(4, SubsystemDims({2, 2}));
  CHECK_THROWS_AS(partial_trace(rho, {}), BadSubsystemSet);
  CHECK_THROWS_AS(partial_trace(rho, {0, 1}), BadSubsystemSet);
  CHECK_THROWS_AS(partial_trace(rho, {2}), BadSubsystemSet);
}

TEST_CASE("purify a pure state appends a trivial ancilla") {
  PureState psi = random_pure(SubsystemDims({3}), 4);
  PureState purified = purify(psi.to_density());
  CHECK(purified.dims().dim(0) == 3);
  CHECK(purified.dims().dim(1) == 1);
  // Equal up to the global phase fixed by the eigensolver.
  Complex overlap = 0.0;
  for (int i = 0; i < 3; ++i) {
    overlap += std::conj(purified.vec()(i)) * psi.vec()(i);
  }
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
}

TEST_CASE("purify the maximally mixed qubit gives a Bell pair") {
  PureState purified = purify(testutil::maximally_mixed(2, SubsystemDims({2})));
  CHECK(purified.dims().dim(0) == 2);
  CHECK(purified.dims().dim(1) == 2);
  CHECK((purified.vec() - testutil::bell_state().vec()).norm() < 1e-12);
}

TEST_CASE("purification round-trips through the partial trace") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int rank = 1 + static_cast<int>(seed % 4);
    DensityMatrix rho = random_density(SubsystemDims({4}), rank, 50 + seed);
    PureState purified = purify(rho);
    CHECK(purified.dims().dim(1) == rank);
    DensityMatrix recovered = partial_trace(purified.to_density(), {1});
    CHECK((recovered.mat() - rho.mat()).norm() < 1e-10);
  }
}

TEST_CASE("reduced spectra of a bipartite pure state agree") {
  auto bell = reduced_spectra_match(testutil::bell_state());
  CHECK(bell.match);
  CHECK(bell.max_gap < 1e-14);

  // Product state: both spectra are {1}.
  Vector v = Vector::Zero(6);
  v(0) = 1.0;
  auto product = reduced_spectra_match(PureState(v, SubsystemDims({2, 3})));
  CHECK(product.match);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto haar = reduced_spectra_match(random_pure(SubsystemDims({3, 5}), seed));
    CHECK(haar.match);
    CHECK(haar.max_gap < 1e-9);
  }
}

TEST_CASE("reduced_spectra_match requires a bipartite state") {
  CHECK_THROWS_AS(reduced_spectra_match(testutil::ghz_state()), BadArity);
}

TEST_CASE("random_density with rank 1 is idempotent") {
  DensityMatrix rho = random_density(SubsystemDims({2, 2}), 1, 9);
  CHECK((rho.mat() * rho.mat() - rho.mat()).norm() < 1e-10);
}

TEST_CASE("random_density is normalized, PSD and hits the requested rank") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensityMatrix rho = random_density(SubsystemDims({2, 2}), 2, 300 + seed);
    CHECK(std::abs(rho.mat().trace().real() - 1.0) < 1e-12);
    auto spec = eig_hermitian(rho.mat());
    CHECK(spec.eigenvalues.minCoeff() > -1e-12);
    int rank = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
      if (spec.eigenvalues(i) > 1e-10) ++rank;
    }
    CHECK(rank == 2);
  }
  CHECK_THROWS_AS(random_density(SubsystemDims({2, 2}), 5, 0), BadRank);
  CHECK_THROWS_AS(random_density(SubsystemDims({2, 2}), 0, 0), BadRank);
}

TEST_CASE("random_density is deterministic in its seed") {
  DensityMatrix a = random_density(SubsystemDims({2, 2}), 3, 77);
  DensityMatrix b = random_density(SubsystemDims({2, 2}), 3, 77);
  CHECK((a.mat() - b.mat()).norm() == 0.0);
}

TEST_CASE("separable_mixture with one term is a plain tensor product") {
  DensityMatrix rho1 = testutil::diagonal_density({0.2, 0.8}, SubsystemDims({2}));
  DensityMatrix rho2 = testutil::maximally_mixed(2, SubsystemDims({2}));
  RealVector w(1);
  w(0) = 1.0;
  DensityMatrix mix = separable_mixture(w, {{rho1, rho2}});
  CHECK((mix.mat() - tensor(rho1.mat(), rho2.mat())).norm() < 1e-14);
}

TEST_CASE("separable_mixture of orthogonal products is diagonal") {
  DensityMatrix zero = testutil::diagonal_density({1.0, 0.0}, SubsystemDims({2}));
  DensityMatrix one = testutil::diagonal_density({0.0, 1.0}, SubsystemDims({2}));
  RealVector w(2);
  w << 0.5, 0.5;
  DensityMatrix mix = separable_mixture(w, {{zero, zero}, {one, one}});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK((mix.mat() - expected).norm() < 1e-14);
}

TEST_CASE("separable mixtures have nonnegative conditional entropies") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CounterRng rng(4000 + seed);
    const int terms = 2 + static_cast<int>(rng.next_u64() % 3);
    RealVector w(terms);
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) {
      w(k) = 0.1 + rng.uniform();
      sum += w(k);
    }
    w /= sum;
    std::vector<std::pair<DensityMatrix, DensityMatrix>> factors;
    for (int k = 0; k < terms; ++k) {
      factors.emplace_back(
          random_density(SubsystemDims({2}), 2, seed * 31 + k),
          random_density(SubsystemDims({2}), 2, seed * 31 + 17 + k));
    }
    auto [cond1, cond2] = conditional_entropies(separable_mixture(w, factors));
    CHECK(cond1 >= -1e-8);
    CHECK(cond2 >= -1e-8);
  }
}

TEST_CASE("separable_mixture validates weights and dims") {
  DensityMatrix q = testutil::maximally_mixed(2, SubsystemDims({2}));
  DensityMatrix t = testutil::maximally_mixed(3, SubsystemDims({3}));
  RealVector bad(2);
  bad << 0.5, 0.4;
  CHECK_THROWS_AS(separable_mixture(bad, {{q, q}, {q, q}}), WeightMismatch);
  RealVector good(2);
  good << 0.5, 0.5;
  CHECK_THROWS_AS(separable_mixture(good, {{q, q}, {t, q}}), DimMismatch);
}

TEST_CASE("permute_subsystems identity and swap") {
  DensityMatrix rho1 = testutil::diagonal_density({0.2, 0.8}, SubsystemDims({2}));
  DensityMatrix rho2 = testutil::diagonal_density({0.6, 0.3, 0.1},
                                                  SubsystemDims({3}));
  DensityMatrix product(tensor(rho1.mat(), rho2.mat()), SubsystemDims({2, 3}));

  DensityMatrix same = permute_subsystems(product, {0, 1});
  CHECK((same.mat() - product.mat()).norm() == 0.0);

  DensityMatrix swapped = permute_subsystems(product, {1, 0});
  CHECK((swapped.mat() - tensor(rho2.mat(), rho1.mat())).norm() < 1e-14);
}

TEST_CASE("permute_subsystems round-trips exactly") {
  DensityMatrix rho = random_density(SubsystemDims({2, 3, 2}), 12, 21);
  DensityMatrix once = permute_subsystems(rho, {2, 0, 1});
  // {2,0,1} sends new slot i to old slot perm[i]; its inverse is {1,2,0}.
  DensityMatrix back = permute_subsystems(once, {1, 2, 0});
  CHECK((back.mat() - rho.mat()).norm() == 0.0);
  CHECK_THROWS_AS(permute_subsystems(rho, {0, 1, 1}), BadPermutation);
  CHECK_THROWS_AS(permute_subsystems(rho, {0, 1}), BadPermutation);
}
