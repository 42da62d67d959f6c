#include <cmath>

#include <doctest.h>

#include "entlab/entropy.hpp"
#include "entlab/rng.hpp"
#include "test_support.hpp"

using namespace entlab;
using testutil::kLn2;

namespace {

// (rho_A on (1,3l)) ox (rho_B on (3r,2)) rearranged to subsystem order
// (1, 2, 3=(3l,3r)): the structure for which strong subadditivity is tight.
DensityMatrix equality_structured_state(std::uint64_t seed) {
  DensityMatrix rho_a = random_density(SubsystemDims({2, 2}), 4, seed);
  DensityMatrix rho_b = random_density(SubsystemDims({2, 2}), 4, seed + 1);
  DensityMatrix joint(tensor(rho_a.mat(), rho_b.mat()),
                      SubsystemDims({2, 2, 2, 2}));
  // (1, 3l, 3r, 2) -> (1, 2, 3l, 3r)
  DensityMatrix ordered = permute_subsystems(joint, {0, 3, 1, 2});
  return DensityMatrix(ordered.mat(), SubsystemDims({2, 2, 4}));
}

}  // namespace

TEST_CASE("entropy of a pure state vanishes") {
  CHECK(von_neumann_entropy(testutil::bell_state().to_density()) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("entropy of the maximally mixed qubit is ln 2") {
  CHECK(von_neumann_entropy(testutil::maximally_mixed(2, SubsystemDims({2}))) ==
        doctest::Approx(kLn2).epsilon(1e-12));
}

TEST_CASE("entropy matches the scalar oracle on diag(0.9, 0.1)") {
  const double oracle = testutil::shannon_entropy({0.9, 0.1});
  DensityMatrix rho = testutil::diagonal_density({0.9, 0.1}, SubsystemDims({2}));
  CHECK(von_neumann_entropy(rho) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(std::abs(oracle - 0.3250830) < 1e-6);
}

TEST_CASE("entropy stays within [0, ln dim]") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    DensityMatrix rho = random_density(
        SubsystemDims({2, 3}), 1 + static_cast<int>(seed % 6), 200 + seed);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= -1e-10);
    CHECK(s <= std::log(6.0) + 1e-10);
  }
}

TEST_CASE("conditional entropies of a product state are the marginals") {
  DensityMatrix rho1 = testutil::diagonal_density({0.9, 0.1}, SubsystemDims({2}));
  DensityMatrix rho2 = testutil::maximally_mixed(2, SubsystemDims({2}));
  DensityMatrix product(tensor(rho1.mat(), rho2.mat()), SubsystemDims({2, 2}));
  auto [cond1, cond2] = conditional_entropies(product);
  CHECK(cond1 == doctest::Approx(kLn2).epsilon(1e-10));
  CHECK(cond2 == doctest::Approx(testutil::shannon_entropy({0.9, 0.1}))
                     .epsilon(1e-10));
}

TEST_CASE("conditional entropies of the Bell state are negative") {
  auto [cond1, cond2] = conditional_entropies(testutil::bell_state().to_density());
  CHECK(cond1 == doctest::Approx(-kLn2).epsilon(1e-10));
  CHECK(cond2 == doctest::Approx(-kLn2).epsilon(1e-10));
}

TEST_CASE("cmi vanishes on product tripartite states") {
  DensityMatrix a = random_density(SubsystemDims({2}), 2, 1);
  DensityMatrix b = random_density(SubsystemDims({2}), 2, 2);
  DensityMatrix c = random_density(SubsystemDims({2}), 2, 3);
  DensityMatrix product(tensor(tensor(a.mat(), b.mat()), c.mat()),
                        SubsystemDims({2, 2, 2}));
  CHECK(std::abs(cmi(product)) < 1e-9);
}

TEST_CASE("cmi of the GHZ state is ln 2") {
  // Oracle: marginals of GHZ are classical mixtures; S13 = S23 = S3 = ln 2
  // from the spectrum {1/2, 1/2}, S123 = 0, so I(1,2|3) = ln 2.
  const double oracle = testutil::shannon_entropy({0.5, 0.5});
  CHECK(cmi(testutil::ghz_state().to_density()) ==
        doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("cmi of Bell with a trivial third system is 2 ln 2") {
  DensityMatrix bell3(testutil::bell_state().to_density().mat(),
                      SubsystemDims({2, 2, 1}));
  CHECK(cmi(bell3) == doctest::Approx(2.0 * kLn2).epsilon(1e-9));
}

TEST_CASE("strong subadditivity holds on seeded random states") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DensityMatrix rho = random_density(SubsystemDims({2, 2, 2}), 8, 900 + seed);
    auto report = check_ssa(rho);
    CHECK(report.satisfied);
    CHECK(report.slack >= -1e-8);
  }
}

TEST_CASE("strong subadditivity is tight on the equality structure") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto report = check_ssa(equality_structured_state(42 + seed * 10));
    CHECK(std::abs(report.slack) < 1e-8);
  }
}

TEST_CASE("extended ssa reduces to ssa for separable reductions") {
  DensityMatrix zero = testutil::diagonal_density({1.0, 0.0}, SubsystemDims({2}));
  DensityMatrix one = testutil::diagonal_density({0.0, 1.0}, SubsystemDims({2}));
  RealVector w(2);
  w << 0.5, 0.5;
  DensityMatrix sep = separable_mixture(w, {{zero, zero}, {one, one}});
  DensityMatrix sep3(sep.mat(), SubsystemDims({2, 2, 1}));
  auto report = check_extended_ssa(sep3);
  CHECK(report.rhs == doctest::Approx(0.0));
  CHECK(report.satisfied);
}

TEST_CASE("extended ssa is tight on Bell with trivial extension") {
  DensityMatrix bell3(testutil::bell_state().to_density().mat(),
                      SubsystemDims({2, 2, 1}));
  auto report = check_extended_ssa(bell3);
  CHECK(report.lhs == doctest::Approx(2.0 * kLn2).epsilon(1e-9));
  CHECK(report.rhs == doctest::Approx(2.0 * kLn2).epsilon(1e-9));
  CHECK(std::abs(report.slack) < 1e-9);
}

TEST_CASE("extended ssa holds on seeded random states") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DensityMatrix rho = random_density(SubsystemDims({2, 2, 2}), 6, 1300 + seed);
    CHECK(check_extended_ssa(rho).slack >= -1e-8);
  }
}

TEST_CASE("triangle inequality saturates on pure bipartite states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto report = check_triangle(random_pure(SubsystemDims({2, 3}), seed)
                                     .to_density());
    CHECK(std::abs(report.slack) < 1e-9);
  }
}

TEST_CASE("triangle slack on a product is twice the smaller entropy") {
  DensityMatrix rho1 = testutil::diagonal_density({0.9, 0.1}, SubsystemDims({2}));
  DensityMatrix rho2 = testutil::maximally_mixed(2, SubsystemDims({2}));
  DensityMatrix product(tensor(rho1.mat(), rho2.mat()), SubsystemDims({2, 2}));
  const double s1 = testutil::shannon_entropy({0.9, 0.1});
  auto report = check_triangle(product);
  CHECK(report.slack == doctest::Approx(2.0 * std::min(s1, kLn2)).epsilon(1e-9));
}

TEST_CASE("weak monotonicity on a product state has slack 2 S2") {
  DensityMatrix a = testutil::diagonal_density({0.7, 0.3}, SubsystemDims({2}));
  DensityMatrix b = testutil::diagonal_density({0.9, 0.1}, SubsystemDims({2}));
  DensityMatrix c = testutil::maximally_mixed(2, SubsystemDims({2}));
  DensityMatrix product(tensor(tensor(a.mat(), b.mat()), c.mat()),
                        SubsystemDims({2, 2, 2}));
  auto report = check_weak_monotonicity(product);
  CHECK(report.slack ==
        doctest::Approx(2.0 * testutil::shannon_entropy({0.9, 0.1}))
            .epsilon(1e-9));
}

TEST_CASE("weak monotonicity is tight on purifications") {
  // For any pure tripartite state S12 = S3 and S23 = S1.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    DensityMatrix rho = random_density(SubsystemDims({4}),
                                       1 + static_cast<int>(seed % 4),
                                       2200 + seed);
    PureState purified = purify(rho);
    const int r = purified.dims().dim(1);
    DensityMatrix tri(purified.to_density().mat(), SubsystemDims({2, 2, r}));
    auto report = check_weak_monotonicity(tri);
    CHECK(std::abs(report.slack) < 1e-7);
  }
}

TEST_CASE("auxiliary inequalities on the maximally mixed three-qubit state") {
  DensityMatrix rho = testutil::maximally_mixed(8, SubsystemDims({2, 2, 2}));
  auto reports = check_aux_inequalities(rho);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].name == "essa00");
  CHECK(reports[0].slack == doctest::Approx(4.0 * kLn2).epsilon(1e-9));
  CHECK(reports[1].name == "essa0B-left");
  CHECK(reports[1].slack == doctest::Approx(5.0 * kLn2).epsilon(1e-9));
  CHECK(reports[2].name == "essa0B-right");
  CHECK(reports[2].slack == doctest::Approx(3.0 * kLn2).epsilon(1e-9));
}

TEST_CASE("essa0B-right is tight on pure tripartite states") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto reports = check_aux_inequalities(
        random_pure(SubsystemDims({2, 2, 2}), 2600 + seed).to_density());
    CHECK(std::abs(reports[2].slack) < 1e-9);
  }
}

TEST_CASE("auxiliary inequalities hold on seeded random states") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const auto& report :
         check_aux_inequalities(random_density(SubsystemDims({2, 2, 2}), 8,
                                               3000 + seed))) {
      CHECK(report.slack >= -1e-8);
    }
  }
}

TEST_CASE("bounds on the Bell state all equal ln 2") {
  DensityMatrix bell = testutil::bell_state().to_density();
  CHECK(lower_bound_ent(bell) == doctest::Approx(kLn2).epsilon(1e-10));
  CHECK(weaker_bound(bell) == doctest::Approx(kLn2).epsilon(1e-10));
  CHECK(upper_bound_local(bell) == doctest::Approx(kLn2).epsilon(1e-10));
}

TEST_CASE("lower bound vanishes on the maximally mixed two-qubit state") {
  CHECK(lower_bound_ent(testutil::maximally_mixed(4, SubsystemDims({2, 2}))) ==
        doctest::Approx(0.0));
}

TEST_CASE("weaker bound is negative on products") {
  DensityMatrix rho1 = testutil::diagonal_density({0.7, 0.3}, SubsystemDims({2}));
  DensityMatrix rho2 = testutil::diagonal_density({0.6, 0.4}, SubsystemDims({2}));
  DensityMatrix product(tensor(rho1.mat(), rho2.mat()), SubsystemDims({2, 2}));
  const double s1 = testutil::shannon_entropy({0.7, 0.3});
  const double s2 = testutil::shannon_entropy({0.6, 0.4});
  CHECK(weaker_bound(product) ==
        doctest::Approx(-0.5 * (s1 + s2)).epsilon(1e-9));
  CHECK(weaker_bound(product) <= 0.0);
}

TEST_CASE("max bound dominates the averaged bound") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    DensityMatrix rho = random_density(
        SubsystemDims({2, 2}), 1 + static_cast<int>(seed % 4), 3500 + seed);
    CHECK(lower_bound_ent(rho) >= weaker_bound(rho) - 1e-12);
    CHECK(lower_bound_ent(rho) <= upper_bound_local(rho) + 1e-8);
  }
}

TEST_CASE("pure bipartite states embedded trivially saturate extended ssa") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PureState psi = random_pure(SubsystemDims({2, 3}), 4100 + seed);
    DensityMatrix rho12 = psi.to_density();
    DensityMatrix rho123(rho12.mat(), SubsystemDims({2, 3, 1}));
    const double s1 = von_neumann_entropy(partial_trace(rho12, {1}));
    const double s12 = von_neumann_entropy(rho12);
    CHECK(cmi(rho123) == doctest::Approx(2.0 * (s1 - s12)).epsilon(1e-9));
  }
}

TEST_CASE("inequality checks validate arity") {
  DensityMatrix bi = testutil::maximally_mixed(4, SubsystemDims({2, 2}));
  DensityMatrix tri = testutil::maximally_mixed(8, SubsystemDims({2, 2, 2}));
  CHECK_THROWS_AS(cmi(bi), BadArity);
  CHECK_THROWS_AS(check_ssa(bi), BadArity);
  CHECK_THROWS_AS(check_triangle(tri), BadArity);
  CHECK_THROWS_AS(lower_bound_ent(tri), BadArity);
  CHECK_THROWS_AS(conditional_entropies(tri), BadArity);
}
