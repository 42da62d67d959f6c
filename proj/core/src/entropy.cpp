#include "entlab/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace entlab {

InequalityReport make_report(std::string name, double lhs, double rhs,
                             double tol) {
  InequalityReport report;
  report.name = std::move(name);
  report.lhs = lhs;
  report.rhs = rhs;
  report.slack = lhs - rhs;
  report.tol = tol;
  report.satisfied = report.slack >= -tol;
  return report;
}

double entropy_from_eigenvalues(const RealVector& eigenvalues) {
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues(i);
    if (lambda > kEigClamp) {
      entropy -= lambda * std::log(lambda);
    }
  }
  return entropy;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_from_eigenvalues(eig_hermitian(rho.mat()).eigenvalues);
}

namespace {

void require_arity(const DensityMatrix& rho, int parts, const char* what) {
  if (rho.subsystem_count() != parts) {
    throw BadArity(std::string(what) + " expects " + std::to_string(parts) +
                   " subsystems");
  }
}

double marginal_entropy(const DensityMatrix& rho,
                        const std::vector<int>& traced) {
  return von_neumann_entropy(partial_trace(rho, traced));
}

struct BipartiteEntropies {
  double s1;
  double s2;
  double s12;
};

BipartiteEntropies bipartite_entropies(const DensityMatrix& rho12) {
  return {marginal_entropy(rho12, {1}), marginal_entropy(rho12, {0}),
          von_neumann_entropy(rho12)};
}

struct TripartiteEntropies {
  double s1, s2, s3;
  double s12, s13, s23;
  double s123;
};

// Every entropy from a freshly reduced state; nothing cached.
TripartiteEntropies tripartite_entropies(const DensityMatrix& rho123) {
  TripartiteEntropies e{};
  e.s1 = marginal_entropy(rho123, {1, 2});
  e.s2 = marginal_entropy(rho123, {0, 2});
  e.s3 = marginal_entropy(rho123, {0, 1});
  e.s12 = marginal_entropy(rho123, {2});
  e.s13 = marginal_entropy(rho123, {1});
  e.s23 = marginal_entropy(rho123, {0});
  e.s123 = von_neumann_entropy(rho123);
  return e;
}

}  // namespace

std::pair<double, double> conditional_entropies(const DensityMatrix& rho12) {
  require_arity(rho12, 2, "conditional_entropies");
  const auto [s1, s2, s12] = bipartite_entropies(rho12);
  return {s12 - s1, s12 - s2};
}

double cmi(const DensityMatrix& rho123) {
  require_arity(rho123, 3, "cmi");
  const double s13 = marginal_entropy(rho123, {1});
  const double s23 = marginal_entropy(rho123, {0});
  const double s123 = von_neumann_entropy(rho123);
  const double s3 = marginal_entropy(rho123, {0, 1});
  return s13 + s23 - s123 - s3;
}

InequalityReport check_ssa(const DensityMatrix& rho123) {
  require_arity(rho123, 3, "check_ssa");
  return make_report("ssa", cmi(rho123), 0.0);
}

InequalityReport check_extended_ssa(const DensityMatrix& rho123) {
  require_arity(rho123, 3, "check_extended_ssa");
  const DensityMatrix rho12 = partial_trace(rho123, {2});
  const auto [s1, s2, s12] = bipartite_entropies(rho12);
  const double rhs = 2.0 * std::max({s1 - s12, s2 - s12, 0.0});
  return make_report("essa", cmi(rho123), rhs);
}

InequalityReport check_triangle(const DensityMatrix& rho12) {
  require_arity(rho12, 2, "check_triangle");
  const auto [s1, s2, s12] = bipartite_entropies(rho12);
  return make_report("triangle", s12, std::abs(s1 - s2));
}

InequalityReport check_weak_monotonicity(const DensityMatrix& rho123) {
  require_arity(rho123, 3, "check_weak_monotonicity");
  const auto e = tripartite_entropies(rho123);
  return make_report("weak-monotonicity", e.s12 + e.s23, e.s1 + e.s3);
}

std::vector<InequalityReport> check_aux_inequalities(
    const DensityMatrix& rho123) {
  require_arity(rho123, 3, "check_aux_inequalities");
  const auto e = tripartite_entropies(rho123);
  return {
      make_report("essa00", e.s12 + e.s13 + 2.0 * e.s23,
                  2.0 * e.s1 + e.s2 + e.s3),
      make_report("essa0B-left", 2.0 * e.s12 + e.s13 + 2.0 * e.s23,
                  2.0 * e.s1 + e.s2 + 2.0 * e.s3),
      make_report("essa0B-right", e.s12 + e.s13 + e.s23, e.s1 + e.s2 + e.s3),
  };
}

double lower_bound_ent(const DensityMatrix& rho12) {
  require_arity(rho12, 2, "lower_bound_ent");
  const auto [s1, s2, s12] = bipartite_entropies(rho12);
  return std::max({s1 - s12, s2 - s12, 0.0});
}

double weaker_bound(const DensityMatrix& rho12) {
  require_arity(rho12, 2, "weaker_bound");
  const auto [s1, s2, s12] = bipartite_entropies(rho12);
  return 0.5 * (s1 + s2) - s12;
}

double upper_bound_local(const DensityMatrix& rho12) {
  require_arity(rho12, 2, "upper_bound_local");
  const auto [s1, s2, s12] = bipartite_entropies(rho12);
  return std::min(s1, s2);
}

}  // namespace entlab
