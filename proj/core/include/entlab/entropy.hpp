#pragma once

#include <string>
#include <utility>
#include <vector>

#include "entlab/states.hpp"

namespace entlab {

/// One evaluated entropy inequality, lhs >= rhs expected. All values in nats.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  bool satisfied = false;
  double tol = kInequalityTol;
};

InequalityReport make_report(std::string name, double lhs, double rhs,
                             double tol = kInequalityTol);

/// S(rho) = -Tr(rho ln rho) in nats; eigenvalues <= 1e-12 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of a spectrum (clamps values <= 1e-12).
double entropy_from_eigenvalues(const RealVector& eigenvalues);

/// (S12 - S1, S12 - S2) for a bipartite state; either may be negative.
std::pair<double, double> conditional_entropies(const DensityMatrix& rho12);

/// Conditional mutual information I(1,2|3) = S13 + S23 - S123 - S3.
double cmi(const DensityMatrix& rho123);

/// Strong subadditivity: I(1,2|3) >= 0.
InequalityReport check_ssa(const DensityMatrix& rho123);

/// Extended strong subadditivity:
/// I(1,2|3) >= 2 max{S1 - S12, S2 - S12, 0}.
InequalityReport check_extended_ssa(const DensityMatrix& rho123);

/// Triangle inequality S12 >= |S1 - S2|.
InequalityReport check_triangle(const DensityMatrix& rho12);

/// Weak monotonicity S12 + S23 >= S1 + S3.
InequalityReport check_weak_monotonicity(const DensityMatrix& rho123);

/// Auxiliary three-party inequalities:
///   S12 + S13 + 2 S23 >= 2 S1 + S2 + S3
///   2 S12 + S13 + 2 S23 >= 2 S1 + S2 + 2 S3
///   S12 + S13 + S23 >= S1 + S2 + S3
std::vector<InequalityReport> check_aux_inequalities(
    const DensityMatrix& rho123);

/// Sharp entanglement lower bound max{S1 - S12, S2 - S12, 0}.
double lower_bound_ent(const DensityMatrix& rho12);

/// Averaged bound (S1 + S2)/2 - S12; may be negative.
double weaker_bound(const DensityMatrix& rho12);

/// Local-entropy upper bound min{S1, S2}.
double upper_bound_local(const DensityMatrix& rho12);

}  // namespace entlab
