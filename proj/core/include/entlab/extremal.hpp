#pragma once

#include <vector>

#include "entlab/entropy.hpp"
#include "entlab/states.hpp"

namespace entlab {

/// Recipe for a bipartite state saturating S12 = S1 - S2: a probability
/// vector kappa (strictly positive entries) and a state rho2 whose
/// purifications get mixed. rho2 is treated on its support; r2 is its
/// numerical rank.
class SaturatingSpec {
 public:
  SaturatingSpec(RealVector kappas, DensityMatrix rho2);

  const RealVector& kappas() const { return kappas_; }
  const DensityMatrix& rho2() const { return rho2_; }
  int n() const { return static_cast<int>(kappas_.size()); }
  int r2() const { return r2_; }

 private:
  RealVector kappas_;
  DensityMatrix rho2_;
  int r2_;
};

/// Outcome of testing the equality characterization of S12 = S1 - S2.
struct EqualityCertificate {
  int rank1 = 0;
  int rank2 = 0;
  int rank12 = 0;
  bool rank_condition = false;       // rank1 == rank2 * rank12
  double offdiag_residual = 0.0;     // max_ij ||Tr_1|phi_i><phi_j| - delta_ij rho2||_F
  double entropy_gap = 0.0;          // |S12 - (S1 - S2)|
  bool degenerate_spectrum = false;  // repeated nonzero eigenvalues; the
                                     // spectral basis is then non-unique and
                                     // the residual refers to the
                                     // deterministic basis from eig_hermitian
  bool passed = false;
};

/// n mutually orthogonal purifications of rho2 on dims [n*r2, d2]: the j-th
/// vector lives in the j-th r2-dimensional block of system 1.
std::vector<PureState> orthogonal_purifications(const SaturatingSpec& spec);

/// rho12 = sum_j kappa_j |Phi_j><Phi_j| with the purifications above, on dims
/// [n*r2, d2]. Satisfies S12 = -sum kappa ln kappa, S2 = S(rho2),
/// S1 = S12 + S2.
DensityMatrix build_saturating_state(const SaturatingSpec& spec);

/// Evaluates the rank identity, the pairwise partial-trace conditions on the
/// spectral decomposition, and the entropy gap. Ranks use cutoff 1e-10.
/// Passes iff rank1 == rank2*rank12, offdiag_residual <= 1e-7 and
/// entropy_gap <= 1e-7.
EqualityCertificate verify_equality_conditions(const DensityMatrix& rho12);

/// rho123 = sum_k lambda_k omega_k ox |k><k| on dims [d1, d2, n], the third
/// slot carrying the standard basis. Tr_3 recovers the mixture; for pure
/// omega_k, I(1,2|3) = 2 sum_k lambda_k S(Tr_2 omega_k).
DensityMatrix canonical_extension(const RealVector& weights,
                                  const std::vector<DensityMatrix>& omegas);

struct WitnessReport {
  double cmi_value = 0.0;
  double bound = 0.0;  // max{S1 - S12, S2 - S12, 0} of the reduced state
  double ratio = 0.0;  // cmi / bound, equals 2 for this family
};

struct SharpnessWitness {
  DensityMatrix rho123;
  WitnessReport report;
};

/// Tripartite state showing the factor 2 cannot be improved: the canonical
/// extension of the saturating-state decomposition has
/// I(1,2|3) = 2 (S1 - S12) > 0. Requires n >= 2 and S(rho2) > 1e-9.
SharpnessWitness build_sharpness_witness(const SaturatingSpec& spec);

/// Extension of a separable mixture with I(1,2|3) = 0: each rho1_k is
/// purified onto system 1 and an orthogonal sector of system 3, tensored
/// with rho2_k.
DensityMatrix separable_equality_extension(
    const RealVector& weights,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& factors);

}  // namespace entlab
