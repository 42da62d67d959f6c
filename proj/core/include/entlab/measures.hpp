#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entlab/entropy.hpp"
#include "entlab/extremal.hpp"
#include "entlab/states.hpp"

namespace entlab {

/// Pure-state ensemble realizing a target bipartite state. The reconstruction
/// residual ||sum_k lambda_k |w_k><w_k| - target||_F is fixed at build time.
struct Decomposition {
  RealVector weights;
  std::vector<PureState> states;
  double reconstruction_residual = 0.0;
};

/// Builds a Decomposition and computes its residual against `target`.
Decomposition make_decomposition(const DensityMatrix& target,
                                 RealVector weights,
                                 std::vector<PureState> states);

/// sum_k lambda_k |w_k><w_k|.
DensityMatrix decomposition_mixture(const Decomposition& dec,
                                    const SubsystemDims& dims);

/// Average entropy of the left reductions, sum_k lambda_k S(Tr_2 w_k).
/// Throws BadDecomposition if the stored residual exceeds 1e-8.
double decomposition_cost(const Decomposition& dec);

/// Ensemble from an m x r isometry applied to the eigen-ensemble of rho12:
/// sqrt(lambda_k) |w_k> = sum_i conj(W_ki) sqrt(p_i) |e_i>. Members with
/// weight <= 1e-14 are dropped.
Decomposition decomposition_from_isometry(const DensityMatrix& rho12,
                                          const Matrix& isometry);

enum class EstimateKind { ef_upper, esq_upper, lower };

std::string to_string(EstimateKind kind);

/// One-sided numerical bound with optimizer telemetry. `value` is always a
/// valid bound of its kind; it is claimed optimal only where the lower bound
/// pinches it.
struct EstimateResult {
  double value = 0.0;
  EstimateKind kind = EstimateKind::lower;
  int restarts_used = 0;
  long iterations = 0;  // cost-function evaluations
  std::uint64_t seed = 0;
  bool converged = false;
  bool budget_exhausted = false;
  std::optional<Decomposition> decomposition;   // ef certificate
  std::optional<DensityMatrix> extension;       // esq certificate
};

struct EstimatorConfig {
  std::uint64_t seed = 0;
  int ensemble_size = 0;  // 0 -> rank^2
  int ancilla_dim = 0;    // 0 -> rank^2
  int restarts = 32;
  long budget = 2000;     // cost evaluations per restart
  double tol = 1e-9;      // convergence threshold per sweep
  // The extension search pays a full tripartite eigensolve per evaluation,
  // so it gets its own, smaller effort knobs.
  int esq_restarts = 8;
  long esq_budget = 400;
  int threads = 0;        // 0 -> hardware concurrency, 1 -> serial
};

/// Upper estimate of the entanglement of formation: multi-restart Haar
/// isometries refined by two-row rotation descent with golden-section line
/// search. Restart 0 starts from the eigen-ensemble itself.
EstimateResult estimate_ef_upper(const DensityMatrix& rho12,
                                 const EstimatorConfig& config);

/// Upper estimate of the squashed entanglement: (1/2) min I(1,2|3) over
/// extensions rho123 = (id ox Lambda)(|Psi><Psi|), Lambda parametrized by
/// Stinespring isometries into an ancilla of dimension d3; also evaluates the
/// canonical extension of the best formation ensemble and keeps the minimum.
/// `ef_hint` reuses an already-computed formation certificate.
EstimateResult estimate_esq_upper(const DensityMatrix& rho12,
                                  const EstimatorConfig& config,
                                  const Decomposition* ef_hint = nullptr);

/// The five-way sandwich around E_f and E_sq.
struct SandwichReport {
  double lower = 0.0;        // max{S1 - S12, S2 - S12, 0}
  double weaker = 0.0;       // (S1 + S2)/2 - S12
  double upper_local = 0.0;  // min{S1, S2}
  EstimateResult ef;
  EstimateResult esq;
};

/// Runs both estimators and asserts lower <= esq <= ef <= upper_local within
/// 1e-4 optimizer slack. An ordering failure beyond tolerance throws
/// SandwichViolation (it indicates a bug, not physics).
SandwichReport entanglement_bounds(const DensityMatrix& rho12,
                                   const EstimatorConfig& config);

struct IdenReport {
  SandwichReport sandwich;
  double analytic_s12 = 0.0;  // -sum kappa ln kappa
  double analytic_s2 = 0.0;   // S(rho2)
  double analytic_s1 = 0.0;   // s12 + s2
  double ef_gap = 0.0;        // |ef - lower|
  double esq_gap = 0.0;       // |esq - lower|
  bool certified = false;     // both gaps <= 1e-4
};

/// Builds the saturating state for `spec` (n >= 2), runs the full sandwich
/// and certifies that both estimates pinch onto the lower bound, which here
/// equals S2 analytically.
IdenReport verify_iden(const SaturatingSpec& spec,
                       const EstimatorConfig& config);

inline constexpr double kSandwichTol = 1e-4;

}  // namespace entlab
