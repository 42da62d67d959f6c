#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "entlab/common.hpp"
#include "entlab/matcore.hpp"

namespace entlab {

/// Ordered list of subsystem dimensions, e.g. {2, 2, 2} for three qubits.
/// Subsystems are identified positionally.
class SubsystemDims {
 public:
  SubsystemDims(std::initializer_list<int> dims)
      : SubsystemDims(std::vector<int>(dims)) {}
  explicit SubsystemDims(std::vector<int> dims);

  int count() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  int total() const;
  const std::vector<int>& as_vector() const { return dims_; }

  bool operator==(const SubsystemDims&) const = default;

 private:
  std::vector<int> dims_;
};

/// Hermitian, unit-trace, PSD matrix over labeled subsystems.
/// The constructor enforces shape, finiteness, Hermiticity (1e-8) and trace
/// (1e-8); positive semidefiniteness needs an eigensolve and is checked via
/// checked() at trust boundaries (file input), not on every internal hop.
class DensityMatrix {
 public:
  DensityMatrix(Matrix mat, SubsystemDims dims);

  /// Constructs and additionally verifies min eigenvalue >= -1e-8.
  static DensityMatrix checked(Matrix mat, SubsystemDims dims);

  const Matrix& mat() const { return mat_; }
  const SubsystemDims& dims() const { return dims_; }
  int subsystem_count() const { return dims_.count(); }
  int dim() const { return static_cast<int>(mat_.rows()); }

 private:
  Matrix mat_;
  SubsystemDims dims_;
};

/// Unit vector over labeled subsystems.
class PureState {
 public:
  PureState(Vector vec, SubsystemDims dims);

  const Vector& vec() const { return vec_; }
  const SubsystemDims& dims() const { return dims_; }
  int subsystem_count() const { return dims_.count(); }
  int dim() const { return static_cast<int>(vec_.size()); }

  /// Projector |psi><psi| as a DensityMatrix.
  DensityMatrix to_density() const;

  /// Same amplitudes viewed under a different subsystem split.
  PureState with_dims(SubsystemDims dims) const;

 private:
  Vector vec_;
  SubsystemDims dims_;
};

/// Partial trace of a raw operator (not necessarily Hermitian) over the given
/// subsystem indices. Building block for the density-level partial_trace and
/// for cross terms Tr_1 |phi_i><phi_j|.
Matrix partial_trace_matrix(const Matrix& m, const SubsystemDims& dims,
                            const std::vector<int>& traced);

/// Reduced state on the kept subsystems, original order preserved.
/// `traced` must be a nonempty proper subset of subsystem indices.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& traced);

/// Purification of rho treated as a single system: vec = sum_i sqrt(p_i)
/// |e_i> ox |i> over the eigenvalues above 1e-12, descending. Output dims
/// [d, r] with r the numerical rank.
PureState purify(const DensityMatrix& rho);

struct SpectraMatchResult {
  bool match;
  double max_gap;
};

/// For a bipartite pure state, compares the sorted nonzero spectra of the two
/// reduced states (they agree analytically).
SpectraMatchResult reduced_spectra_match(const PureState& psi);

/// Seeded Ginibre construction: G G^dag / Tr(G G^dag) with G of shape
/// total x rank. Deterministic in (dims, rank, seed).
DensityMatrix random_density(const SubsystemDims& dims, int rank,
                             std::uint64_t seed);

/// Seeded Haar-random pure state on the given dims.
PureState random_pure(const SubsystemDims& dims, std::uint64_t seed);

/// Convex mixture sum_k nu_k rho1_k ox rho2_k on dims [d1, d2].
DensityMatrix separable_mixture(
    const RealVector& weights,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& factors);

/// Reindexes entries so that new subsystem i is old subsystem perm[i].
DensityMatrix permute_subsystems(const DensityMatrix& rho,
                                 const std::vector<int>& perm);

/// Reduced state of a bipartite pure state on subsystem 0 (keep == 0) or 1.
Matrix pure_reduced(const PureState& psi, int keep);

}  // namespace entlab
