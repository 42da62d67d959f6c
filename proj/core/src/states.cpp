#include "entlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "entlab/rng.hpp"

namespace entlab {

SubsystemDims::SubsystemDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw BadShape("subsystem list is empty");
  long long product = 1;
  for (int d : dims_) {
    if (d < 1) throw BadShape("subsystem dimension must be >= 1");
    product *= d;
    if (product > max_dim()) {
      throw DimensionOverflow("product of subsystem dimensions exceeds the cap");
    }
  }
}

int SubsystemDims::total() const {
  int product = 1;
  for (int d : dims_) product *= d;
  return product;
}

DensityMatrix::DensityMatrix(Matrix mat, SubsystemDims dims)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols()) throw BadShape("density matrix not square");
  if (mat_.rows() != dims_.total()) {
    throw DimMismatch("matrix dimension does not match subsystem dims");
  }
  if (!all_finite(mat_)) throw BadShape("density matrix has non-finite entries");
  if (hermiticity_error(mat_) > kHermitianTol) {
    throw NotHermitian("density matrix is not Hermitian within 1e-8");
  }
  if (std::abs(mat_.trace().real() - 1.0) > kTraceTol ||
      std::abs(mat_.trace().imag()) > kTraceTol) {
    throw BadShape("density matrix trace differs from 1 beyond 1e-8");
  }
}

DensityMatrix DensityMatrix::checked(Matrix mat, SubsystemDims dims) {
  DensityMatrix rho(std::move(mat), std::move(dims));
  HermitianSpectrum spectrum = eig_hermitian(rho.mat());
  if (spectrum.eigenvalues.minCoeff() < -kHermitianTol) {
    throw BadShape("density matrix has an eigenvalue below -1e-8");
  }
  return rho;
}

PureState::PureState(Vector vec, SubsystemDims dims)
    : vec_(std::move(vec)), dims_(std::move(dims)) {
  if (vec_.size() != dims_.total()) {
    throw DimMismatch("vector length does not match subsystem dims");
  }
  if (!all_finite(vec_)) throw BadShape("pure state has non-finite entries");
  if (std::abs(vec_.norm() - 1.0) > kUnitNormTol) {
    throw BadShape("pure state norm differs from 1 beyond 1e-10");
  }
}

DensityMatrix PureState::to_density() const {
  Matrix projector = vec_ * vec_.adjoint();
  projector = 0.5 * (projector + projector.adjoint()).eval();
  return DensityMatrix(std::move(projector), dims_);
}

PureState PureState::with_dims(SubsystemDims dims) const {
  return PureState(vec_, std::move(dims));
}

namespace {

// Strides of the row-major composite index: subsystem i advances the flat
// index by prod of the dims to its right.
std::vector<long> composite_strides(const SubsystemDims& dims) {
  const int m = dims.count();
  std::vector<long> strides(static_cast<std::size_t>(m), 1);
  for (int i = m - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * dims.dim(i + 1);
  }
  return strides;
}

// Flat offsets contributed by the listed subsystems as their joint index
// runs through all values (in the order the subsystems appear in `subset`).
std::vector<long> subset_offsets(const SubsystemDims& dims,
                                 const std::vector<int>& subset) {
  const std::vector<long> strides = composite_strides(dims);
  long count = 1;
  for (int s : subset) count *= dims.dim(s);
  std::vector<long> offsets(static_cast<std::size_t>(count), 0);
  long repeat = 1;
  for (auto it = subset.rbegin(); it != subset.rend(); ++it) {
    const int d = dims.dim(*it);
    const long stride = strides[static_cast<std::size_t>(*it)];
    for (long idx = 0; idx < count; ++idx) {
      long digit = (idx / repeat) % d;
      offsets[static_cast<std::size_t>(idx)] += digit * stride;
    }
    repeat *= d;
  }
  return offsets;
}

std::vector<int> validate_traced(const SubsystemDims& dims,
                                 const std::vector<int>& traced) {
  std::set<int> unique(traced.begin(), traced.end());
  if (unique.size() != traced.size()) {
    throw BadSubsystemSet("traced subsystem listed twice");
  }
  if (unique.empty()) throw BadSubsystemSet("traced subsystem set is empty");
  if (static_cast<int>(unique.size()) == dims.count()) {
    throw BadSubsystemSet("cannot trace out every subsystem");
  }
  for (int s : unique) {
    if (s < 0 || s >= dims.count()) {
      throw BadSubsystemSet("traced subsystem index out of range");
    }
  }
  return {unique.begin(), unique.end()};
}

}  // namespace

Matrix partial_trace_matrix(const Matrix& m, const SubsystemDims& dims,
                            const std::vector<int>& traced) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimMismatch("operator does not match subsystem dims");
  }
  const std::vector<int> traced_sorted = validate_traced(dims, traced);
  std::vector<int> kept;
  for (int i = 0; i < dims.count(); ++i) {
    if (!std::binary_search(traced_sorted.begin(), traced_sorted.end(), i)) {
      kept.push_back(i);
    }
  }
  const std::vector<long> kept_offsets = subset_offsets(dims, kept);
  const std::vector<long> traced_offsets = subset_offsets(dims, traced_sorted);
  const long dk = static_cast<long>(kept_offsets.size());

  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r) {
    for (long c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (long t : traced_offsets) {
        sum += m(kept_offsets[static_cast<std::size_t>(r)] + t,
                 kept_offsets[static_cast<std::size_t>(c)] + t);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& traced) {
  Matrix reduced = partial_trace_matrix(rho.mat(), rho.dims(), traced);
  const std::vector<int> traced_sorted = validate_traced(rho.dims(), traced);
  std::vector<int> kept_dims;
  for (int i = 0; i < rho.subsystem_count(); ++i) {
    if (!std::binary_search(traced_sorted.begin(), traced_sorted.end(), i)) {
      kept_dims.push_back(rho.dims().dim(i));
    }
  }
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  return DensityMatrix(std::move(reduced), SubsystemDims(kept_dims));
}

PureState purify(const DensityMatrix& rho) {
  const int d = rho.dim();
  HermitianSpectrum spectrum = eig_hermitian(rho.mat());
  std::vector<int> kept;
  for (int i = d - 1; i >= 0; --i) {
    if (spectrum.eigenvalues(i) > kRankCutoff) kept.push_back(i);
  }
  const int r = static_cast<int>(kept.size());
  if (r == 0) throw NumericalFailure("state has no eigenvalue above cutoff");
  if (static_cast<long>(d) * r > max_dim()) {
    throw DimensionOverflow("purification dimension exceeds the cap");
  }
  Vector vec = Vector::Zero(static_cast<Eigen::Index>(d) * r);
  for (int i = 0; i < r; ++i) {
    const double weight = std::sqrt(spectrum.eigenvalues(kept[i]));
    for (int a = 0; a < d; ++a) {
      vec(static_cast<Eigen::Index>(a) * r + i) =
          weight * spectrum.eigenvectors(a, kept[i]);
    }
  }
  vec /= vec.norm();
  return PureState(std::move(vec), SubsystemDims({d, r}));
}

Matrix pure_reduced(const PureState& psi, int keep) {
  if (psi.subsystem_count() != 2) {
    throw BadArity("pure_reduced expects a bipartite state");
  }
  const int d1 = psi.dims().dim(0);
  const int d2 = psi.dims().dim(1);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      a(psi.vec().data(), d1, d2);
  Matrix rho;
  if (keep == 0) {
    rho = a * a.adjoint();
  } else if (keep == 1) {
    rho = (a.adjoint() * a).conjugate();
  } else {
    throw BadSubsystemSet("keep must be 0 or 1");
  }
  return 0.5 * (rho + rho.adjoint()).eval();
}

SpectraMatchResult reduced_spectra_match(const PureState& psi) {
  if (psi.subsystem_count() != 2) {
    throw BadArity("reduced_spectra_match expects a bipartite state");
  }
  // Two independent eigensolves, one per marginal.
  HermitianSpectrum left = eig_hermitian(pure_reduced(psi, 0));
  HermitianSpectrum right = eig_hermitian(pure_reduced(psi, 1));
  std::vector<double> lv(left.eigenvalues.data(),
                         left.eigenvalues.data() + left.eigenvalues.size());
  std::vector<double> rv(right.eigenvalues.data(),
                         right.eigenvalues.data() + right.eigenvalues.size());
  std::sort(lv.rbegin(), lv.rend());
  std::sort(rv.rbegin(), rv.rend());
  const std::size_t n = std::max(lv.size(), rv.size());
  lv.resize(n, 0.0);
  rv.resize(n, 0.0);
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    gap = std::max(gap, std::abs(lv[i] - rv[i]));
  }
  return {gap <= 1e-9, gap};
}

DensityMatrix random_density(const SubsystemDims& dims, int rank,
                             std::uint64_t seed) {
  const int total = dims.total();
  if (rank < 1 || rank > total) {
    throw BadRank("rank must lie in [1, product(dims)]");
  }
  CounterRng rng(seed);
  Matrix g(total, rank);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < rank; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  Matrix rho = g * g.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), dims);
}

PureState random_pure(const SubsystemDims& dims, std::uint64_t seed) {
  CounterRng rng(seed);
  Vector vec(dims.total());
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    vec(i) = rng.complex_normal();
  }
  vec /= vec.norm();
  return PureState(std::move(vec), dims);
}

DensityMatrix separable_mixture(
    const RealVector& weights,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& factors) {
  if (weights.size() == 0 ||
      static_cast<std::size_t>(weights.size()) != factors.size()) {
    throw WeightMismatch("one weight per factor pair required");
  }
  if (weights.minCoeff() <= 0.0) {
    throw WeightMismatch("weights must be strictly positive");
  }
  if (std::abs(weights.sum() - 1.0) > kWeightTol) {
    throw WeightMismatch("weights must sum to 1 within 1e-10");
  }
  const int d1 = factors.front().first.dim();
  const int d2 = factors.front().second.dim();
  for (const auto& [rho1, rho2] : factors) {
    if (rho1.dim() != d1 || rho2.dim() != d2) {
      throw DimMismatch("factor dimensions differ across terms");
    }
  }
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(d1) * d2,
                            static_cast<Eigen::Index>(d1) * d2);
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    const auto& [rho1, rho2] = factors[static_cast<std::size_t>(k)];
    sum += weights(k) * tensor(rho1.mat(), rho2.mat());
  }
  return DensityMatrix(std::move(sum), SubsystemDims({d1, d2}));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho,
                                 const std::vector<int>& perm) {
  const int m = rho.subsystem_count();
  if (static_cast<int>(perm.size()) != m) {
    throw BadPermutation("permutation length mismatch");
  }
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int p : perm) {
    if (p < 0 || p >= m || seen[static_cast<std::size_t>(p)]) {
      throw BadPermutation("not a permutation of the subsystem indices");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<int> new_dims(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    new_dims[static_cast<std::size_t>(i)] =
        rho.dims().dim(perm[static_cast<std::size_t>(i)]);
  }
  const SubsystemDims out_dims(new_dims);
  const std::vector<long> old_strides = composite_strides(rho.dims());

  const long total = rho.dim();
  std::vector<long> new_to_old(static_cast<std::size_t>(total), 0);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    long old_idx = 0;
    for (int i = 0; i < m; ++i) {
      // Decode slot i of the new composite index and route it to the old
      // subsystem perm[i].
      long block = 1;
      for (int j = i + 1; j < m; ++j) {
        block *= new_dims[static_cast<std::size_t>(j)];
      }
      long digit = rest / block;
      rest %= block;
      old_idx +=
          digit * old_strides[static_cast<std::size_t>(
                      perm[static_cast<std::size_t>(i)])];
    }
    new_to_old[static_cast<std::size_t>(idx)] = old_idx;
  }

  Matrix out(total, total);
  for (long r = 0; r < total; ++r) {
    for (long c = 0; c < total; ++c) {
      out(r, c) = rho.mat()(new_to_old[static_cast<std::size_t>(r)],
                            new_to_old[static_cast<std::size_t>(c)]);
    }
  }
  return DensityMatrix(std::move(out), out_dims);
}

}  // namespace entlab
