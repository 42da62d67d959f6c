#include "entlab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace entlab {

namespace {

struct SupportSpectrum {
  std::vector<double> values;  // descending, above cutoff
  Matrix vectors;              // matching columns
};

SupportSpectrum support_spectrum(const Matrix& m, double cutoff) {
  HermitianSpectrum spectrum = eig_hermitian(m);
  SupportSpectrum out;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = spectrum.eigenvalues.size() - 1; i >= 0; --i) {
    if (spectrum.eigenvalues(i) > cutoff) kept.push_back(i);
  }
  out.values.reserve(kept.size());
  out.vectors.resize(m.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out.values.push_back(spectrum.eigenvalues(kept[k]));
    out.vectors.col(static_cast<Eigen::Index>(k)) =
        spectrum.eigenvectors.col(kept[k]);
  }
  return out;
}

int numerical_rank(const Matrix& m, double cutoff) {
  HermitianSpectrum spectrum = eig_hermitian(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    if (spectrum.eigenvalues(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

SaturatingSpec::SaturatingSpec(RealVector kappas, DensityMatrix rho2)
    : kappas_(std::move(kappas)), rho2_(std::move(rho2)) {
  if (kappas_.size() == 0) throw BadSpec("kappa vector is empty");
  if (kappas_.minCoeff() <= 0.0) {
    throw BadSpec("kappa entries must be strictly positive; drop zero terms "
                  "before constructing the spec");
  }
  if (std::abs(kappas_.sum() - 1.0) > kWeightTol) {
    throw BadSpec("kappa entries must sum to 1 within 1e-10");
  }
  if (rho2_.subsystem_count() != 1) {
    throw BadSpec("rho2 must be a single-system state");
  }
  r2_ = numerical_rank(rho2_.mat(), kRankCutoff);
}

std::vector<PureState> orthogonal_purifications(const SaturatingSpec& spec) {
  const int n = spec.n();
  const int r2 = spec.r2();
  const int d2 = spec.rho2().dim();
  const long d1 = static_cast<long>(n) * r2;
  if (d1 * d2 > max_dim()) {
    throw DimensionOverflow("purification family exceeds the dimension cap");
  }
  const SupportSpectrum rho2_spec =
      support_spectrum(spec.rho2().mat(), kRankCutoff);

  // |Phi_j> = sum_i sqrt(mu_i) |f_i^(j)> ox |u_i> with the f's filling the
  // j-th r2-dimensional block of system 1, so the families are orthonormal
  // across (i, j) and each Tr_1 |Phi_j><Phi_j| equals rho2 on its support.
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Vector vec = Vector::Zero(d1 * d2);
    for (int i = 0; i < r2; ++i) {
      const long row1 = static_cast<long>(j) * r2 + i;
      const double weight =
          std::sqrt(rho2_spec.values[static_cast<std::size_t>(i)]);
      for (int b = 0; b < d2; ++b) {
        vec(row1 * d2 + b) = weight * rho2_spec.vectors(b, i);
      }
    }
    vec /= vec.norm();
    out.emplace_back(std::move(vec),
                     SubsystemDims({static_cast<int>(d1), d2}));
  }
  return out;
}

DensityMatrix build_saturating_state(const SaturatingSpec& spec) {
  const std::vector<PureState> purifications = orthogonal_purifications(spec);
  const Eigen::Index dim = purifications.front().dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (int j = 0; j < spec.n(); ++j) {
    const Vector& phi = purifications[static_cast<std::size_t>(j)].vec();
    sum += spec.kappas()(j) * (phi * phi.adjoint());
  }
  sum = 0.5 * (sum + sum.adjoint()).eval();
  return DensityMatrix(std::move(sum), purifications.front().dims());
}

EqualityCertificate verify_equality_conditions(const DensityMatrix& rho12) {
  if (rho12.subsystem_count() != 2) {
    throw BadArity("verify_equality_conditions expects a bipartite state");
  }
  EqualityCertificate cert;

  const DensityMatrix rho1 = partial_trace(rho12, {1});
  const DensityMatrix rho2 = partial_trace(rho12, {0});
  cert.rank1 = numerical_rank(rho1.mat(), kCertRankCutoff);
  cert.rank2 = numerical_rank(rho2.mat(), kCertRankCutoff);
  cert.rank12 = numerical_rank(rho12.mat(), kCertRankCutoff);
  cert.rank_condition = cert.rank1 == cert.rank2 * cert.rank12;

  const SupportSpectrum spectral =
      support_spectrum(rho12.mat(), kCertRankCutoff);
  const int r = static_cast<int>(spectral.values.size());
  for (int i = 0; i + 1 < r; ++i) {
    if (std::abs(spectral.values[static_cast<std::size_t>(i)] -
                 spectral.values[static_cast<std::size_t>(i + 1)]) <= 1e-10) {
      cert.degenerate_spectrum = true;
    }
  }

  double residual = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const Matrix cross = spectral.vectors.col(i) *
                           spectral.vectors.col(j).adjoint();
      Matrix traced = partial_trace_matrix(cross, rho12.dims(), {0});
      if (i == j) traced -= rho2.mat();
      residual = std::max(residual, traced.norm());
    }
  }
  cert.offdiag_residual = residual;

  const double s12 = von_neumann_entropy(rho12);
  const double s1 = von_neumann_entropy(rho1);
  const double s2 = von_neumann_entropy(rho2);
  cert.entropy_gap = std::abs(s12 - (s1 - s2));

  cert.passed = cert.rank_condition && cert.offdiag_residual <= 1e-7 &&
                cert.entropy_gap <= 1e-7;
  return cert;
}

DensityMatrix canonical_extension(const RealVector& weights,
                                  const std::vector<DensityMatrix>& omegas) {
  const int n = static_cast<int>(omegas.size());
  if (n == 0 || weights.size() != n) {
    throw WeightMismatch("one weight per mixture term required");
  }
  if (weights.minCoeff() <= 0.0) {
    throw WeightMismatch("weights must be strictly positive");
  }
  if (std::abs(weights.sum() - 1.0) > kWeightTol) {
    throw WeightMismatch("weights must sum to 1 within 1e-10");
  }
  for (const DensityMatrix& omega : omegas) {
    if (omega.subsystem_count() != 2 ||
        !(omega.dims() == omegas.front().dims())) {
      throw DimMismatch("every term must share the same bipartite dims");
    }
  }
  const int d1 = omegas.front().dims().dim(0);
  const int d2 = omegas.front().dims().dim(1);
  const long d12 = static_cast<long>(d1) * d2;
  if (d12 * n > max_dim()) {
    throw DimensionOverflow("extension dimension exceeds the cap");
  }

  // rho123[(p,k),(q,l)] = delta_kl lambda_k omega_k[p,q] with p, q composite
  // (1,2) indices and the standard basis on slot 3.
  Matrix out = Matrix::Zero(d12 * n, d12 * n);
  for (int k = 0; k < n; ++k) {
    const Matrix& omega = omegas[static_cast<std::size_t>(k)].mat();
    for (long p = 0; p < d12; ++p) {
      for (long q = 0; q < d12; ++q) {
        out(p * n + k, q * n + k) = weights(k) * omega(p, q);
      }
    }
  }
  return DensityMatrix(std::move(out), SubsystemDims({d1, d2, n}));
}

SharpnessWitness build_sharpness_witness(const SaturatingSpec& spec) {
  if (spec.n() < 2) {
    throw BadSpec("sharpness witness needs at least two kappa terms");
  }
  const double s2 = von_neumann_entropy(spec.rho2());
  if (s2 <= 1e-9) {
    throw DegenerateWitness(
        "S(rho2) vanishes; the ratio cmi / bound is undefined");
  }
  const std::vector<PureState> purifications = orthogonal_purifications(spec);
  std::vector<DensityMatrix> omegas;
  omegas.reserve(purifications.size());
  for (const PureState& phi : purifications) {
    omegas.push_back(phi.to_density());
  }
  DensityMatrix rho123 = canonical_extension(spec.kappas(), omegas);

  WitnessReport report;
  report.cmi_value = cmi(rho123);
  report.bound = lower_bound_ent(partial_trace(rho123, {2}));
  report.ratio = report.cmi_value / report.bound;
  return {std::move(rho123), report};
}

DensityMatrix separable_equality_extension(
    const RealVector& weights,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& factors) {
  // Reuse the mixture validation wholesale.
  const DensityMatrix rho12 = separable_mixture(weights, factors);
  const int d1 = rho12.dims().dim(0);
  const int d2 = rho12.dims().dim(1);

  // Purify each rho1_k; its ancilla occupies a dedicated block of system 3.
  std::vector<PureState> purifiers;
  std::vector<int> block_offsets;
  int d3 = 0;
  purifiers.reserve(factors.size());
  for (const auto& [rho1, rho2] : factors) {
    PureState psi = purify(rho1);
    block_offsets.push_back(d3);
    d3 += psi.dims().dim(1);
    purifiers.push_back(std::move(psi));
  }
  const long total = static_cast<long>(d1) * d2 * d3;
  if (total > max_dim()) {
    throw DimensionOverflow("separable extension exceeds the dimension cap");
  }

  Matrix out = Matrix::Zero(total, total);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const PureState& psi = purifiers[k];
    const int rk = psi.dims().dim(1);
    const int off = block_offsets[k];
    const Matrix& rho2 = factors[k].second.mat();
    const double nu = weights(static_cast<Eigen::Index>(k));
    for (int a = 0; a < d1; ++a) {
      for (int ap = 0; ap < d1; ++ap) {
        for (int i = 0; i < rk; ++i) {
          for (int ip = 0; ip < rk; ++ip) {
            const Complex amp =
                nu * psi.vec()(static_cast<Eigen::Index>(a) * rk + i) *
                std::conj(psi.vec()(static_cast<Eigen::Index>(ap) * rk + ip));
            if (amp == Complex(0.0, 0.0)) continue;
            for (int b = 0; b < d2; ++b) {
              for (int bp = 0; bp < d2; ++bp) {
                const long row =
                    (static_cast<long>(a) * d2 + b) * d3 + off + i;
                const long col =
                    (static_cast<long>(ap) * d2 + bp) * d3 + off + ip;
                out(row, col) += amp * rho2(b, bp);
              }
            }
          }
        }
      }
    }
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out), SubsystemDims({d1, d2, d3}));
}

}  // namespace entlab
