#include "entlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <thread>
#include <vector>

#include "entlab/rng.hpp"

namespace entlab {

namespace {

constexpr double kPinchTol = 1e-9;
constexpr int kGoldenIters = 30;

// Eigenvalue-only solve for small Hermitian blocks on the optimizer hot path.
RealVector eigenvalues_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigensolver failed inside the optimizer");
  }
  return solver.eigenvalues();
}

// lambda * S(Tr_2 w) for an unnormalized member vector.
double member_term(const Vector& unnorm, int d1, int d2) {
  const double lambda = unnorm.squaredNorm();
  if (lambda <= kZeroWeightPrune) return 0.0;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      a(unnorm.data(), d1, d2);
  Matrix red = a * a.adjoint();
  const RealVector nu = eigenvalues_of(red);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    const double p = nu(i) / lambda;
    if (p > kEigClamp) entropy -= p * std::log(p);
  }
  return lambda * entropy;
}

// Minimizes f over [lo, hi] by golden-section probing, returning the best
// point seen. Every f call increments `evals`.
std::pair<double, double> golden_minimize(
    const std::function<double(double)>& f, double lo, double hi, int iters,
    long& evals) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  evals += 2;
  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  for (int it = 0; it < iters; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    ++evals;
    if (f1 < best_f) {
      best_f = f1;
      best_x = x1;
    }
    if (f2 < best_f) {
      best_f = f2;
      best_x = x2;
    }
  }
  return {best_x, best_f};
}

struct RestartOutcome {
  double value = 0.0;
  long evals = 0;
  bool converged = false;
  bool budget_exhausted = false;
  std::vector<Vector> members;   // ef: refined unnormalized ensemble
  Matrix stinespring;            // esq: refined isometry
};

// --- entanglement of formation search -------------------------------------

struct EfProblem {
  int d1 = 0;
  int d2 = 0;
  int rank = 0;
  int ensemble = 0;
  RealVector eigvals;  // descending, above cutoff
  Matrix eigvecs;      // matching columns, dim D x rank
};

std::vector<Vector> ensemble_from_isometry(const EfProblem& prob,
                                           const Matrix& w) {
  std::vector<Vector> members;
  members.reserve(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    Vector v = Vector::Zero(prob.eigvecs.rows());
    for (int i = 0; i < prob.rank; ++i) {
      v += std::conj(w(k, i)) * std::sqrt(prob.eigvals(i)) *
           prob.eigvecs.col(i);
    }
    members.push_back(std::move(v));
  }
  return members;
}

// Two-member rotation: (E_k, E_l) -> (c E_k + s e^{i phase} E_l,
// -s e^{-i phase} E_k + c E_l). Any such unitary mixing keeps the mixture
// sum_k |E_k><E_k| fixed.
void rotate_pair(Vector& ek, Vector& el, double theta, double phase) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex u = std::polar(1.0, phase);
  Vector nk = c * ek + s * u * el;
  Vector nl = -s * std::conj(u) * ek + c * el;
  ek = std::move(nk);
  el = std::move(nl);
}

RestartOutcome refine_ensemble(const EfProblem& prob,
                               std::vector<Vector> members, long budget,
                               double tol) {
  RestartOutcome out;
  const int m = static_cast<int>(members.size());
  std::vector<double> terms(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    terms[static_cast<std::size_t>(k)] =
        member_term(members[static_cast<std::size_t>(k)], prob.d1, prob.d2);
  }
  auto total = [&] {
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
  };

  double cost = total();
  const long per_search = 2 + kGoldenIters;
  while (true) {
    if (out.evals + per_search > budget) {
      out.budget_exhausted = true;
      break;
    }
    const double sweep_start = cost;
    bool stopped = false;
    for (int k = 0; k < m && !stopped; ++k) {
      for (int l = k + 1; l < m && !stopped; ++l) {
        for (double phase : {0.0, 1.5707963267948966}) {
          if (out.evals + per_search > budget) {
            out.budget_exhausted = true;
            stopped = true;
            break;
          }
          auto& ek = members[static_cast<std::size_t>(k)];
          auto& el = members[static_cast<std::size_t>(l)];
          const double current = terms[static_cast<std::size_t>(k)] +
                                 terms[static_cast<std::size_t>(l)];
          auto slice = [&](double theta) {
            Vector tk = ek, tl = el;
            rotate_pair(tk, tl, theta, phase);
            return member_term(tk, prob.d1, prob.d2) +
                   member_term(tl, prob.d1, prob.d2);
          };
          auto [theta, f_best] = golden_minimize(
              slice, -0.7853981633974483, 0.7853981633974483, kGoldenIters,
              out.evals);
          if (f_best < current - 1e-15) {
            rotate_pair(ek, el, theta, phase);
            terms[static_cast<std::size_t>(k)] =
                member_term(ek, prob.d1, prob.d2);
            terms[static_cast<std::size_t>(l)] =
                member_term(el, prob.d1, prob.d2);
            cost += terms[static_cast<std::size_t>(k)] +
                    terms[static_cast<std::size_t>(l)] - current;
          }
        }
      }
    }
    cost = total();
    if (stopped) break;
    if (sweep_start - cost < tol) {
      out.converged = true;
      break;
    }
  }
  out.value = cost;
  out.members = std::move(members);
  return out;
}

Decomposition decomposition_from_members(const DensityMatrix& target,
                                         const std::vector<Vector>& members) {
  std::vector<PureState> states;
  std::vector<double> weights;
  for (const Vector& v : members) {
    const double lambda = v.squaredNorm();
    if (lambda <= kZeroWeightPrune) continue;
    weights.push_back(lambda);
    states.emplace_back(Vector(v / std::sqrt(lambda)), target.dims());
  }
  RealVector w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = weights[i];
  }
  return make_decomposition(target, std::move(w), std::move(states));
}

// --- shared restart driver -------------------------------------------------

// Runs seeded restarts (possibly concurrently), then reduces them in index
// order, stopping at the first value that pinches onto `floor`. The reduction
// is order-insensitive, so the result does not depend on scheduling.
template <typename RunFn>
std::pair<std::vector<RestartOutcome>, int> run_restarts(
    int restarts, int threads, double floor, const RunFn& run) {
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  int used = 0;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const bool parallel =
      restarts > 1 && threads != 1 && (threads == 0 ? hw > 1 : threads > 1);
  if (parallel) {
    std::vector<std::future<RestartOutcome>> futures;
    futures.reserve(static_cast<std::size_t>(restarts));
    for (int t = 0; t < restarts; ++t) {
      futures.push_back(
          std::async(std::launch::async, [&run, t] { return run(t); }));
    }
    for (int t = 0; t < restarts; ++t) {
      outcomes[static_cast<std::size_t>(t)] =
          futures[static_cast<std::size_t>(t)].get();
    }
    for (int t = 0; t < restarts; ++t) {
      used = t + 1;
      if (outcomes[static_cast<std::size_t>(t)].value <= floor + kPinchTol) {
        break;
      }
    }
  } else {
    for (int t = 0; t < restarts; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run(t);
      used = t + 1;
      if (outcomes[static_cast<std::size_t>(t)].value <= floor + kPinchTol) {
        break;
      }
    }
  }
  outcomes.resize(static_cast<std::size_t>(used));
  return {std::move(outcomes), used};
}

int best_outcome_index(const std::vector<RestartOutcome>& outcomes) {
  int best = 0;
  for (int t = 1; t < static_cast<int>(outcomes.size()); ++t) {
    if (outcomes[static_cast<std::size_t>(t)].value <
        outcomes[static_cast<std::size_t>(best)].value) {
      best = t;
    }
  }
  return best;
}

}  // namespace

Decomposition make_decomposition(const DensityMatrix& target,
                                 RealVector weights,
                                 std::vector<PureState> states) {
  if (weights.size() == 0 ||
      static_cast<std::size_t>(weights.size()) != states.size()) {
    throw WeightMismatch("one weight per ensemble member required");
  }
  if (weights.minCoeff() <= 0.0) {
    throw WeightMismatch("ensemble weights must be strictly positive");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-9) {
    throw WeightMismatch("ensemble weights must sum to 1");
  }
  for (const PureState& psi : states) {
    if (!(psi.dims() == target.dims())) {
      throw DimMismatch("ensemble member dims differ from the target");
    }
  }
  Matrix mix = Matrix::Zero(target.dim(), target.dim());
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    const Vector& v = states[static_cast<std::size_t>(k)].vec();
    mix += weights(k) * (v * v.adjoint());
  }
  Decomposition dec{std::move(weights), std::move(states),
                    (mix - target.mat()).norm()};
  return dec;
}

DensityMatrix decomposition_mixture(const Decomposition& dec,
                                    const SubsystemDims& dims) {
  Matrix mix = Matrix::Zero(dims.total(), dims.total());
  for (Eigen::Index k = 0; k < dec.weights.size(); ++k) {
    const Vector& v = dec.states[static_cast<std::size_t>(k)].vec();
    mix += dec.weights(k) * (v * v.adjoint());
  }
  mix = 0.5 * (mix + mix.adjoint()).eval();
  return DensityMatrix(std::move(mix), dims);
}

double decomposition_cost(const Decomposition& dec) {
  if (dec.reconstruction_residual > 1e-8) {
    throw BadDecomposition("reconstruction residual exceeds 1e-8");
  }
  double cost = 0.0;
  for (Eigen::Index k = 0; k < dec.weights.size(); ++k) {
    const PureState& psi = dec.states[static_cast<std::size_t>(k)];
    cost += dec.weights(k) *
            entropy_from_eigenvalues(eigenvalues_of(pure_reduced(psi, 0)));
  }
  return cost;
}

namespace {

EfProblem ef_problem(const DensityMatrix& rho12, int ensemble_size) {
  if (rho12.subsystem_count() != 2) {
    throw BadArity("formation estimate expects a bipartite state");
  }
  EfProblem prob;
  prob.d1 = rho12.dims().dim(0);
  prob.d2 = rho12.dims().dim(1);
  HermitianSpectrum spectrum = eig_hermitian(rho12.mat());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = spectrum.eigenvalues.size() - 1; i >= 0; --i) {
    if (spectrum.eigenvalues(i) > kRankCutoff) kept.push_back(i);
  }
  prob.rank = static_cast<int>(kept.size());
  prob.eigvals.resize(prob.rank);
  prob.eigvecs.resize(rho12.dim(), prob.rank);
  for (int i = 0; i < prob.rank; ++i) {
    prob.eigvals(i) = spectrum.eigenvalues(kept[static_cast<std::size_t>(i)]);
    prob.eigvecs.col(i) =
        spectrum.eigenvectors.col(kept[static_cast<std::size_t>(i)]);
  }
  prob.ensemble = ensemble_size > 0 ? ensemble_size : prob.rank * prob.rank;
  if (prob.ensemble < prob.rank) {
    throw BadRank("ensemble size must be at least the rank");
  }
  return prob;
}

}  // namespace

Decomposition decomposition_from_isometry(const DensityMatrix& rho12,
                                          const Matrix& isometry) {
  EfProblem prob = ef_problem(rho12, static_cast<int>(isometry.rows()));
  if (isometry.cols() != prob.rank) {
    throw BadRank("isometry must have rank(rho12) columns");
  }
  if (isometry.rows() < isometry.cols()) {
    throw BadShape("isometry must be tall");
  }
  if ((isometry.adjoint() * isometry -
       Matrix::Identity(prob.rank, prob.rank))
          .norm() > 1e-8) {
    throw BadShape("columns are not orthonormal");
  }
  return decomposition_from_members(rho12,
                                    ensemble_from_isometry(prob, isometry));
}

EstimateResult estimate_ef_upper(const DensityMatrix& rho12,
                                 const EstimatorConfig& config) {
  EfProblem prob = ef_problem(rho12, config.ensemble_size);
  EstimateResult result;
  result.kind = EstimateKind::ef_upper;
  result.seed = config.seed;

  // A pure target admits exactly one decomposition; nothing to search.
  if (prob.rank == 1) {
    Vector v = prob.eigvecs.col(0);
    PureState psi(std::move(v), rho12.dims());
    result.value = entropy_from_eigenvalues(eigenvalues_of(pure_reduced(psi, 0)));
    result.restarts_used = 0;
    result.converged = true;
    RealVector w(1);
    w(0) = 1.0;
    result.decomposition =
        make_decomposition(rho12, std::move(w), {std::move(psi)});
    return result;
  }

  const double floor = lower_bound_ent(rho12);
  const int restarts = std::max(1, config.restarts);

  auto run_one = [&](int t) {
    std::vector<Vector> members;
    if (t == 0) {
      // The eigen-ensemble itself: rows r+1..m start empty.
      Matrix w = Matrix::Zero(prob.ensemble, prob.rank);
      w.topRows(prob.rank) = Matrix::Identity(prob.rank, prob.rank);
      members = ensemble_from_isometry(prob, w);
    } else {
      members = ensemble_from_isometry(
          prob, haar_isometry(prob.ensemble, prob.rank,
                              config.seed + static_cast<std::uint64_t>(t)));
    }
    return refine_ensemble(prob, std::move(members), config.budget,
                           config.tol);
  };

  auto [outcomes, used] =
      run_restarts(restarts, config.threads, floor, run_one);
  const int best = best_outcome_index(outcomes);
  for (const RestartOutcome& o : outcomes) result.iterations += o.evals;
  result.restarts_used = used;
  result.converged = outcomes[static_cast<std::size_t>(best)].converged;
  result.budget_exhausted =
      outcomes[static_cast<std::size_t>(best)].budget_exhausted;
  result.decomposition = decomposition_from_members(
      rho12, outcomes[static_cast<std::size_t>(best)].members);
  result.value = decomposition_cost(*result.decomposition);
  return result;
}

// --- squashed entanglement search ------------------------------------------

namespace {

struct EsqProblem {
  int d1 = 0, d2 = 0, d3 = 0;
  int rank = 0;
  int denv = 0;
  Matrix purifier;  // D x rank, column i = sqrt(p_i) e_i
};

EsqProblem esq_problem(const DensityMatrix& rho12, int ancilla_dim) {
  if (rho12.subsystem_count() != 2) {
    throw BadArity("squashed estimate expects a bipartite state");
  }
  EsqProblem prob;
  prob.d1 = rho12.dims().dim(0);
  prob.d2 = rho12.dims().dim(1);
  const PureState psi = purify(DensityMatrix(rho12.mat(), SubsystemDims({rho12.dim()})));
  prob.rank = psi.dims().dim(1);
  prob.d3 = ancilla_dim > 0 ? ancilla_dim : prob.rank * prob.rank;
  const long d12 = static_cast<long>(prob.d1) * prob.d2;
  if (d12 * prob.d3 > max_dim()) {
    throw DimensionOverflow("extension dimension exceeds the cap");
  }
  // Environment just large enough for generic channels while the purified
  // intermediate stays under the cap.
  long denv = std::min<long>(static_cast<long>(prob.rank) * prob.d3,
                             max_dim() / (d12 * prob.d3));
  const long min_env = (prob.rank + prob.d3 - 1) / prob.d3;
  prob.denv = static_cast<int>(std::max(denv, min_env));
  prob.purifier.resize(d12, prob.rank);
  for (long p = 0; p < d12; ++p) {
    for (int i = 0; i < prob.rank; ++i) {
      prob.purifier(p, i) = psi.vec()(p * prob.rank + i);
    }
  }
  return prob;
}

double esq_cmi(const EsqProblem& prob, const SubsystemDims& dims3,
               const Matrix& stinespring) {
  const long d12 = static_cast<long>(prob.d1) * prob.d2;
  // M[(p,c), e] = sum_i purifier(p, i) V((c, e), i)
  Matrix m2 = prob.purifier * stinespring.transpose();  // d12 x (d3*denv)
  Matrix m(d12 * prob.d3, prob.denv);
  for (long p = 0; p < d12; ++p) {
    for (int c = 0; c < prob.d3; ++c) {
      for (int e = 0; e < prob.denv; ++e) {
        m(p * prob.d3 + c, e) = m2(p, static_cast<long>(c) * prob.denv + e);
      }
    }
  }
  Matrix rho = m * m.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return cmi(DensityMatrix(std::move(rho), dims3));
}

RestartOutcome refine_stinespring(const EsqProblem& prob,
                                  const SubsystemDims& dims3, Matrix v,
                                  long budget, double tol, CounterRng rng) {
  RestartOutcome out;
  const int rows = static_cast<int>(v.rows());
  auto cost_of = [&](const Matrix& cand) {
    return esq_cmi(prob, dims3, cand);
  };
  double cost = cost_of(v);
  ++out.evals;

  const long per_search = 2 + kGoldenIters;
  const long all_pairs = static_cast<long>(rows) * (rows - 1) / 2;
  const long pairs_per_sweep = std::min<long>(all_pairs, 48);
  while (true) {
    if (out.evals + per_search > budget) {
      out.budget_exhausted = true;
      break;
    }
    const double sweep_start = cost;
    bool stopped = false;
    for (long pair = 0; pair < pairs_per_sweep && !stopped; ++pair) {
      int k, l;
      if (all_pairs <= pairs_per_sweep) {
        // Enumerate every pair when the space is small.
        long idx = pair;
        k = 0;
        while (idx >= rows - 1 - k) {
          idx -= rows - 1 - k;
          ++k;
        }
        l = k + 1 + static_cast<int>(idx);
      } else {
        k = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(rows));
        l = static_cast<int>(rng.next_u64() %
                             static_cast<std::uint64_t>(rows - 1));
        if (l >= k) ++l;
        if (k > l) std::swap(k, l);
      }
      for (double phase : {0.0, 1.5707963267948966}) {
        if (out.evals + per_search > budget) {
          out.budget_exhausted = true;
          stopped = true;
          break;
        }
        auto slice = [&](double theta) {
          Matrix cand = v;
          const double c = std::cos(theta);
          const double s = std::sin(theta);
          const Complex u = std::polar(1.0, phase);
          cand.row(k) = c * v.row(k) + s * u * v.row(l);
          cand.row(l) = -s * std::conj(u) * v.row(k) + c * v.row(l);
          return cost_of(cand);
        };
        auto [theta, f_best] = golden_minimize(
            slice, -0.7853981633974483, 0.7853981633974483, kGoldenIters,
            out.evals);
        if (f_best < cost - 1e-15) {
          const double c = std::cos(theta);
          const double s = std::sin(theta);
          const Complex u = std::polar(1.0, phase);
          Matrix rk = c * v.row(k) + s * u * v.row(l);
          Matrix rl = -s * std::conj(u) * v.row(k) + c * v.row(l);
          v.row(k) = rk;
          v.row(l) = rl;
          cost = f_best;
        }
      }
    }
    if (stopped) break;
    if (sweep_start - cost < tol) {
      out.converged = true;
      break;
    }
  }
  out.value = cost;
  out.stinespring = std::move(v);
  return out;
}

}  // namespace

EstimateResult estimate_esq_upper(const DensityMatrix& rho12,
                                  const EstimatorConfig& config,
                                  const Decomposition* ef_hint) {
  EsqProblem prob = esq_problem(rho12, config.ancilla_dim);
  const SubsystemDims dims3({prob.d1, prob.d2, prob.d3});

  EstimateResult result;
  result.kind = EstimateKind::esq_upper;
  result.seed = config.seed;

  const double floor = lower_bound_ent(rho12);

  // Arm 1: the canonical extension of the best known formation ensemble. Its
  // conditional mutual information is twice the ensemble cost, so whenever
  // the formation side pinches, this arm pinches too.
  std::optional<Decomposition> local_dec;
  const Decomposition* dec = ef_hint;
  if (dec == nullptr) {
    local_dec = estimate_ef_upper(rho12, config).decomposition;
    dec = &*local_dec;
  }
  double best_value = std::numeric_limits<double>::infinity();
  std::optional<DensityMatrix> best_extension;
  if (dec != nullptr &&
      static_cast<long>(rho12.dim()) * dec->states.size() <=
          static_cast<long>(max_dim())) {
    std::vector<DensityMatrix> omegas;
    omegas.reserve(dec->states.size());
    for (const PureState& w : dec->states) omegas.push_back(w.to_density());
    DensityMatrix canonical = canonical_extension(dec->weights, omegas);
    best_value = 0.5 * cmi(canonical);
    best_extension = std::move(canonical);
    ++result.iterations;
  }

  // Arm 2: Stinespring search over channels applied to the purifier.
  if (best_value > floor + kPinchTol) {
    const int rows = prob.d3 * prob.denv;
    const int restarts = std::max(1, config.esq_restarts);
    auto run_one = [&](int t) {
      Matrix v;
      if (t == 0) {
        v = Matrix::Zero(rows, prob.rank);
        v.topRows(prob.rank) = Matrix::Identity(prob.rank, prob.rank);
      } else {
        v = haar_isometry(rows, prob.rank,
                          config.seed + static_cast<std::uint64_t>(t));
      }
      return refine_stinespring(
          prob, dims3, std::move(v), config.esq_budget, config.tol,
          CounterRng(config.seed + 0x9E37u + static_cast<std::uint64_t>(t)));
    };
    auto [outcomes, used] =
        run_restarts(restarts, config.threads, 2.0 * floor, run_one);
    const int best = best_outcome_index(outcomes);
    for (const RestartOutcome& o : outcomes) result.iterations += o.evals;
    result.restarts_used = used;
    const RestartOutcome& winner = outcomes[static_cast<std::size_t>(best)];
    result.converged = winner.converged;
    result.budget_exhausted = winner.budget_exhausted;
    if (0.5 * winner.value < best_value) {
      best_value = 0.5 * winner.value;
      const long d12 = static_cast<long>(prob.d1) * prob.d2;
      Matrix m2 = prob.purifier * winner.stinespring.transpose();
      Matrix m(d12 * prob.d3, prob.denv);
      for (long p = 0; p < d12; ++p) {
        for (int c = 0; c < prob.d3; ++c) {
          for (int e = 0; e < prob.denv; ++e) {
            m(p * prob.d3 + c, e) =
                m2(p, static_cast<long>(c) * prob.denv + e);
          }
        }
      }
      Matrix rho = m * m.adjoint();
      rho = (0.5 * (rho + rho.adjoint())).eval();
      best_extension = DensityMatrix(std::move(rho), dims3);
    }
  } else {
    result.converged = true;
  }

  result.value = best_value;
  result.extension = std::move(best_extension);
  return result;
}

std::string to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::ef_upper:
      return "ef_upper";
    case EstimateKind::esq_upper:
      return "esq_upper";
    case EstimateKind::lower:
      return "lower";
  }
  return "unknown";
}

SandwichReport entanglement_bounds(const DensityMatrix& rho12,
                                   const EstimatorConfig& config) {
  if (rho12.subsystem_count() != 2) {
    throw BadArity("entanglement_bounds expects a bipartite state");
  }
  SandwichReport report;
  report.lower = lower_bound_ent(rho12);
  report.weaker = weaker_bound(rho12);
  report.upper_local = upper_bound_local(rho12);
  report.ef = estimate_ef_upper(rho12, config);
  report.esq = estimate_esq_upper(
      rho12, config,
      report.ef.decomposition ? &*report.ef.decomposition : nullptr);

  if (report.esq.value < report.lower - kSandwichTol ||
      report.ef.value < report.esq.value - kSandwichTol ||
      report.upper_local < report.ef.value - kSandwichTol) {
    throw SandwichViolation(
        "bound ordering lower <= esq <= ef <= min(S1,S2) failed beyond 1e-4");
  }
  return report;
}

IdenReport verify_iden(const SaturatingSpec& spec,
                       const EstimatorConfig& config) {
  if (spec.n() < 2) {
    throw BadSpec("verify_iden needs at least two kappa terms");
  }
  IdenReport report;
  report.analytic_s12 = entropy_from_eigenvalues(spec.kappas());
  report.analytic_s2 = von_neumann_entropy(spec.rho2());
  report.analytic_s1 = report.analytic_s12 + report.analytic_s2;

  const DensityMatrix rho12 = build_saturating_state(spec);
  report.sandwich = entanglement_bounds(rho12, config);
  report.ef_gap = std::abs(report.sandwich.ef.value - report.sandwich.lower);
  report.esq_gap = std::abs(report.sandwich.esq.value - report.sandwich.lower);
  report.certified = report.ef_gap <= kSandwichTol &&
                     report.esq_gap <= kSandwichTol;
  return report;
}

}  // namespace entlab
