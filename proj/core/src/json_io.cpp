#include "entlab/json_io.hpp"

#include <utility>

#include <json.hpp>

namespace entlab {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("complex number must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_obj(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(complex_to_json(m(r, c)));
    }
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_obj(const json& j) {
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw ParseError("matrix dim must be positive");
  const json& entries = j.at("entries");
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(dim) * dim) {
    throw ParseError("entry count must equal dim^2");
  }
  Matrix m(dim, dim);
  std::size_t idx = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      m(r, c) = complex_from_json(entries[idx++]);
    }
  }
  if (!all_finite(m)) throw ParseError("matrix entries must be finite");
  return m;
}

std::vector<int> dims_from_obj(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("dims must be a nonempty array");
  }
  std::vector<int> dims;
  for (const json& d : j) dims.push_back(d.get<int>());
  return dims;
}

json density_to_obj(const DensityMatrix& rho) {
  return json{{"dims", rho.dims().as_vector()},
              {"mat", matrix_to_obj(rho.mat())}};
}

DensityMatrix density_from_obj(const json& j) {
  return DensityMatrix::checked(matrix_from_obj(j.at("mat")),
                                SubsystemDims(dims_from_obj(j.at("dims"))));
}

json pure_to_obj(const PureState& psi) {
  json vec = json::array();
  for (Eigen::Index i = 0; i < psi.vec().size(); ++i) {
    vec.push_back(complex_to_json(psi.vec()(i)));
  }
  return json{{"dims", psi.dims().as_vector()}, {"vec", std::move(vec)}};
}

PureState pure_from_obj(const json& j) {
  const json& entries = j.at("vec");
  if (!entries.is_array()) throw ParseError("vec must be an array");
  Vector vec(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    vec(static_cast<Eigen::Index>(i)) = complex_from_json(entries[i]);
  }
  return PureState(std::move(vec),
                   SubsystemDims(dims_from_obj(j.at("dims"))));
}

json report_to_obj(const InequalityReport& r) {
  return json{{"name", r.name},   {"lhs", r.lhs},
              {"rhs", r.rhs},     {"slack", r.slack},
              {"satisfied", r.satisfied}, {"tol", r.tol}};
}

json decomposition_to_obj(const Decomposition& dec) {
  json weights = json::array();
  for (Eigen::Index i = 0; i < dec.weights.size(); ++i) {
    weights.push_back(dec.weights(i));
  }
  json states = json::array();
  for (const PureState& psi : dec.states) states.push_back(pure_to_obj(psi));
  return json{{"weights", std::move(weights)},
              {"states", std::move(states)},
              {"reconstruction_residual", dec.reconstruction_residual}};
}

json estimate_to_obj(const EstimateResult& est, bool include_certificate) {
  json j{{"value", est.value},
         {"kind", to_string(est.kind)},
         {"restarts_used", est.restarts_used},
         {"iterations", est.iterations},
         {"seed", est.seed},
         {"converged", est.converged},
         {"budget_exhausted", est.budget_exhausted}};
  if (include_certificate) {
    if (est.decomposition) {
      j["certificate"] = decomposition_to_obj(*est.decomposition);
    } else if (est.extension) {
      j["certificate"] = density_to_obj(*est.extension);
    } else {
      j["certificate"] = nullptr;
    }
  }
  return j;
}

json sandwich_to_obj(const SandwichReport& r) {
  return json{{"lower", r.lower},
              {"weaker", r.weaker},
              {"upper_local", r.upper_local},
              {"ef", estimate_to_obj(r.ef, false)},
              {"esq", estimate_to_obj(r.esq, false)}};
}

std::string dump(const json& j, int indent) {
  return indent >= 0 ? j.dump(indent) : j.dump();
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string matrix_to_json(const Matrix& m, int indent) {
  return dump(matrix_to_obj(m), indent);
}

Matrix matrix_from_json(const std::string& text) {
  return guarded("matrix",
                 [&] { return matrix_from_obj(json::parse(text)); });
}

std::string density_to_json(const DensityMatrix& rho, int indent) {
  return dump(density_to_obj(rho), indent);
}

DensityMatrix density_from_json(const std::string& text) {
  return guarded("density matrix",
                 [&] { return density_from_obj(json::parse(text)); });
}

std::string pure_to_json(const PureState& psi, int indent) {
  return dump(pure_to_obj(psi), indent);
}

PureState pure_from_json(const std::string& text) {
  return guarded("pure state",
                 [&] { return pure_from_obj(json::parse(text)); });
}

std::string report_to_json(const InequalityReport& report, int indent) {
  return dump(report_to_obj(report), indent);
}

std::string spec_to_json(const SaturatingSpec& spec, int indent) {
  json kappas = json::array();
  for (Eigen::Index i = 0; i < spec.kappas().size(); ++i) {
    kappas.push_back(spec.kappas()(i));
  }
  return dump(json{{"kappas", std::move(kappas)},
                   {"rho2", density_to_obj(spec.rho2())}},
              indent);
}

SaturatingSpec spec_from_json(const std::string& text) {
  return guarded("saturating spec", [&] {
    const json j = json::parse(text);
    const json& kj = j.at("kappas");
    if (!kj.is_array() || kj.empty()) {
      throw ParseError("kappas must be a nonempty array");
    }
    RealVector kappas(static_cast<Eigen::Index>(kj.size()));
    for (std::size_t i = 0; i < kj.size(); ++i) {
      kappas(static_cast<Eigen::Index>(i)) = kj[i].get<double>();
    }
    return SaturatingSpec(std::move(kappas), density_from_obj(j.at("rho2")));
  });
}

std::string certificate_to_json(const EqualityCertificate& cert, int indent) {
  return dump(json{{"rank1", cert.rank1},
                   {"rank2", cert.rank2},
                   {"rank12", cert.rank12},
                   {"rank_condition", cert.rank_condition},
                   {"offdiag_residual", cert.offdiag_residual},
                   {"entropy_gap", cert.entropy_gap},
                   {"degenerate_spectrum", cert.degenerate_spectrum},
                   {"passed", cert.passed}},
              indent);
}

std::string decomposition_to_json(const Decomposition& dec, int indent) {
  return dump(decomposition_to_obj(dec), indent);
}

std::string estimate_to_json(const EstimateResult& est, int indent,
                             bool include_certificate) {
  return dump(estimate_to_obj(est, include_certificate), indent);
}

std::string sandwich_to_json(const SandwichReport& report, int indent) {
  return dump(sandwich_to_obj(report), indent);
}

std::string iden_report_to_json(const IdenReport& report, int indent) {
  return dump(json{{"sandwich", sandwich_to_obj(report.sandwich)},
                   {"analytic_s12", report.analytic_s12},
                   {"analytic_s2", report.analytic_s2},
                   {"analytic_s1", report.analytic_s1},
                   {"ef_gap", report.ef_gap},
                   {"esq_gap", report.esq_gap},
                   {"certified", report.certified}},
              indent);
}

std::string witness_report_to_json(const WitnessReport& report, int indent) {
  return dump(json{{"cmi", report.cmi_value},
                   {"bound", report.bound},
                   {"ratio", report.ratio}},
              indent);
}

}  // namespace entlab
