#pragma once

#include <string>

#include "entlab/entropy.hpp"
#include "entlab/extremal.hpp"
#include "entlab/measures.hpp"
#include "entlab/states.hpp"

// String-level JSON codecs for every on-disk format. Complex numbers
// serialize as [re, im]; matrices as {"dim": n, "entries": [[re, im], ...]}
// in row-major order. The implementation uses nlohmann/json internally; the
// public surface stays vendor-free so the installed core has no extra
// dependency.

namespace entlab {

std::string matrix_to_json(const Matrix& m, int indent = -1);
Matrix matrix_from_json(const std::string& text);

std::string density_to_json(const DensityMatrix& rho, int indent = -1);
/// Parses and fully validates (including the PSD check).
DensityMatrix density_from_json(const std::string& text);

std::string pure_to_json(const PureState& psi, int indent = -1);
PureState pure_from_json(const std::string& text);

std::string report_to_json(const InequalityReport& report, int indent = -1);

std::string spec_to_json(const SaturatingSpec& spec, int indent = -1);
SaturatingSpec spec_from_json(const std::string& text);

std::string certificate_to_json(const EqualityCertificate& cert,
                                int indent = -1);

std::string decomposition_to_json(const Decomposition& dec, int indent = -1);

std::string estimate_to_json(const EstimateResult& est, int indent = -1,
                             bool include_certificate = true);

std::string sandwich_to_json(const SandwichReport& report, int indent = -1);

std::string iden_report_to_json(const IdenReport& report, int indent = -1);

std::string witness_report_to_json(const WitnessReport& report,
                                   int indent = -1);

}  // namespace entlab
