#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr const char* kVersion = "0.1.0";

// Module-level tolerances. Dimensions stay <= 4096, so conditioning is benign
// and one set of absolute tolerances works throughout.
inline constexpr double kHermitianTol = 1e-8;
inline constexpr double kOrthoTol = 1e-10;
inline constexpr double kTraceTol = 1e-8;
inline constexpr double kUnitNormTol = 1e-10;
inline constexpr double kInequalityTol = 1e-8;
inline constexpr double kEigClamp = 1e-12;
inline constexpr double kRankCutoff = 1e-12;
inline constexpr double kCertRankCutoff = 1e-10;
inline constexpr double kWeightTol = 1e-10;
inline constexpr double kZeroWeightPrune = 1e-14;
inline constexpr int kDefaultMaxDim = 4096;

/// Current cap on the dimension of any constructed matrix.
int max_dim();

/// Lower the cap (values above the 4096 default are ignored).
void set_max_dim(int cap);

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ENTLAB_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

ENTLAB_DEFINE_ERROR(NotHermitian);
ENTLAB_DEFINE_ERROR(NumericalFailure);
ENTLAB_DEFINE_ERROR(DimensionOverflow);
ENTLAB_DEFINE_ERROR(BadShape);
ENTLAB_DEFINE_ERROR(BadSubsystemSet);
ENTLAB_DEFINE_ERROR(BadArity);
ENTLAB_DEFINE_ERROR(BadRank);
ENTLAB_DEFINE_ERROR(BadPermutation);
ENTLAB_DEFINE_ERROR(WeightMismatch);
ENTLAB_DEFINE_ERROR(DimMismatch);
ENTLAB_DEFINE_ERROR(BadDecomposition);
ENTLAB_DEFINE_ERROR(BadSpec);
ENTLAB_DEFINE_ERROR(DegenerateWitness);
ENTLAB_DEFINE_ERROR(SandwichViolation);
ENTLAB_DEFINE_ERROR(ParseError);

#undef ENTLAB_DEFINE_ERROR

}  // namespace entlab
