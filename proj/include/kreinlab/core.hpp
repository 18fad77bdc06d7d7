#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kreinlab {

using cplx = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = Mat<cplx>;
using ComplexVector = Vec<cplx>;
using RealMatrix = Mat<double>;
using RealVector = Vec<double>;

// 1e-9 unless KREINLAB_TOL is set to a positive number.
double default_tol();

inline const double kPi = 3.14159265358979323846;

// Spectral norm.
template <typename Derived>
double opnorm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat<typename Derived::Scalar>> svd(m.eval());
  return svd.singularValues()(0);
}

// Relative scale used by the "tol * max(1, |m|)" checks.
template <typename Derived>
double scale_of(const Eigen::MatrixBase<Derived>& m) {
  return std::max(1.0, m.norm());
}

inline ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define KREINLAB_ERROR(Name)                                              \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(#Name, what) {}        \
  };

KREINLAB_ERROR(NotHermitian)
KREINLAB_ERROR(NoConvergence)
KREINLAB_ERROR(DomainError)
KREINLAB_ERROR(Singular)
KREINLAB_ERROR(DimensionMismatch)
KREINLAB_ERROR(Unavailable)
KREINLAB_ERROR(NotACSymmetry)
KREINLAB_ERROR(NotInRSpace)
KREINLAB_ERROR(NotEtaSelfAdjoint)
KREINLAB_ERROR(DoesNotCommuteWithXi)
KREINLAB_ERROR(NotAnEtaSymmetry)
KREINLAB_ERROR(NotInvolutive)
KREINLAB_ERROR(NeitherCommutesNorAnticommutes)
KREINLAB_ERROR(GapClosed)
KREINLAB_ERROR(PreconditionViolated)
KREINLAB_ERROR(ContextMismatch)
KREINLAB_ERROR(OutOfDomain)
KREINLAB_ERROR(NotCommuting)
KREINLAB_ERROR(NotInCommutant)
KREINLAB_ERROR(InvalidInput)
KREINLAB_ERROR(NoGenerators)
KREINLAB_ERROR(Reducible)
KREINLAB_ERROR(Unbalanced)
KREINLAB_ERROR(UnsupportedScenario)
KREINLAB_ERROR(NotOdd)
KREINLAB_ERROR(NotUnimodular)
KREINLAB_ERROR(NotPositive)
KREINLAB_ERROR(ParseError)
KREINLAB_ERROR(InternalError)

#undef KREINLAB_ERROR

// Failure of find_csymmetry; obstruction is one of "non-real", "defective", "neutral".
class NotDynamicallyStable : public Error {
 public:
  NotDynamicallyStable(std::string obstruction, const std::string& what)
      : Error("NotDynamicallyStable", obstruction + ": " + what),
        obstruction_(std::move(obstruction)) {}
  const std::string& obstruction() const { return obstruction_; }

 private:
  std::string obstruction_;
};

}  // namespace kreinlab
