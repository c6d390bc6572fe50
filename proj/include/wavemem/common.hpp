#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wavemem {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;

// Default tolerances (see module design decisions: closed-form identities get
// 1e-10, quadrature-based identities 1e-8, exponent merging 1e-12).
inline constexpr double TOL_CLOSED_FORM = 1e-10;
inline constexpr double TOL_QUADRATURE = 1e-8;
inline constexpr double TOL_MERGE = 1e-12;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ControllabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wavemem
