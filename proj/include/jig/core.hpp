// Scalar aliases, default tolerances and the error taxonomy shared by every
// module.  Structural predicates keep one safety decade above the ~1e-12
// noise floor of double-precision eigensolves; spectral cuts are relative to
// the largest eigenvalue so rescaling a functional never flips a decision.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace jig {

using Complex = std::complex<double>;

inline constexpr double kStructuralTol = 1e-9;  // self-adjointness, positivity, AC tests
inline constexpr double kSupportTol = 1e-10;    // relative spectral cut for support projections
inline constexpr double kLiftMaskTol = 1e-12;   // relative denominator mask inside lifts
inline constexpr double kFdStep = 1e-5;         // base step for central differences

// Malformed shapes or mismatched block structure.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Structurally invalid inputs: non-Hermitian generators, non-unital Kraus
// families, empty vectors and the like.
struct ElementError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A functional required to be positive is not.
struct PositivityError : std::domain_error {
  using std::domain_error::domain_error;
};

// A functional required to be faithful has a kernel.
struct FaithfulnessError : std::domain_error {
  using std::domain_error::domain_error;
};

// A tangent charges the kernel of its base point, i.e. leaves the cone
// of directions along which the state can actually move.
struct AbsoluteContinuityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Parameter outside the declared smooth domain of a model.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Regularity failure at an evaluation point: support rank drops, a
// coordinate tangent charges the kernel, or the point leaves the cone.
struct RegularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Numerical breakdown: singular solves, realness violations, step underflow.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jig
