#ifndef PSTOKES_COMMON_HPP
#define PSTOKES_COMMON_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pstokes {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Evaluation of a field at a removable singularity (kernel origin).
struct SingularPointError : std::domain_error {
  explicit SingularPointError(const std::string& what) : std::domain_error(what) {}
};

// Numeric precondition violated (k too small, radius out of range, ...).
// The CLI maps this to exit code 2.
struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Input outside the supported family (strain not a multiple of the canonical
// one, rotation not a lattice symmetry, unknown mode string).
struct UnsupportedError : std::invalid_argument {
  explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace pstokes

#endif  // PSTOKES_COMMON_HPP
