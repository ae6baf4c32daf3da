#ifndef DIRAC_FIELDS_TYPES_HPP
#define DIRAC_FIELDS_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

namespace dirac_fields {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;
using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Per-node vector field stored as an N x dim matrix (one column per axis).
using VectorField = Matrix;

/// Raised when a time step cannot be completed (Newton stall, non-finite state).
class NumericalFailure : public std::runtime_error {
public:
  NumericalFailure(const std::string& what, Index step, int iterations, double residual)
      : std::runtime_error(what), step_(step), iterations_(iterations), residual_(residual) {}

  Index step() const { return step_; }
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

private:
  Index step_;
  int iterations_;
  double residual_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

inline void require_size(Index actual, Index expected, const char* what) {
  if (actual != expected)
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(expected) +
                                ", got " + std::to_string(actual));
}

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_TYPES_HPP
