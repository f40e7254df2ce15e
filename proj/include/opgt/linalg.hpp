#pragma once

// Dense complex linear algebra substrate. Every norm on a matrix algebra in
// this toolkit is an operator (spectral) norm computed by a full
// decomposition; sizes are desk scale (a few thousand at most).

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace opgt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kStructural = 1e-10;
inline constexpr double kOptimization = 1e-6;
inline constexpr double kHermitian = 1e-12;
}  // namespace tol

/// A complex matrix known to be self-adjoint. Construction checks
/// ‖X − X*‖ ≤ 1e−12·‖X‖ and stores the exact symmetrization.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  /// Skips the check; used on values that are Hermitian by construction
  /// (X*X, sums of a a*) where only rounding separates X from X*.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return m_; }
  Index size() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

struct Svd {
  RealVector singular;  // descending
  ComplexMatrix u;
  ComplexMatrix v;
};

ComplexMatrix adjoint(const ComplexMatrix& x);

/// Largest singular value. Throws DimensionError on an empty matrix.
double op_norm(const ComplexMatrix& x);

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

/// True iff the smallest eigenvalue is ≥ −tol.
bool psd_check(const HermitianMatrix& x, double tol);

HermitianEigen hermitian_eig(const HermitianMatrix& x);
RealVector hermitian_eigenvalues(const HermitianMatrix& x);
double max_eigenvalue(const HermitianMatrix& x);
double min_eigenvalue(const HermitianMatrix& x);

/// Full SVD (thin when rectangular).
Svd svd(const ComplexMatrix& x);

double trace_norm(const ComplexMatrix& x);

/// Square root of the positive part of a Hermitian matrix.
ComplexMatrix psd_sqrt(const HermitianMatrix& x);

/// Projection of a Hermitian matrix onto the density matrices
/// {ρ ⪰ 0, tr ρ = 1} in Frobenius distance.
ComplexMatrix project_to_density(const HermitianMatrix& x);

ComplexMatrix matrix_unit(Index rows, Index cols, Index i, Index j);

/// Row-major flattening, the same order used by the JSON matrix format.
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

/// Σ_i m_i m_i* (row side) or Σ_i m_i* m_i (column side).
ComplexMatrix gram_sum(const std::vector<ComplexMatrix>& ms, bool row_side);

bool same_shape(const ComplexMatrix& x, const ComplexMatrix& y);
std::string shape_string(const ComplexMatrix& x);

}  // namespace opgt
