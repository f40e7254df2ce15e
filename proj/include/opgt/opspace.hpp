#pragma once

#include "opgt/linalg.hpp"

#include <optional>
#include <vector>

namespace opgt {

/// Raised when a matrix is not (numerically) in the span of a basis.
class SpanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subspace E ⊆ M_N with a fixed linearly independent basis.
class OperatorSpace {
 public:
  OperatorSpace(Index ambient_dim, std::vector<ComplexMatrix> basis, double exactness_bound = 1.0);

  /// M_n with the matrix units e_ij in row-major order; exactness bound 1.
  static OperatorSpace full(Index n);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const ComplexMatrix& basis(Index k) const { return basis_[static_cast<std::size_t>(k)]; }
  double exactness_bound() const { return exactness_bound_; }
  bool is_full_algebra() const;

  /// Σ_k c_k basis_k.
  ComplexMatrix element(const ComplexVector& coeffs) const;

  /// Coefficients of x in the basis. Throws SpanError when the least-squares
  /// residual exceeds tol·max(1, ‖x‖_F).
  ComplexVector coordinates(const ComplexMatrix& x, double tol = 1e-8) const;

  /// Space spanned by the entrywise conjugates of the basis.
  OperatorSpace conjugate() const;

 private:
  Index ambient_dim_;
  std::vector<ComplexMatrix> basis_;
  double exactness_bound_;
  ComplexMatrix stacked_;  // columns vec(basis_k)
};

/// w = Σ_i left_i ⊗ right_i, optionally with positive weights λ_i.
struct TensorRep {
  std::vector<ComplexMatrix> left;
  std::vector<ComplexMatrix> right;
  std::optional<std::vector<double>> weights;

  std::size_t size() const { return left.size(); }
  /// Checks lengths, shapes, and weight positivity; throws on violation.
  void validate() const;
  TensorRep flipped() const;
  /// Σ kron(left_i, right_i).
  ComplexMatrix kron_sum() const;
};

double min_norm(const TensorRep& t);
double row_quantity(const std::vector<ComplexMatrix>& ms);
double col_quantity(const std::vector<ComplexMatrix>& ms);

enum class Side { kRow, kCol };

double weighted_quantity(const std::vector<ComplexMatrix>& ms, const std::vector<double>& weights,
                         Side side);

/// Family (Σ_j γ_kj m_j)_k.
std::vector<ComplexMatrix> transform_family(const ComplexMatrix& gamma,
                                            const std::vector<ComplexMatrix>& ms);

}  // namespace opgt
