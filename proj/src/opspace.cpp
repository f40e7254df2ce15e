#include "opgt/opspace.hpp"

#include <cmath>

namespace opgt {

OperatorSpace::OperatorSpace(Index ambient_dim, std::vector<ComplexMatrix> basis,
                             double exactness_bound)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)), exactness_bound_(exactness_bound) {
  if (ambient_dim_ < 1) {
    throw DimensionError("ambient dimension must be positive");
  }
  if (basis_.empty()) {
    throw DimensionError("operator space basis is empty");
  }
  if (!(exactness_bound_ >= 1.0)) {
    throw ValueError("exactness bound must be at least 1");
  }
  stacked_.resize(ambient_dim_ * ambient_dim_, dim());
  for (Index k = 0; k < dim(); ++k) {
    const auto& b = basis_[static_cast<std::size_t>(k)];
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_) {
      throw DimensionError("basis element " + std::to_string(k) + " has shape " + shape_string(b) +
                           ", expected " + std::to_string(ambient_dim_) + "x" +
                           std::to_string(ambient_dim_));
    }
    stacked_.col(k) = vec(b);
  }
  Eigen::BDCSVD<ComplexMatrix> solver(stacked_);
  const RealVector s = solver.singularValues();
  if (!(s(s.size() - 1) > 1e-8 * s(0))) {
    throw ValueError("operator space basis is not linearly independent");
  }
}

OperatorSpace OperatorSpace::full(Index n) {
  std::vector<ComplexMatrix> basis;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      basis.push_back(matrix_unit(n, n, i, j));
    }
  }
  return OperatorSpace(n, std::move(basis), 1.0);
}

bool OperatorSpace::is_full_algebra() const { return dim() == ambient_dim_ * ambient_dim_; }

ComplexMatrix OperatorSpace::element(const ComplexVector& coeffs) const {
  if (coeffs.size() != dim()) {
    throw DimensionError("expected " + std::to_string(dim()) + " coefficients, got " +
                         std::to_string(coeffs.size()));
  }
  return unvec(stacked_ * coeffs, ambient_dim_, ambient_dim_);
}

ComplexVector OperatorSpace::coordinates(const ComplexMatrix& x, double tol) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) {
    throw DimensionError("matrix of shape " + shape_string(x) + " is not in M_" +
                         std::to_string(ambient_dim_));
  }
  const ComplexVector v = vec(x);
  const ComplexVector c = stacked_.colPivHouseholderQr().solve(v);
  const double residual = (stacked_ * c - v).norm();
  if (residual > tol * std::max(1.0, v.norm())) {
    throw SpanError("matrix lies outside the span of the basis (residual " +
                    std::to_string(residual) + ")");
  }
  return c;
}

OperatorSpace OperatorSpace::conjugate() const {
  std::vector<ComplexMatrix> b;
  for (const auto& m : basis_) {
    b.push_back(m.conjugate());
  }
  return OperatorSpace(ambient_dim_, std::move(b), exactness_bound_);
}

void TensorRep::validate() const {
  if (left.size() != right.size()) {
    throw DimensionError("tensor has " + std::to_string(left.size()) + " left and " +
                         std::to_string(right.size()) + " right factors");
  }
  if (left.empty()) {
    throw DimensionError("tensor representation is empty");
  }
  for (std::size_t i = 1; i < left.size(); ++i) {
    if (!same_shape(left[i], left[0]) || !same_shape(right[i], right[0])) {
      throw DimensionError("tensor factors differ in shape at term " + std::to_string(i));
    }
  }
  if (weights) {
    if (weights->size() != left.size()) {
      throw DimensionError("weights length does not match the number of terms");
    }
    for (double w : *weights) {
      if (!(w > 0.0)) {
        throw ValueError("tensor weights must be strictly positive");
      }
    }
  }
}

TensorRep TensorRep::flipped() const {
  TensorRep t;
  t.left = right;
  t.right = left;
  t.weights = weights;
  return t;
}

ComplexMatrix TensorRep::kron_sum() const {
  validate();
  ComplexMatrix acc = kron(left[0], right[0]);
  for (std::size_t i = 1; i < left.size(); ++i) {
    acc += kron(left[i], right[i]);
  }
  return acc;
}

double min_norm(const TensorRep& t) { return op_norm(t.kron_sum()); }

double row_quantity(const std::vector<ComplexMatrix>& ms) {
  return std::sqrt(std::max(0.0, max_eigenvalue(HermitianMatrix::symmetrized(gram_sum(ms, true)))));
}

double col_quantity(const std::vector<ComplexMatrix>& ms) {
  return std::sqrt(
      std::max(0.0, max_eigenvalue(HermitianMatrix::symmetrized(gram_sum(ms, false)))));
}

double weighted_quantity(const std::vector<ComplexMatrix>& ms, const std::vector<double>& weights,
                         Side side) {
  if (ms.size() != weights.size()) {
    throw DimensionError("weights length does not match the family");
  }
  std::vector<ComplexMatrix> scaled;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      throw ValueError("weights must be strictly positive");
    }
    scaled.push_back(std::sqrt(weights[i]) * ms[i]);
  }
  return side == Side::kRow ? row_quantity(scaled) : col_quantity(scaled);
}

std::vector<ComplexMatrix> transform_family(const ComplexMatrix& gamma,
                                            const std::vector<ComplexMatrix>& ms) {
  if (gamma.cols() != static_cast<Index>(ms.size()) || ms.empty()) {
    throw DimensionError("transform matrix does not match family length");
  }
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < gamma.rows(); ++k) {
    ComplexMatrix acc = ComplexMatrix::Zero(ms[0].rows(), ms[0].cols());
    for (Index j = 0; j < gamma.cols(); ++j) {
      acc += gamma(k, j) * ms[static_cast<std::size_t>(j)];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace opgt
