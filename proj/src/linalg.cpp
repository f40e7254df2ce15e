#include "opgt/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace opgt {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("Hermitian matrix must be square, got " + shape_string(m));
  }
  if (m.size() > 0) {
    const double scale = op_norm(m);
    const double skew = op_norm(m - m.adjoint());
    if (skew > tol::kHermitian * scale) {
      throw ValueError("matrix is not Hermitian: ‖X − X*‖ = " + std::to_string(skew));
    }
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("Hermitian matrix must be square, got " + shape_string(m));
  }
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

ComplexMatrix adjoint(const ComplexMatrix& x) { return x.adjoint(); }

double op_norm(const ComplexMatrix& x) {
  if (x.size() == 0) {
    throw DimensionError("op_norm of an empty matrix");
  }
  if (x.rows() == 1 || x.cols() == 1) {
    return x.norm();
  }
  Eigen::BDCSVD<ComplexMatrix> solver(x);
  return solver.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

RealVector hermitian_eigenvalues(const HermitianMatrix& x) {
  if (x.size() == 0) {
    throw DimensionError("eigenvalues of an empty matrix");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

HermitianEigen hermitian_eig(const HermitianMatrix& x) {
  if (x.size() == 0) {
    throw DimensionError("eigendecomposition of an empty matrix");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x.matrix());
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_eigenvalue(const HermitianMatrix& x) {
  const RealVector ev = hermitian_eigenvalues(x);
  return ev(ev.size() - 1);
}

double min_eigenvalue(const HermitianMatrix& x) { return hermitian_eigenvalues(x)(0); }

bool psd_check(const HermitianMatrix& x, double tol) { return min_eigenvalue(x) >= -tol; }

Svd svd(const ComplexMatrix& x) {
  if (x.size() == 0) {
    throw DimensionError("SVD of an empty matrix");
  }
  Eigen::BDCSVD<ComplexMatrix> solver(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

double trace_norm(const ComplexMatrix& x) {
  if (x.size() == 0) {
    return 0.0;
  }
  Eigen::BDCSVD<ComplexMatrix> solver(x);
  return solver.singularValues().sum();
}

ComplexMatrix psd_sqrt(const HermitianMatrix& x) {
  const HermitianEigen e = hermitian_eig(x);
  RealVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * root.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix project_to_density(const HermitianMatrix& x) {
  const HermitianEigen e = hermitian_eig(x);
  // Euclidean projection of the spectrum onto the probability simplex.
  const Index n = e.values.size();
  std::vector<double> sorted(e.values.data(), e.values.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Index k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) {
      shift = candidate;
    }
  }
  RealVector p = (e.values.array() - shift).cwiseMax(0.0);
  return e.vectors * p.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix matrix_unit(Index rows, Index cols, Index i, Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  m(i, j) = 1.0;
  return m;
}

ComplexVector vec(const ComplexMatrix& x) {
  ComplexVector v(x.size());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      v(i * x.cols() + j) = x(i, j);
    }
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  ComplexMatrix x(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      x(i, j) = v(i * cols + j);
    }
  }
  return x;
}

ComplexMatrix gram_sum(const std::vector<ComplexMatrix>& ms, bool row_side) {
  if (ms.empty()) {
    throw DimensionError("gram_sum of an empty family");
  }
  const Index n = row_side ? ms.front().rows() : ms.front().cols();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (const auto& m : ms) {
    if (!same_shape(m, ms.front())) {
      throw DimensionError("family members differ in shape: " + shape_string(m) + " vs " +
                           shape_string(ms.front()));
    }
    if (row_side) {
      acc.noalias() += m * m.adjoint();
    } else {
      acc.noalias() += m.adjoint() * m;
    }
  }
  return acc;
}

bool same_shape(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x.rows() == y.rows() && x.cols() == y.cols();
}

std::string shape_string(const ComplexMatrix& x) {
  return std::to_string(x.rows()) + "x" + std::to_string(x.cols());
}

}  // namespace opgt
