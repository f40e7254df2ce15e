#include "opgt/haagerup.hpp"

#include <cmath>

namespace opgt {

TensorRep reduce_tensor(const TensorRep& w, double rank_cutoff) {
  w.validate();
  const Index ar = w.left[0].rows(), ac = w.left[0].cols();
  const Index br = w.right[0].rows(), bc = w.right[0].cols();
  ComplexMatrix coeff = ComplexMatrix::Zero(ar * ac, br * bc);
  for (std::size_t i = 0; i < w.size(); ++i) {
    coeff.noalias() += vec(w.left[i]) * vec(w.right[i]).transpose();
  }
  TensorRep out;
  if (coeff.cwiseAbs().maxCoeff() == 0.0) {
    return out;
  }
  const Svd s = svd(coeff);
  for (Index k = 0; k < s.singular.size(); ++k) {
    if (s.singular(k) <= rank_cutoff * s.singular(0)) {
      break;
    }
    const double root = std::sqrt(s.singular(k));
    out.left.push_back(unvec(root * s.u.col(k), ar, ac));
    out.right.push_back(unvec(root * s.v.col(k).conjugate(), br, bc));
  }
  return out;
}

namespace {

// Φ_A(X) = Σ_{jl} X_lj a_j a_l*
ComplexMatrix phi_left(const std::vector<ComplexMatrix>& a, const ComplexMatrix& x) {
  ComplexMatrix acc = ComplexMatrix::Zero(a[0].rows(), a[0].rows());
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t l = 0; l < a.size(); ++l) {
      const Complex c = x(static_cast<Index>(l), static_cast<Index>(j));
      if (c != Complex(0.0)) {
        acc.noalias() += c * a[j] * a[l].adjoint();
      }
    }
  }
  return acc;
}

// Φ_B(Y) = Σ_{jl} Y_lj b_j* b_l
ComplexMatrix phi_right(const std::vector<ComplexMatrix>& b, const ComplexMatrix& y) {
  ComplexMatrix acc = ComplexMatrix::Zero(b[0].cols(), b[0].cols());
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      const Complex c = y(static_cast<Index>(l), static_cast<Index>(j));
      if (c != Complex(0.0)) {
        acc.noalias() += c * b[j].adjoint() * b[l];
      }
    }
  }
  return acc;
}

}  // namespace

HNormResult haagerup_norm(const TensorRep& w, const HaagerupOptions& options) {
  HNormResult res;
  TensorRep red = reduce_tensor(w, options.rank_cutoff);
  res.rank = static_cast<Index>(red.size());
  if (red.size() == 0) {
    res.representation.left.push_back(ComplexMatrix::Zero(w.left[0].rows(), w.left[0].cols()));
    res.representation.right.push_back(ComplexMatrix::Zero(w.right[0].rows(), w.right[0].cols()));
    res.certificate = ComplexMatrix::Zero(0, 0);
    res.converged = true;
    return res;
  }
  const double alpha = row_quantity(red.left);
  const double beta = col_quantity(red.right);
  for (auto& a : red.left) a /= alpha;
  for (auto& b : red.right) b /= beta;
  const Index r = res.rank;
  const Index p = red.left[0].rows();
  const Index q = red.right[0].cols();

  ConicBuilder builder;
  const HermitianVar xv = builder.add_hermitian(r);
  const HermitianVar yv = builder.add_hermitian(r);
  const Index s = builder.add_scalar();
  builder.set_objective(s, 1.0);

  const std::size_t left_block = builder.add_block(ComplexMatrix::Identity(p, p));
  builder.add_hermitian_terms(left_block, xv,
                              [&](const ComplexMatrix& e) -> ComplexMatrix { return -phi_left(red.left, e); });
  const std::size_t right_block = builder.add_block(ComplexMatrix::Zero(q, q));
  builder.add_term(right_block, s, ComplexMatrix::Identity(q, q));
  builder.add_hermitian_terms(right_block, yv,
                              [&](const ComplexMatrix& e) -> ComplexMatrix { return -phi_right(red.right, e); });
  // [[Y, I], [I, X]] ⪰ 0 encodes Y ⪰ X^{-1}.
  ComplexMatrix coupling = ComplexMatrix::Zero(2 * r, 2 * r);
  coupling.topRightCorner(r, r).setIdentity();
  coupling.bottomLeftCorner(r, r).setIdentity();
  const std::size_t schur_block = builder.add_block(coupling);
  builder.add_hermitian_terms(schur_block, yv, [&](const ComplexMatrix& e) {
    ComplexMatrix m = ComplexMatrix::Zero(2 * r, 2 * r);
    m.topLeftCorner(r, r) = e;
    return m;
  });
  builder.add_hermitian_terms(schur_block, xv, [&](const ComplexMatrix& e) {
    ComplexMatrix m = ComplexMatrix::Zero(2 * r, 2 * r);
    m.bottomRightCorner(r, r) = e;
    return m;
  });
  const ConicProblem problem = builder.build();

  RealVector x0 = RealVector::Zero(problem.num_vars);
  set_hermitian_value(x0, xv, 0.5 * ComplexMatrix::Identity(r, r));
  set_hermitian_value(x0, yv, 4.0 * ComplexMatrix::Identity(r, r));
  x0(s) = 9.0;

  ConicOptions co;
  co.rel_gap = options.rel_gap;
  co.max_outer = options.max_outer;
  const ConicResult sol = solve_conic(problem, x0, co);
  res.converged = sol.converged;
  res.iterations = sol.outer_iterations;

  const ComplexMatrix x = hermitian_value(sol.x, xv);
  res.certificate = x;
  const HermitianEigen e = hermitian_eig(HermitianMatrix::symmetrized(x));
  RealVector ev = e.values.cwiseMax(1e-300);
  const ComplexMatrix gamma =
      e.vectors * ev.cwiseSqrt().cast<Complex>().asDiagonal() * e.vectors.adjoint();
  const ComplexMatrix gamma_inv =
      e.vectors * ev.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * e.vectors.adjoint();

  // a' = γ a, b' = b γ^{-1}; then undo the normalization.
  std::vector<ComplexMatrix> left = transform_family(gamma, red.left);
  std::vector<ComplexMatrix> right = transform_family(gamma_inv.transpose(), red.right);
  for (auto& a : left) a *= alpha;
  for (auto& b : right) b *= beta;
  const double row = row_quantity(left);
  const double col = col_quantity(right);
  const double c = std::sqrt(col / row);
  for (auto& a : left) a *= c;
  for (auto& b : right) b /= c;
  res.representation.left = std::move(left);
  res.representation.right = std::move(right);
  res.value = row * col;
  res.lower_bound = alpha * beta * std::sqrt(std::max(0.0, sol.value - sol.gap_bound));
  res.lower_bound = std::min(res.lower_bound, res.value);
  return res;
}

HNormResult transposed_haagerup_norm(const TensorRep& w, const HaagerupOptions& options) {
  return haagerup_norm(w.flipped(), options);
}

namespace {

ComplexMatrix stack_columns(const std::vector<ComplexMatrix>& ms) {
  ComplexMatrix out(ms[0].size(), static_cast<Index>(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k) {
    out.col(static_cast<Index>(k)) = vec(ms[k]);
  }
  return out;
}

}  // namespace

BalancedRepresentation balance_representation(const TensorRep& w, const HNormResult& h_opt,
                                              const HNormResult& t_opt) {
  w.validate();
  const auto& a = h_opt.representation.left;
  const auto& b = h_opt.representation.right;
  const auto& alpha1 = t_opt.representation.right;  // factors in E
  const auto& beta1 = t_opt.representation.left;    // factors in F
  if (a.size() != alpha1.size()) {
    throw ValueError("optimal representations have different lengths (" +
                     std::to_string(a.size()) + " vs " + std::to_string(alpha1.size()) + ")");
  }
  const Index r = static_cast<Index>(a.size());
  BalancedRepresentation out;
  if (h_opt.rank == 0) {
    out.rep = h_opt.representation;
    out.rep.weights = std::vector<double>{1.0};
    out.gamma = out.delta = ComplexMatrix::Identity(1, 1);
    return out;
  }
  const ComplexMatrix amat = stack_columns(a);
  const ComplexMatrix bmat = stack_columns(b);
  // α₁ = γ a  ⇔  A₁ = A γ^T;  β₁ = b δ  ⇔  B₁ = B δ.
  const ComplexMatrix gamma_t = amat.colPivHouseholderQr().solve(stack_columns(alpha1));
  out.gamma = gamma_t.transpose();
  out.delta = bmat.colPivHouseholderQr().solve(stack_columns(beta1));
  out.inverse_residual = op_norm(out.delta * out.gamma - ComplexMatrix::Identity(r, r));
  if (out.inverse_residual > 1e-8) {
    throw ValueError("optimal representations are inconsistent: ‖δγ − I‖ = " +
                     std::to_string(out.inverse_residual));
  }
  // γ = γ₁ D γ₂ with γ₂ = V*; â = γ₂ a, b̂ = b γ₂*.
  const Svd s = svd(out.gamma);
  const ComplexMatrix gamma2 = s.v.adjoint();
  out.rep.left = transform_family(gamma2, a);
  out.rep.right = transform_family(gamma2.conjugate(), b);
  std::vector<double> lambda(static_cast<std::size_t>(r));
  double log_mean = 0.0;
  for (Index k = 0; k < r; ++k) {
    lambda[static_cast<std::size_t>(k)] = s.singular(k) * s.singular(k);
    log_mean += std::log(lambda[static_cast<std::size_t>(k)]);
  }
  log_mean /= static_cast<double>(r);
  for (auto& l : lambda) l /= std::exp(log_mean);
  std::vector<double> inverse(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) inverse[k] = 1.0 / lambda[k];
  out.rep.weights = lambda;
  out.row_col = row_quantity(out.rep.left) * col_quantity(out.rep.right);
  out.weighted = weighted_quantity(out.rep.left, lambda, Side::kCol) *
                 weighted_quantity(out.rep.right, inverse, Side::kRow);
  return out;
}

}  // namespace opgt
