#include "opgt/gtforms.hpp"

#include <cmath>

namespace opgt {

namespace {

struct Piece {
  ComplexMatrix alpha;  // k × dim E
  ComplexMatrix w;      // dim F × k
};

// Given PSD gram (c^H gram c = ‖α(c)‖²) and the coefficient map target
// (dim F × dim E) vanishing on ker(gram), returns α = Λ^{1/2} V^H and
// w = target V Λ^{-1/2}, compressed to the rank of w.
Piece gns_piece(const ComplexMatrix& gram, const ComplexMatrix& target, double balance) {
  const Index de = gram.rows();
  Piece out{ComplexMatrix::Zero(0, de), ComplexMatrix::Zero(target.rows(), 0)};
  if (gram.cwiseAbs().maxCoeff() == 0.0 || target.cwiseAbs().maxCoeff() == 0.0) {
    return out;
  }
  const HermitianEigen eg = hermitian_eig(HermitianMatrix::symmetrized(gram));
  const double top = eg.values.cwiseAbs().maxCoeff();
  std::vector<Index> keep;
  for (Index i = 0; i < eg.values.size(); ++i) {
    if (eg.values(i) > 1e-10 * top) keep.push_back(i);
  }
  const Index k = static_cast<Index>(keep.size());
  ComplexMatrix alpha(k, de);
  ComplexMatrix w(target.rows(), k);
  for (Index j = 0; j < k; ++j) {
    const Index i = keep[static_cast<std::size_t>(j)];
    const double root = std::sqrt(eg.values(i));
    alpha.row(j) = balance * root * eg.vectors.col(i).adjoint();
    w.col(j) = target * eg.vectors.col(i) / (root * balance);
  }
  const Svd s = svd(w);
  Index rank = 0;
  while (rank < s.singular.size() && s.singular(rank) > 1e-12 * s.singular(0)) ++rank;
  out.alpha = s.v.leftCols(rank).adjoint() * alpha;
  out.w = s.u.leftCols(rank) * s.singular.head(rank).cast<Complex>().asDiagonal();
  return out;
}

}  // namespace

RCFactorization factor_through_rc(const BilinearForm& u, const Decomposition& dec) {
  const OperatorSpace& e = u.left();
  const OperatorSpace& f = u.right();
  if (dec.u.rows() != e.dim() || dec.u.cols() != f.dim() || !same_shape(dec.u, dec.v)) {
    throw DimensionError("decomposition does not match the form");
  }
  RCFactorization out;
  // Row part from the cb piece u: ‖α₁(a)‖² = ρ₁(aa*).
  const double r1 = std::max(0.0, dec.u_cert.rho.trace().real());
  const double q1 = std::max(0.0, dec.u_cert.sigma.trace().real());
  const double bal1 = (r1 > 0.0 && q1 > 0.0) ? std::pow(q1 / r1, 0.25) : 1.0;
  const Piece row = gns_piece(row_gram(e, dec.u_cert.rho), dec.u.transpose(), bal1);
  // Column part from v (ᵗv is cb): ‖α₂(a)‖² = ρ₂(a*a), ρ₂ = v_cert.sigma.
  const double r2 = std::max(0.0, dec.v_cert.sigma.trace().real());
  const double q2 = std::max(0.0, dec.v_cert.rho.trace().real());
  const double bal2 = (r2 > 0.0 && q2 > 0.0) ? std::pow(q2 / r2, 0.25) : 1.0;
  const Piece col = gns_piece(col_gram(e, dec.v_cert.sigma), dec.v.transpose(), bal2);

  out.dim_r = row.alpha.rows();
  out.dim_c = col.alpha.rows();
  out.v_map = ComplexMatrix::Zero(out.dim_r + out.dim_c, e.dim());
  out.v_map.topRows(out.dim_r) = row.alpha;
  out.v_map.bottomRows(out.dim_c) = col.alpha;
  out.w_map = ComplexMatrix::Zero(f.dim(), out.dim_r + out.dim_c);
  out.w_map.leftCols(out.dim_r) = row.w;
  out.w_map.rightCols(out.dim_c) = col.w;
  out.bound = dec.u_cert.bound() + dec.v_cert.bound();
  const ComplexMatrix target = u.coeffs().transpose();
  const ComplexMatrix recon = out.w_map * out.v_map;
  const double norm = target.norm();
  out.residual = (recon - target).norm() / (norm > 0.0 ? norm : 1.0);
  return out;
}

}  // namespace opgt
