#include "cb_block.hpp"
#include "opgt/gtforms.hpp"

#include <cmath>

namespace opgt {
namespace detail {

void add_cb_block(ConicBuilder& b, const OperatorSpace& left, const OperatorSpace& right,
                  const HermitianVar& rho, const HermitianVar& sigma,
                  const ComplexMatrix& constant, const std::vector<CoeffTerm>& terms) {
  const Index dl = left.dim();
  const Index dr = right.dim();
  ComplexMatrix c = ComplexMatrix::Zero(dl + dr, dl + dr);
  c.topRightCorner(dl, dr) = constant;
  c.bottomLeftCorner(dr, dl) = constant.adjoint();
  const std::size_t blk = b.add_block(c);
  b.add_hermitian_terms(blk, rho, [&](const ComplexMatrix& e) -> ComplexMatrix {
    ComplexMatrix m = ComplexMatrix::Zero(dl + dr, dl + dr);
    m.topLeftCorner(dl, dl) = row_gram(left, e).transpose();
    return m;
  });
  b.add_hermitian_terms(blk, sigma, [&](const ComplexMatrix& e) -> ComplexMatrix {
    ComplexMatrix m = ComplexMatrix::Zero(dl + dr, dl + dr);
    m.bottomRightCorner(dr, dr) = col_gram(right, e);
    return m;
  });
  for (const auto& t : terms) {
    ComplexMatrix m = ComplexMatrix::Zero(dl + dr, dl + dr);
    m.topRightCorner(dl, dr) = t.dir;
    m.bottomLeftCorner(dr, dl) = t.dir.adjoint();
    b.add_term(blk, t.var, m);
  }
}

double identity_scale(const OperatorSpace& left, const OperatorSpace& right,
                      const ComplexMatrix& m) {
  const Index nl = left.ambient_dim();
  const Index nr = right.ambient_dim();
  const double pl = min_eigenvalue(HermitianMatrix::symmetrized(
      row_gram(left, ComplexMatrix::Identity(nl, nl))));
  const double qr = min_eigenvalue(HermitianMatrix::symmetrized(
      col_gram(right, ComplexMatrix::Identity(nr, nr))));
  return 2.0 * op_norm(m) / std::sqrt(pl * qr) + 0.1;
}

}  // namespace detail

CbNormResult cb_form_norm(const BilinearForm& u, double rel_gap) {
  const OperatorSpace& e = u.left();
  const OperatorSpace& f = u.right();
  const Index ne = e.ambient_dim();
  const Index nf = f.ambient_dim();
  CbNormResult res;
  if (u.is_zero()) {
    res.f = ComplexMatrix::Identity(ne, ne) / static_cast<double>(ne);
    res.g = ComplexMatrix::Identity(nf, nf) / static_cast<double>(nf);
    res.converged = true;
    return res;
  }
  const double scale = op_norm(u.coeffs());
  const ComplexMatrix coeffs = u.coeffs() / scale;

  ConicBuilder b;
  const HermitianVar rho = b.add_hermitian(ne);
  const HermitianVar sigma = b.add_hermitian(nf);
  for (Index i = 0; i < ne; ++i) b.set_objective(rho.offset + i, 0.5);
  for (Index i = 0; i < nf; ++i) b.set_objective(sigma.offset + i, 0.5);
  detail::add_psd_block(b, rho);
  detail::add_psd_block(b, sigma);
  detail::add_cb_block(b, e, f, rho, sigma, coeffs, {});
  const ConicProblem p = b.build();

  const double t = detail::identity_scale(e, f, coeffs);
  RealVector x0 = RealVector::Zero(p.num_vars);
  set_hermitian_value(x0, rho, t * ComplexMatrix::Identity(ne, ne));
  set_hermitian_value(x0, sigma, t * ComplexMatrix::Identity(nf, nf));
  ConicOptions o;
  o.rel_gap = rel_gap;
  const ConicResult sol = solve_conic(p, x0, o);

  const ComplexMatrix r = hermitian_value(sol.x, rho);
  const ComplexMatrix s = hermitian_value(sol.x, sigma);
  res.f = r / r.trace().real();
  res.g = s / s.trace().real();
  res.value = scale * std::sqrt(r.trace().real() * s.trace().real());
  res.lower_bound = scale * std::max(0.0, sol.value - sol.gap_bound);
  res.converged = sol.converged;
  return res;
}

}  // namespace opgt
