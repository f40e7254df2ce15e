#include "cb_block.hpp"
#include "opgt/gtforms.hpp"
#include "opgt/haagerup.hpp"
#include "opgt/random.hpp"

#include <cmath>

namespace opgt {

Decomposition decompose_form(const BilinearForm& u, double K, double rel_gap) {
  const OperatorSpace& e = u.left();
  const OperatorSpace& f = u.right();
  const Index ne = e.ambient_dim();
  const Index nf = f.ambient_dim();
  const Index de = e.dim();
  const Index df = f.dim();
  Decomposition dec;
  if (u.is_zero()) {
    dec.u = dec.v = ComplexMatrix::Zero(de, df);
    dec.u_cert = {ComplexMatrix::Zero(ne, ne), ComplexMatrix::Zero(nf, nf)};
    dec.v_cert = {ComplexMatrix::Zero(nf, nf), ComplexMatrix::Zero(ne, ne)};
    dec.within_K = true;
    dec.converged = true;
    return dec;
  }
  const double scale = op_norm(u.coeffs());
  const ComplexMatrix coeffs = u.coeffs() / scale;

  ConicBuilder b;
  const HermitianVar rho1 = b.add_hermitian(ne);
  const HermitianVar sigma1 = b.add_hermitian(nf);
  const HermitianVar sigma2 = b.add_hermitian(nf);
  const HermitianVar rho2 = b.add_hermitian(ne);
  std::vector<detail::CoeffTerm> minus_v;
  std::vector<detail::CoeffTerm> plus_vt;
  std::vector<std::tuple<Index, Index, Index, bool>> v_layout;
  for (Index k = 0; k < de; ++k) {
    for (Index l = 0; l < df; ++l) {
      for (bool imag : {false, true}) {
        const Index var = b.add_scalar();
        ComplexMatrix dir = ComplexMatrix::Zero(de, df);
        dir(k, l) = imag ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
        minus_v.push_back({var, -dir});
        plus_vt.push_back({var, dir.transpose()});
        v_layout.emplace_back(var, k, l, imag);
      }
    }
  }
  const Index t = b.add_scalar();
  b.set_objective(t, 1.0);
  for (const HermitianVar* h : {&rho1, &sigma1, &sigma2, &rho2}) {
    detail::add_psd_block(b, *h);
  }
  // 2t − tr ρ − tr σ ≥ 0 for each piece
  auto add_trace_budget = [&](const HermitianVar& a, const HermitianVar& c) {
    const std::size_t blk = b.add_block(ComplexMatrix::Zero(1, 1));
    b.add_term(blk, t, ComplexMatrix::Constant(1, 1, 2.0));
    for (Index i = 0; i < a.n; ++i) b.add_term(blk, a.offset + i, ComplexMatrix::Constant(1, 1, -1.0));
    for (Index i = 0; i < c.n; ++i) b.add_term(blk, c.offset + i, ComplexMatrix::Constant(1, 1, -1.0));
  };
  add_trace_budget(rho1, sigma1);
  add_trace_budget(sigma2, rho2);
  detail::add_cb_block(b, e, f, rho1, sigma1, coeffs, minus_v);
  detail::add_cb_block(b, f, e, sigma2, rho2, ComplexMatrix::Zero(df, de), plus_vt);
  const ConicProblem p = b.build();

  const ComplexMatrix half = 0.5 * coeffs;
  const double c = std::max(detail::identity_scale(e, f, half),
                            detail::identity_scale(f, e, half.transpose().eval()));
  RealVector x0 = RealVector::Zero(p.num_vars);
  set_hermitian_value(x0, rho1, c * ComplexMatrix::Identity(ne, ne));
  set_hermitian_value(x0, rho2, c * ComplexMatrix::Identity(ne, ne));
  set_hermitian_value(x0, sigma1, c * ComplexMatrix::Identity(nf, nf));
  set_hermitian_value(x0, sigma2, c * ComplexMatrix::Identity(nf, nf));
  for (const auto& [var, k, l, imag] : v_layout) {
    x0(var) = imag ? half(k, l).imag() : half(k, l).real();
  }
  x0(t) = c * static_cast<double>(ne + nf) + 1.0;
  ConicOptions o;
  o.rel_gap = rel_gap;
  const ConicResult sol = solve_conic(p, x0, o);

  ComplexMatrix v = ComplexMatrix::Zero(de, df);
  for (const auto& [var, k, l, imag] : v_layout) {
    v(k, l) += imag ? Complex(0.0, sol.x(var)) : Complex(sol.x(var), 0.0);
  }
  dec.v = scale * v;
  dec.u = u.coeffs() - dec.v;
  dec.u_cert = {scale * hermitian_value(sol.x, rho1), scale * hermitian_value(sol.x, sigma1)};
  dec.v_cert = {scale * hermitian_value(sol.x, sigma2), scale * hermitian_value(sol.x, rho2)};
  dec.bound = std::max(dec.u_cert.bound(), dec.v_cert.bound());
  dec.lower_bound = scale * std::max(0.0, sol.value - sol.gap_bound);
  dec.converged = sol.converged;
  dec.within_K = dec.bound <= K * (1.0 + 1e-4);
  return dec;
}

Decomposition decomposition_from_split(const BilinearForm& u, const ComplexMatrix& v) {
  Decomposition dec;
  dec.v = v;
  dec.u = u.coeffs() - v;
  const CbNormResult cu = cb_form_norm(u.with_coeffs(dec.u));
  const CbNormResult cv = cb_form_norm(u.with_coeffs(v).transpose());
  const Index ne = u.left().ambient_dim();
  const Index nf = u.right().ambient_dim();
  dec.u_cert = {cu.value * cu.f, cu.value * cu.g};
  dec.v_cert = {cv.value * cv.f, cv.value * cv.g};
  if (cu.value == 0.0) dec.u_cert = {ComplexMatrix::Zero(ne, ne), ComplexMatrix::Zero(nf, nf)};
  if (cv.value == 0.0) dec.v_cert = {ComplexMatrix::Zero(nf, nf), ComplexMatrix::Zero(ne, ne)};
  dec.bound = std::max(cu.value, cv.value);
  dec.lower_bound = 0.0;
  dec.converged = cu.converged && cv.converged;
  dec.within_K = true;
  return dec;
}

double sampled_dual_bound(const BilinearForm& u, int samples, std::uint64_t seed) {
  if (u.is_zero()) {
    return 0.0;
  }
  const OperatorSpace& e = u.left();
  const OperatorSpace& f = u.right();
  Rng rng(seed);
  double best = 0.0;
  auto consider = [&](const ComplexMatrix& w_coeffs) {
    TensorRep w;
    for (Index k = 0; k < e.dim(); ++k) {
      ComplexMatrix right = ComplexMatrix::Zero(f.ambient_dim(), f.ambient_dim());
      for (Index l = 0; l < f.dim(); ++l) {
        right += w_coeffs(k, l) * f.basis(l);
      }
      w.left.push_back(e.basis(k));
      w.right.push_back(right);
    }
    const double denom = haagerup_norm(w).value + transposed_haagerup_norm(w).value;
    if (denom > 0.0) {
      best = std::max(best, std::abs(u.pairing(w)) / denom);
    }
  };
  consider(u.coeffs().conjugate());
  for (int s = 0; s < samples; ++s) {
    consider(rng.gaussian(e.dim(), f.dim()));
  }
  return best;
}

}  // namespace opgt
