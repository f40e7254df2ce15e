#include "opgt/gtforms.hpp"
#include "opgt/random.hpp"

namespace opgt {

BilinearForm::BilinearForm(OperatorSpace left, OperatorSpace right, ComplexMatrix coeffs)
    : left_(std::move(left)), right_(std::move(right)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != left_.dim() || coeffs_.cols() != right_.dim()) {
    throw DimensionError("coefficient matrix " + shape_string(coeffs_) + " does not match " +
                         std::to_string(left_.dim()) + "x" + std::to_string(right_.dim()) +
                         " basis sizes");
  }
}

BilinearForm BilinearForm::trace_form(Index n) {
  const OperatorSpace m = OperatorSpace::full(n);
  ComplexMatrix u = ComplexMatrix::Zero(n * n, n * n);
  // tr(e_ij e_kl) = δ_jk δ_il
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      u(i * n + j, j * n + i) = 1.0;
    }
  }
  return BilinearForm(m, m, u);
}

Complex BilinearForm::evaluate(const ComplexMatrix& a, const ComplexMatrix& b) const {
  return evaluate_coords(left_.coordinates(a), right_.coordinates(b));
}

Complex BilinearForm::evaluate_coords(const ComplexVector& c, const ComplexVector& d) const {
  if (c.size() != left_.dim() || d.size() != right_.dim()) {
    throw DimensionError("coordinate vectors do not match the form");
  }
  return (c.transpose() * coeffs_ * d)(0, 0);
}

BilinearForm BilinearForm::transpose() const {
  return BilinearForm(right_, left_, coeffs_.transpose());
}

BilinearForm BilinearForm::with_coeffs(const ComplexMatrix& coeffs) const {
  return BilinearForm(left_, right_, coeffs);
}

Complex BilinearForm::pairing(const TensorRep& w) const {
  w.validate();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += evaluate(w.left[i], w.right[i]);
  }
  return acc;
}

BilinearForm random_form(const OperatorSpace& e, const OperatorSpace& f, std::uint64_t seed) {
  Rng rng(seed);
  return BilinearForm(e, f, rng.gaussian(e.dim(), f.dim()));
}

ComplexMatrix row_gram(const OperatorSpace& e, const ComplexMatrix& rho) {
  const Index d = e.dim();
  ComplexMatrix m(d, d);
  std::vector<ComplexMatrix> rho_e;
  for (Index k = 0; k < d; ++k) {
    rho_e.push_back(rho * e.basis(k));
  }
  // m(k', k) = tr(ρ E_k E_k'*)
  for (Index kp = 0; kp < d; ++kp) {
    for (Index k = 0; k < d; ++k) {
      m(kp, k) = (rho_e[static_cast<std::size_t>(k)].array() * e.basis(kp).conjugate().array()).sum();
    }
  }
  return m;
}

ComplexMatrix col_gram(const OperatorSpace& e, const ComplexMatrix& rho) {
  const Index d = e.dim();
  ComplexMatrix m(d, d);
  std::vector<ComplexMatrix> e_rho;
  for (Index k = 0; k < d; ++k) {
    e_rho.push_back(e.basis(k) * rho);
  }
  // m(k', k) = tr(ρ E_k'* E_k) = Σ (E_k ρ)_{ij} conj(E_k')_{ij}
  for (Index kp = 0; kp < d; ++kp) {
    for (Index k = 0; k < d; ++k) {
      m(kp, k) = (e_rho[static_cast<std::size_t>(k)].array() * e.basis(kp).conjugate().array()).sum();
    }
  }
  return m;
}

double CbCertificate::bound() const {
  if (rho.size() == 0 || sigma.size() == 0) {
    return 0.0;
  }
  return std::sqrt(std::max(0.0, rho.trace().real()) * std::max(0.0, sigma.trace().real()));
}

}  // namespace opgt
