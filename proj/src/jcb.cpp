#include "opgt/ascent.hpp"
#include "opgt/gtforms.hpp"
#include "opgt/random.hpp"

#include <cmath>
#include <limits>

namespace opgt {

namespace {

struct TopPair {
  double sigma = 0.0;
  ComplexVector u;
  ComplexVector v;
};

// Top singular triple from the Hermitian eigenproblem of M^H M.
TopPair top_pair(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  const Index last = g.rows() - 1;
  TopPair p;
  p.sigma = std::sqrt(std::max(0.0, es.eigenvalues()(last)));
  p.v = es.eigenvectors().col(last);
  if (p.sigma > 0.0) {
    p.u = m * p.v / p.sigma;
  } else {
    p.u = ComplexVector::Zero(m.rows());
  }
  return p;
}

ComplexMatrix kron_sum(const std::vector<ComplexMatrix>& outer, const std::vector<ComplexMatrix>& inner) {
  ComplexMatrix acc = kron(outer[0], inner[0]);
  for (std::size_t k = 1; k < outer.size(); ++k) acc += kron(outer[k], inner[k]);
  return acc;
}

// reshape u of length rows·amp into rows × amp, u(i·amp + a) ↦ (i, a)
ComplexMatrix reshape(const ComplexVector& u, Index rows, Index amp) {
  ComplexMatrix m(rows, amp);
  for (Index i = 0; i < rows; ++i)
    for (Index a = 0; a < amp; ++a) m(i, a) = u(i * amp + a);
  return m;
}

class RatioObjective {
 public:
  RatioObjective(const BilinearForm& u, Index amp) : u_(u), amp_(amp) {
    de_ = u.left().dim();
    df_ = u.right().dim();
  }

  Index num_params() const { return 2 * amp_ * amp_ * (de_ + df_); }

  void unpack(const RealVector& p, std::vector<ComplexMatrix>& x, std::vector<ComplexMatrix>& y) const {
    x.assign(static_cast<std::size_t>(de_), ComplexMatrix(amp_, amp_));
    y.assign(static_cast<std::size_t>(df_), ComplexMatrix(amp_, amp_));
    Index q = 0;
    for (auto* fam : {&x, &y}) {
      for (auto& m : *fam) {
        for (Index a = 0; a < amp_; ++a)
          for (Index b = 0; b < amp_; ++b) {
            m(a, b) = Complex(p(q), p(q + 1));
            q += 2;
          }
      }
    }
  }

  RealVector pack(const std::vector<ComplexMatrix>& x, const std::vector<ComplexMatrix>& y) const {
    RealVector p(num_params());
    Index q = 0;
    for (const auto* fam : {&x, &y}) {
      for (const auto& m : *fam) {
        for (Index a = 0; a < amp_; ++a)
          for (Index b = 0; b < amp_; ++b) {
            p(q++) = m(a, b).real();
            p(q++) = m(a, b).imag();
          }
      }
    }
    return p;
  }

  // log of the ratio and its gradient
  double operator()(const RealVector& p, RealVector* grad) const {
    std::vector<ComplexMatrix> x, y;
    unpack(p, x, y);
    const ComplexMatrix& U = u_.coeffs();
    std::vector<ComplexMatrix> xl(static_cast<std::size_t>(df_), ComplexMatrix::Zero(amp_, amp_));
    std::vector<ComplexMatrix> yk(static_cast<std::size_t>(de_), ComplexMatrix::Zero(amp_, amp_));
    for (Index k = 0; k < de_; ++k)
      for (Index l = 0; l < df_; ++l) {
        xl[static_cast<std::size_t>(l)] += U(k, l) * x[static_cast<std::size_t>(k)];
        yk[static_cast<std::size_t>(k)] += U(k, l) * y[static_cast<std::size_t>(l)];
      }
    const TopPair n = top_pair(kron_sum(xl, y));
    const TopPair dx = top_pair(kron_sum(u_.left().basis(), x));
    const TopPair dy = top_pair(kron_sum(u_.right().basis(), y));
    if (!(n.sigma > 0.0) || !(dx.sigma > 0.0) || !(dy.sigma > 0.0)) {
      if (grad) grad->setZero(num_params());
      return -std::numeric_limits<double>::infinity();
    }
    const double value = std::log(n.sigma) - std::log(dx.sigma) - std::log(dy.sigma);
    if (grad) {
      grad->resize(num_params());
      const ComplexMatrix un = reshape(n.u, amp_, amp_);
      const ComplexMatrix vn = reshape(n.v, amp_, amp_);
      const Index ne = u_.left().ambient_dim();
      const Index nf = u_.right().ambient_dim();
      const ComplexMatrix ux = reshape(dx.u, ne, amp_);
      const ComplexMatrix vx = reshape(dx.v, ne, amp_);
      const ComplexMatrix uy = reshape(dy.u, nf, amp_);
      const ComplexMatrix vy = reshape(dy.v, nf, amp_);
      Index q = 0;
      auto emit = [&](const ComplexMatrix& g) {
        for (Index a = 0; a < amp_; ++a)
          for (Index b = 0; b < amp_; ++b) {
            (*grad)(q++) = g(a, b).real();
            (*grad)(q++) = -g(a, b).imag();
          }
      };
      for (Index k = 0; k < de_; ++k) {
        const ComplexMatrix g = (un.conjugate() * yk[static_cast<std::size_t>(k)] * vn.transpose()) / n.sigma -
                                (ux.adjoint() * u_.left().basis(k) * vx) / dx.sigma;
        emit(g);
      }
      for (Index l = 0; l < df_; ++l) {
        const ComplexMatrix g = (un.adjoint() * xl[static_cast<std::size_t>(l)] * vn) / n.sigma -
                                (uy.adjoint() * u_.right().basis(l) * vy) / dy.sigma;
        emit(g);
      }
    }
    return value;
  }

 private:
  const BilinearForm& u_;
  Index amp_;
  Index de_ = 0;
  Index df_ = 0;
};

std::vector<ComplexMatrix> pad(const std::vector<ComplexMatrix>& ms, Index amp) {
  std::vector<ComplexMatrix> out;
  for (const auto& m : ms) {
    ComplexMatrix p = ComplexMatrix::Zero(amp, amp);
    p.topLeftCorner(m.rows(), m.cols()) = m;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

double jcb_ratio(const BilinearForm& u, const std::vector<ComplexMatrix>& x,
                 const std::vector<ComplexMatrix>& y) {
  if (static_cast<Index>(x.size()) != u.left().dim() || static_cast<Index>(y.size()) != u.right().dim()) {
    throw DimensionError("witness families do not match the form");
  }
  const double dx = op_norm(kron_sum(u.left().basis(), x));
  const double dy = op_norm(kron_sum(u.right().basis(), y));
  if (!(dx > 0.0) || !(dy > 0.0)) {
    return 0.0;
  }
  std::vector<ComplexMatrix> xl(y.size(), ComplexMatrix::Zero(x[0].rows(), x[0].cols()));
  for (Index k = 0; k < u.left().dim(); ++k)
    for (Index l = 0; l < u.right().dim(); ++l)
      xl[static_cast<std::size_t>(l)] += u.coeffs()(k, l) * x[static_cast<std::size_t>(k)];
  return op_norm(kron_sum(xl, y)) / (dx * dy);
}

JcbEstimate jcb_norm_estimate(const BilinearForm& u, const JcbOptions& options) {
  JcbEstimate est;
  est.amp = options.amp > 0 ? options.amp : u.left().ambient_dim() * u.right().ambient_dim();
  if (options.restarts < 1) {
    throw ValueError("jcb estimate needs at least one restart");
  }
  const Index de = u.left().dim();
  const Index df = u.right().dim();
  if (u.is_zero()) {
    est.profile.assign(static_cast<std::size_t>(est.amp), 0.0);
    est.witness_x.assign(static_cast<std::size_t>(de), ComplexMatrix::Identity(est.amp, est.amp));
    est.witness_y.assign(static_cast<std::size_t>(df), ComplexMatrix::Identity(est.amp, est.amp));
    return est;
  }
  AscentOptions ao;
  ao.max_iters = options.max_iters;
  double best_log = -std::numeric_limits<double>::infinity();
  for (Index level = 1; level <= est.amp; ++level) {
    const RatioObjective obj(u, level);
    auto f = [&obj](const RealVector& p, RealVector* g) { return obj(p, g); };
    std::vector<RealVector> starts;
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(level)));
    if (level > 1) {
      const RealVector warm = obj.pack(pad(est.witness_x, level), pad(est.witness_y, level));
      starts.push_back(warm);
      starts.push_back(warm + 0.05 * warm.cwiseAbs().maxCoeff() * rng.gaussian_real(warm.size()));
    }
    for (int r = 0; r < options.restarts; ++r) {
      starts.push_back(rng.gaussian_real(obj.num_params()));
    }
    for (const auto& s : starts) {
      const AscentResult a = lbfgs_maximize(f, s, ao);
      if (a.value > best_log) {
        best_log = a.value;
        obj.unpack(a.x, est.witness_x, est.witness_y);
      }
    }
    if (est.witness_x[0].rows() < level) {
      est.witness_x = pad(est.witness_x, level);
      est.witness_y = pad(est.witness_y, level);
    }
    est.profile.push_back(jcb_ratio(u, est.witness_x, est.witness_y));
    if (est.profile.size() > 1) {
      est.profile.back() = std::max(est.profile.back(), est.profile[est.profile.size() - 2]);
    }
  }
  est.value = jcb_ratio(u, est.witness_x, est.witness_y);
  est.value = std::max(est.value, est.profile.back());
  return est;
}

}  // namespace opgt
