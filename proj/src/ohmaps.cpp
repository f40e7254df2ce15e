#include "opgt/ohmaps.hpp"

#include "opgt/ascent.hpp"
#include "opgt/conic.hpp"
#include "opgt/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opgt {

OHMap::OHMap(OperatorSpace domain, ComplexMatrix action) : domain_(std::move(domain)), action_(std::move(action)) {
  if (action_.cols() != domain_.dim()) {
    throw DimensionError("OH map action has " + std::to_string(action_.cols()) + " columns for a " +
                         std::to_string(domain_.dim()) + "-dimensional domain");
  }
  if (action_.rows() < 1) throw DimensionError("OH map needs a nonempty target");
}

ComplexVector OHMap::apply(const ComplexMatrix& x) const { return action_ * domain_.coordinates(x); }

BilinearForm OHMap::associated_form() const {
  return BilinearForm(domain_, domain_.conjugate(), action_.transpose() * action_.conjugate());
}

OHMap coordinate_functional(Index n, Index i, Index j) {
  if (i < 0 || j < 0 || i >= n || j >= n) throw ValueError("coordinate functional index out of range");
  ComplexMatrix a = ComplexMatrix::Zero(1, n * n);
  a(0, i * n + j) = 1.0;
  return OHMap(OperatorSpace::full(n), a);
}

OHMap state_weighted_map(const ComplexMatrix& f) {
  const HermitianMatrix h(f);
  const ComplexMatrix g = psd_sqrt(HermitianMatrix::symmetrized(psd_sqrt(h)));
  const Index n = f.rows();
  ComplexMatrix a(n * n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a.col(i * n + j) = vec(g.col(i) * g.row(j));
  return OHMap(OperatorSpace::full(n), a);
}

OHMap random_oh_map(const OperatorSpace& e, Index target_dim, std::uint64_t seed) {
  Rng rng(seed);
  return OHMap(e, rng.gaussian(target_dim, e.dim()));
}

namespace {

double expect(const ComplexMatrix& state, const ComplexMatrix& m) {
  return (state.array() * m.transpose().array()).sum().real();
}

struct CutData {
  ComplexMatrix xx, x_x;  // xx*, x*x
  double target = 0.0;    // ‖u(x)‖²
};

CutData cut_data(const OHMap& u, const ComplexVector& c) {
  const ComplexMatrix x = u.domain().element(c);
  return {x * x.adjoint(), x.adjoint() * x, u.apply_coords(c).squaredNorm()};
}

ComplexVector unit_coords(const OHMap& u, ComplexVector c) {
  const double n = op_norm(u.domain().element(c));
  if (n > 0.0) c /= n;
  return c;
}

// log(‖Ac‖² / (c^H P c · c^H Q c)^{1/2}) over real and imaginary parts of c.
class OhRatio {
 public:
  OhRatio(const OHMap& u, const ComplexMatrix& f)
      : m_(u.action().adjoint() * u.action()), p_(row_gram(u.domain(), f)), q_(col_gram(u.domain(), f)) {}

  Index num_params() const { return 2 * m_.rows(); }

  ComplexVector unpack(const RealVector& x) const {
    ComplexVector c(m_.rows());
    for (Index k = 0; k < c.size(); ++k) c(k) = Complex(x(2 * k), x(2 * k + 1));
    return c;
  }

  double operator()(const RealVector& x, RealVector* grad) const {
    const ComplexVector c = unpack(x);
    const ComplexVector mc = m_ * c, pc = p_ * c, qc = q_ * c;
    const double m = c.dot(mc).real(), p = c.dot(pc).real(), q = c.dot(qc).real();
    if (!(m > 0.0) || !(p > 0.0) || !(q > 0.0)) {
      if (grad) grad->setZero(num_params());
      return -std::numeric_limits<double>::infinity();
    }
    if (grad) {
      const ComplexVector g = 2.0 * mc / m - pc / p - qc / q;
      grad->resize(num_params());
      for (Index k = 0; k < c.size(); ++k) {
        (*grad)(2 * k) = g(k).real();
        (*grad)(2 * k + 1) = g(k).imag();
      }
    }
    return std::log(m) - 0.5 * std::log(p) - 0.5 * std::log(q);
  }

 private:
  ComplexMatrix m_, p_, q_;
};

struct OhCandidate {
  double ratio;  // ‖u(x)‖² / (f(xx*) f(x*x))^{1/2}
  ComplexVector coords;
};

std::vector<OhCandidate> separate(const OHMap& u, const ComplexMatrix& f, int restarts, std::uint64_t seed) {
  const OhRatio obj(u, f);
  auto fn = [&obj](const RealVector& x, RealVector* g) { return obj(x, g); };
  Rng rng(seed);
  AscentOptions ao;
  ao.max_iters = 200;
  std::vector<OhCandidate> out;
  for (int r = 0; r < restarts; ++r) {
    const AscentResult a = lbfgs_maximize(fn, rng.gaussian_real(obj.num_params()), ao);
    if (std::isfinite(a.value)) out.push_back({std::exp(a.value), unit_coords(u, obj.unpack(a.x))});
  }
  std::sort(out.begin(), out.end(), [](const OhCandidate& x, const OhCandidate& y) { return x.ratio > y.ratio; });
  return out;
}

struct OhLayout {
  HermitianVar rho;
  Index kappa = -1;
  std::vector<Index> s;
};

ConicProblem build_oh_problem(Index n, const std::vector<CutData>& cuts, double fixed_k, OhLayout& lay) {
  ConicBuilder b;
  lay.rho = b.add_hermitian(n);
  lay.kappa = fixed_k > 0.0 ? -1 : b.add_scalar();
  if (lay.kappa >= 0) b.set_objective(lay.kappa, 1.0);
  lay.s.clear();
  for (std::size_t c = 0; c < cuts.size(); ++c) lay.s.push_back(b.add_scalar());
  const ComplexMatrix one = ComplexMatrix::Ones(1, 1);
  const std::size_t pb = b.add_block(ComplexMatrix::Zero(n, n));
  b.add_hermitian_terms(pb, lay.rho, [](const ComplexMatrix& e) -> ComplexMatrix { return e; });
  const std::size_t tb = b.add_block(ComplexMatrix(std::max(fixed_k, 0.0) * one));
  if (lay.kappa >= 0) b.add_term(tb, lay.kappa, one);
  for (Index i = 0; i < n; ++i) b.add_term(tb, lay.rho.offset + i, -one);
  ComplexMatrix offdiag = ComplexMatrix::Zero(2, 2);
  offdiag(0, 1) = offdiag(1, 0) = 1.0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const std::size_t blk = b.add_block(ComplexMatrix::Zero(2, 2));
    b.add_hermitian_terms(blk, lay.rho, [&](const ComplexMatrix& e) -> ComplexMatrix {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = expect(e, cuts[c].xx);
      m(1, 1) = expect(e, cuts[c].x_x);
      return m;
    });
    b.add_term(blk, lay.s[c], offdiag);
    const std::size_t sb = b.add_block(ComplexMatrix::Constant(1, 1, -cuts[c].target));
    b.add_term(sb, lay.s[c], one);
  }
  return b.build();
}

ComplexMatrix to_state(const ComplexMatrix& rho, double k) {
  const Index n = rho.rows();
  const double spare = std::max(0.0, k - rho.trace().real());
  ComplexMatrix f = rho + (spare / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  f = 0.5 * (f + f.adjoint());
  return f / f.trace().real();
}

bool similar(const ComplexVector& x, const ComplexVector& y) {
  return std::abs(x.dot(y)) / (x.norm() * y.norm()) > 0.999;
}

}  // namespace

double oh_violation(const OHMap& u, const OHCertificate& cert, const ComplexVector& coords) {
  const CutData d = cut_data(u, coords);
  return d.target - cert.K * cert.K * std::sqrt(std::max(0.0, expect(cert.f, d.xx) * expect(cert.f, d.x_x)));
}

double max_oh_violation(const OHMap& u, const OHCertificate& cert, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    worst = std::max(worst, oh_violation(u, cert, unit_coords(u, rng.gaussian(u.domain().dim(), 1).col(0))));
  }
  return worst;
}

OHStateResult find_oh_state(const OHMap& u, double K, const OHStateOptions& options) {
  if (!(K > 0.0)) throw ValueError("OH constant K must be positive");
  const Index n = u.domain().ambient_dim();
  OHStateResult res;
  res.cert.K = K;
  res.cert.f = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  if (u.action().cwiseAbs().maxCoeff() == 0.0) {
    res.status = SolveStatus::kFeasible;
    return res;
  }
  const double scale = op_norm(u.action());
  const OHMap un = u.scaled(1.0 / scale);
  const double k2 = K * K / (scale * scale);
  std::vector<CutData> cuts;
  for (int round = 0;; ++round) {
    res.rounds = round + 1;
    const auto cands = separate(un, res.cert.f, options.restarts,
                                derive_seed(options.seed, static_cast<std::uint64_t>(round)));
    res.worst_ratio = cands.empty() ? 0.0 : scale * std::sqrt(cands.front().ratio);
    double worst = 0.0;
    for (const auto& c : cands) {
      worst = std::max(worst, u.apply_coords(c.coords).squaredNorm() * (1.0 - k2 / c.ratio));
    }
    if (worst <= options.violation_tol) {
      res.status = SolveStatus::kFeasible;
      return res;
    }
    if (static_cast<int>(res.cuts.size()) >= options.max_cuts) {
      res.status = SolveStatus::kInconclusive;
      return res;
    }
    std::vector<ComplexVector> fresh;
    for (const auto& c : cands) {
      if (c.ratio <= k2 || fresh.size() >= 2 ||
          static_cast<int>(res.cuts.size() + fresh.size()) >= options.max_cuts) {
        break;
      }
      bool dup = false;
      for (const auto& f : fresh) dup = dup || similar(f, c.coords);
      if (!dup) fresh.push_back(c.coords);
    }
    for (const auto& c : fresh) {
      res.cuts.push_back(c);
      cuts.push_back(cut_data(un, c));
    }

    OhLayout lay;
    const ConicProblem pmin = build_oh_problem(n, cuts, 0.0, lay);
    double big = 0.0;
    for (const auto& c : cuts) big = std::max(big, c.target);
    RealVector x0 = RealVector::Zero(pmin.num_vars);
    const double c0 = big + 2.0;
    set_hermitian_value(x0, lay.rho, c0 * ComplexMatrix::Identity(n, n));
    x0(lay.kappa) = c0 * static_cast<double>(n) + 1.0;
    for (std::size_t c = 0; c < cuts.size(); ++c) x0(lay.s[c]) = cuts[c].target + 0.5;
    ConicOptions co;
    co.rel_gap = 1e-9;
    const ConicResult smin = solve_conic(pmin, x0, co);
    const double kappa = smin.value;
    res.min_constant = scale * std::sqrt(std::max(0.0, kappa - smin.gap_bound));
    if (kappa - smin.gap_bound > k2 * (1.0 + 1e-9)) {
      res.status = SolveStatus::kInfeasible;
      return res;
    }
    RealVector sol = smin.x;
    double kk = kappa;
    if (kappa < k2 * (1.0 - 1e-7)) {
      OhLayout lc;
      const ConicProblem pc = build_oh_problem(n, cuts, k2, lc);
      const double theta = 0.5 * (1.0 + k2 / kappa);
      RealVector xc = RealVector::Zero(pc.num_vars);
      set_hermitian_value(xc, lc.rho, theta * hermitian_value(smin.x, lay.rho));
      for (std::size_t c = 0; c < cuts.size(); ++c) xc(lc.s[c]) = theta * smin.x(lay.s[c]);
      if (pc.strictly_feasible(xc)) {
        sol = analytic_center(pc, xc).x;
        lay = lc;
        kk = k2;
      }
    }
    res.cert.f = to_state(hermitian_value(sol, lay.rho), kk);
  }
}

double oh_cb_bound(const OHMap& u) {
  const BilinearForm v = u.associated_form();
  if (v.is_zero()) return 0.0;
  const Decomposition dec = decompose_form(v, std::numeric_limits<double>::infinity());
  // ‖V‖_jcb ≤ ‖u‖_cb of the first piece plus ‖ᵗv‖_cb of the second.
  return std::sqrt(dec.u_cert.bound() + dec.v_cert.bound());
}

OHConverse oh_converse_bound(const OHMap& u, const OHCertificate& cert, int samples, std::uint64_t seed,
                             const JcbOptions& jcb) {
  OHConverse out;
  if (u.action().cwiseAbs().maxCoeff() == 0.0) {
    out.consistent = true;
    return out;
  }
  out.recheck_violation = max_oh_violation(u, cert, samples, seed);
  if (out.recheck_violation > 1e-5) {
    throw ValueError("OH certificate fails on re-test by " + std::to_string(out.recheck_violation));
  }
  out.bound = cert.K;
  out.jcb_estimate = std::sqrt(jcb_norm_estimate(u.associated_form(), jcb).value);
  out.consistent = out.jcb_estimate <= out.bound + 1e-5;
  return out;
}

InterpSplit interp_split(const RealVector& lambda, double t) {
  if (!(t >= 2.0)) throw ValueError("interpolation split needs t ≥ 2");
  if (lambda.size() == 0 || lambda.minCoeff() <= 0.0) throw ValueError("λ must be positive");
  InterpSplit s;
  const double t2 = t * t;
  for (Index i = 0; i < lambda.size(); ++i)
    for (Index j = 0; j < lambda.size(); ++j) {
      const double r = lambda(i) / lambda(j);
      if (r > t2) {
        s.s2.emplace_back(i, j);
      } else if (r < 1.0 / t2) {
        s.s3.emplace_back(i, j);
      } else {
        s.s1.emplace_back(i, j);
      }
    }
  return s;
}

InterpReport interp_bound_report(const OHMap& u, const ComplexMatrix& f, double K, const ComplexMatrix& x,
                                 double t) {
  if (!u.domain().is_full_algebra()) throw DimensionError("interpolation report needs the full matrix algebra");
  const Index n = u.domain().ambient_dim();
  if (f.rows() != n || f.cols() != n || x.rows() != n || x.cols() != n) {
    throw DimensionError("state and x must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  const HermitianEigen e = hermitian_eig(HermitianMatrix(f));
  const InterpSplit split = interp_split(e.values, t);
  const ComplexMatrix xr = e.vectors.adjoint() * x * e.vectors;
  const RealVector& lam = e.values;
  auto piece = [&](const std::vector<std::pair<Index, Index>>& set) -> ComplexMatrix {
    ComplexMatrix y = ComplexMatrix::Zero(n, n);
    for (const auto& [i, j] : set) y(i, j) = xr(i, j);
    return y;
  };
  auto weights = [&](const ComplexMatrix& y, bool row) {
    double s = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) s += (row ? lam(i) : lam(j)) * std::norm(y(i, j));
    return s;
  };
  auto u_norm2 = [&](const ComplexMatrix& y) { return u.apply(e.vectors * y * e.vectors.adjoint()).squaredNorm(); };

  InterpReport r;
  r.t = t;
  r.K = K;
  const ComplexMatrix y1 = piece(split.s1), y2 = piece(split.s2), y3 = piece(split.s3);
  r.sizes[0] = split.s1.size();
  r.sizes[1] = split.s2.size();
  r.sizes[2] = split.s3.size();
  r.u1 = u_norm2(y1);
  r.u2 = u_norm2(y2);
  r.u3 = u_norm2(y3);
  r.fxx = weights(xr, true);
  r.fx_x = weights(xr, false);
  r.geo2 = std::sqrt(weights(y2, true) * weights(y2, false));
  r.geo3 = std::sqrt(weights(y3, true) * weights(y3, false));
  r.tail2_bound = K * K * r.fxx / t;
  r.tail3_bound = K * K * r.fx_x / t;
  const ComplexMatrix fh = psd_sqrt(HermitianMatrix::symmetrized(f));
  r.head = (fh * x * fh * x.adjoint()).trace().real();
  r.head_ratio = r.head > 0.0 ? r.u1 / (std::log(t) * r.head) : 0.0;
  constexpr double rel = 1e-10;
  r.algebra_holds = r.geo2 <= r.fxx / t * (1.0 + rel) + 1e-300 && r.geo3 <= r.fx_x / t * (1.0 + rel) + 1e-300;
  const double scale = std::max(1.0, K * K * (r.fxx + r.fx_x));
  r.tails_hold = r.u2 <= r.tail2_bound + rel * scale && r.u3 <= r.tail3_bound + rel * scale;
  return r;
}

LogBoundReport log_bound_experiment(const OHMap& u, const std::vector<ComplexMatrix>& xs, double K) {
  if (xs.empty()) throw ValueError("log bound experiment needs at least one x");
  const Index n = u.domain().ambient_dim();
  LogBoundReport r;
  r.n = static_cast<Index>(xs.size());
  ComplexMatrix tensor = ComplexMatrix::Zero(n * n, n * n);
  ComplexMatrix rows = ComplexMatrix::Zero(n, n), cols = ComplexMatrix::Zero(n, n);
  std::vector<double> sq;
  for (const auto& x : xs) {
    if (x.rows() != n || x.cols() != n) throw DimensionError("x has shape " + shape_string(x));
    r.lhs += u.apply(x).squaredNorm();
    tensor += kron(x, x.conjugate());
    rows += x * x.adjoint();
    cols += x.adjoint() * x;
    sq.push_back(std::pow(op_norm(x), 2));
    r.sum_sq += sq.back();
  }
  r.min_norm = op_norm(tensor);
  r.row = op_norm(rows);
  r.col = op_norm(cols);
  constexpr double rel = 1e-10;
  bool ok = true;
  for (double s : sq) ok = ok && s <= r.min_norm * (1.0 + rel);
  ok = ok && r.row <= r.sum_sq * (1.0 + rel) && r.col <= r.sum_sq * (1.0 + rel);
  ok = ok && r.sum_sq <= static_cast<double>(r.n) * r.min_norm * (1.0 + rel);
  r.elementary_hold = ok;
  const double denom = K * K * (std::log(static_cast<double>(r.n)) + 1.0) * r.min_norm;
  r.ratio = denom > 0.0 ? r.lhs / denom : 0.0;
  return r;
}

}  // namespace opgt
