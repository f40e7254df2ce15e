#include "opgt/ascent.hpp"
#include "opgt/gtforms.hpp"
#include "opgt/random.hpp"

#include <algorithm>
#include <cmath>

namespace opgt {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

double expect(const ComplexMatrix& state, const ComplexMatrix& m) {
  return (state.array() * m.transpose().array()).sum().real();
}

struct PairMatrices {
  ComplexMatrix aa, a_a, bb, b_b;  // aa*, a*a, bb*, b*b
  double modulus = 0.0;            // |U(a,b)|
};

PairMatrices pair_matrices(const BilinearForm& u, const TestPair& p) {
  const ComplexMatrix a = u.left().element(p.c);
  const ComplexMatrix b = u.right().element(p.d);
  return {a * a.adjoint(), a.adjoint() * a, b * b.adjoint(), b.adjoint() * b,
          std::abs(u.evaluate_coords(p.c, p.d))};
}

// Normalizes so that the matrices a and b have operator norm one.
TestPair normalized(const BilinearForm& u, TestPair p) {
  const double na = op_norm(u.left().element(p.c));
  const double nb = op_norm(u.right().element(p.d));
  if (na > 0.0) p.c /= na;
  if (nb > 0.0) p.d /= nb;
  return p;
}

struct Layout {
  HermitianVar rho1, rho2, sigma1, sigma2;
  Index kappa = -1;  // −1 when K is fixed
  std::vector<std::pair<Index, Index>> s;
};

ConicProblem build_problem(const BilinearForm& u, const std::vector<PairMatrices>& cuts,
                           double fixed_k, Layout& lay) {
  const Index ne = u.left().ambient_dim();
  const Index nf = u.right().ambient_dim();
  ConicBuilder b;
  lay.rho1 = b.add_hermitian(ne);
  lay.rho2 = b.add_hermitian(ne);
  lay.sigma1 = b.add_hermitian(nf);
  lay.sigma2 = b.add_hermitian(nf);
  lay.kappa = fixed_k > 0.0 ? -1 : b.add_scalar();
  if (lay.kappa >= 0) b.set_objective(lay.kappa, 1.0);
  lay.s.clear();
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Index s1 = b.add_scalar();
    const Index s2 = b.add_scalar();
    lay.s.emplace_back(s1, s2);
  }
  const ComplexMatrix one = ComplexMatrix::Ones(1, 1);
  for (const HermitianVar* h : {&lay.rho1, &lay.rho2, &lay.sigma1, &lay.sigma2}) {
    const std::size_t blk = b.add_block(ComplexMatrix::Zero(h->n, h->n));
    b.add_hermitian_terms(blk, *h, [](const ComplexMatrix& e) -> ComplexMatrix { return e; });
    // κ − tr ρ ≥ 0
    const std::size_t tb = b.add_block(fixed_k > 0.0 ? ComplexMatrix(fixed_k * one) : ComplexMatrix(0.0 * one));
    if (lay.kappa >= 0) b.add_term(tb, lay.kappa, one);
    for (Index i = 0; i < h->n; ++i) b.add_term(tb, h->offset + i, -one);
  }
  auto entry = [](Index r, Index c) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(r, c) = 1.0;
    return m;
  };
  ComplexMatrix offdiag = ComplexMatrix::Zero(2, 2);
  offdiag(0, 1) = offdiag(1, 0) = 1.0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const auto& pm = cuts[c];
    const auto [s1, s2] = lay.s[c];
    auto add_geo = [&](const HermitianVar& x, const ComplexMatrix& mx, const HermitianVar& y,
                       const ComplexMatrix& my, Index s) {
      const std::size_t blk = b.add_block(ComplexMatrix::Zero(2, 2));
      b.add_hermitian_terms(blk, x, [&](const ComplexMatrix& e) -> ComplexMatrix {
        return expect(e, mx) * entry(0, 0);
      });
      b.add_hermitian_terms(blk, y, [&](const ComplexMatrix& e) -> ComplexMatrix {
        return expect(e, my) * entry(1, 1);
      });
      b.add_term(blk, s, offdiag);
    };
    add_geo(lay.rho1, pm.aa, lay.sigma1, pm.b_b, s1);
    add_geo(lay.rho2, pm.a_a, lay.sigma2, pm.bb, s2);
    const std::size_t sb = b.add_block(ComplexMatrix::Constant(1, 1, -pm.modulus));
    b.add_term(sb, s1, one);
    b.add_term(sb, s2, one);
  }
  return b.build();
}

// Normalized states from unnormalized ρ with trace ≤ k: spare mass spread
// uniformly, which only enlarges every f(xx*).
ComplexMatrix to_state(const ComplexMatrix& rho, double k) {
  const Index n = rho.rows();
  const double spare = std::max(0.0, k - rho.trace().real());
  ComplexMatrix f = rho + (spare / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  f = 0.5 * (f + f.adjoint());
  return f / f.trace().real();
}

class SeparationObjective {
 public:
  SeparationObjective(const BilinearForm& u, const StateQuadruple& s)
      : u_(u),
        p1_(row_gram(u.left(), s.f1)),
        p2_(col_gram(u.left(), s.f2)),
        q1_(col_gram(u.right(), s.g1)),
        q2_(row_gram(u.right(), s.g2)) {}

  Index num_params() const { return 2 * (u_.left().dim() + u_.right().dim()); }

  TestPair unpack(const RealVector& x) const {
    const Index de = u_.left().dim();
    const Index df = u_.right().dim();
    TestPair p{ComplexVector(de), ComplexVector(df)};
    for (Index k = 0; k < de; ++k) p.c(k) = Complex(x(2 * k), x(2 * k + 1));
    for (Index l = 0; l < df; ++l) p.d(l) = Complex(x(2 * (de + l)), x(2 * (de + l) + 1));
    return p;
  }

  // log R with R = |c^T U d| / (√(αβ) + √(γδ))
  double operator()(const RealVector& x, RealVector* grad) const {
    const TestPair p = unpack(x);
    const ComplexVector ud = u_.coeffs() * p.d;
    const ComplexVector utc = u_.coeffs().transpose() * p.c;
    const Complex z = p.c.cwiseProduct(ud).sum();  // c^T U d
    const ComplexVector p1c = p1_ * p.c, p2c = p2_ * p.c, q1d = q1_ * p.d, q2d = q2_ * p.d;
    const double al = p.c.dot(p1c).real(), ga = p.c.dot(p2c).real();
    const double be = p.d.dot(q1d).real(), de = p.d.dot(q2d).real();
    const double mod2 = std::norm(z);
    const double den = std::sqrt(std::max(al * be, 0.0)) + std::sqrt(std::max(ga * de, 0.0));
    if (!(mod2 > 0.0) || !(den > 0.0) || !(al > 0.0) || !(be > 0.0) || !(ga > 0.0) || !(de > 0.0)) {
      if (grad) grad->setZero(num_params());
      return -std::numeric_limits<double>::infinity();
    }
    if (grad) {
      // complex gradients G = ∂/∂Re + i ∂/∂Im
      const ComplexVector gc = ud.conjugate() * z / mod2 -
                               (std::sqrt(be / al) * p1c + std::sqrt(de / ga) * p2c) / den;
      const ComplexVector gd = utc.conjugate() * z / mod2 -
                               (std::sqrt(al / be) * q1d + std::sqrt(ga / de) * q2d) / den;
      grad->resize(num_params());
      const Index ne = p.c.size();
      for (Index k = 0; k < ne; ++k) {
        (*grad)(2 * k) = gc(k).real();
        (*grad)(2 * k + 1) = gc(k).imag();
      }
      for (Index l = 0; l < p.d.size(); ++l) {
        (*grad)(2 * (ne + l)) = gd(l).real();
        (*grad)(2 * (ne + l) + 1) = gd(l).imag();
      }
    }
    return 0.5 * std::log(mod2) - std::log(den);
  }

 private:
  const BilinearForm& u_;
  ComplexMatrix p1_, p2_, q1_, q2_;
};

struct Candidate {
  double ratio;
  TestPair pair;
};

std::vector<Candidate> separate(const BilinearForm& u, const StateQuadruple& s, int restarts,
                                std::uint64_t seed) {
  const SeparationObjective obj(u, s);
  auto f = [&obj](const RealVector& x, RealVector* g) { return obj(x, g); };
  Rng rng(seed);
  std::vector<Candidate> out;
  AscentOptions ao;
  ao.max_iters = 200;
  for (int r = 0; r < restarts; ++r) {
    const AscentResult a = lbfgs_maximize(f, rng.gaussian_real(obj.num_params()), ao);
    if (std::isfinite(a.value)) {
      out.push_back({std::exp(a.value), normalized(u, obj.unpack(a.x))});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Candidate& x, const Candidate& y) { return x.ratio > y.ratio; });
  return out;
}

bool similar(const TestPair& x, const TestPair& y) {
  const double cx = std::abs(x.c.dot(y.c)) / (x.c.norm() * y.c.norm());
  const double dx = std::abs(x.d.dot(y.d)) / (x.d.norm() * y.d.norm());
  return cx > 0.999 && dx > 0.999;
}

StateQuadruple maximally_mixed(const BilinearForm& u, double K) {
  const Index ne = u.left().ambient_dim();
  const Index nf = u.right().ambient_dim();
  StateQuadruple s;
  s.f1 = s.f2 = ComplexMatrix::Identity(ne, ne) / static_cast<double>(ne);
  s.g1 = s.g2 = ComplexMatrix::Identity(nf, nf) / static_cast<double>(nf);
  s.K = K;
  return s;
}

}  // namespace

double state_violation(const BilinearForm& u, const StateQuadruple& s, const TestPair& p) {
  const PairMatrices pm = pair_matrices(u, p);
  const double t1 = std::sqrt(std::max(0.0, expect(s.f1, pm.aa) * expect(s.g1, pm.b_b)));
  const double t2 = std::sqrt(std::max(0.0, expect(s.f2, pm.a_a) * expect(s.g2, pm.bb)));
  return pm.modulus - s.K * (t1 + t2);
}

double max_state_violation(const BilinearForm& u, const StateQuadruple& s, int samples,
                           std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const TestPair p = normalized(u, {rng.gaussian(u.left().dim(), 1).col(0),
                                      rng.gaussian(u.right().dim(), 1).col(0)});
    worst = std::max(worst, state_violation(u, s, p));
  }
  return worst;
}

StatesResult find_states(const BilinearForm& u, double K, const StatesOptions& options) {
  if (!(K > 0.0)) {
    throw ValueError("state constant K must be positive");
  }
  StatesResult res;
  res.states = maximally_mixed(u, K);
  if (u.is_zero()) {
    res.status = SolveStatus::kFeasible;
    return res;
  }
  const double scale = op_norm(u.coeffs());
  const BilinearForm un = u.scaled(1.0 / scale);
  const double kn = K / scale;
  std::vector<PairMatrices> cut_mats;
  for (int round = 0;; ++round) {
    res.rounds = round + 1;
    StateQuadruple probe = res.states;
    probe.K = kn;
    const auto cands = separate(un, probe, options.restarts,
                                derive_seed(options.seed, static_cast<std::uint64_t>(round)));
    res.worst_ratio = cands.empty() ? 0.0 : cands.front().ratio * scale;
    // violation of a unit pair is |U(a,b)|·(1 − K/R) in original units
    double worst_violation = 0.0;
    for (const auto& c : cands) {
      const double mod = std::abs(u.evaluate_coords(c.pair.c, c.pair.d));
      worst_violation = std::max(worst_violation, mod * (1.0 - kn / c.ratio));
    }
    if (worst_violation <= options.violation_tol) {
      res.status = SolveStatus::kFeasible;
      return res;
    }
    if (static_cast<int>(res.states.cuts.size()) >= options.max_cuts) {
      res.status = SolveStatus::kInconclusive;
      return res;
    }
    int added = 0;
    std::vector<TestPair> new_cuts;
    for (const auto& c : cands) {
      if (c.ratio <= kn || added >= 2 ||
          static_cast<int>(res.states.cuts.size()) + added >= options.max_cuts) {
        break;
      }
      bool dup = false;
      for (const auto& n : new_cuts) dup = dup || similar(n, c.pair);
      if (dup) continue;
      new_cuts.push_back(c.pair);
      ++added;
    }
    for (const auto& p : new_cuts) {
      res.states.cuts.push_back(p);
      cut_mats.push_back(pair_matrices(un, p));
    }

    // Smallest admissible constant on the current cuts.
    Layout lay;
    const ConicProblem pmin = build_problem(un, cut_mats, 0.0, lay);
    double big = 1.0;
    for (const auto& pm : cut_mats) big = std::max(big, pm.modulus / 2.0 + 1.0);
    const Index ne = un.left().ambient_dim();
    const Index nf = un.right().ambient_dim();
    RealVector x0 = RealVector::Zero(pmin.num_vars);
    const double c0 = big + 1.0;
    for (const HermitianVar* h : {&lay.rho1, &lay.rho2}) set_hermitian_value(x0, *h, c0 * ComplexMatrix::Identity(ne, ne));
    for (const HermitianVar* h : {&lay.sigma1, &lay.sigma2}) set_hermitian_value(x0, *h, c0 * ComplexMatrix::Identity(nf, nf));
    x0(lay.kappa) = c0 * static_cast<double>(std::max(ne, nf)) + 1.0;
    for (std::size_t c = 0; c < cut_mats.size(); ++c) {
      x0(lay.s[c].first) = x0(lay.s[c].second) = cut_mats[c].modulus / 2.0 + 0.5;
    }
    ConicOptions co;
    co.rel_gap = 1e-9;
    const ConicResult smin = solve_conic(pmin, x0, co);
    const double kappa = smin.value;
    res.min_constant = scale * std::max(0.0, kappa - smin.gap_bound);
    if (kappa - smin.gap_bound > kn * (1.0 + 1e-9)) {
      res.status = SolveStatus::kInfeasible;
      return res;
    }
    RealVector sol = smin.x;
    double kk = kappa;
    if (kappa < kn * (1.0 - 1e-7)) {
      // Analytic center of the cut constraints at the target constant.
      Layout lc;
      const ConicProblem pc = build_problem(un, cut_mats, kn, lc);
      const double theta = 0.5 * (1.0 + kn / kappa);
      RealVector xc = RealVector::Zero(pc.num_vars);
      set_hermitian_value(xc, lc.rho1, theta * hermitian_value(smin.x, lay.rho1));
      set_hermitian_value(xc, lc.rho2, theta * hermitian_value(smin.x, lay.rho2));
      set_hermitian_value(xc, lc.sigma1, theta * hermitian_value(smin.x, lay.sigma1));
      set_hermitian_value(xc, lc.sigma2, theta * hermitian_value(smin.x, lay.sigma2));
      for (std::size_t c = 0; c < cut_mats.size(); ++c) {
        xc(lc.s[c].first) = theta * smin.x(lay.s[c].first);
        xc(lc.s[c].second) = theta * smin.x(lay.s[c].second);
      }
      if (pc.strictly_feasible(xc)) {
        sol = analytic_center(pc, xc).x;
        lay = lc;
        kk = kn;
      }
    }
    res.states.f1 = to_state(hermitian_value(sol, lay.rho1), kk);
    res.states.f2 = to_state(hermitian_value(sol, lay.rho2), kk);
    res.states.g1 = to_state(hermitian_value(sol, lay.sigma1), kk);
    res.states.g2 = to_state(hermitian_value(sol, lay.sigma2), kk);
  }
}

}  // namespace opgt
