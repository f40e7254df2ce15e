#include "opgt/schur.hpp"

#include "opgt/conic.hpp"
#include "opgt/lp.hpp"
#include "opgt/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace opgt {

namespace {

void check_finite(const ComplexMatrix& phi) {
  if (!phi.allFinite()) throw ValueError("Schur matrix has non-finite entries");
}

// φ_ij / |φ_ij|, with 1 on zero entries.
Complex phase(Complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0); }

ComplexMatrix with_phases(const RealMatrix& moduli, const ComplexMatrix& phi) {
  ComplexMatrix out(phi.rows(), phi.cols());
  for (Index i = 0; i < phi.rows(); ++i)
    for (Index j = 0; j < phi.cols(); ++j) out(i, j) = moduli(i, j) * phase(phi(i, j));
  return out;
}

BoundedSplit finish(ComplexMatrix a, ComplexMatrix b) {
  BoundedSplit s;
  s.a = std::move(a);
  s.b = std::move(b);
  s.row_sum = s.a.size() ? s.a.cwiseAbs().rowwise().maxCoeff().sum() : 0.0;
  s.col_sum = s.b.size() ? s.b.cwiseAbs().colwise().maxCoeff().sum() : 0.0;
  s.cost = s.row_sum + s.col_sum;
  return s;
}

std::vector<Index> ranks(const RealVector& v) {
  std::vector<Index> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index p, Index q) { return v(p) < v(q); });
  std::vector<Index> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<Index>(r);
  return rank;
}

}  // namespace

double split_cost(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!same_shape(a, b)) throw DimensionError("split pieces differ in shape");
  return finish(a, b).cost;
}

BoundedSplit bounded_split_optimal(const ComplexMatrix& phi) {
  check_finite(phi);
  const Index k = phi.rows();
  const Index l = phi.cols();
  const RealMatrix p = phi.cwiseAbs();
  const double scale = p.size() ? p.maxCoeff() : 0.0;
  if (scale == 0.0) {
    return finish(ComplexMatrix::Zero(k, l), ComplexMatrix::Zero(k, l));
  }
  const RealMatrix q = p / scale;
  std::vector<std::pair<Index, Index>> support;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < l; ++j)
      if (q(i, j) > 0.0) support.emplace_back(i, j);
  const Index n = static_cast<Index>(support.size());
  RealVector c(n);
  RealMatrix a = RealMatrix::Zero(k + l, n);
  for (Index e = 0; e < n; ++e) {
    const auto [i, j] = support[static_cast<std::size_t>(e)];
    c(e) = q(i, j);
    a(i, e) = 1.0;
    a(k + j, e) = 1.0;
  }
  const LpResult lp = simplex_maximize(c, a, RealVector::Ones(k + l));
  if (!lp.optimal) throw std::runtime_error("matching LP hit the pivot limit");
  RealVector s = lp.dual.head(k);
  RealVector t = lp.dual.tail(l);
  // Rounding repair so that s_i + t_j ≥ q_ij holds exactly.
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i < k; ++i) t(j) = std::max(t(j), q(i, j) - s(i));
  RealMatrix ra(k, l);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < l; ++j) ra(i, j) = std::min(q(i, j), s(i));
  const ComplexMatrix a_part = with_phases(scale * ra, phi);
  BoundedSplit out = finish(a_part, phi - a_part);
  out.lp_bound = scale * lp.value;
  return out;
}

BoundedSplit constructive_split(const ComplexMatrix& phi, const RealVector& x, const RealVector& y,
                                double K) {
  check_finite(phi);
  const Index k = phi.rows();
  const Index l = phi.cols();
  if (x.size() != k || y.size() != l) throw DimensionError("weight vectors do not match φ");
  if ((x.size() && x.minCoeff() < 0.0) || (y.size() && y.minCoeff() < 0.0)) {
    throw ValueError("weights must be nonnegative");
  }
  if (std::abs(x.sum() - 1.0) > 1e-9 || std::abs(y.sum() - 1.0) > 1e-9) {
    throw ValueError("weights must sum to one");
  }
  double worst = 0.0;
  Index wi = 0, wj = 0;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < l; ++j) {
      const double excess = std::abs(phi(i, j)) - K * std::sqrt(x(i) * y(j));
      if (excess > worst) {
        worst = excess;
        wi = i;
        wj = j;
      }
    }
  if (worst > 1e-12 * std::max(1.0, K)) {
    throw ValueError("|φ_ij| ≤ K (x_i y_j)^{1/2} fails at (" + std::to_string(wi) + ", " +
                     std::to_string(wj) + ") by " + std::to_string(worst));
  }
  // Pad to a square index set with zero weights so both rankings share it.
  const Index n = std::max(k, l);
  RealVector xp = RealVector::Zero(n), yp = RealVector::Zero(n);
  xp.tail(k) = x;
  yp.tail(l) = y;
  const auto rx = ranks(xp);
  const auto ry = ranks(yp);
  ComplexMatrix a = ComplexMatrix::Zero(k, l), b = ComplexMatrix::Zero(k, l);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < l; ++j) {
      const bool upper = rx[static_cast<std::size_t>(n - k + i)] <= ry[static_cast<std::size_t>(n - l + j)];
      (upper ? b : a)(i, j) = phi(i, j);
    }
  return finish(a, b);
}

RankOneDominator rank_one_dominator(const ComplexMatrix& phi, int iters, double tol) {
  check_finite(phi);
  const Index k = phi.rows();
  const Index l = phi.cols();
  RankOneDominator out;
  const RealMatrix p = phi.cwiseAbs();
  const double scale = p.size() ? p.maxCoeff() : 0.0;
  if (scale == 0.0) {
    out.x = RealVector::Constant(k, 1.0 / std::sqrt(static_cast<double>(std::max<Index>(k, 1))));
    out.y = RealVector::Constant(l, 1.0 / std::sqrt(static_cast<double>(std::max<Index>(l, 1))));
    return out;
  }
  const RealMatrix q = p / scale;
  std::vector<Index> rows, cols;
  for (Index i = 0; i < k; ++i)
    if (q.row(i).maxCoeff() > 0.0) rows.push_back(i);
  for (Index j = 0; j < l; ++j)
    if (q.col(j).maxCoeff() > 0.0) cols.push_back(j);
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(cols.size());

  ConicBuilder builder;
  std::vector<Index> xv, yv;
  for (Index i = 0; i < r; ++i) xv.push_back(builder.add_scalar());
  for (Index j = 0; j < c; ++j) yv.push_back(builder.add_scalar());
  const Index tx = builder.add_scalar();
  const Index ty = builder.add_scalar();
  builder.set_objective(tx, 0.5);
  builder.set_objective(ty, 0.5);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) {
      const double v = q(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      if (v <= 0.0) continue;
      ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
      k0(0, 1) = k0(1, 0) = std::sqrt(v);
      const auto blk = builder.add_block(k0);
      builder.add_term(blk, xv[static_cast<std::size_t>(i)], matrix_unit(2, 2, 0, 0));
      builder.add_term(blk, yv[static_cast<std::size_t>(j)], matrix_unit(2, 2, 1, 1));
    }
  // τ ≥ ‖v‖² as [[I, v], [vᵀ, τ]] ⪰ 0.
  auto norm_block = [&](const std::vector<Index>& vars, Index tau) {
    const Index m = static_cast<Index>(vars.size());
    ComplexMatrix k0 = ComplexMatrix::Zero(m + 1, m + 1);
    k0.topLeftCorner(m, m).setIdentity();
    const auto blk = builder.add_block(k0);
    for (Index i = 0; i < m; ++i) {
      builder.add_term(blk, vars[static_cast<std::size_t>(i)],
                       matrix_unit(m + 1, m + 1, i, m) + matrix_unit(m + 1, m + 1, m, i));
    }
    builder.add_term(blk, tau, matrix_unit(m + 1, m + 1, m, m));
  };
  norm_block(xv, tx);
  norm_block(yv, ty);
  const ConicProblem problem = builder.build();
  RealVector x0 = RealVector::Constant(problem.num_vars, 1.5);
  x0(tx) = 2.25 * static_cast<double>(r) + 1.0;
  x0(ty) = 2.25 * static_cast<double>(c) + 1.0;
  ConicOptions opts;
  opts.rel_gap = 1e-10;
  const ConicResult res = solve_conic(problem, x0, opts);

  RealVector xs = RealVector::Zero(k), ys = RealVector::Zero(l);
  for (Index i = 0; i < r; ++i) xs(rows[static_cast<std::size_t>(i)]) = res.x(xv[static_cast<std::size_t>(i)]);
  for (Index j = 0; j < c; ++j) ys(cols[static_cast<std::size_t>(j)]) = res.x(yv[static_cast<std::size_t>(j)]);
  auto tighten_x = [&] {
    for (Index i : rows) {
      double m = 0.0;
      for (Index j : cols) m = std::max(m, q(i, j) / ys(j));
      xs(i) = m;
    }
  };
  auto tighten_y = [&] {
    for (Index j : cols) {
      double m = 0.0;
      for (Index i : rows) m = std::max(m, q(i, j) / xs(i));
      ys(j) = m;
    }
  };
  double current = xs.norm() * ys.norm();
  for (int it = 0; it < iters; ++it) {
    tighten_x();
    tighten_y();
    const double next = xs.norm() * ys.norm();
    const bool done = current - next <= tol * current;
    current = std::min(current, next);
    if (done) break;
  }
  out.C = scale * xs.norm() * ys.norm();
  out.x = xs / xs.norm();
  out.y = ys / ys.norm();
  out.gap_bound = std::max(0.0, out.C - scale * (res.value - res.gap_bound));
  return out;
}

TraceClassVectors trace_class_dominator_to_vectors(const ComplexMatrix& t) {
  check_finite(t);
  TraceClassVectors out;
  if (t.size() == 0 || t.cwiseAbs().maxCoeff() == 0.0) {
    out.X = RealVector::Zero(t.rows());
    out.Y = RealVector::Zero(t.cols());
    return out;
  }
  const Svd s = svd(t);
  out.X = (s.u.cwiseAbs2() * s.singular).cwiseSqrt();
  out.Y = (s.v.cwiseAbs2() * s.singular).cwiseSqrt();
  out.trace_norm = s.singular.sum();
  for (Index i = 0; i < t.rows(); ++i)
    for (Index j = 0; j < t.cols(); ++j) {
      if (std::abs(t(i, j)) > out.X(i) * out.Y(j) * (1.0 + 1e-12) + 1e-14 * out.trace_norm) {
        throw std::logic_error("trace-class domination failed at (" + std::to_string(i) + ", " +
                               std::to_string(j) + ")");
      }
    }
  return out;
}

ComplexMatrix geometric_mean_form(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("geometric mean of mismatched shapes");
  if ((a.size() && a.minCoeff() < 0.0) || (b.size() && b.minCoeff() < 0.0)) {
    throw ValueError("geometric mean needs nonnegative entries");
  }
  return a.cwiseProduct(b).cwiseSqrt().cast<Complex>();
}

BilinearForm schur_form(const ComplexMatrix& phi) {
  if (phi.rows() != phi.cols()) throw DimensionError("Schur form needs a square φ, got " + shape_string(phi));
  const Index k = phi.rows();
  ComplexMatrix u = ComplexMatrix::Zero(k * k, k * k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) u(i * k + j, i * k + j) = phi(i, j);
  return BilinearForm(OperatorSpace::full(k), OperatorSpace::full(k), u);
}

ComplexMatrix averaging_projection(const BilinearForm& v) {
  if (!v.left().is_full_algebra() || !v.right().is_full_algebra() ||
      v.left().ambient_dim() != v.right().ambient_dim()) {
    throw DimensionError("averaging needs both sides to be the same full matrix algebra");
  }
  const Index n = v.left().ambient_dim();
  ComplexMatrix psi(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ComplexMatrix e = matrix_unit(n, n, i, j);
      psi(i, j) = v.evaluate(e, e);
    }
  return psi;
}

double schur_trace_class_norm(const ComplexMatrix& phi, int restarts, std::uint64_t seed) {
  check_finite(phi);
  if (phi.size() == 0 || phi.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  // For fixed b, sup over contractions a of |Σ a_ij M_ij| with M = φ∘b is
  // ‖M‖_1, attained at a = V U* where Mᵀ = U S V*.
  auto best_partner = [](const ComplexMatrix& m) -> ComplexMatrix {
    const Svd s = svd(m.transpose());
    return s.v * s.u.adjoint();
  };
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    ComplexMatrix b = rng.contraction(phi.rows(), phi.cols());
    ComplexMatrix a;
    double value = 0.0;
    for (int it = 0; it < 200; ++it) {
      a = best_partner(phi.cwiseProduct(b));
      b = best_partner(phi.cwiseProduct(a));
      const double next = std::abs(phi.cwiseProduct(a).cwiseProduct(b).sum());
      const bool done = next - value <= 1e-13 * next;
      value = std::max(value, next);
      if (done) break;
    }
    best = std::max(best, value);
  }
  return best;
}

ComplexMatrix inverse_square_rows(Index k) {
  ComplexMatrix phi(k, k);
  for (Index i = 0; i < k; ++i) phi.row(i).setConstant(1.0 / static_cast<double>((i + 1) * (i + 1)));
  return phi;
}

std::vector<SchurProfileRow> schur_profile(const std::function<ComplexMatrix(Index)>& family, Index kmin,
                                           Index kmax) {
  if (kmin < 1 || kmax < kmin) throw ValueError("profile range must satisfy 1 ≤ kmin ≤ kmax");
  std::vector<SchurProfileRow> rows;
  for (Index k = kmin; k <= kmax; ++k) {
    const ComplexMatrix phi = family(k);
    SchurProfileRow row;
    row.k = k;
    row.lp_cost = bounded_split_optimal(phi).cost;
    row.dominator = rank_one_dominator(phi).C;
    row.ratio = row.lp_cost > 0.0 ? row.dominator / row.lp_cost : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace opgt
