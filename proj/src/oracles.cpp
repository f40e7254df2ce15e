#include "opgt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opgt {

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f, const RealVector& x0,
                             double step, int max_iters, double tol) {
  const Index n = x0.size();
  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> val(static_cast<std::size_t>(n + 1));
  for (Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
  for (std::size_t i = 0; i < pts.size(); ++i) val[i] = f(pts[i]);
  NelderMeadResult out;
  std::vector<std::size_t> idx(pts.size());
  for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[idx.size() - 2];
    if (std::abs(val[worst] - val[best]) <= tol * (std::abs(val[best]) + 1e-300)) break;
    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) centroid += pts[idx[i]];
    centroid /= static_cast<double>(n);
    const RealVector xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < val[best]) {
      const RealVector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr < val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
    } else {
      const RealVector xc = centroid + 0.5 * (pts[worst] - centroid);
      const double fc = f(xc);
      if (fc < val[worst]) {
        pts[worst] = xc;
        val[worst] = fc;
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          val[i] = f(pts[i]);
        }
      }
    }
  }
  const auto it = std::min_element(val.begin(), val.end());
  out.value = *it;
  out.x = pts[static_cast<std::size_t>(it - val.begin())];
  return out;
}

namespace {

double top_eigenvalue(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

double haagerup_oracle(const TensorRep& w) {
  if (w.size() == 0) return 0.0;
  if (w.size() == 1) {
    Eigen::JacobiSVD<ComplexMatrix> sa(w.left[0]), sb(w.right[0]);
    return sa.singularValues()(0) * sb.singularValues()(0);
  }
  if (w.size() != 2) throw DimensionError("oracle handles representations of length ≤ 2");
  const ComplexMatrix& a1 = w.left[0];
  const ComplexMatrix& a2 = w.left[1];
  const ComplexMatrix& b1 = w.right[0];
  const ComplexMatrix& b2 = w.right[1];
  auto objective = [&](const RealVector& p) {
    const Complex z(p(0), p(1));
    const double d = std::exp(p(2));
    const ComplexMatrix c2 = z * a1 + d * a2;
    const ComplexMatrix e1 = b1 - (z / d) * b2;
    const ComplexMatrix e2 = b2 / d;
    const double row = top_eigenvalue(a1 * a1.adjoint() + c2 * c2.adjoint());
    const double col = top_eigenvalue(e1.adjoint() * e1 + e2.adjoint() * e2);
    return std::sqrt(std::max(row, 0.0) * std::max(col, 0.0));
  };
  std::vector<std::pair<double, RealVector>> grid;
  for (int i = 0; i < 17; ++i)
    for (int j = 0; j < 17; ++j)
      for (int k = 0; k < 17; ++k) {
        RealVector p(3);
        p << -4.0 + 0.5 * i, -4.0 + 0.5 * j, -4.0 + 0.5 * k;
        grid.emplace_back(objective(p), p);
      }
  std::partial_sort(grid.begin(), grid.begin() + 3, grid.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
  double best = grid.front().first;
  for (int s = 0; s < 3; ++s) {
    RealVector x = grid[static_cast<std::size_t>(s)].second;
    double step = 0.25;
    for (int restart = 0; restart < 6; ++restart) {
      const NelderMeadResult r = nelder_mead(objective, x, step);
      x = r.x;
      best = std::min(best, r.value);
      step *= 0.3;
    }
  }
  return best;
}

double brute_force_matching(const RealMatrix& p) {
  const bool flip = p.rows() > p.cols();
  const RealMatrix q = flip ? RealMatrix(p.transpose()) : p;
  const Index r = q.rows();
  const Index c = q.cols();
  if (r > 9) throw DimensionError("brute-force matching limited to 9 rows");
  std::vector<Index> cols(static_cast<std::size_t>(c));
  std::iota(cols.begin(), cols.end(), Index{0});
  double best = 0.0;
  // Enumerate permutations of all columns; the first r entries give the injection.
  do {
    double s = 0.0;
    for (Index i = 0; i < r; ++i) s += std::max(0.0, q(i, cols[static_cast<std::size_t>(i)]));
    best = std::max(best, s);
  } while (std::next_permutation(cols.begin(), cols.end()));
  return best;
}

}  // namespace opgt
