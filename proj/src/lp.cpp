#include "opgt/lp.hpp"

#include <cmath>
#include <limits>

namespace opgt {

LpResult simplex_maximize(const RealVector& c, const RealMatrix& a, const RealVector& b, int max_pivots) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (c.size() != n || b.size() != m) throw DimensionError("simplex: inconsistent LP dimensions");
  if (m > 0 && b.minCoeff() < 0.0) throw ValueError("simplex: right-hand side must be nonnegative");

  // Rows 0..m−1 are constraints, row m is z_j − c_j. Columns: n originals,
  // m slacks, then the right-hand side.
  RealMatrix t = RealMatrix::Zero(m + 1, n + m + 1);
  t.topLeftCorner(m, n) = a;
  t.block(0, n, m, m).setIdentity();
  t.col(n + m).head(m) = b;
  t.row(m).head(n) = -c.transpose();
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  const double eps = 1e-12 * std::max({1.0, c.size() ? c.cwiseAbs().maxCoeff() : 0.0,
                                       a.size() ? a.cwiseAbs().maxCoeff() : 0.0});
  LpResult res;
  int degenerate = 0;
  while (res.pivots < max_pivots) {
    const bool bland = degenerate > 20;
    Index enter = -1;
    double best = -eps;
    for (Index j = 0; j < n + m; ++j) {
      if (t(m, j) < best) {
        enter = j;
        if (bland) break;
        best = t(m, j);
      }
    }
    if (enter < 0) {
      res.optimal = true;
      break;
    }
    Index leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) <= eps) continue;
      const double r = t(i, n + m) / t(i, enter);
      if (r < ratio - 1e-15 ||
          (r <= ratio + 1e-15 && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        ratio = std::min(ratio, r);
        leave = i;
      }
    }
    if (leave < 0) throw ValueError("simplex: LP is unbounded");
    degenerate = ratio <= 1e-15 ? degenerate + 1 : 0;
    t.row(leave) /= t(leave, enter);
    for (Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    ++res.pivots;
  }
  res.x = RealVector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) res.x(j) = t(i, n + m);
  }
  res.dual = t.row(m).segment(n, m).transpose().cwiseMax(0.0);
  res.value = c.dot(res.x);
  return res;
}

}  // namespace opgt
