#include "opgt/ascent.hpp"

#include <cmath>
#include <deque>

namespace opgt {

AscentResult lbfgs_maximize(const ValueGrad& f, const RealVector& x0,
                            const AscentOptions& options) {
  AscentResult res;
  res.x = x0;
  RealVector g(x0.size());
  res.value = f(res.x, &g);
  if (!std::isfinite(res.value)) {
    return res;
  }
  std::deque<std::pair<RealVector, RealVector>> history;  // (s, y) for −f
  int quiet = 0;
  RealVector g_new(x0.size());
  for (int it = 0; it < options.max_iters; ++it) {
    res.iterations = it + 1;
    // Two-loop recursion on the minimization of −f.
    RealVector q = -g;
    std::vector<double> alpha(history.size());
    for (int k = static_cast<int>(history.size()) - 1; k >= 0; --k) {
      const auto& [s, y] = history[static_cast<std::size_t>(k)];
      alpha[static_cast<std::size_t>(k)] = s.dot(q) / y.dot(s);
      q -= alpha[static_cast<std::size_t>(k)] * y;
    }
    if (!history.empty()) {
      const auto& [s, y] = history.back();
      q *= s.dot(y) / y.dot(y);
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      const auto& [s, y] = history[k];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[k] - beta) * s;
    }
    RealVector d = -q;
    double slope = g.dot(d);
    if (!(slope > 0.0)) {
      history.clear();
      d = g;
      slope = g.squaredNorm();
    }
    if (!(slope > 0.0)) {
      break;
    }
    double step = history.empty() ? 1.0 / std::max(1.0, d.norm()) : 1.0;
    bool accepted = false;
    RealVector x_new;
    double v_new = 0.0;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = res.x + step * d;
      v_new = f(x_new, &g_new);
      if (std::isfinite(v_new) && v_new >= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      break;
    }
    const RealVector s = x_new - res.x;
    const RealVector y = g - g_new;  // gradient change of −f
    if (y.dot(s) > 1e-16 * s.norm() * y.norm()) {
      history.emplace_back(s, y);
      if (static_cast<int>(history.size()) > options.memory) {
        history.pop_front();
      }
    }
    const double gain = v_new - res.value;
    res.x = x_new;
    res.value = v_new;
    g = g_new;
    if (gain <= options.rel_tol * std::max(1.0, std::abs(res.value))) {
      if (++quiet >= 3) {
        break;
      }
    } else {
      quiet = 0;
    }
  }
  return res;
}

}  // namespace opgt
