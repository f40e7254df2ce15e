#pragma once

#include "opgt/linalg.hpp"

#include <functional>

namespace opgt {

/// Returns f(x); when grad is non-null also writes ∇f(x).
using ValueGrad = std::function<double(const RealVector& x, RealVector* grad)>;

struct AscentOptions {
  int max_iters = 400;
  int memory = 8;
  double rel_tol = 1e-12;  // stop after repeated relative improvement below this
};

struct AscentResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
};

/// Limited-memory BFGS ascent with backtracking. Every accepted step
/// increases f, so the result is at least f(x0).
AscentResult lbfgs_maximize(const ValueGrad& f, const RealVector& x0,
                            const AscentOptions& options = {});

}  // namespace opgt
