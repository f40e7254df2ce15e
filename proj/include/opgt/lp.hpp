#pragma once

// Dense tableau simplex for  maximize c^T x  subject to  A x ≤ b, x ≥ 0
// with b ≥ 0, so the slack basis is a feasible start. Sizes up to a few
// hundred constraints.

#include "opgt/linalg.hpp"

namespace opgt {

struct LpResult {
  RealVector x;
  RealVector dual;  // y ≥ 0 with A^T y ≥ c and b^T y = value at optimality
  double value = 0.0;
  bool optimal = false;
  int pivots = 0;
};

LpResult simplex_maximize(const RealVector& c, const RealMatrix& a, const RealVector& b,
                          int max_pivots = 100000);

}  // namespace opgt
