#pragma once

// Reference computations that share no code path with the solvers they
// check: direct search over representations for the Haagerup norm,
// brute-force assignment for the matching bound, and a Nelder–Mead
// minimizer for both.

#include "opgt/linalg.hpp"
#include "opgt/opspace.hpp"

#include <functional>

namespace opgt {

struct NelderMeadResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f, const RealVector& x0,
                             double step, int max_iters = 4000, double tol = 1e-14);

/// ‖w‖_h for a representation of length ≤ 2 with independent factors, by
/// minimizing row(γa)·col(bγ^{-1}) over lower-triangular γ = [[1,0],[z,d]]:
/// a 17³ grid over (Re z, Im z, log d) followed by Nelder–Mead restarts.
double haagerup_oracle(const TensorRep& w);

/// max_σ Σ_i p_{i σ(i)} over injections of the shorter side, by enumeration
/// (at most 9 on the shorter side).
double brute_force_matching(const RealMatrix& p);

}  // namespace opgt
