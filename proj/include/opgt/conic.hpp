#pragma once

// Log-barrier path-following solver for linear matrix inequalities over real
// variables:
//
//   minimize c^T x  subject to  F_j(x) = F_j0 + Σ_k x_k F_jk ⪰ 0  (all j),
//
// with Hermitian complex blocks. Scalar inequalities are 1×1 blocks. The
// caller supplies a strictly feasible start; no phase-one is attempted.

#include "opgt/linalg.hpp"

#include <map>
#include <vector>

namespace opgt {

struct LmiTerm {
  Index var = 0;
  ComplexMatrix mat;
};

struct LmiBlock {
  ComplexMatrix constant;
  std::vector<LmiTerm> terms;
};

struct ConicProblem {
  Index num_vars = 0;
  RealVector objective;
  std::vector<LmiBlock> blocks;

  /// Total barrier degree Σ dim F_j; the duality gap at the central point
  /// with parameter t is degree / t.
  Index degree() const;
  ComplexMatrix block_value(std::size_t j, const RealVector& x) const;
  bool strictly_feasible(const RealVector& x) const;
};

struct ConicOptions {
  double rel_gap = 1e-9;  // stop when degree/t ≤ rel_gap·max(1, |c^T x|)
  double mu = 8.0;
  int max_outer = 200;
  int max_newton = 60;
  double newton_tol = 1e-10;  // half squared Newton decrement
};

struct ConicResult {
  RealVector x;
  double value = 0.0;      // c^T x at the returned point
  double gap_bound = 0.0;  // value − optimum ≤ gap_bound
  bool converged = false;
  int outer_iterations = 0;
  int newton_steps = 0;
};

/// Hermitian n×n matrix variable stored as n² consecutive reals: the
/// diagonal, then for each i < j the real and imaginary parts of X(i,j).
struct HermitianVar {
  Index offset = 0;
  Index n = 0;
  Index count() const { return n * n; }
};

ComplexMatrix hermitian_basis(Index n, Index q);
ComplexMatrix hermitian_value(const RealVector& x, const HermitianVar& v);
void set_hermitian_value(RealVector& x, const HermitianVar& v, const ComplexMatrix& value);

class ConicBuilder {
 public:
  Index add_scalar();
  HermitianVar add_hermitian(Index n);

  std::size_t add_block(const ComplexMatrix& constant);
  void add_term(std::size_t block, Index var, const ComplexMatrix& mat);

  /// Adds the terms of X ↦ map(X) for a Hermitian variable, where map is
  /// real-linear and given by its action on single basis matrices.
  template <class Map>
  void add_hermitian_terms(std::size_t block, const HermitianVar& v, Map&& map) {
    for (Index q = 0; q < v.count(); ++q) {
      add_term(block, v.offset + q, map(hermitian_basis(v.n, q)));
    }
  }

  void set_objective(Index var, double c);
  Index num_vars() const { return num_vars_; }

  ConicProblem build() const;

 private:
  Index num_vars_ = 0;
  std::map<Index, double> objective_;
  std::vector<ComplexMatrix> constants_;
  std::vector<std::map<Index, ComplexMatrix>> terms_;
};

/// Throws ValueError if x0 is not strictly feasible.
ConicResult solve_conic(const ConicProblem& problem, const RealVector& x0,
                        const ConicOptions& options = {});

/// Maximizer of Σ log det F_j(x) (the objective is ignored). Requires a
/// bounded feasible set.
ConicResult analytic_center(const ConicProblem& problem, const RealVector& x0,
                            const ConicOptions& options = {});

}  // namespace opgt
