#pragma once

// Schur multipliers φ acting entrywise on finite matrices, seen as maps
// from compact operators to the trace class. Bounded multipliers split as
// a + b with summable row and column suprema; completely bounded ones are
// dominated by a rank-one matrix x yᵀ.

#include "opgt/gtforms.hpp"
#include "opgt/linalg.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace opgt {

struct BoundedSplit {
  ComplexMatrix a;        // carries the row suprema
  ComplexMatrix b;        // carries the column suprema
  double row_sum = 0.0;   // Σ_i sup_j |a_ij|
  double col_sum = 0.0;   // Σ_j sup_i |b_ij|
  double cost = 0.0;      // row_sum + col_sum
  double lp_bound = 0.0;  // dual (matching) value, a lower bound on any split cost
};

/// Σ_i sup_j |a_ij| + Σ_j sup_i |b_ij|.
double split_cost(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cheapest split. On |φ| the problem reduces to min Σs + Σt over
/// s_i + t_j ≥ |φ_ij|, whose dual is a maximum-weight matching; both are
/// solved by the simplex routine and the phases of φ are put back.
BoundedSplit bounded_split_optimal(const ComplexMatrix& phi);

/// Split from weights x, y (Σx = Σy = 1) with |φ_ij| ≤ K (x_i y_j)^{1/2}:
/// after sorting both weight vectors, entries with row rank ≤ column rank
/// go to b, the rest to a. Each side then costs at most K.
BoundedSplit constructive_split(const ComplexMatrix& phi, const RealVector& x, const RealVector& y,
                                double K);

struct RankOneDominator {
  RealVector x;  // unit vector, zero on zero rows
  RealVector y;  // unit vector, zero on zero columns
  double C = 0.0;
  double gap_bound = 0.0;  // C minus the solver's lower bound
};

/// Minimal C with |φ_ij| ≤ C x_i y_j over unit x, y ≥ 0. Solved as the
/// semidefinite program min (‖x‖² + ‖y‖²)/2 with [[x_i, √|φ_ij|], [√|φ_ij|, y_j]] ⪰ 0,
/// then tightened by alternating x_i ← max_j |φ_ij|/y_j, y_j ← max_i |φ_ij|/x_i
/// until the relative improvement drops below tol.
RankOneDominator rank_one_dominator(const ComplexMatrix& phi, int iters = 100, double tol = 1e-12);

struct TraceClassVectors {
  RealVector X;
  RealVector Y;
  double trace_norm = 0.0;
};

/// X_i = (Σ_k λ_k |u_k(i)|²)^{1/2}, Y_j = (Σ_k λ_k |v_k(j)|²)^{1/2} from the SVD
/// T = Σ λ_k u_k v_k*. Throws std::logic_error if |T_ij| ≤ X_i Y_j fails.
TraceClassVectors trace_class_dominator_to_vectors(const ComplexMatrix& t);

/// φ_ij = (a_ij b_ij)^{1/2}. Throws ValueError on a negative entry.
ComplexMatrix geometric_mean_form(const RealMatrix& a, const RealMatrix& b);

/// The bilinear form (a, b) ↦ Σ φ_ij a_ij b_ij on M_k × M_k.
BilinearForm schur_form(const ComplexMatrix& phi);

/// Average of v over conjugation by diagonal unitaries: ψ_ij = v(e_ij, e_ij).
/// Both spaces must be full matrix algebras.
ComplexMatrix averaging_projection(const BilinearForm& v);

/// Lower estimate of sup |Σ φ_ij a_ij b_ij| over contractions a, b by
/// alternating trace-norm maximization from seeded random starts.
double schur_trace_class_norm(const ComplexMatrix& phi, int restarts = 8, std::uint64_t seed = 1);

struct SchurProfileRow {
  Index k = 0;
  double lp_cost = 0.0;
  double dominator = 0.0;
  double ratio = 0.0;  // dominator / lp_cost
};

/// φ_ij = 1/i² (1-based), constant along rows.
ComplexMatrix inverse_square_rows(Index k);

std::vector<SchurProfileRow> schur_profile(const std::function<ComplexMatrix(Index)>& family,
                                           Index kmin, Index kmax);

}  // namespace opgt
