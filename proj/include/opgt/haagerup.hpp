#pragma once

#include "opgt/conic.hpp"
#include "opgt/opspace.hpp"

namespace opgt {

struct HaagerupOptions {
  double rel_gap = 1e-10;
  int max_outer = 200;
  double rank_cutoff = 1e-10;  // relative to the largest singular value
};

struct HNormResult {
  double value = 0.0;        // row·col of `representation`, an upper bound
  double lower_bound = 0.0;  // certified by the barrier duality gap
  TensorRep representation;  // balanced: row quantity = col quantity
  ComplexMatrix certificate; // optimal X = γ*γ in reduced coordinates
  Index rank = 0;
  bool converged = false;
  int iterations = 0;
};

/// Minimal-length representation of w obtained from the SVD of its
/// coefficient matrix; the factors of each family are linearly independent.
TensorRep reduce_tensor(const TensorRep& w, double rank_cutoff = 1e-10);

HNormResult haagerup_norm(const TensorRep& w, const HaagerupOptions& options = {});

/// Norm of ᵗw = Σ b_i ⊗ a_i; the representation is returned in flipped
/// orientation (left factors from F).
HNormResult transposed_haagerup_norm(const TensorRep& w, const HaagerupOptions& options = {});

struct BalancedRepresentation {
  TensorRep rep;                   // â_i ⊗ b̂_i with weights λ_i
  double row_col = 0.0;            // ‖Σ â â*‖^{1/2} ‖Σ b̂* b̂‖^{1/2}
  double weighted = 0.0;           // ‖Σ λ â* â‖^{1/2} ‖Σ λ^{-1} b̂ b̂*‖^{1/2}
  double inverse_residual = 0.0;   // ‖δγ − I‖
  ComplexMatrix gamma;
  ComplexMatrix delta;
};

/// One representation with weights that realizes both ‖w‖_h (unweighted
/// row/column product) and ‖ᵗw‖_h (weighted column of the left family
/// times the inversely weighted row of the right family). Weights are
/// normalized to geometric mean one. Throws ValueError when the two
/// optimal representations are inconsistent (δγ ≠ I beyond 1e−8).
BalancedRepresentation balance_representation(const TensorRep& w, const HNormResult& h_opt,
                                              const HNormResult& t_opt);

}  // namespace opgt
