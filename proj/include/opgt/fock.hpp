#pragma once

// Truncated full Fock space over a 2m-letter alphabet {e_1..e_m, e'_1..e'_m}
// with words of length ≤ D as basis. Letters 0..m−1 are e_i, letters
// m..2m−1 are e'_i. Creation operators send words of length D to zero.

#include "opgt/gtforms.hpp"
#include "opgt/linalg.hpp"
#include "opgt/opspace.hpp"

#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace opgt {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

class FockSpace {
 public:
  FockSpace(Index m, Index cutoff);

  Index letters() const { return m_; }
  Index alphabet() const { return 2 * m_; }
  Index cutoff() const { return cutoff_; }
  Index dim() const { return offsets_.back(); }
  Index vacuum() const { return 0; }
  /// Number of basis words of length ≤ k (words are ordered by length).
  Index dim_up_to(Index k) const;

  Index index_of(const std::vector<Index>& word) const;
  std::vector<Index> word_of(Index index) const;
  Index degree_of(Index index) const;
  std::string word_string(Index index) const;

  Index primed(Index i) const { return m_ + i; }

 private:
  Index m_;
  Index cutoff_;
  std::vector<Index> offsets_;  // offsets_[k] = number of words of length < k
};

enum class FockTag { kLeftCreation, kRightCreation, kCircular, kDualCircular };

struct FockOperator {
  SparseMatrix op;
  FockTag tag;
};

FockOperator left_creation(const FockSpace& fs, Index letter);
FockOperator right_creation(const FockSpace& fs, Index letter);
/// c_i(λ) = λ^{1/2} ℓ(e_i) + λ^{-1/2} ℓ(e'_i)*
FockOperator circular(const FockSpace& fs, Index i, double lambda);
/// d_i(λ) = λ^{1/2} r(e'_i) + λ^{-1/2} r(e_i)*
FockOperator dual_circular(const FockSpace& fs, Index i, double lambda);

struct CommutationResidual {
  double projected = 0.0;    // max ‖[x_i, y_j] P‖, ‖[x_i*, y_j] P‖ with P onto length ≤ D−2
  double unprojected = 0.0;  // same without P
};

/// Residuals are Frobenius norms, which dominate operator norms.
CommutationResidual check_double_commutation(const FockSpace& fs, const std::vector<double>& lambdas);

/// ⟨x_i y_j Ω, Ω⟩.
Complex vacuum_pairing(const FockSpace& fs, Index i, Index j, const std::vector<double>& lambdas);

struct CircularBound {
  double lhs = 0.0;  // ‖Σ a_i ⊗ x_i‖ on the truncated space
  double rhs = 0.0;  // ‖Σ λ_i a_i* a_i‖^{1/2} + ‖Σ λ_i^{-1} a_i a_i*‖^{1/2}
  bool holds = false;
};

/// kRow side uses the circular family x_i, kCol side the dual family y_i.
CircularBound circular_sum_bound(const FockSpace& fs, const std::vector<ComplexMatrix>& a,
                                 const std::vector<double>& lambdas, Side side);

struct ChainReport {
  Complex direct_sum;        // Σ U(a_i, b_i)
  Complex vacuum_value;      // ⟨T Ω, Ω⟩ with T = Σ_ij U(a_i, b_j) x_i y_j
  double step1_error = 0.0;  // |direct − vacuum|
  double compressed_norm = 0.0;  // ‖P_D T P_D‖
  double step2_ratio = 0.0;  // |⟨TΩ,Ω⟩| / ‖P_D T P_D‖
  double rhs = 0.0;          // C·jcb·(weighted row/column bound)
  double step3_ratio = 0.0;  // ‖P_D T P_D‖ / rhs
  double final_ratio = 0.0;  // |Σ U(a_i,b_i)| / rhs
  double x_norm = 0.0;       // ‖Σ a_i ⊗ x_i‖ truncated
  double y_norm = 0.0;       // ‖Σ b_i ⊗ y_i‖ truncated
  bool pass = false;
};

/// Reproduces the vacuum-expectation argument: m = number of pairs, words
/// up to length D + 2 so that x_i y_j is exact on lengths ≤ D.
ChainReport verify_embedding_chain(const BilinearForm& u, const TensorRep& pairs,
                                   const std::vector<double>& lambdas, Index D, double jcb_est);

/// Operator norm of a sparse matrix through the spectrum of X*X.
double sparse_op_norm(const SparseMatrix& x);

}  // namespace opgt
