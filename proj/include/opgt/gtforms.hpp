#pragma once

// Bilinear forms U: E × F → ℂ on based operator spaces, their jcb and cb
// norms, state certificates, decompositions into a cb part and a
// transposed-cb part, and row ⊕ column factorizations.

#include "opgt/conic.hpp"
#include "opgt/opspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opgt {

class BilinearForm {
 public:
  BilinearForm(OperatorSpace left, OperatorSpace right, ComplexMatrix coeffs);

  /// U(a, b) = tr(ab) on M_n × M_n.
  static BilinearForm trace_form(Index n);

  const OperatorSpace& left() const { return left_; }
  const OperatorSpace& right() const { return right_; }
  const ComplexMatrix& coeffs() const { return coeffs_; }

  /// Throws SpanError when a or b is outside its space.
  Complex evaluate(const ComplexMatrix& a, const ComplexMatrix& b) const;
  Complex evaluate_coords(const ComplexVector& c, const ComplexVector& d) const;

  /// ᵗU(b, a) = U(a, b) on F × E.
  BilinearForm transpose() const;
  BilinearForm with_coeffs(const ComplexMatrix& coeffs) const;
  BilinearForm scaled(Complex c) const { return with_coeffs(c * coeffs_); }

  /// ⟨U, w⟩ = Σ U(a_i, b_i).
  Complex pairing(const TensorRep& w) const;

  bool is_zero() const { return coeffs_.cwiseAbs().maxCoeff() == 0.0; }

 private:
  OperatorSpace left_;
  OperatorSpace right_;
  ComplexMatrix coeffs_;
};

/// Random form with Gaussian coefficients.
BilinearForm random_form(const OperatorSpace& e, const OperatorSpace& f, std::uint64_t seed);

// ---------------------------------------------------------------- jcb

struct JcbOptions {
  Index amp = 0;  // 0 selects N_E · N_F
  int restarts = 8;
  std::uint64_t seed = 1;
  int max_iters = 300;
};

struct JcbEstimate {
  double value = 0.0;           // best ratio found: a lower bound for ‖U‖_jcb
  std::vector<double> profile;  // best value at amplification 1..amp
  Index amp = 0;
  std::vector<ComplexMatrix> witness_x;  // x_k ∈ M_amp
  std::vector<ComplexMatrix> witness_y;  // y_l ∈ M_amp
};

/// Ratio ‖Σ U_kl x_k ⊗ y_l‖ / (‖Σ E_k ⊗ x_k‖ ‖Σ F_l ⊗ y_l‖), 0 when a
/// denominator vanishes.
double jcb_ratio(const BilinearForm& u, const std::vector<ComplexMatrix>& x,
                 const std::vector<ComplexMatrix>& y);

/// Seeded multi-start ascent on jcb_ratio at each amplification level,
/// warm-started from the previous level so the profile is nondecreasing.
JcbEstimate jcb_norm_estimate(const BilinearForm& u, const JcbOptions& options = {});

// ---------------------------------------------------------------- cb norm

struct CbNormResult {
  double value = 0.0;        // certified upper bound (trace of the certificate)
  double lower_bound = 0.0;  // value minus the barrier duality gap
  ComplexMatrix f;           // state on the ambient algebra of E
  ComplexMatrix g;           // state on the ambient algebra of F
  bool converged = false;
};

/// Gram-type matrices relating states to coefficient vectors c of a = Σ c_k E_k:
///   c^H row_gram(E, ρ) c = tr(ρ a a*),  c^H col_gram(E, ρ) c = tr(ρ a* a).
ComplexMatrix row_gram(const OperatorSpace& e, const ComplexMatrix& rho);
ComplexMatrix col_gram(const OperatorSpace& e, const ComplexMatrix& rho);

/// ‖U‖_cb = min over states f, g of the best c with
/// |U(a,b)| ≤ c·f(aa*)^{1/2} g(b*b)^{1/2}, solved as one SDP.
CbNormResult cb_form_norm(const BilinearForm& u, double rel_gap = 1e-9);

// ---------------------------------------------------------------- states

struct TestPair {
  ComplexVector c;  // coordinates in E
  ComplexVector d;  // coordinates in F
};

struct StateQuadruple {
  ComplexMatrix f1, f2;  // on the ambient algebra of E
  ComplexMatrix g1, g2;  // on the ambient algebra of F
  double K = 0.0;
  std::vector<TestPair> cuts;  // pairs on which the certificate was enforced
};

/// |U(a,b)| − K[(f1(aa*)g1(b*b))^{1/2} + (f2(a*a)g2(bb*))^{1/2}] for a pair.
double state_violation(const BilinearForm& u, const StateQuadruple& s, const TestPair& p);

/// Worst violation over `samples` random pairs normalized to operator norm one.
double max_state_violation(const BilinearForm& u, const StateQuadruple& s, int samples,
                           std::uint64_t seed);

enum class SolveStatus { kFeasible, kInfeasible, kInconclusive };
std::string to_string(SolveStatus s);

struct StatesOptions {
  int max_cuts = 50;
  int restarts = 16;
  std::uint64_t seed = 1;
  double violation_tol = 1e-6;
};

struct StatesResult {
  SolveStatus status = SolveStatus::kInconclusive;
  StateQuadruple states;     // best states found (valid on every cut)
  double min_constant = 0.0; // smallest K admissible on the final cut set
  double worst_ratio = 0.0;  // largest separation ratio found at the end
  int rounds = 0;
};

StatesResult find_states(const BilinearForm& u, double K, const StatesOptions& options = {});

// ---------------------------------------------------------------- decomposition

/// Certificate that a form has cb norm ≤ (tr ρ + tr σ)/2: the block matrix
/// [[row_gram(E,ρ)^T, U], [U^H, col_gram(F,σ)]] is PSD. ρ, σ are unnormalized.
struct CbCertificate {
  ComplexMatrix rho;
  ComplexMatrix sigma;
  double bound() const;
};

struct Decomposition {
  ComplexMatrix u;  // coefficients of the cb piece
  ComplexMatrix v;  // coefficients of the piece whose transpose is cb
  double bound = 0.0;       // max of the two certified piece norms
  double lower_bound = 0.0; // duality-gap lower bound for the optimal max
  CbCertificate u_cert;     // for u on E × F
  CbCertificate v_cert;     // for ᵗv on F × E (rho on F's algebra, sigma on E's)
  bool within_K = false;
  bool converged = false;
};

/// Minimizes max(‖u‖_cb, ‖ᵗv‖_cb) over U = u + v in one SDP. `within_K`
/// records bound ≤ K(1 + 1e−4).
Decomposition decompose_form(const BilinearForm& u, double K, double rel_gap = 1e-9);

/// Certifies a given split U = (U − v) + v by solving both cb programs.
Decomposition decomposition_from_split(const BilinearForm& u, const ComplexMatrix& v);

/// sup over the sampled tensors of |⟨U, w⟩| / (‖w‖_h + ‖ᵗw‖_h), including
/// w = Σ conj(U_kl) E_k ⊗ F_l.
double sampled_dual_bound(const BilinearForm& u, int samples, std::uint64_t seed);

// ---------------------------------------------------------------- factorization

struct RCFactorization {
  Index dim_r = 0;
  Index dim_c = 0;
  ComplexMatrix v_map;  // (dim_r + dim_c) × dim E, rows ordered row part first
  ComplexMatrix w_map;  // dim F × (dim_r + dim_c)
  double bound = 0.0;   // ‖v‖_cb ‖w‖_cb ≤ bound
  double residual = 0.0; // ‖w∘v − ũ‖_F / ‖ũ‖_F (absolute when ũ = 0)
};

/// ũ: E → F* has coefficient matrix U^T; builds w_map·v_map = U^T from the
/// piece certificates of `dec`.
RCFactorization factor_through_rc(const BilinearForm& u, const Decomposition& dec);

// ---------------------------------------------------------------- inequalities

struct GtReport {
  double worst_ratio_weighted = 0.0;
  double worst_ratio_row_col = 0.0;
  double worst_ratio_mixed = 0.0;
  double lambda_reduction_gap = 0.0;  // max relative gap between the bounds
  bool counterexample = false;
  int trials = 0;
  double C = 1.0;
};

/// Random sequences (a_i, b_i) and weights λ_i tested against the three
/// inequalities with constants C, 2C and 2^{3/2}C times jcb_est.
GtReport verify_gt_inequalities(const BilinearForm& u, double jcb_est, int trials,
                                std::uint64_t seed);

/// Right-hand sides for a given sequence.
double rhs_weighted(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
               const std::vector<double>& lambda);
double rhs_row_col(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b);
double rhs_mixed(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
               const std::vector<double>& lambda);

}  // namespace opgt
