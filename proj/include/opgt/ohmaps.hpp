#pragma once

// Linear maps u: E → OH(I) from a based subspace E ⊆ M_N into ℂ^|I| with its
// Euclidean norm. Such a map is completely bounded with ‖u‖_cb ≤ K exactly
// when some state f satisfies ‖u(x)‖² ≤ K² (f(xx*) f(x*x))^{1/2} on E.

#include "opgt/gtforms.hpp"
#include "opgt/opspace.hpp"

#include <cstdint>
#include <vector>

namespace opgt {

class OHMap {
 public:
  /// action is target_dim × dim E; column k is u(basis_k).
  OHMap(OperatorSpace domain, ComplexMatrix action);

  const OperatorSpace& domain() const { return domain_; }
  const ComplexMatrix& action() const { return action_; }
  Index target_dim() const { return action_.rows(); }

  ComplexVector apply(const ComplexMatrix& x) const;
  ComplexVector apply_coords(const ComplexVector& c) const { return action_ * c; }
  OHMap scaled(Complex c) const { return OHMap(domain_, c * action_); }

  /// V(x, z) = ⟨u(x), u(z̄)⟩ on E × Ē, inner product conjugate-linear in the
  /// second slot. Coefficients Aᵀ conj(A).
  BilinearForm associated_form() const;

 private:
  OperatorSpace domain_;
  ComplexMatrix action_;
};

/// Coordinate functional x ↦ x_ij on M_n.
OHMap coordinate_functional(Index n, Index i, Index j);

/// x ↦ vec(f^{1/4} x f^{1/4}) on M_n; satisfies the state inequality with
/// state f and K = 1 by Cauchy–Schwarz.
OHMap state_weighted_map(const ComplexMatrix& f);

OHMap random_oh_map(const OperatorSpace& e, Index target_dim, std::uint64_t seed);

struct OHCertificate {
  ComplexMatrix f;  // density matrix on M_N
  double K = 0.0;
};

/// ‖u(x)‖² − K² (f(xx*) f(x*x))^{1/2}.
double oh_violation(const OHMap& u, const OHCertificate& cert, const ComplexVector& coords);
/// Worst violation over random x of operator norm one.
double max_oh_violation(const OHMap& u, const OHCertificate& cert, int samples, std::uint64_t seed);

struct OHStateOptions {
  int max_cuts = 50;
  int restarts = 16;
  std::uint64_t seed = 1;
  double violation_tol = 1e-6;
};

struct OHStateResult {
  SolveStatus status = SolveStatus::kInconclusive;
  OHCertificate cert;
  double min_constant = 0.0;  // smallest K admissible on the final cut set
  double worst_ratio = 0.0;   // largest (‖u(x)‖² / (f(xx*) f(x*x))^{1/2})^{1/2} found
  std::vector<ComplexVector> cuts;
  int rounds = 0;
};

/// Cutting planes over unnormalized ρ: minimize tr ρ subject to
/// [[ρ(xx*), s_x], [s_x, ρ(x*x)]] ⪰ 0 and s_x ≥ ‖u(x)‖² on each cut x.
/// K is admissible on the cuts iff the minimum is ≤ K². Points strictly
/// inside are taken at the analytic center; new cuts come from L-BFGS
/// ascent on the ratio.
OHStateResult find_oh_state(const OHMap& u, double K, const OHStateOptions& options = {});

/// Upper bound on ‖u‖_cb: square root of the decomposition bound of the
/// associated form.
double oh_cb_bound(const OHMap& u);

struct OHConverse {
  double bound = 0.0;         // K, an upper bound for ‖u‖_cb
  double jcb_estimate = 0.0;  // square root of the jcb estimate of the associated form
  double recheck_violation = 0.0;
  bool consistent = false;    // jcb_estimate ≤ K + 1e−5
};

/// Re-tests the certificate on fresh samples (throws ValueError above 1e−5)
/// and cross-checks it against the jcb estimate.
OHConverse oh_converse_bound(const OHMap& u, const OHCertificate& cert, int samples = 10000,
                             std::uint64_t seed = 1, const JcbOptions& jcb = {});

struct InterpSplit {
  std::vector<std::pair<Index, Index>> s1, s2, s3;
};

/// S(1): t^{-2} ≤ λ_i/λ_j ≤ t², S(2): λ_i/λ_j > t², S(3): λ_i/λ_j < t^{-2}.
InterpSplit interp_split(const RealVector& lambda, double t);

struct InterpReport {
  double t = 0.0;
  double K = 0.0;
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;  // ‖u_k(x)‖²
  double fxx = 0.0, fx_x = 0.0;          // f(xx*), f(x*x)
  double tail2_bound = 0.0;              // K² t^{-1} f(xx*)
  double tail3_bound = 0.0;              // K² t^{-1} f(x*x)
  double geo2 = 0.0, geo3 = 0.0;         // (f(yy*) f(y*y))^{1/2} for the restricted pieces
  double head = 0.0;                     // tr(f^{1/2} x f^{1/2} x*)
  double head_ratio = 0.0;               // u1 / (log t · head)
  bool algebra_holds = false;            // geo2 ≤ t^{-1} f(xx*), geo3 ≤ t^{-1} f(x*x)
  bool tails_hold = false;               // u2 ≤ tail2_bound, u3 ≤ tail3_bound
  std::size_t sizes[3] = {0, 0, 0};
};

/// Splits x along the eigenbasis of f. The domain must be all of M_N.
InterpReport interp_bound_report(const OHMap& u, const ComplexMatrix& f, double K,
                                 const ComplexMatrix& x, double t);

struct LogBoundReport {
  Index n = 0;
  double lhs = 0.0;       // Σ ‖u(x_i)‖²
  double min_norm = 0.0;  // ‖Σ x_i ⊗ x̄_i‖
  double row = 0.0;       // ‖Σ x_i x_i*‖
  double col = 0.0;       // ‖Σ x_i* x_i‖
  double sum_sq = 0.0;    // Σ ‖x_i‖²
  double ratio = 0.0;     // lhs / (K² (log n + 1) min_norm)
  bool elementary_hold = false;
};

LogBoundReport log_bound_experiment(const OHMap& u, const std::vector<ComplexMatrix>& xs, double K);

}  // namespace opgt
