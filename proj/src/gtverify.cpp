#include "opgt/gtforms.hpp"
#include "opgt/random.hpp"

#include <cmath>

namespace opgt {

namespace {

std::vector<double> inverted(const std::vector<double>& w) {
  std::vector<double> out;
  for (double x : w) out.push_back(1.0 / x);
  return out;
}

}  // namespace

double rhs_weighted(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
               const std::vector<double>& lambda) {
  const std::vector<double> inv = inverted(lambda);
  const double left = weighted_quantity(a, lambda, Side::kCol) + weighted_quantity(a, inv, Side::kRow);
  const double right = weighted_quantity(b, lambda, Side::kCol) + weighted_quantity(b, inv, Side::kRow);
  return left * right;
}

double rhs_row_col(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  return 2.0 * (row_quantity(a) * col_quantity(b) + col_quantity(a) * row_quantity(b));
}

double rhs_mixed(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
               const std::vector<double>& lambda) {
  return row_quantity(a) * col_quantity(b) +
         weighted_quantity(a, lambda, Side::kCol) * weighted_quantity(b, inverted(lambda), Side::kRow);
}

GtReport verify_gt_inequalities(const BilinearForm& u, double jcb_est, int trials,
                                std::uint64_t seed) {
  GtReport rep;
  rep.trials = trials;
  rep.C = u.left().exactness_bound() * u.right().exactness_bound();
  const double k_mixed = std::pow(2.0, 1.5) * rep.C * jcb_est;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int len = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
    std::vector<ComplexMatrix> a, b;
    std::vector<double> lambda;
    Complex lhs = 0.0;
    for (int i = 0; i < len; ++i) {
      const ComplexVector c = rng.gaussian(u.left().dim(), 1).col(0);
      const ComplexVector d = rng.gaussian(u.right().dim(), 1).col(0);
      a.push_back(u.left().element(c));
      b.push_back(u.right().element(d));
      lambda.push_back(std::exp(rng.uniform(-2.0, 2.0)));
      lhs += u.evaluate_coords(c, d);
    }
    const double mod = std::abs(lhs);
    const double r_weighted = rhs_weighted(a, b, lambda);
    const double r_row_col = rhs_row_col(a, b);
    const double r_mixed = rhs_mixed(a, b, lambda);
    auto ratio = [&](double constant, double rhs) {
      const double denom = constant * rhs;
      return denom > 0.0 ? mod / denom : (mod > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    };
    rep.worst_ratio_weighted = std::max(rep.worst_ratio_weighted, ratio(rep.C * jcb_est, r_weighted));
    rep.worst_ratio_row_col = std::max(rep.worst_ratio_row_col, ratio(rep.C * jcb_est, r_row_col));
    rep.worst_ratio_mixed = std::max(rep.worst_ratio_mixed, ratio(k_mixed, r_mixed));
    // Constant weight λ = ‖Σbb*‖^{1/2} ‖Σb*b‖^{-1/2} turns the first bound into the second.
    const double lam = row_quantity(b) / col_quantity(b);
    const double reduced = rhs_weighted(a, b, std::vector<double>(a.size(), lam));
    rep.lambda_reduction_gap = std::max(rep.lambda_reduction_gap, std::abs(reduced - r_row_col) / r_row_col);
  }
  rep.counterexample = rep.worst_ratio_weighted > 1.0 + 1e-6 || rep.worst_ratio_row_col > 1.0 + 1e-6 ||
                       rep.worst_ratio_mixed > 1.0 + 1e-6;
  return rep;
}

}  // namespace opgt
