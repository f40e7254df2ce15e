#include <doctest.h>

#include "opgt/gtforms.hpp"
#include "opgt/random.hpp"

#include <cmath>

using namespace opgt;

namespace {

BilinearForm corner_form() {
  // U(a, b) = a_00 b_00
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = 1.0;
  return BilinearForm(OperatorSpace::full(2), OperatorSpace::full(2), c);
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("trace form evaluates tr(ab) and its transpose agrees") {
    const BilinearForm u = BilinearForm::trace_form(3);
    Rng rng(1);
    const ComplexMatrix a = rng.gaussian(3, 3), b = rng.gaussian(3, 3);
    CHECK(std::abs(u.evaluate(a, b) - (a * b).trace()) < 1e-12);
    CHECK(std::abs(u.transpose().evaluate(b, a) - u.evaluate(a, b)) < 1e-12);
    TensorRep w;
    w.left = {a, b};
    w.right = {b, a};
    CHECK(std::abs(u.pairing(w) - 2.0 * (a * b).trace()) < 1e-11);
  }

  TEST_CASE("evaluation outside the space raises SpanError") {
    const OperatorSpace diag(2, {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)});
    const BilinearForm u(diag, diag, ComplexMatrix::Identity(2, 2));
    CHECK_THROWS_AS(u.evaluate(matrix_unit(2, 2, 0, 1), matrix_unit(2, 2, 0, 0)), SpanError);
    CHECK_THROWS_AS(BilinearForm(diag, diag, ComplexMatrix::Identity(3, 2)), DimensionError);
  }

  TEST_CASE("trace form on M2: cb norm 2, decomposition constant 1") {
    const BilinearForm u = BilinearForm::trace_form(2);
    const CbNormResult cb = cb_form_norm(u);
    CHECK(cb.value == doctest::Approx(2.0).epsilon(1e-6));
    const JcbEstimate j = jcb_norm_estimate(u);
    CHECK(j.value <= cb.value * (1 + 1e-6));
    CHECK(j.value >= 1.0 - 1e-9);
    const Decomposition d = decompose_form(u, 2.0);
    CHECK(d.bound == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(d.within_K);
  }

  TEST_CASE("property: jcb estimate ≤ cb norm, profile nondecreasing") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const BilinearForm u = random_form(OperatorSpace::full(2), OperatorSpace::full(2), s);
      JcbOptions opt;
      opt.seed = s;
      opt.restarts = 3;
      const JcbEstimate j = jcb_norm_estimate(u, opt);
      const CbNormResult cb = cb_form_norm(u);
      CHECK(j.value <= cb.value * (1 + 1e-6));
      CHECK(cb.lower_bound <= cb.value);
      for (std::size_t k = 1; k < j.profile.size(); ++k) CHECK(j.profile[k] >= j.profile[k - 1]);
      // states of the cb certificate are densities
      CHECK(std::abs(cb.f.trace() - Complex(1.0)) < 1e-8);
      CHECK(std::abs(cb.g.trace() - Complex(1.0)) < 1e-8);
    }
  }

  TEST_CASE("decomposition sits above the sampled dual bound and factors") {
    for (std::uint64_t s = 11; s <= 13; ++s) {
      const BilinearForm u = random_form(OperatorSpace::full(2), OperatorSpace::full(2), s);
      const Decomposition d = decompose_form(u, 100.0);
      CHECK(d.converged);
      CHECK(d.bound >= sampled_dual_bound(u, 20, s) - 1e-4);
      CHECK(d.lower_bound <= d.bound);
      CHECK((d.u + d.v - u.coeffs()).norm() < 1e-10 * u.coeffs().norm());
      const RCFactorization f = factor_through_rc(u, d);
      CHECK(f.residual < 1e-6);
      CHECK(f.bound >= d.bound * (1 - 1e-6));
    }
  }

  TEST_CASE("certifying a given split") {
    const BilinearForm u = random_form(OperatorSpace::full(2), OperatorSpace::full(2), 21);
    const Decomposition d = decomposition_from_split(u, ComplexMatrix::Zero(4, 4));
    CHECK(d.bound == doctest::Approx(cb_form_norm(u).value).epsilon(1e-6));
  }

  TEST_CASE("states: corner form needs constant 1/2") {
    const BilinearForm u = corner_form();
    const StatesResult r = find_states(u, 1.0);
    CHECK(r.status == SolveStatus::kFeasible);
    CHECK(max_state_violation(u, r.states, 2000, 3) <= 1e-6);
    const StatesResult small = find_states(u, 0.4);
    CHECK(small.status == SolveStatus::kInfeasible);
    CHECK(small.min_constant == doctest::Approx(0.5).epsilon(1e-4));
  }

  TEST_CASE("states at 2^{3/2}·jcb exist for random forms") {
    const BilinearForm u = random_form(OperatorSpace::full(2), OperatorSpace::full(2), 31);
    JcbOptions opt;
    opt.restarts = 3;
    const double jcb = jcb_norm_estimate(u, opt).value;
    const StatesResult r = find_states(u, std::pow(2.0, 1.5) * jcb);
    CHECK(r.status == SolveStatus::kFeasible);
    CHECK(max_state_violation(u, r.states, 5000, 9) <= 1e-5);
    CHECK(find_states(u, 0.1 * jcb).status == SolveStatus::kInfeasible);
  }

  TEST_CASE("sequence inequality right-hand sides") {
    std::vector<ComplexMatrix> a, b;
    for (Index i = 0; i < 2; ++i) {
      a.push_back(matrix_unit(2, 2, i, 0));
      b.push_back(matrix_unit(2, 2, 0, i));
    }
    const std::vector<double> ones(2, 1.0);
    const double expect = (col_quantity(a) + row_quantity(a)) * (col_quantity(b) + row_quantity(b));
    CHECK(rhs_weighted(a, b, ones) == doctest::Approx(expect));
    CHECK(rhs_row_col(a, b) == doctest::Approx(rhs_row_col(b, a)));
    CHECK(rhs_mixed(a, b, ones) == doctest::Approx(row_quantity(a) * col_quantity(b) +
                                                    col_quantity(a) * row_quantity(b)));
    // rescaling all weights by c moves weighted columns by √c and rows by 1/√c
    const std::vector<double> four(2, 4.0);
    const double left = 2.0 * col_quantity(a) + 0.5 * row_quantity(a);
    const double right = 2.0 * col_quantity(b) + 0.5 * row_quantity(b);
    CHECK(rhs_weighted(a, b, four) == doctest::Approx(left * right));
  }

  TEST_CASE("no counterexamples on the trace form") {
    const BilinearForm u = BilinearForm::trace_form(2);
    const double jcb = jcb_norm_estimate(u).value;
    const GtReport g = verify_gt_inequalities(u.scaled(1.0 / jcb), 1.0, 20, 5);
    CHECK_FALSE(g.counterexample);
    CHECK(g.worst_ratio_weighted <= 1 + 1e-6);
    CHECK(g.worst_ratio_row_col <= 1 + 1e-6);
  }
}
