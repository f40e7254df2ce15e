#include <doctest.h>

#include "opgt/ascent.hpp"
#include "opgt/conic.hpp"
#include "opgt/lp.hpp"
#include "opgt/random.hpp"

using namespace opgt;

TEST_SUITE("conic") {
  TEST_CASE("minimum s with sI ⪰ A is the top eigenvalue") {
    Rng rng(2);
    const ComplexMatrix g = rng.gaussian(4, 4);
    const ComplexMatrix a = g + g.adjoint();
    ConicBuilder b;
    const Index s = b.add_scalar();
    b.set_objective(s, 1.0);
    const auto blk = b.add_block(-a);
    b.add_term(blk, s, ComplexMatrix::Identity(4, 4));
    const ConicProblem p = b.build();
    RealVector x0(1);
    x0 << op_norm(a) + 1.0;
    const ConicResult r = solve_conic(p, x0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(max_eigenvalue(HermitianMatrix(a))).epsilon(1e-8));
    CHECK(r.gap_bound >= 0.0);
  }

  TEST_CASE("Hermitian variables: minimal trace above a fixed matrix") {
    // min tr X with X ⪰ P: optimum tr P at X = P.
    Rng rng(3);
    const ComplexMatrix g = rng.gaussian(3, 3);
    const ComplexMatrix pm = g * g.adjoint();
    ConicBuilder b;
    const HermitianVar x = b.add_hermitian(3);
    for (Index i = 0; i < 3; ++i) b.set_objective(x.offset + i, 1.0);
    const auto blk = b.add_block(-pm);
    b.add_hermitian_terms(blk, x, [](const ComplexMatrix& e) -> ComplexMatrix { return e; });
    const ConicProblem p = b.build();
    RealVector x0 = RealVector::Zero(p.num_vars);
    set_hermitian_value(x0, x, (op_norm(pm) + 1.0) * ComplexMatrix::Identity(3, 3));
    const ConicResult r = solve_conic(p, x0);
    CHECK(r.value == doctest::Approx(pm.trace().real()).epsilon(1e-8));
    CHECK((hermitian_value(r.x, x) - pm).norm() < 1e-4);
  }

  TEST_CASE("Hermitian basis round trip") {
    Rng rng(4);
    const ComplexMatrix g = rng.gaussian(3, 3);
    const ComplexMatrix h = g + g.adjoint();
    RealVector x = RealVector::Zero(9);
    const HermitianVar v{0, 3};
    set_hermitian_value(x, v, h);
    CHECK((hermitian_value(x, v) - h).norm() < 1e-14);
  }

  TEST_CASE("infeasible start is rejected") {
    ConicBuilder b;
    const Index s = b.add_scalar();
    b.set_objective(s, 1.0);
    const auto blk = b.add_block(-ComplexMatrix::Ones(1, 1));
    b.add_term(blk, s, ComplexMatrix::Ones(1, 1));
    RealVector x0(1);
    x0 << 0.5;
    CHECK_THROWS_AS(solve_conic(b.build(), x0), ValueError);
  }

  TEST_CASE("simplex on a small LP with known optimum") {
    // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3 → (3, 1), value 11
    RealMatrix a(3, 2);
    a << 1, 1, 1, 3, 1, 0;
    RealVector b(3), c(2);
    b << 4, 6, 3;
    c << 3, 2;
    const LpResult r = simplex_maximize(c, a, b);
    CHECK(r.optimal);
    CHECK(r.value == doctest::Approx(11.0));
    CHECK(b.dot(r.dual) == doctest::Approx(11.0));
    CHECK(((a.transpose() * r.dual - c).array() >= -1e-12).all());
  }

  TEST_CASE("simplex reports unbounded problems") {
    RealMatrix a(1, 2);
    a << 1, -1;
    RealVector b(1), c(2);
    b << 1;
    c << 0, 1;
    CHECK_THROWS_AS(simplex_maximize(c, a, b), ValueError);
  }

  TEST_CASE("L-BFGS finds the maximum of a concave quadratic") {
    RealVector center(3);
    center << 1, -2, 0.5;
    auto f = [&](const RealVector& x, RealVector* g) {
      const RealVector d = x - center;
      if (g) *g = -2.0 * d;
      return -d.squaredNorm();
    };
    const AscentResult r = lbfgs_maximize(f, RealVector::Zero(3));
    CHECK((r.x - center).norm() < 1e-6);
  }
}
