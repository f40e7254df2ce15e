#include <doctest.h>

#include "opgt/gtforms.hpp"
#include "opgt/oracles.hpp"
#include "opgt/random.hpp"
#include "opgt/schur.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace opgt;

namespace {

ComplexMatrix random_phi(std::uint64_t seed, Index k, Index l) {
  Rng rng(seed);
  return rng.gaussian(k, l);
}

}  // namespace

TEST_SUITE("schur") {
  TEST_CASE("identity costs k") {
    for (Index k = 2; k <= 6; ++k) {
      const BoundedSplit s = bounded_split_optimal(ComplexMatrix::Identity(k, k));
      CHECK(s.cost == doctest::Approx(static_cast<double>(k)).epsilon(1e-10));
      CHECK(s.lp_bound == doctest::Approx(static_cast<double>(k)).epsilon(1e-10));
    }
  }

  TEST_CASE("LP value equals the brute-force maximum matching") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const Index k = 2 + static_cast<Index>(s % 4);
      const ComplexMatrix phi = random_phi(s, k, k);
      const BoundedSplit b = bounded_split_optimal(phi);
      CHECK(b.lp_bound == doctest::Approx(brute_force_matching(phi.cwiseAbs())).epsilon(1e-9));
      CHECK(b.cost == doctest::Approx(b.lp_bound).epsilon(1e-8));
      CHECK((b.a + b.b - phi).norm() < 1e-12);
      CHECK(split_cost(b.a, b.b) == doctest::Approx(b.cost));
    }
  }

  TEST_CASE("rectangular φ") {
    const ComplexMatrix phi = random_phi(7, 2, 5);
    const BoundedSplit b = bounded_split_optimal(phi);
    CHECK(b.cost == doctest::Approx(b.lp_bound).epsilon(1e-8));
    CHECK((b.a + b.b - phi).norm() < 1e-12);
  }

  TEST_CASE("rank-one dominator of the identity is k with uniform vectors") {
    const RankOneDominator d = rank_one_dominator(ComplexMatrix::Identity(3, 3));
    CHECK(d.C == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(d.x.norm() == doctest::Approx(1.0));
    CHECK((d.x.array() - 1.0 / std::sqrt(3.0)).abs().maxCoeff() < 1e-5);
  }

  TEST_CASE("zero φ dominator") {
    const RankOneDominator d = rank_one_dominator(ComplexMatrix::Zero(2, 3));
    CHECK(d.C == 0.0);
    CHECK(d.y.norm() == doctest::Approx(1.0));
  }

  TEST_CASE("property: dominator bounds entries, beats the LP, and is invariant") {
    for (std::uint64_t s = 1; s <= 6; ++s) {
      const Index k = 3 + static_cast<Index>(s % 3);
      const ComplexMatrix phi = random_phi(100 + s, k, k);
      const RankOneDominator d = rank_one_dominator(phi);
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) CHECK(std::abs(phi(i, j)) <= d.C * d.x(i) * d.y(j) * (1 + 1e-9) + 1e-12);
      CHECK(d.C >= bounded_split_optimal(phi).lp_bound * (1 - 1e-9));
      CHECK(d.gap_bound <= 1e-6 * d.C);

      std::vector<Index> perm(static_cast<std::size_t>(k));
      std::iota(perm.begin(), perm.end(), 0);
      std::rotate(perm.begin(), perm.begin() + 1, perm.end());
      ComplexMatrix permuted(k, k);
      for (Index i = 0; i < k; ++i) permuted.row(i) = phi.row(perm[static_cast<std::size_t>(i)]);
      CHECK(rank_one_dominator(permuted).C == doctest::Approx(d.C).epsilon(1e-6));
      CHECK(rank_one_dominator(Complex(0.0, 2.5) * phi).C == doctest::Approx(2.5 * d.C).epsilon(1e-6));
    }
  }

  TEST_CASE("dominator gives state certificates for the Schur form") {
    const ComplexMatrix phi = random_phi(41, 3, 3);
    const RankOneDominator d = rank_one_dominator(phi);
    StateQuadruple q;
    q.f1 = d.x.cwiseAbs2().cast<Complex>().asDiagonal();
    q.g1 = d.y.cwiseAbs2().cast<Complex>().asDiagonal();
    q.f2 = q.g2 = ComplexMatrix::Identity(3, 3) / 3.0;
    q.K = d.C * (1 + 1e-8);
    CHECK(max_state_violation(schur_form(phi), q, 3000, 2) <= 1e-9);
  }

  TEST_CASE("constructive split from dominator weights") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const ComplexMatrix phi = random_phi(200 + s, 4, 4);
      const RankOneDominator d = rank_one_dominator(phi);
      const RealVector x = d.x.cwiseAbs2(), y = d.y.cwiseAbs2();
      const BoundedSplit c = constructive_split(phi, x / x.sum(), y / y.sum(), d.C * (1 + 1e-9));
      CHECK((c.a + c.b - phi).norm() < 1e-12);
      CHECK(c.cost >= bounded_split_optimal(phi).lp_bound * (1 - 1e-9));
    }
  }

  TEST_CASE("constructive split input errors") {
    const ComplexMatrix phi = ComplexMatrix::Identity(2, 2);
    RealVector half = RealVector::Constant(2, 0.5);
    CHECK_THROWS_AS(constructive_split(phi, half, half, 1.0), ValueError);  // needs K ≥ 2
    CHECK_NOTHROW(constructive_split(phi, half, half, 2.0));
    CHECK_THROWS_AS(constructive_split(phi, RealVector::Constant(2, 1.0), half, 4.0), ValueError);
    CHECK_THROWS_AS(constructive_split(phi, RealVector::Constant(3, 1.0 / 3), half, 4.0), DimensionError);
  }

  TEST_CASE("trace-class dominating vectors") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const ComplexMatrix t = random_phi(300 + s, 3, 4);
      const TraceClassVectors v = trace_class_dominator_to_vectors(t);
      CHECK(v.trace_norm == doctest::Approx(trace_norm(t)));
      CHECK(v.X.squaredNorm() == doctest::Approx(v.trace_norm));
      CHECK(v.Y.squaredNorm() == doctest::Approx(v.trace_norm));
    }
  }

  TEST_CASE("Schur multiplier norm: identity and the easy direction") {
    CHECK(schur_trace_class_norm(ComplexMatrix::Identity(3, 3)) == doctest::Approx(3.0).epsilon(1e-8));
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const ComplexMatrix phi = random_phi(400 + s, 3, 3);
      CHECK(schur_trace_class_norm(phi) <= bounded_split_optimal(phi).cost * (1 + 1e-8));
    }
  }

  TEST_CASE("geometric mean form") {
    RealMatrix a(1, 2), b(1, 2);
    a << 4, 1;
    b << 9, 0;
    const ComplexMatrix g = geometric_mean_form(a, b);
    CHECK(g(0, 0) == Complex(6.0));
    CHECK(g(0, 1) == Complex(0.0));
    a(0, 1) = -1;
    CHECK_THROWS_AS(geometric_mean_form(a, b), ValueError);
  }

  TEST_CASE("averaging projection") {
    const ComplexMatrix phi = random_phi(51, 3, 3);
    CHECK((averaging_projection(schur_form(phi)) - phi).norm() < 1e-12);
    const ComplexMatrix psi = averaging_projection(BilinearForm::trace_form(2));
    CHECK((psi - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
    JcbOptions opt;
    opt.restarts = 4;
    const double before = jcb_norm_estimate(BilinearForm::trace_form(2), opt).value;
    const double after = jcb_norm_estimate(schur_form(psi), opt).value;
    CHECK(after <= before * (1 + 1e-3));
    CHECK_THROWS_AS(schur_form(ComplexMatrix::Zero(2, 3)), DimensionError);
  }

  TEST_CASE("inverse-square profile grows past the LP cost") {
    const auto rows = schur_profile(inverse_square_rows, 1, 8);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].ratio == doctest::Approx(1.0));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].dominator > rows[i - 1].dominator);
      CHECK(rows[i].lp_cost <= 1.65);
    }
  }
}
