#include <doctest.h>

#include "opgt/ohmaps.hpp"
#include "opgt/random.hpp"

#include <algorithm>
#include <cmath>

using namespace opgt;

namespace {

ComplexMatrix random_state(std::uint64_t seed, Index n) {
  Rng rng(seed);
  return rng.density(n);
}

}  // namespace

TEST_SUITE("ohmaps") {
  TEST_CASE("coordinate functional reads one entry") {
    const OHMap u = coordinate_functional(2, 0, 1);
    Rng rng(1);
    const ComplexMatrix x = rng.gaussian(2, 2);
    REQUIRE(u.target_dim() == 1);
    CHECK(std::abs(u.apply(x)(0) - x(0, 1)) < 1e-14);
    CHECK_THROWS_AS(coordinate_functional(2, 2, 0), ValueError);
  }

  TEST_CASE("coordinate functional is certified with K = 1") {
    const OHMap u = coordinate_functional(2, 0, 0);
    const OHStateResult r = find_oh_state(u, 1.0);
    CHECK(r.status == SolveStatus::kFeasible);
    CHECK(max_oh_violation(u, r.cert, 2000, 4) <= 1e-6);
    const OHConverse c = oh_converse_bound(u, r.cert, 2000, 1);
    CHECK(c.consistent);
    CHECK(c.jcb_estimate == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("zero map is feasible at any constant") {
    const OHMap u(OperatorSpace::full(2), ComplexMatrix::Zero(2, 4));
    const OHStateResult r = find_oh_state(u, 0.5);
    CHECK(r.status == SolveStatus::kFeasible);
    CHECK(oh_converse_bound(u, r.cert, 100, 1).bound == 0.0);
  }

  TEST_CASE("state-weighted maps satisfy the inequality with K = 1") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const ComplexMatrix f = random_state(s, 3);
      const OHMap u = state_weighted_map(f);
      const OHCertificate cert{f, 1.0};
      CHECK(max_oh_violation(u, cert, 2000, s) <= 1e-10);
    }
  }

  TEST_CASE("random map: certificate at 2^{9/4}·cb bound, infeasible far below") {
    const OHMap u = random_oh_map(OperatorSpace::full(2), 2, 7);
    const double cb = oh_cb_bound(u);
    CHECK(cb > 0.0);
    const double K = std::pow(2.0, 2.25) * cb;
    const OHStateResult r = find_oh_state(u, K);
    CHECK(r.status == SolveStatus::kFeasible);
    CHECK(max_oh_violation(u, r.cert, 5000, 8) <= 1e-5);
    const OHConverse c = oh_converse_bound(u, r.cert, 5000, 2);
    CHECK(c.consistent);
    CHECK(c.jcb_estimate <= K + 1e-5);
    const OHStateResult small = find_oh_state(u, 0.3 * cb);
    CHECK(small.status == SolveStatus::kInfeasible);
    CHECK(small.min_constant >= 0.3 * cb);
  }

  TEST_CASE("scaling a map scales the minimal constant") {
    const OHMap u = random_oh_map(OperatorSpace::full(2), 1, 9);
    CHECK(oh_cb_bound(u.scaled(3.0)) == doctest::Approx(3.0 * oh_cb_bound(u)).epsilon(1e-5));
  }

  TEST_CASE("interpolation split partitions index pairs") {
    RealVector lam(4);
    lam << 1.0, 2.0, 10.0, 100.0;
    const InterpSplit s = interp_split(lam, 3.0);
    CHECK(s.s1.size() + s.s2.size() + s.s3.size() == 16);
    CHECK(s.s2.size() == s.s3.size());
    for (const auto& [i, j] : s.s2) CHECK(lam(i) / lam(j) > 9.0);
    for (Index i = 0; i < 4; ++i) CHECK(std::find(s.s1.begin(), s.s1.end(), std::make_pair(i, i)) != s.s1.end());
    CHECK_THROWS_AS(interp_split(lam, 1.5), ValueError);
    lam(0) = 0.0;
    CHECK_THROWS_AS(interp_split(lam, 3.0), ValueError);
  }

  TEST_CASE("property: interpolation report bounds on random triples") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
      Rng rng(s);
      const Index n = 2 + static_cast<Index>(s % 3);
      const ComplexMatrix f = random_state(50 + s, n);
      const OHMap u = state_weighted_map(f);
      const ComplexMatrix x = rng.gaussian(n, n);
      const InterpReport r = interp_bound_report(u, f, 1.0, x, rng.uniform(2.0, 10.0));
      CHECK(r.algebra_holds);
      CHECK(r.tails_hold);
      CHECK(r.sizes[0] + r.sizes[1] + r.sizes[2] == static_cast<std::size_t>(n * n));
    }
  }

  TEST_CASE("uniform state head term is HS²/N") {
    const Index n = 3;
    const ComplexMatrix f = ComplexMatrix::Identity(n, n) / 3.0;
    Rng rng(2);
    const ComplexMatrix x = rng.gaussian(n, n);
    const InterpReport r = interp_bound_report(state_weighted_map(f), f, 1.0, x, 4.0);
    CHECK(r.head == doctest::Approx(x.squaredNorm() / 3.0));
    CHECK(r.sizes[1] == 0);
  }

  TEST_CASE("log bound experiment") {
    const OHMap u = coordinate_functional(2, 0, 0);
    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 0) = 2.0;
    const LogBoundReport single = log_bound_experiment(u, {x}, 1.0);
    CHECK(single.min_norm == doctest::Approx(4.0));
    CHECK(single.ratio == doctest::Approx(1.0));
    Rng rng(3);
    std::vector<ComplexMatrix> xs;
    for (int i = 0; i < 6; ++i) xs.push_back(rng.gaussian(2, 2));
    const LogBoundReport r = log_bound_experiment(u, xs, 1.0);
    CHECK(r.elementary_hold);
    CHECK(r.row <= 6.0 * r.min_norm * (1 + 1e-10));
    CHECK(r.col <= 6.0 * r.min_norm * (1 + 1e-10));
    CHECK_THROWS_AS(log_bound_experiment(u, {}, 1.0), ValueError);
  }
}
