#include <doctest.h>

#include "opgt/haagerup.hpp"
#include "opgt/oracles.hpp"
#include "opgt/random.hpp"

using namespace opgt;

namespace {

TensorRep random_tensor(std::uint64_t seed, std::size_t terms, Index n) {
  Rng rng(seed);
  TensorRep t;
  for (std::size_t i = 0; i < terms; ++i) {
    t.left.push_back(rng.gaussian(n, n));
    t.right.push_back(rng.gaussian(n, n));
  }
  return t;
}

double rep_bound(const TensorRep& t) { return row_quantity(t.left) * col_quantity(t.right); }

}  // namespace

TEST_SUITE("haagerup") {
  TEST_CASE("rank one tensor has norm ‖a‖‖b‖") {
    TensorRep t;
    t.left = {2.0 * matrix_unit(2, 2, 0, 0)};
    t.right = {3.0 * matrix_unit(2, 2, 0, 1)};
    const HNormResult h = haagerup_norm(t);
    CHECK(h.value == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(h.lower_bound <= h.value + 1e-12);
    CHECK(h.rank == 1);
  }

  TEST_CASE("column-row units: norm 1, transposed norm n") {
    TensorRep t;
    for (Index i = 0; i < 2; ++i) {
      t.left.push_back(matrix_unit(2, 2, i, 0));
      t.right.push_back(matrix_unit(2, 2, 0, i));
    }
    CHECK(haagerup_norm(t).value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(transposed_haagerup_norm(t).value == doctest::Approx(2.0).epsilon(1e-7));
  }

  TEST_CASE("agrees with the direct search oracle on short tensors") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const TensorRep t = random_tensor(100 + s, 1 + s % 2, 2);
      const double h = haagerup_norm(t).value;
      CHECK(h == doctest::Approx(haagerup_oracle(t)).epsilon(1e-4));
    }
  }

  TEST_CASE("property: min norm ≤ h ≤ any representation bound, homogeneous") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
      const TensorRep t = random_tensor(200 + s, 2 + s % 3, 2 + s % 2);
      const HNormResult h = haagerup_norm(t);
      CHECK(h.converged);
      CHECK(min_norm(t) <= h.value * (1 + 1e-8));
      CHECK(h.value <= rep_bound(t) * (1 + 1e-8));
      CHECK(rep_bound(h.representation) == doctest::Approx(h.value).epsilon(1e-8));
      CHECK((h.representation.kron_sum() - t.kron_sum()).norm() < 1e-8 * t.kron_sum().norm());
      TensorRep scaled = t;
      for (auto& a : scaled.left) a *= Complex(0.0, 3.0);
      CHECK(haagerup_norm(scaled).value == doctest::Approx(3.0 * h.value).epsilon(1e-7));
    }
  }

  TEST_CASE("balanced representation realizes both norms") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const TensorRep t = random_tensor(300 + s, 3, 2);
      const HNormResult h = haagerup_norm(t);
      const HNormResult tt = transposed_haagerup_norm(t);
      const BalancedRepresentation b = balance_representation(t, h, tt);
      CHECK(b.row_col == doctest::Approx(h.value).epsilon(1e-4));
      CHECK(b.weighted == doctest::Approx(tt.value).epsilon(1e-4));
      CHECK(b.inverse_residual < 1e-8);
      TensorRep plain = b.rep;
      plain.weights.reset();
      CHECK((plain.kron_sum() - t.kron_sum()).norm() < 1e-7 * t.kron_sum().norm());
    }
  }

  TEST_CASE("reduction removes dependent terms") {
    TensorRep t = random_tensor(5, 1, 2);
    t.left.push_back(2.0 * t.left[0]);
    t.right.push_back(t.right[0]);
    const TensorRep r = reduce_tensor(t);
    CHECK(r.size() == 1);
    CHECK((r.kron_sum() - t.kron_sum()).norm() < 1e-10);
  }

  TEST_CASE("zero tensor") {
    TensorRep t;
    t.left = {ComplexMatrix::Zero(2, 2)};
    t.right = {ComplexMatrix::Zero(2, 2)};
    CHECK(haagerup_norm(t).value == 0.0);
  }
}
