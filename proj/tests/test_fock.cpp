#include <doctest.h>

#include "opgt/fock.hpp"
#include "opgt/gtforms.hpp"
#include "opgt/random.hpp"

#include <cmath>

using namespace opgt;

TEST_SUITE("fock") {
  TEST_CASE("words and indices round trip") {
    const FockSpace fs(2, 3);
    CHECK(fs.dim() == 1 + 4 + 16 + 64);
    CHECK(fs.dim_up_to(1) == 5);
    for (Index k = 0; k < fs.dim(); ++k) CHECK(fs.index_of(fs.word_of(k)) == k);
    CHECK(fs.word_string(fs.vacuum()) == "Ω");
    CHECK(fs.word_string(fs.index_of({0, fs.primed(1)})) == "e1e'2");
    // first letter is the most significant digit
    CHECK(fs.index_of({1, 0}) == 5 + 4);
    CHECK(fs.degree_of(fs.index_of({3, 3, 3})) == 3);
  }

  TEST_CASE("creation operators prepend and append letters") {
    const FockSpace fs(2, 2);
    const SparseMatrix l = left_creation(fs, 1).op;
    const SparseMatrix r = right_creation(fs, 2).op;
    const Index w = fs.index_of({0});
    CHECK(l.coeff(fs.index_of({1, 0}), w) == Complex(1.0));
    CHECK(r.coeff(fs.index_of({0, 2}), w) == Complex(1.0));
    // words at the cutoff are annihilated
    CHECK(l.col(fs.index_of({0, 0})).norm() == 0.0);
    // left and right creations commute below the cutoff
    const SparseMatrix c = SparseMatrix(l * r - r * l);
    CHECK(ComplexMatrix(c).leftCols(fs.dim_up_to(fs.cutoff() - 2)).norm() == 0.0);
  }

  TEST_CASE("argument errors") {
    const FockSpace fs(1, 2);
    CHECK_THROWS_AS(circular(fs, 0, 0.0), ValueError);
    CHECK_THROWS_AS(left_creation(fs, 5), ValueError);
    CHECK_THROWS_AS(check_double_commutation(FockSpace(1, 1), {1.0}), ValueError);
    CHECK_THROWS_AS(check_double_commutation(fs, {1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(fs.index_of({0, 0, 0}), DimensionError);
  }

  TEST_CASE("vacuum pairing is the identity matrix") {
    const FockSpace fs(3, 3);
    const std::vector<double> lambdas = {0.25, 1.0, 4.0};
    for (Index i = 0; i < 3; ++i) {
      for (Index j = 0; j < 3; ++j) {
        CHECK(std::abs(vacuum_pairing(fs, i, j, lambdas) - Complex(i == j ? 1.0 : 0.0)) < 1e-14);
      }
    }
  }

  TEST_CASE("x and y commute up to the cutoff but not beyond it") {
    for (Index m = 1; m <= 2; ++m) {
      const FockSpace fs(m, 3);
      const std::vector<double> lambdas(static_cast<std::size_t>(m), 2.0);
      const CommutationResidual c = check_double_commutation(fs, lambdas);
      CHECK(c.projected <= 1e-12);
      CHECK(c.unprojected > 0.1);
    }
  }

  TEST_CASE("circular sum bound on column units") {
    const FockSpace fs(2, 3);
    const std::vector<ComplexMatrix> a = {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 0)};
    const CircularBound b = circular_sum_bound(fs, a, {1.0, 1.0}, Side::kRow);
    CHECK(b.holds);
    CHECK(b.rhs == doctest::Approx(1.0 + std::sqrt(2.0)));
    CHECK(b.lhs == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("property: circular sum bound holds on random families") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
      Rng rng(s);
      const FockSpace fs(2, 3);
      const std::vector<ComplexMatrix> a = {rng.gaussian(2, 2), rng.gaussian(2, 2)};
      const std::vector<double> lambdas = {std::exp(rng.uniform(-2, 2)), std::exp(rng.uniform(-2, 2))};
      CHECK(circular_sum_bound(fs, a, lambdas, Side::kRow).holds);
      CHECK(circular_sum_bound(fs, a, lambdas, Side::kCol).holds);
    }
  }

  TEST_CASE("embedding chain on the trace form") {
    const BilinearForm u = BilinearForm::trace_form(2);
    TensorRep w;
    w.left = {matrix_unit(2, 2, 0, 1), matrix_unit(2, 2, 1, 0)};
    w.right = {matrix_unit(2, 2, 1, 0), matrix_unit(2, 2, 0, 1)};
    const ChainReport c = verify_embedding_chain(u, w, {1.0, 1.0}, 3, 2.0);
    CHECK(c.step1_error < 1e-12);
    CHECK(std::abs(c.direct_sum - Complex(2.0)) < 1e-12);
    CHECK(c.step2_ratio <= 1 + 1e-9);
    CHECK(c.final_ratio <= 1 + 1e-9);
    CHECK(c.pass);
  }

  TEST_CASE("sparse norm matches dense norm") {
    const FockSpace fs(1, 3);
    const SparseMatrix x = circular(fs, 0, 2.0).op;
    CHECK(sparse_op_norm(x) == doctest::Approx(op_norm(ComplexMatrix(x))).epsilon(1e-10));
  }
}
