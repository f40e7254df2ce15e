#include <doctest.h>

#include "opgt/opspace.hpp"
#include "opgt/random.hpp"

using namespace opgt;

TEST_SUITE("opspace") {
  TEST_CASE("full algebra coordinates are the entries") {
    const OperatorSpace m3 = OperatorSpace::full(3);
    CHECK(m3.dim() == 9);
    CHECK(m3.is_full_algebra());
    Rng rng(1);
    const ComplexMatrix x = rng.gaussian(3, 3);
    const ComplexVector c = m3.coordinates(x);
    CHECK((c - vec(x)).norm() < 1e-12);
    CHECK((m3.element(c) - x).norm() < 1e-12);
  }

  TEST_CASE("subspace rejects matrices outside its span") {
    const OperatorSpace diag(2, {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)});
    CHECK_FALSE(diag.is_full_algebra());
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = Complex(0, 3);
    const ComplexVector c = diag.coordinates(d);
    CHECK(std::abs(c(1) - Complex(0, 3)) < 1e-12);
    CHECK_THROWS_AS(diag.coordinates(matrix_unit(2, 2, 0, 1)), SpanError);
  }

  TEST_CASE("construction errors") {
    CHECK_THROWS_AS(OperatorSpace(2, {matrix_unit(3, 3, 0, 0)}), DimensionError);
    CHECK_THROWS_AS(OperatorSpace(2, {matrix_unit(2, 2, 0, 0), 2.0 * matrix_unit(2, 2, 0, 0)}), ValueError);
    CHECK_THROWS_AS(OperatorSpace(2, {matrix_unit(2, 2, 0, 0)}, 0.5), ValueError);
  }

  TEST_CASE("conjugate space") {
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    b(0, 1) = Complex(0, 1);
    const OperatorSpace e(2, {b});
    CHECK(e.conjugate().basis(0)(0, 1) == Complex(0, -1));
  }

  TEST_CASE("row and column quantities of matrix units") {
    // column family e_i1: Σ a a* = I, Σ a* a = n e_11
    std::vector<ComplexMatrix> col;
    for (Index i = 0; i < 3; ++i) col.push_back(matrix_unit(3, 3, i, 0));
    CHECK(row_quantity(col) == doctest::Approx(1.0));
    CHECK(col_quantity(col) == doctest::Approx(std::sqrt(3.0)));
    const std::vector<double> w = {1.0, 4.0, 9.0};
    CHECK(weighted_quantity(col, w, Side::kCol) == doctest::Approx(std::sqrt(14.0)));
    CHECK(weighted_quantity(col, w, Side::kRow) == doctest::Approx(3.0));
  }

  TEST_CASE("tensor validation and flipping") {
    TensorRep t;
    t.left = {matrix_unit(2, 2, 0, 0)};
    t.right = {matrix_unit(2, 2, 1, 1), matrix_unit(2, 2, 0, 0)};
    CHECK_THROWS_AS(t.validate(), DimensionError);
    t.right.pop_back();
    t.weights = std::vector<double>{-1.0};
    CHECK_THROWS_AS(t.validate(), ValueError);
    t.weights.reset();
    t.validate();
    const TensorRep f = t.flipped();
    CHECK(f.left[0] == t.right[0]);
    CHECK((t.kron_sum() - kron(t.left[0], t.right[0])).norm() == 0.0);
  }

  TEST_CASE("min norm of Σ e_1i ⊗ e_i1") {
    TensorRep t;
    for (Index i = 0; i < 3; ++i) {
      t.left.push_back(matrix_unit(3, 3, 0, i));
      t.right.push_back(matrix_unit(3, 3, i, 0));
    }
    CHECK(min_norm(t) == doctest::Approx(1.0));  // a partial isometry
  }

  TEST_CASE("transform_family mixes members") {
    std::vector<ComplexMatrix> ms = {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)};
    ComplexMatrix g(1, 2);
    g << 1.0, 2.0;
    const auto out = transform_family(g, ms);
    REQUIRE(out.size() == 1);
    CHECK(out[0](1, 1) == Complex(2.0));
  }
}
