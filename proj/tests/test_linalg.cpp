#include <doctest.h>

#include "opgt/linalg.hpp"
#include "opgt/random.hpp"

#include <cmath>

using namespace opgt;

namespace {

// Largest singular value by power iteration on X*X, independent of the SVD.
double power_norm(const ComplexMatrix& x) {
  ComplexVector v = ComplexVector::Ones(x.cols());
  double s = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const ComplexVector w = x.adjoint() * (x * v);
    s = std::sqrt(w.norm() / v.norm());
    v = w / w.norm();
  }
  return s;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("op_norm matches power iteration") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Rng rng(seed);
      const ComplexMatrix x = rng.gaussian(3 + seed % 3, 4);
      CHECK(op_norm(x) == doctest::Approx(power_norm(x)).epsilon(1e-8));
    }
  }

  TEST_CASE("op_norm of an empty matrix throws") {
    CHECK_THROWS_AS(op_norm(ComplexMatrix(0, 0)), DimensionError);
  }

  TEST_CASE("kron is multiplicative and norms multiply") {
    Rng rng(3);
    const ComplexMatrix a = rng.gaussian(2, 2), b = rng.gaussian(3, 3), c = rng.gaussian(2, 2), d = rng.gaussian(3, 3);
    CHECK((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm() < 1e-12);
    CHECK(op_norm(kron(a, b)) == doctest::Approx(op_norm(a) * op_norm(b)).epsilon(1e-12));
  }

  TEST_CASE("Hermitian construction rejects skew input") {
    ComplexMatrix m(2, 2);
    m << 1.0, Complex(0, 1), Complex(0, 1), 2.0;
    CHECK_THROWS_AS(HermitianMatrix{m}, ValueError);
    CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix::Zero(2, 3)}, DimensionError);
  }

  TEST_CASE("psd_sqrt squares back and project_to_density lands on states") {
    Rng rng(4);
    const ComplexMatrix g = rng.gaussian(4, 4);
    const ComplexMatrix p = g * g.adjoint();
    const ComplexMatrix r = psd_sqrt(HermitianMatrix::symmetrized(p));
    CHECK((r * r - p).norm() < 1e-10 * p.norm());

    const ComplexMatrix h = g + g.adjoint();
    const ComplexMatrix rho = project_to_density(HermitianMatrix::symmetrized(h));
    CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-12);
    CHECK(min_eigenvalue(HermitianMatrix::symmetrized(rho)) > -1e-12);
    // a density matrix is its own projection
    const ComplexMatrix d = rng.density(3);
    CHECK((project_to_density(HermitianMatrix::symmetrized(d)) - d).norm() < 1e-12);
  }

  TEST_CASE("vec is row-major and inverts unvec") {
    ComplexMatrix x(2, 3);
    x << 1, 2, 3, 4, 5, 6;
    const ComplexVector v = vec(x);
    CHECK(v(1) == Complex(2.0));
    CHECK(v(3) == Complex(4.0));
    CHECK(unvec(v, 2, 3) == x);
    CHECK_THROWS_AS(unvec(v, 4, 2), DimensionError);
  }

  TEST_CASE("trace norm dominates operator norm and equals Σσ") {
    Rng rng(5);
    const ComplexMatrix x = rng.gaussian(3, 3);
    CHECK(trace_norm(x) >= op_norm(x));
    CHECK(trace_norm(ComplexMatrix::Identity(4, 4)) == doctest::Approx(4.0));
  }

  TEST_CASE("gram sums") {
    std::vector<ComplexMatrix> ms = {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 0)};
    CHECK((gram_sum(ms, true) - ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
    CHECK((gram_sum(ms, false) - 2.0 * matrix_unit(2, 2, 0, 0)).norm() < 1e-15);
    ms.push_back(ComplexMatrix::Zero(3, 3));
    CHECK_THROWS_AS(gram_sum(ms, true), DimensionError);
  }

  TEST_CASE("derived seeds and unitaries") {
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    Rng rng(9);
    const ComplexMatrix u = rng.unitary(4);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
    Rng a(11), b(11);
    CHECK(a.gaussian(3, 3) == b.gaussian(3, 3));
    CHECK(op_norm(a.contraction(3, 3)) <= 1.0 + 1e-12);
  }
}
