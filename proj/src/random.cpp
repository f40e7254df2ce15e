#include "opgt/random.hpp"

#include <cmath>

namespace opgt {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Distributions from <random> are implementation-defined across standard
// libraries, so uniform and normal draws are built from raw engine output.
double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix Rng::gaussian(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = complex_normal();
    }
  }
  return m;
}

RealVector Rng::gaussian_real(Index n) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = normal();
  }
  return v;
}

ComplexMatrix Rng::unit_ball(Index rows, Index cols) {
  ComplexMatrix m = gaussian(rows, cols);
  return m / op_norm(m);
}

ComplexMatrix Rng::contraction(Index rows, Index cols) {
  return uniform() * unit_ball(rows, cols);
}

ComplexMatrix Rng::density(Index n) {
  const ComplexMatrix g = gaussian(n, n);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ComplexMatrix Rng::unitary(Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) {
      q.col(k) *= r(k, k) / mag;
    }
  }
  return q;
}

}  // namespace opgt
