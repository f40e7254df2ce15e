#pragma once

#include "opgt/linalg.hpp"

#include <cstdint>
#include <random>

namespace opgt {

/// splitmix64 mixing step; used to derive independent per-restart seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  Complex complex_normal();
  std::uint64_t next_u64() { return engine_(); }

  ComplexMatrix gaussian(Index rows, Index cols);
  RealVector gaussian_real(Index n);
  /// Gaussian matrix scaled to operator norm one.
  ComplexMatrix unit_ball(Index rows, Index cols);
  /// Gaussian matrix scaled to operator norm uniform in [0, 1].
  ComplexMatrix contraction(Index rows, Index cols);
  /// Random density matrix (Wishart, trace one).
  ComplexMatrix density(Index n);
  ComplexMatrix unitary(Index n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace opgt
