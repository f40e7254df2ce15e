#pragma once

// Shared LMI pieces for programs that certify cb norms of bilinear forms.

#include "opgt/conic.hpp"
#include "opgt/opspace.hpp"

#include <utility>
#include <vector>

namespace opgt::detail {

/// A real variable moving the coefficient matrix in direction `dir`.
struct CoeffTerm {
  Index var;
  ComplexMatrix dir;
};

/// Adds ρ ⪰ 0 for a Hermitian variable.
inline void add_psd_block(ConicBuilder& b, const HermitianVar& v) {
  const std::size_t blk = b.add_block(ComplexMatrix::Zero(v.n, v.n));
  b.add_hermitian_terms(blk, v, [](const ComplexMatrix& e) -> ComplexMatrix { return e; });
}

/// Adds [[row_gram(L, ρ)^T, M], [M^H, col_gram(R, σ)]] ⪰ 0 where
/// M = constant + Σ x_var · dir.
void add_cb_block(ConicBuilder& b, const OperatorSpace& left, const OperatorSpace& right,
                  const HermitianVar& rho, const HermitianVar& sigma,
                  const ComplexMatrix& constant, const std::vector<CoeffTerm>& terms);

/// Smallest t with [[t·row_gram(L, I)^T, M], [M^H, t·col_gram(R, I)]] ≻ 0,
/// times a safety factor.
double identity_scale(const OperatorSpace& left, const OperatorSpace& right,
                      const ComplexMatrix& m);

}  // namespace opgt::detail
