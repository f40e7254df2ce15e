#include "opgt/fock.hpp"

#include <cmath>

namespace opgt {

FockSpace::FockSpace(Index m, Index cutoff) : m_(m), cutoff_(cutoff) {
  if (m < 1) throw ValueError("Fock space needs at least one letter pair");
  if (cutoff < 0) throw ValueError("Fock cutoff must be nonnegative");
  offsets_.push_back(0);
  Index count = 1;
  for (Index k = 0; k <= cutoff; ++k) {
    offsets_.push_back(offsets_.back() + count);
    count *= 2 * m;
  }
}

Index FockSpace::dim_up_to(Index k) const {
  if (k < 0) return 0;
  return offsets_[static_cast<std::size_t>(std::min(k, cutoff_) + 1)];
}

Index FockSpace::index_of(const std::vector<Index>& word) const {
  const Index len = static_cast<Index>(word.size());
  if (len > cutoff_) throw DimensionError("word longer than the cutoff");
  Index rank = 0;
  for (Index letter : word) {
    if (letter < 0 || letter >= alphabet()) throw ValueError("unknown letter " + std::to_string(letter));
    rank = rank * alphabet() + letter;
  }
  return offsets_[static_cast<std::size_t>(len)] + rank;
}

Index FockSpace::degree_of(Index index) const {
  if (index < 0 || index >= dim()) throw DimensionError("Fock index out of range");
  Index k = 0;
  while (offsets_[static_cast<std::size_t>(k + 1)] <= index) ++k;
  return k;
}

std::vector<Index> FockSpace::word_of(Index index) const {
  const Index len = degree_of(index);
  Index rank = index - offsets_[static_cast<std::size_t>(len)];
  std::vector<Index> word(static_cast<std::size_t>(len));
  for (Index p = len - 1; p >= 0; --p) {
    word[static_cast<std::size_t>(p)] = rank % alphabet();
    rank /= alphabet();
  }
  return word;
}

std::string FockSpace::word_string(Index index) const {
  const auto w = word_of(index);
  if (w.empty()) return "Ω";
  std::string s;
  for (Index l : w) {
    s += l < m_ ? "e" + std::to_string(l + 1) : "e'" + std::to_string(l - m_ + 1);
  }
  return s;
}

namespace {

FockOperator creation(const FockSpace& fs, Index letter, bool left) {
  if (letter < 0 || letter >= fs.alphabet()) {
    throw ValueError("unknown letter " + std::to_string(letter));
  }
  const Index n = fs.dim();
  const Index base = fs.alphabet();
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Index len = 0; len < fs.cutoff(); ++len) {
    const Index start = fs.dim_up_to(len - 1);
    const Index count = fs.dim_up_to(len) - start;
    const Index target_start = fs.dim_up_to(len);
    Index power = 1;
    for (Index k = 0; k < len; ++k) power *= base;
    for (Index r = 0; r < count; ++r) {
      const Index target = left ? target_start + letter * power + r : target_start + r * base + letter;
      trip.emplace_back(target, start + r, 1.0);
    }
  }
  FockOperator out{SparseMatrix(n, n), left ? FockTag::kLeftCreation : FockTag::kRightCreation};
  out.op.setFromTriplets(trip.begin(), trip.end());
  return out;
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw ValueError("λ must be positive");
}

void check_index(const FockSpace& fs, Index i) {
  if (i < 0 || i >= fs.letters()) throw ValueError("circular index out of range");
}

double frobenius(const SparseMatrix& x) { return x.norm(); }

}  // namespace

FockOperator left_creation(const FockSpace& fs, Index letter) { return creation(fs, letter, true); }
FockOperator right_creation(const FockSpace& fs, Index letter) { return creation(fs, letter, false); }

FockOperator circular(const FockSpace& fs, Index i, double lambda) {
  check_lambda(lambda);
  check_index(fs, i);
  const SparseMatrix l = left_creation(fs, i).op;
  const SparseMatrix lp = left_creation(fs, fs.primed(i)).op;
  SparseMatrix out = std::sqrt(lambda) * l + (1.0 / std::sqrt(lambda)) * SparseMatrix(lp.adjoint());
  return {out, FockTag::kCircular};
}

FockOperator dual_circular(const FockSpace& fs, Index i, double lambda) {
  check_lambda(lambda);
  check_index(fs, i);
  const SparseMatrix rp = right_creation(fs, fs.primed(i)).op;
  const SparseMatrix r = right_creation(fs, i).op;
  SparseMatrix out = std::sqrt(lambda) * rp + (1.0 / std::sqrt(lambda)) * SparseMatrix(r.adjoint());
  return {out, FockTag::kDualCircular};
}

CommutationResidual check_double_commutation(const FockSpace& fs, const std::vector<double>& lambdas) {
  if (fs.cutoff() < 2) throw ValueError("double commutation check needs cutoff D ≥ 2");
  if (static_cast<Index>(lambdas.size()) != fs.letters()) {
    throw DimensionError("need one λ per letter pair");
  }
  const Index n = fs.dim();
  const Index low = fs.dim_up_to(fs.cutoff() - 2);
  SparseMatrix proj(n, n);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Index k = 0; k < low; ++k) trip.emplace_back(k, k, 1.0);
  proj.setFromTriplets(trip.begin(), trip.end());
  std::vector<SparseMatrix> xs, ys;
  for (Index i = 0; i < fs.letters(); ++i) {
    xs.push_back(circular(fs, i, lambdas[static_cast<std::size_t>(i)]).op);
    ys.push_back(dual_circular(fs, i, lambdas[static_cast<std::size_t>(i)]).op);
  }
  CommutationResidual res;
  for (const auto& x : xs) {
    const SparseMatrix xa = x.adjoint();
    for (const auto& y : ys) {
      const SparseMatrix c1 = SparseMatrix(x * y) - SparseMatrix(y * x);
      const SparseMatrix c2 = SparseMatrix(xa * y) - SparseMatrix(y * xa);
      res.unprojected = std::max({res.unprojected, frobenius(c1), frobenius(c2)});
      res.projected = std::max({res.projected, frobenius(SparseMatrix(c1 * proj)),
                                frobenius(SparseMatrix(c2 * proj))});
    }
  }
  return res;
}

Complex vacuum_pairing(const FockSpace& fs, Index i, Index j, const std::vector<double>& lambdas) {
  if (fs.cutoff() < 2) throw ValueError("vacuum pairing needs cutoff D ≥ 2");
  if (static_cast<Index>(lambdas.size()) != fs.letters()) {
    throw DimensionError("need one λ per letter pair");
  }
  const SparseMatrix x = circular(fs, i, lambdas[static_cast<std::size_t>(i)]).op;
  const SparseMatrix y = dual_circular(fs, j, lambdas[static_cast<std::size_t>(j)]).op;
  ComplexVector omega = ComplexVector::Zero(fs.dim());
  omega(fs.vacuum()) = 1.0;
  const ComplexVector v = x * (y * omega);
  return v(fs.vacuum());
}

double sparse_op_norm(const SparseMatrix& x) {
  const bool wide = x.cols() > x.rows();
  const ComplexMatrix g = wide ? ComplexMatrix(x * x.adjoint()) : ComplexMatrix(x.adjoint() * x);
  if (g.size() == 0) return 0.0;
  return std::sqrt(std::max(0.0, max_eigenvalue(HermitianMatrix::symmetrized(g))));
}

namespace {

SparseMatrix sparse_kron(const ComplexMatrix& a, const SparseMatrix& x) {
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Complex(0.0)) continue;
      for (Index k = 0; k < x.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(x, k); it; ++it)
          trip.emplace_back(i * x.rows() + it.row(), j * x.cols() + it.col(), a(i, j) * it.value());
    }
  SparseMatrix out(a.rows() * x.rows(), a.cols() * x.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

double weighted_bound(const std::vector<ComplexMatrix>& a, const std::vector<double>& lambdas) {
  std::vector<double> inv;
  for (double l : lambdas) inv.push_back(1.0 / l);
  return weighted_quantity(a, lambdas, Side::kCol) + weighted_quantity(a, inv, Side::kRow);
}

}  // namespace

CircularBound circular_sum_bound(const FockSpace& fs, const std::vector<ComplexMatrix>& a,
                                 const std::vector<double>& lambdas, Side side) {
  if (a.size() != lambdas.size()) throw DimensionError("family and weights differ in length");
  if (static_cast<Index>(a.size()) > fs.letters()) {
    throw DimensionError("family longer than the number of letter pairs");
  }
  CircularBound out;
  SparseMatrix acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const SparseMatrix x = side == Side::kRow ? circular(fs, static_cast<Index>(i), lambdas[i]).op
                                              : dual_circular(fs, static_cast<Index>(i), lambdas[i]).op;
    const SparseMatrix term = sparse_kron(a[i], x);
    acc = i == 0 ? term : SparseMatrix(acc + term);
  }
  out.lhs = sparse_op_norm(acc);
  out.rhs = weighted_bound(a, lambdas);
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

ChainReport verify_embedding_chain(const BilinearForm& u, const TensorRep& pairs,
                                   const std::vector<double>& lambdas, Index D, double jcb_est) {
  pairs.validate();
  const Index m = static_cast<Index>(pairs.size());
  if (static_cast<Index>(lambdas.size()) != m) throw DimensionError("need one λ per pair");
  if (D < 1) throw ValueError("chain check needs D ≥ 1");
  const FockSpace big(m, D + 2);
  const FockSpace small(m, D);
  const Index keep = small.dim();
  ChainReport rep;
  std::vector<ComplexVector> ca, db;
  for (Index i = 0; i < m; ++i) {
    ca.push_back(u.left().coordinates(pairs.left[static_cast<std::size_t>(i)]));
    db.push_back(u.right().coordinates(pairs.right[static_cast<std::size_t>(i)]));
    rep.direct_sum += u.evaluate_coords(ca.back(), db.back());
  }
  std::vector<SparseMatrix> xs, ys;
  for (Index i = 0; i < m; ++i) {
    xs.push_back(circular(big, i, lambdas[static_cast<std::size_t>(i)]).op);
    ys.push_back(dual_circular(big, i, lambdas[static_cast<std::size_t>(i)]).op);
  }
  // Columns of length ≤ D only: y raises to D+1, x to D+2, all exact.
  SparseMatrix t(big.dim(), big.dim());
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const Complex c = u.evaluate_coords(ca[static_cast<std::size_t>(i)], db[static_cast<std::size_t>(j)]);
      if (c == Complex(0.0)) continue;
      const SparseMatrix yj = ys[static_cast<std::size_t>(j)].leftCols(keep);
      t.leftCols(keep) += c * SparseMatrix(xs[static_cast<std::size_t>(i)] * yj);
    }
  const ComplexMatrix compressed = ComplexMatrix(t).topLeftCorner(keep, keep);
  rep.vacuum_value = compressed(0, 0);
  rep.step1_error = std::abs(rep.vacuum_value - rep.direct_sum);
  rep.compressed_norm = op_norm(compressed);
  rep.step2_ratio = rep.compressed_norm > 0.0 ? std::abs(rep.vacuum_value) / rep.compressed_norm : 0.0;
  const double C = u.left().exactness_bound() * u.right().exactness_bound();
  rep.rhs = C * jcb_est * weighted_bound(pairs.left, lambdas) * weighted_bound(pairs.right, lambdas);
  rep.step3_ratio = rep.rhs > 0.0 ? rep.compressed_norm / rep.rhs : 0.0;
  rep.final_ratio = rep.rhs > 0.0 ? std::abs(rep.direct_sum) / rep.rhs : 0.0;
  rep.x_norm = circular_sum_bound(small, pairs.left, lambdas, Side::kRow).lhs;
  rep.y_norm = circular_sum_bound(small, pairs.right, lambdas, Side::kCol).lhs;
  rep.pass = rep.step1_error <= 1e-10 * std::max(1.0, std::abs(rep.direct_sum)) &&
             rep.step2_ratio <= 1.0 + 1e-12 && rep.step3_ratio <= 1.0 + 1e-6 &&
             rep.final_ratio <= 1.0 + 1e-6;
  return rep;
}

}  // namespace opgt
