#include "opgt/conic.hpp"

#include <cmath>
#include <limits>

namespace opgt {

Index ConicProblem::degree() const {
  Index d = 0;
  for (const auto& b : blocks) {
    d += b.constant.rows();
  }
  return d;
}

ComplexMatrix ConicProblem::block_value(std::size_t j, const RealVector& x) const {
  ComplexMatrix f = blocks[j].constant;
  for (const auto& term : blocks[j].terms) {
    f.noalias() += x(term.var) * term.mat;
  }
  return f;
}

bool ConicProblem::strictly_feasible(const RealVector& x) const {
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    Eigen::LLT<ComplexMatrix> llt(block_value(j, x));
    if (llt.info() != Eigen::Success) {
      return false;
    }
  }
  return true;
}

ComplexMatrix hermitian_basis(Index n, Index q) {
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  if (q < n) {
    b(q, q) = 1.0;
    return b;
  }
  Index k = q - n;
  const Index pair = k / 2;
  const bool imag = (k % 2) == 1;
  // pair enumerates i < j row by row
  Index i = 0;
  Index remaining = pair;
  while (remaining >= n - 1 - i) {
    remaining -= n - 1 - i;
    ++i;
  }
  const Index j = i + 1 + remaining;
  if (imag) {
    b(i, j) = Complex(0.0, 1.0);
    b(j, i) = Complex(0.0, -1.0);
  } else {
    b(i, j) = 1.0;
    b(j, i) = 1.0;
  }
  return b;
}

ComplexMatrix hermitian_value(const RealVector& x, const HermitianVar& v) {
  ComplexMatrix m = ComplexMatrix::Zero(v.n, v.n);
  Index q = v.offset;
  for (Index i = 0; i < v.n; ++i) {
    m(i, i) = x(q++);
  }
  for (Index i = 0; i < v.n; ++i) {
    for (Index j = i + 1; j < v.n; ++j) {
      const Complex z(x(q), x(q + 1));
      q += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

void set_hermitian_value(RealVector& x, const HermitianVar& v, const ComplexMatrix& value) {
  Index q = v.offset;
  for (Index i = 0; i < v.n; ++i) {
    x(q++) = value(i, i).real();
  }
  for (Index i = 0; i < v.n; ++i) {
    for (Index j = i + 1; j < v.n; ++j) {
      const Complex z = 0.5 * (value(i, j) + std::conj(value(j, i)));
      x(q++) = z.real();
      x(q++) = z.imag();
    }
  }
}

Index ConicBuilder::add_scalar() { return num_vars_++; }

HermitianVar ConicBuilder::add_hermitian(Index n) {
  HermitianVar v{num_vars_, n};
  num_vars_ += n * n;
  return v;
}

std::size_t ConicBuilder::add_block(const ComplexMatrix& constant) {
  if (constant.rows() != constant.cols()) {
    throw DimensionError("LMI block must be square, got " + shape_string(constant));
  }
  constants_.push_back(constant);
  terms_.emplace_back();
  return constants_.size() - 1;
}

void ConicBuilder::add_term(std::size_t block, Index var, const ComplexMatrix& mat) {
  if (!same_shape(mat, constants_.at(block))) {
    throw DimensionError("LMI term shape " + shape_string(mat) + " does not match block " +
                         shape_string(constants_[block]));
  }
  if (var < 0 || var >= num_vars_) {
    throw DimensionError("LMI term refers to unknown variable " + std::to_string(var));
  }
  auto& slot = terms_[block];
  auto it = slot.find(var);
  if (it == slot.end()) {
    slot.emplace(var, mat);
  } else {
    it->second += mat;
  }
}

void ConicBuilder::set_objective(Index var, double c) { objective_[var] = c; }

ConicProblem ConicBuilder::build() const {
  ConicProblem p;
  p.num_vars = num_vars_;
  p.objective = RealVector::Zero(num_vars_);
  for (const auto& [var, c] : objective_) {
    p.objective(var) = c;
  }
  for (std::size_t j = 0; j < constants_.size(); ++j) {
    LmiBlock b;
    b.constant = 0.5 * (constants_[j] + constants_[j].adjoint());
    for (const auto& [var, mat] : terms_[j]) {
      if (mat.cwiseAbs().maxCoeff() == 0.0) {
        continue;
      }
      b.terms.push_back({var, 0.5 * (mat + mat.adjoint())});
    }
    p.blocks.push_back(std::move(b));
  }
  return p;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// −Σ log det F_j(x), or +∞ outside the interior.
double barrier_value(const ConicProblem& p, const RealVector& x) {
  double total = 0.0;
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    Eigen::LLT<ComplexMatrix> llt(p.block_value(j, x));
    if (llt.info() != Eigen::Success) {
      return kInf;
    }
    const auto& l = llt.matrixLLT();
    for (Index i = 0; i < l.rows(); ++i) {
      const double d = l(i, i).real();
      if (!(d > 0.0)) {
        return kInf;
      }
      total -= 2.0 * std::log(d);
    }
  }
  return total;
}

// Gradient and Hessian of the barrier part.
void barrier_derivatives(const ConicProblem& p, const RealVector& x, RealVector& grad,
                         RealMatrix& hess) {
  grad.setZero(p.num_vars);
  hess.setZero(p.num_vars, p.num_vars);
  std::vector<ComplexMatrix> g;
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    const auto& block = p.blocks[j];
    const Index d = block.constant.rows();
    Eigen::LLT<ComplexMatrix> llt(p.block_value(j, x));
    const ComplexMatrix finv = llt.solve(ComplexMatrix::Identity(d, d));
    g.resize(block.terms.size());
    for (std::size_t a = 0; a < block.terms.size(); ++a) {
      g[a].noalias() = finv * block.terms[a].mat;
      grad(block.terms[a].var) -= g[a].trace().real();
    }
    for (std::size_t a = 0; a < block.terms.size(); ++a) {
      const Index va = block.terms[a].var;
      for (std::size_t b = a; b < block.terms.size(); ++b) {
        const Index vb = block.terms[b].var;
        const double h = (g[a].array() * g[b].transpose().array()).sum().real();
        hess(va, vb) += h;
        if (va != vb) {
          hess(vb, va) += h;
        }
      }
    }
  }
}

struct Centering {
  int steps = 0;
  bool stalled = false;
};

// Newton's method on t·c^T x + barrier(x), starting from an interior x.
Centering center(const ConicProblem& p, RealVector& x, double t, const ConicOptions& o) {
  Centering out;
  RealVector grad;
  RealMatrix hess;
  double phi = t * p.objective.dot(x) + barrier_value(p, x);
  for (int it = 0; it < o.max_newton; ++it) {
    barrier_derivatives(p, x, grad, hess);
    grad += t * p.objective;
    const double ridge = 1e-14 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    hess.diagonal().array() += ridge;
    Eigen::LDLT<RealMatrix> ldlt(hess);
    const RealVector dx = ldlt.solve(-grad);
    const double dec2 = -grad.dot(dx);
    ++out.steps;
    if (!(dec2 > 0.0) || 0.5 * dec2 <= o.newton_tol) {
      break;
    }
    double s = 1.0;
    bool accepted = false;
    while (s > 1e-14) {
      const RealVector trial = x + s * dx;
      const double val = t * p.objective.dot(trial) + barrier_value(p, trial);
      // Armijo with a slack for rounding in the large-t regime.
      if (val <= phi - 0.25 * s * dec2 + 1e-13 * std::abs(phi)) {
        x = trial;
        phi = val;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) {
      out.stalled = true;
      break;
    }
  }
  return out;
}

}  // namespace

ConicResult solve_conic(const ConicProblem& problem, const RealVector& x0,
                        const ConicOptions& options) {
  if (x0.size() != problem.num_vars) {
    throw DimensionError("start point has " + std::to_string(x0.size()) + " entries, problem has " +
                         std::to_string(problem.num_vars) + " variables");
  }
  if (!problem.strictly_feasible(x0)) {
    throw ValueError("conic solver start point is not strictly feasible");
  }
  const double m = static_cast<double>(problem.degree());
  ConicResult res;
  res.x = x0;
  if (problem.objective.cwiseAbs().maxCoeff() == 0.0) {
    return analytic_center(problem, x0, options);
  }
  RealVector grad;
  RealMatrix hess;
  barrier_derivatives(problem, x0, grad, hess);
  double t = std::max(1e-3, grad.norm() / problem.objective.norm());
  for (int outer = 0; outer < options.max_outer; ++outer) {
    const Centering c = center(problem, res.x, t, options);
    res.newton_steps += c.steps;
    res.outer_iterations = outer + 1;
    res.value = problem.objective.dot(res.x);
    res.gap_bound = m / t;
    if (res.gap_bound <= options.rel_gap * std::max(1.0, std::abs(res.value))) {
      res.converged = true;
      break;
    }
    if (c.stalled && res.gap_bound <= 1e3 * options.rel_gap * std::max(1.0, std::abs(res.value))) {
      // Rounding limits further progress; the bound reported is honest.
      break;
    }
    t *= options.mu;
  }
  return res;
}

ConicResult analytic_center(const ConicProblem& problem, const RealVector& x0,
                            const ConicOptions& options) {
  if (!problem.strictly_feasible(x0)) {
    throw ValueError("analytic center start point is not strictly feasible");
  }
  ConicResult res;
  res.x = x0;
  ConicOptions o = options;
  o.max_newton = std::max(o.max_newton, 200);
  const Centering c = center(problem, res.x, 0.0, o);
  res.newton_steps = c.steps;
  res.outer_iterations = 1;
  res.value = problem.objective.dot(res.x);
  res.converged = !c.stalled && c.steps < o.max_newton;
  return res;
}

}  // namespace opgt
