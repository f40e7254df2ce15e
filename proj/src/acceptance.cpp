#include "opgt/acceptance.hpp"

#include "opgt/fock.hpp"
#include "opgt/gtforms.hpp"
#include "opgt/haagerup.hpp"
#include "opgt/ohmaps.hpp"
#include "opgt/oracles.hpp"
#include "opgt/random.hpp"
#include "opgt/report.hpp"
#include "opgt/schur.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace opgt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

// Stream offsets keep every criterion's instances independent of the others.
std::uint64_t stream(std::uint64_t seed, std::uint64_t criterion, std::uint64_t instance) {
  return derive_seed(derive_seed(seed, criterion), instance);
}

TensorRep random_tensor(Rng& rng, Index n, Index terms) {
  TensorRep w;
  for (Index k = 0; k < terms; ++k) {
    w.left.push_back(rng.gaussian(n, n));
    w.right.push_back(rng.gaussian(n, n));
  }
  return w;
}

CriterionResult haagerup_oracle_check(std::uint64_t seed) {
  CriterionResult r{1, "Haagerup norm agrees with the direct-search oracle", false, "", Json::object(), 0.0};
  const auto t0 = Clock::now();
  double worst = 0.0;
  Json values = Json::array();
  for (int i = 0; i < 50; ++i) {
    Rng rng(stream(seed, 1, static_cast<std::uint64_t>(i)));
    const TensorRep w = random_tensor(rng, 2, 1 + i % 2);
    const double h = haagerup_norm(w).value;
    const double o = haagerup_oracle(w);
    worst = std::max(worst, rel_err(h, o));
    values.push_back({h, o});
  }
  const double secs = seconds_since(t0);
  r.pass = worst <= 1e-4 && secs < 60.0;
  r.detail = fmt("50 tensors, worst relative gap %.2e (tol 1e-4), %.1f s (limit 60 s)", worst, secs);
  r.data = {{"worst_rel", worst}, {"values", values}};
  return r;
}

CriterionResult balancing_check(std::uint64_t seed) {
  CriterionResult r{2, "balanced representation realizes both Haagerup norms", false, "", Json::object(), 0.0};
  double worst_h = 0.0, worst_t = 0.0, worst_inv = 0.0, worst_rep = 0.0;
  bool threw = false;
  for (int i = 0; i < 25; ++i) {
    Rng rng(stream(seed, 2, static_cast<std::uint64_t>(i)));
    const TensorRep w = random_tensor(rng, 2, 2 + i % 3);
    const HNormResult h = haagerup_norm(w);
    const HNormResult t = transposed_haagerup_norm(w);
    try {
      const BalancedRepresentation b = balance_representation(w, h, t);
      worst_h = std::max(worst_h, rel_err(b.row_col, h.value));
      worst_t = std::max(worst_t, rel_err(b.weighted, t.value));
      worst_inv = std::max(worst_inv, b.inverse_residual);
      TensorRep plain = b.rep;
      plain.weights.reset();
      worst_rep = std::max(worst_rep, (plain.kron_sum() - w.kron_sum()).norm() / w.kron_sum().norm());
    } catch (const std::exception&) {
      threw = true;
    }
  }
  r.pass = !threw && worst_h <= 1e-4 && worst_t <= 1e-4 && worst_inv <= 1e-8 && worst_rep <= 1e-8;
  r.detail = fmt("25 tensors, ‖w‖_h gap %.2e, ‖ᵗw‖_h gap %.2e (tol 1e-4), ‖δγ−I‖ %.2e (tol 1e-8)", worst_h,
                 worst_t, worst_inv);
  if (threw) r.detail += ", balancing threw";
  r.data = {{"h_gap", worst_h}, {"t_gap", worst_t}, {"inverse_residual", worst_inv}, {"rep_residual", worst_rep}};
  return r;
}

struct FormCase {
  BilinearForm u;
  double jcb;
  std::uint64_t seed;
};

FormCase form_case(std::uint64_t seed, int i) {
  const std::uint64_t s = stream(seed, 3, static_cast<std::uint64_t>(i));
  BilinearForm u = random_form(OperatorSpace::full(2), OperatorSpace::full(2), s);
  JcbOptions jo;
  jo.seed = s;
  const double j = jcb_norm_estimate(u, jo).value;
  return {u, j, s};
}

// t0 is taken before the jcb estimates, so the runtime gate covers them.
CriterionResult sequence_inequality_check(std::uint64_t seed, const std::vector<FormCase>& forms,
                                          Clock::time_point t0) {
  CriterionResult r{3, "sequence inequalities hold against the jcb estimate", false, "", Json::object(), 0.0};
  double w_weighted = 0.0, w_row_col = 0.0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const FormCase& fc = forms[i];
    const GtReport g = verify_gt_inequalities(fc.u.scaled(1.0 / fc.jcb), 1.0, 20, stream(seed, 31, i));
    w_weighted = std::max(w_weighted, g.worst_ratio_weighted);
    w_row_col = std::max(w_row_col, g.worst_ratio_row_col);
  }
  const double secs = seconds_since(t0);
  r.pass = forms.size() == 100 && w_weighted <= 1 + 1e-6 && w_row_col <= 1 + 1e-6 && secs < 300.0;
  r.detail = fmt("100 forms × 20 sequences, worst ratio %.4f (weighted, C) and %.4f (2C), tol 1+1e-6, %.1f s",
                 w_weighted, w_row_col, secs);
  r.data = {{"worst_weighted", w_weighted}, {"worst_row_col", w_row_col}};
  return r;
}

CriterionResult states_check(std::uint64_t seed, const std::vector<FormCase>& forms) {
  CriterionResult r{4, "states found at 2^{3/2}·jcb and re-validated", false, "", Json::object(), 0.0};
  int ok = 0, max_cuts = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 30; ++i) {
    const FormCase& fc = forms[i];
    StatesOptions so;
    so.seed = fc.seed;
    so.max_cuts = 50;
    const StatesResult s = find_states(fc.u, std::pow(2.0, 1.5) * fc.jcb, so);
    max_cuts = std::max(max_cuts, static_cast<int>(s.states.cuts.size()));
    if (s.status != SolveStatus::kFeasible) continue;
    const double v = max_state_violation(fc.u, s.states, 10000, stream(seed, 41, i));
    worst = std::max(worst, v);
    if (v <= 1e-5) ++ok;
  }
  r.pass = ok == 30;
  r.detail = fmt("%.0f/30 feasible and valid, max cuts %.0f (limit 50), worst fresh violation %.2e (tol 1e-5)", ok,
                 max_cuts, worst);
  r.data = {{"valid", ok}, {"max_cuts", max_cuts}, {"worst_violation", worst}};
  return r;
}

CriterionResult decomposition_check(std::uint64_t seed, const std::vector<FormCase>& forms,
                                    std::vector<Decomposition>& decs) {
  CriterionResult r{5, "decomposition bound between the dual bound and 2^{3/2}·jcb", false, "", Json::object(), 0.0};
  double slack_low = std::numeric_limits<double>::infinity(), ratio_high = 0.0;
  bool ok = true;
  decs.clear();
  for (std::size_t i = 0; i < 30; ++i) {
    const FormCase& fc = forms[i];
    const double K = std::pow(2.0, 1.5) * fc.jcb;
    Decomposition d = decompose_form(fc.u, K);
    const double dual = sampled_dual_bound(fc.u, 20, stream(seed, 51, i));
    slack_low = std::min(slack_low, d.bound - dual);
    ratio_high = std::max(ratio_high, d.bound / K);
    ok = ok && d.bound >= dual - 1e-4 && d.bound <= K * (1 + 1e-3);
    decs.push_back(std::move(d));
  }
  r.pass = ok;
  r.detail = fmt("30 forms, min(bound − dual) %.3e (≥ −1e-4), max bound/(2^{3/2}·jcb) %.4f (≤ 1.001)", slack_low,
                 ratio_high);
  r.data = {{"min_slack", slack_low}, {"max_ratio", ratio_high}};
  return r;
}

CriterionResult factorization_check(const std::vector<FormCase>& forms, const std::vector<Decomposition>& decs) {
  CriterionResult r{6, "row ⊕ column factorization reconstructs the form", false, "", Json::object(), 0.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < decs.size(); ++i) {
    worst = std::max(worst, factor_through_rc(forms[i].u, decs[i]).residual);
  }
  r.pass = decs.size() == 30 && worst <= 1e-6;
  r.detail = fmt("30 forms, worst reconstruction residual %.2e (tol 1e-6)", worst);
  r.data = {{"worst_residual", worst}};
  return r;
}

CriterionResult fock_check(std::uint64_t seed) {
  CriterionResult r{7, "Fock-space circular elements: pairing, commutation, norm bound", false, "", Json::object(), 0.0};
  const auto t0 = Clock::now();
  double vac = 0.0, comm = 0.0;
  for (Index m = 1; m <= 3; ++m)
    for (Index D = 2; D <= 4; ++D)
      for (double lam : {0.25, 1.0, 4.0}) {
        const FockSpace fs(m, D);
        // all equal, then cycling through the grid
        for (int pattern = 0; pattern < 2; ++pattern) {
          std::vector<double> ls;
          const double grid[3] = {0.25, 1.0, 4.0};
          for (Index i = 0; i < m; ++i) ls.push_back(pattern == 0 ? lam : grid[(i + static_cast<Index>(lam)) % 3]);
          comm = std::max(comm, check_double_commutation(fs, ls).projected);
          for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j) {
              vac = std::max(vac, std::abs(vacuum_pairing(fs, i, j, ls) - Complex(i == j ? 1.0 : 0.0)));
            }
        }
      }
  int holds = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng rng(stream(seed, 7, static_cast<std::uint64_t>(k)));
    const Index len = 1 + k % 3;
    const FockSpace fs(len, 3);
    std::vector<ComplexMatrix> a;
    std::vector<double> ls;
    for (Index i = 0; i < len; ++i) {
      a.push_back(rng.gaussian(2, 2));
      ls.push_back(std::exp(rng.uniform(-2.0, 2.0)));
    }
    const CircularBound b = circular_sum_bound(fs, a, ls, k % 2 ? Side::kRow : Side::kCol);
    worst_ratio = std::max(worst_ratio, b.lhs / b.rhs);
    if (b.holds) ++holds;
  }
  const double secs = seconds_since(t0);
  r.pass = vac <= 1e-14 && comm <= 1e-12 && holds == 100 && secs < 120.0;
  r.detail = fmt("vacuum error %.1e (tol 1e-14), commutator %.1e (tol 1e-12), %.0f/100 families bounded, %.1f s",
                 vac, comm, holds, secs);
  r.data = {{"vacuum_error", vac}, {"commutator", comm}, {"families_bounded", holds}, {"worst_ratio", worst_ratio}};
  return r;
}

CriterionResult bounded_schur_check(std::uint64_t seed) {
  CriterionResult r{8, "bounded Schur multipliers: LP cost, constructive split, easy direction", false, "",
                    Json::object(), 0.0};
  double id_err = 0.0;
  for (Index k = 2; k <= 10; ++k) {
    const BoundedSplit s = bounded_split_optimal(ComplexMatrix::Identity(k, k));
    id_err = std::max({id_err, std::abs(s.cost - static_cast<double>(k)), std::abs(s.lp_bound - static_cast<double>(k))});
  }
  int order_ok = 0, easy_ok = 0;
  double worst_gap = 0.0, worst_easy = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(stream(seed, 8, static_cast<std::uint64_t>(i)));
    const Index k = 3 + i % 4;
    const ComplexMatrix phi = rng.gaussian(k, k);
    const BoundedSplit opt = bounded_split_optimal(phi);
    worst_gap = std::max(worst_gap, std::abs(opt.cost - opt.lp_bound));
    RealVector x = phi.cwiseAbs().rowwise().sum();
    RealVector y = phi.cwiseAbs().colwise().sum().transpose();
    x /= x.sum();
    y /= y.sum();
    double K = 0.0;
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) K = std::max(K, std::abs(phi(a, b)) / std::sqrt(x(a) * y(b)));
    const BoundedSplit cons = constructive_split(phi, x, y, K);
    if (cons.cost >= opt.cost - 1e-9) ++order_ok;
    const double tc = schur_trace_class_norm(phi, 4, stream(seed, 81, static_cast<std::uint64_t>(i)));
    worst_easy = std::max(worst_easy, tc / opt.cost);
    if (tc <= opt.cost * (1 + 1e-9)) ++easy_ok;
  }
  r.pass = id_err <= 1e-10 && order_ok == 50 && easy_ok == 50 && worst_gap <= 1e-8;
  r.detail = fmt("I_k cost error %.1e, constructive ≥ LP on %.0f/50, multiplier ≤ cost on %.0f/50, duality gap %.1e",
                 id_err, order_ok, easy_ok, worst_gap);
  r.data = {{"identity_error", id_err}, {"order_ok", order_ok}, {"easy_ok", easy_ok},
            {"duality_gap", worst_gap}, {"worst_easy_ratio", worst_easy}};
  return r;
}

CriterionResult schur_gap_check() {
  CriterionResult r{9, "bounded but not completely bounded: 1/i² rows", false, "", Json::object(), 0.0};
  const auto rows = schur_profile(inverse_square_rows, 1, 30);
  double max_lp = 0.0;
  bool increasing = true;
  Json prof = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    max_lp = std::max(max_lp, rows[i].lp_cost);
    if (i > 0 && !(rows[i].dominator > rows[i - 1].dominator)) increasing = false;
    prof.push_back({rows[i].k, rows[i].lp_cost, rows[i].dominator});
  }
  const double final_ratio = rows.back().dominator / rows.back().lp_cost;
  r.pass = max_lp <= 1.65 && increasing && final_ratio > 3.0;
  r.detail = fmt("max LP cost %.4f (≤ 1.65), C/LP at k=30 %.3f (> 3), C strictly increasing: ", max_lp,
                 final_ratio) +
             (increasing ? "yes" : "no");
  r.data = {{"profile", prof}};
  return r;
}

CriterionResult oh_check(std::uint64_t seed) {
  CriterionResult r{10, "OH-valued maps: state at 2^{9/4}·cb bound, converse check", false, "", Json::object(), 0.0};
  int feasible = 0, consistent = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t s = stream(seed, 10, static_cast<std::uint64_t>(i));
    const OHMap u = random_oh_map(OperatorSpace::full(2), 1 + i % 3, s);
    const double K = std::pow(2.0, 2.25) * oh_cb_bound(u);
    OHStateOptions oo;
    oo.seed = s;
    const OHStateResult st = find_oh_state(u, K, oo);
    if (st.status != SolveStatus::kFeasible) continue;
    ++feasible;
    try {
      JcbOptions jo;
      jo.seed = s;
      const OHConverse c = oh_converse_bound(u, st.cert, 10000, derive_seed(s, 1), jo);
      worst_gap = std::max(worst_gap, c.jcb_estimate - c.bound);
      if (c.consistent) ++consistent;
    } catch (const ValueError&) {
    }
  }
  r.pass = feasible == 20 && consistent == 20;
  r.detail = fmt("%.0f/20 feasible, %.0f/20 with jcb estimate ≤ K + 1e-5 (worst estimate − K = %.3f)", feasible,
                 consistent, worst_gap);
  r.data = {{"feasible", feasible}, {"consistent", consistent}, {"worst_gap", worst_gap}};
  return r;
}

CriterionResult interpolation_check(std::uint64_t seed) {
  CriterionResult r{11, "tail bounds with constant t^{-1} after the interpolation split", false, "", Json::object(),
                    0.0};
  int ok = 0, nontrivial = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(stream(seed, 11, static_cast<std::uint64_t>(i)));
    const Index n = 2 + i % 3;
    RealVector lam(n);
    for (Index k = 0; k < n; ++k) lam(k) = std::exp(rng.uniform(-4.0, 4.0));
    lam /= lam.sum();
    const ComplexMatrix w = rng.unitary(n);
    const ComplexMatrix f = w * lam.cast<Complex>().asDiagonal() * w.adjoint();
    const double t = rng.uniform(2.0, 10.0);
    const OHMap u = state_weighted_map(f);
    const InterpReport rep = interp_bound_report(u, f, 1.0, rng.gaussian(n, n), t);
    if (rep.algebra_holds && rep.tails_hold) ++ok;
    if (rep.sizes[1] + rep.sizes[2] > 0) ++nontrivial;
  }
  r.pass = ok == 100;
  r.detail = fmt("%.0f/100 triples satisfy both tail bounds (%.0f with nonempty tails)", ok, nontrivial);
  r.data = {{"ok", ok}, {"nontrivial", nontrivial}};
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  auto wanted = [&](int id) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), id) != options.only.end();
  };
  std::vector<CriterionResult> out;
  auto record = [&](CriterionResult r, Clock::time_point t0) {
    r.seconds = seconds_since(t0);
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  };
  const std::uint64_t seed = options.seed;
  if (wanted(1)) {
    const auto t0 = Clock::now();
    record(haagerup_oracle_check(seed), t0);
  }
  if (wanted(2)) {
    const auto t0 = Clock::now();
    record(balancing_check(seed), t0);
  }
  std::vector<FormCase> forms;
  std::vector<Decomposition> decs;
  if (wanted(3) || wanted(4) || wanted(5) || wanted(6)) {
    const int count = wanted(3) ? 100 : 30;
    const auto t0 = Clock::now();
    for (int i = 0; i < count; ++i) forms.push_back(form_case(seed, i));
    if (wanted(3)) record(sequence_inequality_check(seed, forms, t0), t0);
  }
  if (wanted(4)) {
    const auto t0 = Clock::now();
    record(states_check(seed, forms), t0);
  }
  if (wanted(5) || wanted(6)) {
    const auto t0 = Clock::now();
    CriterionResult r = decomposition_check(seed, forms, decs);
    if (wanted(5)) record(r, t0);
  }
  if (wanted(6)) {
    const auto t0 = Clock::now();
    record(factorization_check(forms, decs), t0);
  }
  if (wanted(7)) {
    const auto t0 = Clock::now();
    record(fock_check(seed), t0);
  }
  if (wanted(8)) {
    const auto t0 = Clock::now();
    record(bounded_schur_check(seed), t0);
  }
  if (wanted(9)) {
    const auto t0 = Clock::now();
    record(schur_gap_check(), t0);
  }
  if (wanted(10)) {
    const auto t0 = Clock::now();
    record(oh_check(seed), t0);
  }
  if (wanted(11)) {
    const auto t0 = Clock::now();
    record(interpolation_check(seed), t0);
  }
  return out;
}

std::string battery_digest(const std::vector<CriterionResult>& results) {
  Json j = Json::array();
  for (const auto& r : results) j.push_back({{"id", r.id}, {"pass", r.pass}, {"data", r.data}});
  return fnv1a_hex(j.dump());
}

}  // namespace opgt
