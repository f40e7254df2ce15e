// Command-line front end. Every command prints a JSON report on stdout (and
// to --out when given). Exit codes: 0 all checks passed, 1 a check failed,
// 2 inconclusive, 3 bad input.

#include "opgt/acceptance.hpp"
#include "opgt/fock.hpp"
#include "opgt/formats.hpp"
#include "opgt/gtforms.hpp"
#include "opgt/haagerup.hpp"
#include "opgt/ohmaps.hpp"
#include "opgt/random.hpp"
#include "opgt/report.hpp"
#include "opgt/schur.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace opgt;

namespace {

struct Inputs {
  std::string tensor, form, phi, map, state, x, xs;
  double K = 0.0;
  double t = 2.0;
  long D = 2;
  long kmin = 1, kmax = 30;
  int trials = 20;
  int samples = 10000;
  std::string family = "inverse-square";
  std::vector<double> lambdas;
  std::vector<int> only;
  std::vector<std::string> tol_args;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Loader {
 public:
  Json json(const std::string& path) {
    digest_ += read_file(path);
    return load_json_file(path);
  }

  ComplexMatrix matrix(const std::string& path) {
    const std::string text = read_file(path);
    digest_ += text;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return matrix_from_csv(text, path);
    return matrix_from_json(load_json_file(path), path);
  }

  std::string digest() const { return fnv1a_hex(digest_); }

 private:
  std::string digest_;
};

Json cert_json(const CbCertificate& c) {
  return {{"rho", matrix_to_json(c.rho)}, {"sigma", matrix_to_json(c.sigma)}, {"bound", c.bound()}};
}

JcbOptions jcb_options(const RunConfig& cfg) {
  JcbOptions o;
  o.amp = cfg.amp;
  o.restarts = cfg.restarts;
  o.seed = cfg.seed;
  return o;
}

std::vector<double> lambdas_or(const Inputs& in, std::size_t m, const RunConfig& cfg) {
  if (!in.lambdas.empty()) {
    if (in.lambdas.size() != m) throw InputError("--lambda", "expected " + std::to_string(m) + " values");
    return in.lambdas;
  }
  std::vector<double> ls;
  const double lo = cfg.lambda_min, hi = cfg.lambda_max;
  for (std::size_t i = 0; i < m; ++i) {
    const double s = m == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(m - 1);
    ls.push_back(std::exp(lo + s * (hi - lo)));
  }
  return ls;
}

Json hnorm_json(const HNormResult& h) {
  return {{"value", h.value},
          {"lower_bound", h.lower_bound},
          {"rank", h.rank},
          {"converged", h.converged},
          {"representation", tensor_to_json(h.representation)}};
}

void run_command(const std::string& cmd, const Inputs& in, const RunConfig& cfg, Loader& load, Report& rep) {
  const double opt_tol = cfg.tol("optimization");
  const double struct_tol = cfg.tol("structural");
  if (cmd == "hnorm" || cmd == "hnorm-t") {
    const TensorRep w = tensor_from_json(load.json(in.tensor), in.tensor);
    const HNormResult h = cmd == "hnorm" ? haagerup_norm(w) : transposed_haagerup_norm(w);
    rep.results = hnorm_json(h);
    rep.check("converged", h.converged);
    rep.check("gap_within_tolerance", h.value - h.lower_bound <= opt_tol * std::max(1.0, h.value));
  } else if (cmd == "balance") {
    const TensorRep w = tensor_from_json(load.json(in.tensor), in.tensor);
    const HNormResult h = haagerup_norm(w);
    const HNormResult t = transposed_haagerup_norm(w);
    const BalancedRepresentation b = balance_representation(w, h, t);
    rep.results = {{"h_norm", h.value},       {"t_norm", t.value},
                   {"row_col", b.row_col},    {"weighted", b.weighted},
                   {"inverse_residual", b.inverse_residual},
                   {"representation", tensor_to_json(b.rep)}};
    rep.check("row_col_matches", std::abs(b.row_col - h.value) <= 1e-4 * std::max(1.0, h.value));
    rep.check("weighted_matches", std::abs(b.weighted - t.value) <= 1e-4 * std::max(1.0, t.value));
    rep.check("inverse_residual", b.inverse_residual <= 1e-8);
  } else if (cmd == "jcb") {
    const BilinearForm u = form_from_json(load.json(in.form), in.form);
    const JcbEstimate j = jcb_norm_estimate(u, jcb_options(cfg));
    rep.results = {{"value", j.value}, {"amp", j.amp}, {"profile", j.profile}};
  } else if (cmd == "cbform") {
    const BilinearForm u = form_from_json(load.json(in.form), in.form);
    const CbNormResult c = cb_form_norm(u);
    rep.results = {{"value", c.value},
                   {"lower_bound", c.lower_bound},
                   {"f", matrix_to_json(c.f)},
                   {"g", matrix_to_json(c.g)},
                   {"converged", c.converged}};
    rep.check("converged", c.converged);
  } else if (cmd == "gt-verify") {
    const BilinearForm u = form_from_json(load.json(in.form), in.form);
    const JcbEstimate j = jcb_norm_estimate(u, jcb_options(cfg));
    const GtReport g = verify_gt_inequalities(u, j.value, in.trials, cfg.seed);
    rep.results = {{"jcb_estimate", j.value},
                   {"trials", g.trials},
                   {"C", g.C},
                   {"worst_ratio_weighted", g.worst_ratio_weighted},
                   {"worst_ratio_row_col", g.worst_ratio_row_col},
                   {"worst_ratio_mixed", g.worst_ratio_mixed},
                   {"lambda_reduction_gap", g.lambda_reduction_gap}};
    rep.check("no_counterexample", !g.counterexample);
  } else if (cmd == "states") {
    const BilinearForm u = form_from_json(load.json(in.form), in.form);
    double K = in.K;
    double jcb = 0.0;
    if (!(K > 0.0)) {
      jcb = jcb_norm_estimate(u, jcb_options(cfg)).value;
      K = std::pow(2.0, 1.5) * u.left().exactness_bound() * u.right().exactness_bound() * jcb;
    }
    StatesOptions so;
    so.max_cuts = cfg.max_cuts;
    so.seed = cfg.seed;
    so.violation_tol = opt_tol;
    const StatesResult s = find_states(u, K, so);
    rep.results = {{"K", K},
                   {"jcb_estimate", jcb},
                   {"status", to_string(s.status)},
                   {"min_constant", s.min_constant},
                   {"worst_ratio", s.worst_ratio},
                   {"cuts", s.states.cuts.size()},
                   {"rounds", s.rounds},
                   {"f1", matrix_to_json(s.states.f1)},
                   {"f2", matrix_to_json(s.states.f2)},
                   {"g1", matrix_to_json(s.states.g1)},
                   {"g2", matrix_to_json(s.states.g2)}};
    if (s.status == SolveStatus::kFeasible) {
      const double v = max_state_violation(u, s.states, in.samples, derive_seed(cfg.seed, 99));
      rep.results["fresh_violation"] = v;
      rep.check("fresh_samples_valid", v <= 10 * opt_tol);
    } else if (s.status == SolveStatus::kInfeasible) {
      rep.check("feasible", false);
    } else {
      rep.inconclusive();
    }
  } else if (cmd == "decompose" || cmd == "factor") {
    const BilinearForm u = form_from_json(load.json(in.form), in.form);
    double K = in.K;
    if (!(K > 0.0)) K = std::pow(2.0, 1.5) * jcb_norm_estimate(u, jcb_options(cfg)).value;
    const Decomposition d = decompose_form(u, K);
    rep.results = {{"K", K},
                   {"bound", d.bound},
                   {"lower_bound", d.lower_bound},
                   {"within_K", d.within_K},
                   {"u", matrix_to_json(d.u)},
                   {"v", matrix_to_json(d.v)},
                   {"u_certificate", cert_json(d.u_cert)},
                   {"v_certificate", cert_json(d.v_cert)}};
    rep.check("converged", d.converged);
    if (cmd == "decompose") {
      const double dual = sampled_dual_bound(u, in.trials, cfg.seed);
      rep.results["sampled_dual_bound"] = dual;
      rep.check("above_dual_bound", d.bound >= dual - 1e-4);
      rep.check("within_K", d.within_K);
    } else {
      const RCFactorization f = factor_through_rc(u, d);
      rep.results["factorization"] = {{"dim_r", f.dim_r},
                                      {"dim_c", f.dim_c},
                                      {"bound", f.bound},
                                      {"residual", f.residual},
                                      {"v_map", matrix_to_json(f.v_map)},
                                      {"w_map", matrix_to_json(f.w_map)}};
      rep.check("reconstruction", f.residual <= opt_tol);
    }
  } else if (cmd == "fock-verify") {
    const FockSpace fs(cfg.fock_m, cfg.fock_D);
    const auto ls = lambdas_or(in, static_cast<std::size_t>(cfg.fock_m), cfg);
    const CommutationResidual c = check_double_commutation(fs, ls);
    double vac = 0.0;
    for (Index i = 0; i < fs.letters(); ++i)
      for (Index j = 0; j < fs.letters(); ++j) {
        vac = std::max(vac, std::abs(vacuum_pairing(fs, i, j, ls) - Complex(i == j ? 1.0 : 0.0)));
      }
    rep.results = {{"m", cfg.fock_m},
                   {"D", cfg.fock_D},
                   {"dim", fs.dim()},
                   {"lambdas", ls},
                   {"projected_residual", c.projected},
                   {"unprojected_residual", c.unprojected},
                   {"vacuum_error", vac}};
    rep.check("commutation", c.projected <= 1e-12);
    rep.check("vacuum_pairing", vac <= 1e-14);
  } else if (cmd == "chain") {
    const BilinearForm u = form_from_json(load.json(in.form), in.form);
    const TensorRep w = tensor_from_json(load.json(in.tensor), in.tensor);
    const auto ls = lambdas_or(in, w.size(), cfg);
    const double jcb = jcb_norm_estimate(u, jcb_options(cfg)).value;
    const ChainReport c = verify_embedding_chain(u, w, ls, in.D, jcb);
    rep.results = {{"jcb_estimate", jcb},
                   {"direct_sum", {c.direct_sum.real(), c.direct_sum.imag()}},
                   {"vacuum_value", {c.vacuum_value.real(), c.vacuum_value.imag()}},
                   {"step1_error", c.step1_error},
                   {"compressed_norm", c.compressed_norm},
                   {"step2_ratio", c.step2_ratio},
                   {"rhs", c.rhs},
                   {"step3_ratio", c.step3_ratio},
                   {"final_ratio", c.final_ratio},
                   {"x_norm", c.x_norm},
                   {"y_norm", c.y_norm}};
    rep.check("chain", c.pass);
  } else if (cmd == "schur-split") {
    const ComplexMatrix phi = load.matrix(in.phi);
    const BoundedSplit s = bounded_split_optimal(phi);
    rep.results = {{"cost", s.cost},
                   {"row_sum", s.row_sum},
                   {"col_sum", s.col_sum},
                   {"lp_bound", s.lp_bound},
                   {"a", matrix_to_json(s.a)},
                   {"b", matrix_to_json(s.b)}};
    rep.check("split_sums_to_phi", (s.a + s.b - phi).cwiseAbs().maxCoeff() <= struct_tol);
    rep.check("lp_duality", std::abs(s.cost - s.lp_bound) <= 1e-8 * std::max(1.0, s.cost));
  } else if (cmd == "schur-dom") {
    const ComplexMatrix phi = load.matrix(in.phi);
    const RankOneDominator d = rank_one_dominator(phi);
    double worst = 0.0;
    for (Index i = 0; i < phi.rows(); ++i)
      for (Index j = 0; j < phi.cols(); ++j) worst = std::max(worst, std::abs(phi(i, j)) - d.C * d.x(i) * d.y(j));
    rep.results = {{"C", d.C}, {"gap_bound", d.gap_bound}, {"x", vector_to_json(d.x)}, {"y", vector_to_json(d.y)},
                   {"domination_excess", worst}};
    rep.check("dominated", worst <= 1e-9 * std::max(1.0, d.C));
  } else if (cmd == "schur-profile") {
    if (in.family != "inverse-square") throw InputError("--family", "unknown family '" + in.family + "'");
    const auto rows = schur_profile(inverse_square_rows, in.kmin, in.kmax);
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"k", r.k}, {"lp_cost", r.lp_cost}, {"dominator", r.dominator}, {"ratio", r.ratio}});
    }
    rep.results = {{"family", in.family}, {"profile", arr}};
  } else if (cmd == "oh-state") {
    const OHMap u = ohmap_from_json(load.json(in.map), in.map);
    double K = in.K;
    double cb = 0.0;
    if (!(K > 0.0)) {
      cb = oh_cb_bound(u);
      K = std::pow(2.0, 2.25) * u.domain().exactness_bound() * cb;
      if (!(K > 0.0)) K = 1.0;
    }
    OHStateOptions oo;
    oo.max_cuts = cfg.max_cuts;
    oo.seed = cfg.seed;
    oo.violation_tol = opt_tol;
    const OHStateResult s = find_oh_state(u, K, oo);
    rep.results = {{"K", K},
                   {"cb_bound", cb},
                   {"status", to_string(s.status)},
                   {"min_constant", s.min_constant},
                   {"worst_ratio", s.worst_ratio},
                   {"cuts", s.cuts.size()},
                   {"f", matrix_to_json(s.cert.f)}};
    if (s.status == SolveStatus::kFeasible) {
      const OHConverse c = oh_converse_bound(u, s.cert, in.samples, derive_seed(cfg.seed, 7), jcb_options(cfg));
      rep.results["converse"] = {{"bound", c.bound},
                                 {"jcb_estimate", c.jcb_estimate},
                                 {"recheck_violation", c.recheck_violation}};
      rep.check("converse_consistent", c.consistent);
    } else if (s.status == SolveStatus::kInfeasible) {
      rep.check("feasible", false);
    } else {
      rep.inconclusive();
    }
  } else if (cmd == "oh-interp") {
    const OHMap u = ohmap_from_json(load.json(in.map), in.map);
    const ComplexMatrix f = load.matrix(in.state);
    const ComplexMatrix x = load.matrix(in.x);
    const double K = in.K > 0.0 ? in.K : 1.0;
    const InterpReport r = interp_bound_report(u, f, K, x, in.t);
    rep.results = {{"t", r.t},
                   {"K", r.K},
                   {"sizes", {r.sizes[0], r.sizes[1], r.sizes[2]}},
                   {"u1", r.u1},
                   {"u2", r.u2},
                   {"u3", r.u3},
                   {"tail2_bound", r.tail2_bound},
                   {"tail3_bound", r.tail3_bound},
                   {"head", r.head},
                   {"head_ratio", r.head_ratio}};
    rep.check("split_algebra", r.algebra_holds);
    rep.check("tails", r.tails_hold);
  } else if (cmd == "oh-log") {
    const OHMap u = ohmap_from_json(load.json(in.map), in.map);
    const auto xs = matrices_from_json(load.json(in.xs), in.xs);
    const double K = in.K > 0.0 ? in.K : 1.0;
    const LogBoundReport r = log_bound_experiment(u, xs, K);
    rep.results = {{"n", r.n},          {"lhs", r.lhs}, {"min_norm", r.min_norm}, {"row", r.row},
                   {"col", r.col},      {"sum_sq", r.sum_sq}, {"ratio", r.ratio}};
    rep.check("elementary_steps", r.elementary_hold);
  } else if (cmd == "suite") {
    AcceptanceOptions ao;
    ao.seed = cfg.seed;
    ao.only = in.only;
    ao.on_result = [](const CriterionResult& r) {
      std::cerr << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << "\n";
    };
    const auto results = run_acceptance(ao);
    Json arr = Json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail_data", r.data}});
      rep.check("criterion_" + std::to_string(r.id), r.pass);
    }
    rep.results = {{"criteria", arr}, {"battery_digest", battery_digest(results)}};
  } else {
    throw InputError("command", "unknown command '" + cmd + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-space inequality toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  Inputs in;
  std::string lambda_range;
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_option("--tol", in.tol_args, "Tolerance override name=value (optimization, structural)");
  app.add_option("--restarts", cfg.restarts, "Random restarts for ascent routines");
  app.add_option("--amp", cfg.amp, "Amplification level for jcb estimates (0 = N_E·N_F)");
  app.add_option("--max-cuts", cfg.max_cuts, "Cutting-plane budget");
  app.add_option("--lambda-range", lambda_range, "Log-weight range lo:hi for default λ grids");
  app.add_option("--m", cfg.fock_m, "Letter pairs of the Fock space");
  app.add_option("--D", cfg.fock_D, "Fock word-length cutoff");
  app.add_option("--out", cfg.out, "Also write the report to this path");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"hnorm", "Haagerup norm of a tensor"},
      {"hnorm-t", "Haagerup norm of the flipped tensor"},
      {"balance", "Weighted representation realizing both Haagerup norms"},
      {"jcb", "Lower estimate of the jointly cb norm of a form"},
      {"cbform", "cb norm of a form with state certificate"},
      {"gt-verify", "Random checks of the sequence inequalities"},
      {"states", "Search for states dominating a form"},
      {"decompose", "Split a form into a cb part and a transposed-cb part"},
      {"factor", "Factor a form through a row plus column space"},
      {"fock-verify", "Commutation and vacuum checks for circular elements"},
      {"chain", "Compare a pairing with its Fock-space realization"},
      {"schur-split", "Optimal and constructive bounded Schur splits"},
      {"schur-dom", "Rank-one dominator of a Schur matrix"},
      {"schur-profile", "LP cost vs rank-one constant along a family"},
      {"oh-state", "State certificate for an OH-valued map"},
      {"oh-interp", "Interpolation bound report for one x"},
      {"oh-log", "Logarithmic sequence bound experiment"},
      {"suite", "Run the acceptance battery"},
  };
  for (const auto& [n, help] : commands) {
    CLI::App* s = app.add_subcommand(n, help);
    if (n == "hnorm" || n == "hnorm-t" || n == "balance" || n == "chain") {
      s->add_option("--tensor", in.tensor, "Tensor JSON")->required();
    }
    if (n == "jcb" || n == "cbform" || n == "gt-verify" || n == "states" || n == "decompose" || n == "factor" ||
        n == "chain") {
      s->add_option("--form", in.form, "Bilinear form JSON")->required();
    }
    if (n == "states" || n == "decompose" || n == "factor" || n == "oh-state" || n == "oh-interp" || n == "oh-log") {
      s->add_option("--K", in.K, "Target constant (default from the estimate)");
    }
    if (n == "gt-verify" || n == "decompose") s->add_option("--trials", in.trials, "Random sequences / tensors");
    if (n == "states" || n == "oh-state") s->add_option("--samples", in.samples, "Fresh re-validation samples");
    if (n == "chain") s->add_option("--depth", in.D, "Word-length cutoff for the compression");
    if (n == "fock-verify" || n == "chain") s->add_option("--lambda", in.lambdas, "Weights λ_i");
    if (n == "schur-split" || n == "schur-dom") s->add_option("--phi", in.phi, "φ as JSON matrix or CSV")->required();
    if (n == "schur-profile") {
      s->add_option("--family", in.family, "Family of φ (inverse-square)");
      s->add_option("--kmin", in.kmin, "Smallest truncation");
      s->add_option("--kmax", in.kmax, "Largest truncation");
    }
    if (n == "oh-state" || n == "oh-interp" || n == "oh-log") s->add_option("--map", in.map, "OH map JSON")->required();
    if (n == "oh-interp") {
      s->add_option("--state", in.state, "Density matrix (JSON or CSV)")->required();
      s->add_option("--x", in.x, "Matrix x (JSON or CSV)")->required();
      s->add_option("--t", in.t, "Split parameter t ≥ 2");
    }
    if (n == "oh-log") s->add_option("--xs", in.xs, "JSON array of matrices")->required();
    if (n == "suite") s->add_option("--only", in.only, "Run only these criteria");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  Report rep;
  rep.command = cmd;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    for (const auto& t : in.tol_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw InputError("--tol", "expected name=value, got '" + t + "'");
      const std::string name = t.substr(0, eq);
      if (!cfg.tolerances.count(name)) throw InputError("--tol", "unknown tolerance '" + name + "'");
      try {
        cfg.tolerances[name] = std::stod(t.substr(eq + 1));
      } catch (const std::exception&) {
        throw InputError("--tol", "bad number in '" + t + "'");
      }
    }
    if (!lambda_range.empty()) {
      const auto colon = lambda_range.find(':');
      if (colon == std::string::npos) throw InputError("--lambda-range", "expected lo:hi");
      try {
        cfg.lambda_min = std::stod(lambda_range.substr(0, colon));
        cfg.lambda_max = std::stod(lambda_range.substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError("--lambda-range", "bad number in '" + lambda_range + "'");
      }
    }
    try {
      cfg.validate();
    } catch (const ValueError& e) {
      throw InputError("config", e.what());
    }
    rep.config = cfg.to_json();
    Loader load;
    run_command(cmd, in, cfg, load, rep);
    rep.input_digest = load.digest();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const SpanError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = rep.to_json().dump(2);
  std::cout << text << "\n";
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 3;
    }
    out << text << "\n";
  }
  return rep.exit_code();
}
