#include "opgt/report.hpp"

#include <cmath>
#include <cstdio>

namespace opgt {

void RunConfig::validate() const {
  for (const auto& [name, v] : tolerances) {
    if (!(v > 0.0)) throw ValueError("tolerance '" + name + "' must be positive");
  }
  if (!(lambda_max >= lambda_min)) throw ValueError("empty λ range");
  if (restarts < 1) throw ValueError("restarts must be at least 1");
  if (max_cuts < 0) throw ValueError("max-cuts must be nonnegative");
  if (amp < 0) throw ValueError("amp must be nonnegative");
}

double RunConfig::tol(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw ValueError("unknown tolerance '" + name + "'");
  return it->second;
}

Json RunConfig::to_json() const {
  Json t = Json::object();
  for (const auto& [name, v] : tolerances) t[name] = v;
  return Json{{"seed", seed},
              {"tolerances", t},
              {"restarts", restarts},
              {"amp", amp},
              {"max_cuts", max_cuts},
              {"lambda_grid", {{"log_min", lambda_min}, {"log_max", lambda_max}}},
              {"fock", {{"m", fock_m}, {"D", fock_D}}}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json constants_json() {
  return Json::array({
      {{"name", "2^{3/2}"},
       {"value", std::pow(2.0, 1.5)},
       {"provenance", "state and decomposition constant: K ≤ 2^{3/2}·ex(E)ex(F)·‖U‖_jcb"}},
      {{"name", "2√2"},
       {"value", 2.0 * std::sqrt(2.0)},
       {"provenance", "weighted row/column sequence bound: |Σ U(a_i,b_i)| ≤ 2√2·C·‖U‖_jcb·(row·col)"}},
      {{"name", "2^{9/4}"},
       {"value", std::pow(2.0, 2.25)},
       {"provenance", "OH-valued maps: state constant K ≤ 2^{9/4}·ex(E)·‖u‖_cb"}},
  });
}

void Report::check(const std::string& name, bool ok) {
  checks[name] = ok;
  if (!ok) outcome = Outcome::kFail;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kPass:
      return "pass";
    case Outcome::kFail:
      return "fail";
    case Outcome::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Json Report::quantitative() const {
  return Json{{"command", command},
              {"input_digest", input_digest},
              {"config", config},
              {"constants", constants_json()},
              {"results", results},
              {"checks", checks},
              {"outcome", to_string(outcome)}};
}

Json Report::to_json() const {
  Json j = quantitative();
  j["digest"] = fnv1a_hex(quantitative().dump());
  j["timing"] = {{"wall_seconds", wall_seconds}};
  return j;
}

int Report::exit_code() const {
  switch (outcome) {
    case Outcome::kPass:
      return 0;
    case Outcome::kFail:
      return 1;
    case Outcome::kInconclusive:
      return 2;
  }
  return 1;
}

}  // namespace opgt
