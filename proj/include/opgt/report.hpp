#pragma once

// Run configuration and JSON reports shared by the command-line tool and
// the acceptance battery. Quantitative fields are reproducible; wall time
// sits under a separate "timing" key.

#include "opgt/json_io.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace opgt {

struct RunConfig {
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances{{"optimization", 1e-6}, {"structural", 1e-10}};
  int restarts = 8;
  long amp = 0;
  int max_cuts = 50;
  double lambda_min = -2.0;  // log-weights drawn from [lambda_min, lambda_max]
  double lambda_max = 2.0;
  long fock_m = 2;
  long fock_D = 3;
  std::string out;

  /// Throws ValueError on a nonpositive tolerance or an empty λ range.
  void validate() const;
  double tol(const std::string& name) const;
  Json to_json() const;
};

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Constants 2^{3/2}, 2√2 and 2^{9/4} with what each one bounds.
Json constants_json();

enum class Outcome { kPass, kFail, kInconclusive };

struct Report {
  std::string command;
  std::string input_digest;
  Json config;
  Json results = Json::object();
  Json checks = Json::object();  // name → bool
  Outcome outcome = Outcome::kPass;
  double wall_seconds = 0.0;

  void check(const std::string& name, bool ok);
  void inconclusive() {
    if (outcome == Outcome::kPass) outcome = Outcome::kInconclusive;
  }
  /// Everything except timing.
  Json quantitative() const;
  Json to_json() const;
  /// 0 pass, 1 failed check, 2 inconclusive.
  int exit_code() const;
};

std::string to_string(Outcome o);

}  // namespace opgt
