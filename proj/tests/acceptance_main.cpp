#include "opgt/acceptance.hpp"

#include <CLI11.hpp>

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <string>

namespace {

// Runs `cmd` and returns its stdout with trailing whitespace removed.
std::string capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  if (pclose(pipe) != 0) return "";
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance battery"};
  std::uint64_t seed = 1;
  std::vector<int> only;
  app.add_option("--seed", seed, "base seed");
  bool digest_only = false;
  app.add_option("--only", only, "run only these criteria (skips the reproducibility rerun)");
  app.add_flag("--digest-only", digest_only, "run silently and print the battery digest");
  CLI11_PARSE(app, argc, argv);

  if (digest_only) {
    opgt::AcceptanceOptions opts;
    opts.seed = seed;
    std::printf("%s\n", opgt::battery_digest(opgt::run_acceptance(opts)).c_str());
    return 0;
  }

  auto print = [](const opgt::CriterionResult& r) {
    std::printf("%s [%d] %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
  };

  opgt::AcceptanceOptions opts;
  opts.seed = seed;
  opts.only = only;
  opts.on_result = print;
  const auto t0 = std::chrono::steady_clock::now();
  const auto first = opgt::run_acceptance(opts);
  const double first_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all = true;
  for (const auto& r : first) all = all && r.pass;

  if (only.empty()) {
    // Second, separate invocation with the same seed; timing is excluded from the digest.
    const std::string d2 = capture(std::string("\"") + argv[0] + "\" --digest-only --seed " + std::to_string(seed));
    const std::string d1 = opgt::battery_digest(first);
    const bool pass = d1 == d2 && first_secs < 1200.0;
    std::printf("%s [12] battery is reproducible and fast: digests %s / %s, first run %.1f s (limit 1200 s)\n",
                pass ? "PASS" : "FAIL", d1.c_str(), d2.c_str(), first_secs);
    all = all && pass;
  }
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
