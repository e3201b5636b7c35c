#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "hhardy/verify.hpp"

using namespace hh;

namespace {

struct Timed {
  std::vector<Criterion> results;
  std::vector<double> seconds;
  std::string report;
};

Timed run_all(int threads, bool print) {
  setenv("HHARDY_THREADS", std::to_string(threads).c_str(), 1);
  VerifyConfig cfg;
  cfg.seed = 42;
  cfg.threads = threads;
  Timed t;
  t.results = run_suite("all", cfg, [&](const Criterion &c, double sec) {
    t.seconds.push_back(sec);
    if (!print) return;
    const bool in_budget = c.budget_seconds <= 0.0 || sec <= c.budget_seconds;
    std::printf("%s [%.1fs, budget %.0fs%s]\n", criterion_line(c).c_str(), sec, c.budget_seconds,
                in_budget ? "" : ", OVER BUDGET");
    for (const auto &k : c.checks) std::printf("    %s\n", check_line(k).c_str());
    for (const auto &n : c.notes) std::printf("    NOTE %s\n", n.c_str());
    std::fflush(stdout);
  });
  t.report = verify_report_json("all", cfg, t.results);
  return t;
}

} // namespace

int main() {
  int failed = 0;
  const Timed a = run_all(1, true);
  for (size_t i = 0; i < a.results.size(); ++i) {
    const Criterion &c = a.results[i];
    const bool in_budget = c.budget_seconds <= 0.0 || a.seconds[i] <= c.budget_seconds;
    if (!c.pass() || !in_budget) ++failed;
  }

  const Timed b = run_all(1, false);
  const Timed c = run_all(4, false);
  const bool same_run = a.report == b.report;
  const bool same_threads = a.report == c.report;
  const bool det = same_run && same_threads;
  std::printf("%s [12] determinism: rerun %s, 1 vs 4 threads %s (%zu bytes)\n", det ? "PASS" : "FAIL",
              same_run ? "identical" : "differs", same_threads ? "identical" : "differs", a.report.size());
  if (!det) ++failed;

  std::printf("%d of %zu criteria failed\n", failed, a.results.size() + 1);
  return failed == 0 ? 0 : 1;
}
