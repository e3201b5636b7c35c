#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hh {

// Parameter overrides; each criterion falls back to its own grid when unset.
struct VerifyConfig {
  std::optional<std::vector<int>> n;
  std::optional<std::vector<double>> s;
  std::optional<std::vector<double>> delta;
  long long mc_samples = 1000000;
  std::uint64_t seed = 42;
  int threads = 0;
  bool sharpness_only = false;  // hardy suite: run the optimizer check alone
};

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  std::string metric;      // how measured is compared with expected
  std::string provenance;  // closed-form, quadrature, spectral, monte-carlo
};

struct Criterion {
  int id = 0;
  std::string title;
  double budget_seconds = 0.0;  // 0: no time limit
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::string summary;
  std::string error;  // infrastructure failure; the criterion did not run to completion
  bool pass() const;
};

std::string version_string();

std::vector<std::string> suite_names();
// Criterion ids in a suite; throws InvalidInput for unknown names.
std::vector<int> suite_criteria(const std::string &suite, const VerifyConfig &cfg = {});

Criterion run_criterion(int id, const VerifyConfig &cfg);

using CriterionCallback = std::function<void(const Criterion &, double seconds)>;
std::vector<Criterion> run_suite(const std::string &suite, const VerifyConfig &cfg,
                                 const CriterionCallback &on_done = {});

// Deterministic reports: no timings, fixed key order and number formatting.
std::string verify_report_json(const std::string &suite, const VerifyConfig &cfg,
                               const std::vector<Criterion> &results);
std::string verify_report_csv(const std::vector<Criterion> &results);
std::string check_line(const Check &c);
std::string criterion_line(const Criterion &c);

} // namespace hh
