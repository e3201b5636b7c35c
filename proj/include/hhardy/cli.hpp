#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hhardy/hardy.hpp"

namespace hh {

// Everything a run depends on; reports echo it in full.
struct RunConfig {
  std::string command;  // constants, verify, sweep
  std::string suite = "all";
  bool sharpness = false;
  std::vector<std::string> theorems{"hardy_nonhomog"};
  std::optional<std::vector<int>> n;
  std::optional<std::vector<double>> s;
  std::optional<std::vector<double>> delta;
  double tol = 1e-7;
  long long mc_samples = 1000000;
  std::uint64_t seed = 42;
  std::string format;  // csv or json; empty picks the command default
  std::string out;     // empty: stdout
};

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

// "a,b,c" or "a:b:step" (inclusive of b up to rounding). Throws InvalidInput.
std::vector<double> parse_real_list(const std::string &spec);
std::vector<int> parse_int_list(const std::string &spec);

std::string run_config_json(const RunConfig &cfg);
std::string default_format(const std::string &command);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string &path, const std::string &data);

struct SweepRow {
  int n = 1;
  double s = 0.0;
  double delta = 0.0;
  std::string function_id;
  std::string theorem;
  bool ok = false;  // false: the row failed to evaluate, see `error`
  std::string error;
  InequalityReport report;
  bool pass = false;  // ratio <= 1 + max(tol, 3 * ratio_err)
};

std::vector<std::string> sweep_theorems();
// Rows in grid order (n, s, delta, function, theorem); deterministic for any thread count.
std::vector<SweepRow> run_sweep(const RunConfig &cfg, int threads = 0);

// Reports; throw InvalidInput on out-of-range parameters.
std::string constants_report(const RunConfig &cfg);
std::string sweep_report(const RunConfig &cfg, const std::vector<SweepRow> &rows);

int cmd_constants(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &err);

// Full command line including argv[0].
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hh
