#include "hhardy/cli.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhardy/errors.hpp"
#include "hhardy/kernels.hpp"
#include "hhardy/numerics.hpp"
#include "hhardy/spectral.hpp"
#include "hhardy/verify.hpp"

namespace hh {

namespace {

using nlohmann::ordered_json;

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string &tok) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception &) {
    throw InvalidInput("not a number: '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) throw InvalidInput("not a number: '" + tok + "'");
  return v;
}

std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json config_object(const RunConfig &cfg) {
  ordered_json c;
  c["command"] = cfg.command;
  if (cfg.command == "verify") {
    c["suite"] = cfg.suite;
    c["sharpness"] = cfg.sharpness;
  }
  if (cfg.command == "sweep") c["theorem"] = cfg.theorems;
  c["n"] = cfg.n ? ordered_json(*cfg.n) : ordered_json(nullptr);
  c["s"] = cfg.s ? ordered_json(*cfg.s) : ordered_json(nullptr);
  c["delta"] = cfg.delta ? ordered_json(*cfg.delta) : ordered_json(nullptr);
  c["tol"] = cfg.tol;
  c["mc_samples"] = cfg.mc_samples;
  c["seed"] = cfg.seed;
  c["format"] = cfg.format.empty() ? default_format(cfg.command) : cfg.format;
  c["out"] = cfg.out;
  return c;
}

ordered_json report_head(const RunConfig &cfg) {
  ordered_json j;
  j["tool"] = "hhardy";
  j["version"] = version_string();
  j["command"] = cfg.command;
  j["config"] = config_object(cfg);
  return j;
}

std::string format_of(const RunConfig &cfg) { return cfg.format.empty() ? default_format(cfg.command) : cfg.format; }

void check_grid(const RunConfig &cfg) {
  if ((cfg.n && cfg.n->empty()) || (cfg.s && cfg.s->empty()) || (cfg.delta && cfg.delta->empty()))
    throw InvalidInput("empty parameter grid");
  if (cfg.n)
    for (int n : *cfg.n)
      if (n < 1) throw InvalidInput("n = " + std::to_string(n) + " out of range: need n >= 1");
  if (cfg.delta)
    for (double d : *cfg.delta)
      if (!(d > 0.0)) throw InvalidInput("delta = " + g17(d) + " out of range: need delta > 0");
}

void check_s_range(const std::vector<int> &ns, const std::vector<double> &ss) {
  for (int n : ns)
    for (double s : ss)
      if (!(s > 0.0 && s < 0.5 * (n + 1)))
        throw InvalidInput("s = " + g17(s) + " out of range for n = " + std::to_string(n) + ": need 0 < s < " +
                           g17(0.5 * (n + 1)));
}

struct NamedValue {
  const char *name;
  double ConstantsTable::*field;
  const char *provenance;
};

const std::vector<NamedValue> &constant_fields() {
  static const std::vector<NamedValue> fields{
      {"C_s_delta", &ConstantsTable::C_s_delta, "closed-form"},
      {"c_ns_nonhomog", &ConstantsTable::c_ns_nonhomog, "closed-form"},
      {"c_ns_homog", &ConstantsTable::c_ns_homog, "closed-form"},
      {"a_ns", &ConstantsTable::a_ns, "closed-form"},
      {"b_ns", &ConstantsTable::b_ns, "closed-form"},
      {"hardy_homog", &ConstantsTable::hardy_homog, "closed-form"},
      {"B_ns", &ConstantsTable::B_ns, "closed-form"},
      {"g_s", &ConstantsTable::g_s, "closed-form"},
      {"Us_norm", &ConstantsTable::Us_norm, "spectral"},
      {"Vs_bound", &ConstantsTable::Vs_bound, "closed-form"},
      {"e_ns", &ConstantsTable::e_ns, "closed-form"},
      {"E_ns", &ConstantsTable::E_ns, "closed-form"},
      {"c_ns_nonhomog_printed", &ConstantsTable::c_ns_nonhomog_printed, "closed-form"},
      {"c_ns_homog_printed", &ConstantsTable::c_ns_homog_printed, "closed-form"},
      {"a_ns_printed", &ConstantsTable::a_ns_printed, "closed-form"},
      {"b_ns_printed", &ConstantsTable::b_ns_printed, "closed-form"},
      {"hardy_homog_printed", &ConstantsTable::hardy_homog_printed, "closed-form"},
      {"B_ns_printed", &ConstantsTable::B_ns_printed, "closed-form"},
  };
  return fields;
}

struct SweepFunction {
  std::string label;
  std::function<RadialFunction(int n, double s, double delta)> make;
};

const std::vector<SweepFunction> &sweep_functions() {
  static const std::vector<SweepFunction> fns{
      {"gaussian(a=1,b=1)", [](int, double, double) { return make_gaussian(1.0, 1.0); }},
      {"gaussian(a=0.5,b=2)", [](int, double, double) { return make_gaussian(0.5, 2.0); }},
      {"polygauss(j=1,m=0)", [](int, double, double) { return make_poly_gaussian(1.0, 1, 0, 1.0, 1.0); }},
      {"optimizer u(-s,delta)", [](int n, double s, double d) { return make_u_function(n, -s, d); }},
  };
  return fns;
}

InequalityReport evaluate(const std::string &theorem, const RadialFunction &f, int n, double s, double d,
                          double tol) {
  if (theorem == "hardy_nonhomog") return hardy_nonhomog(f, s, d, n, tol);
  if (theorem == "hardy_homog") return hardy_homog(f, s, n, tol);
  if (theorem == "hardy_pure_nonhomog") return hardy_pure(f, s, d, n, Variant::Nonhomog, tol);
  if (theorem == "hardy_pure_homog") return hardy_pure(f, s, d, n, Variant::Homog, tol);
  if (theorem == "uncertainty_nonhomog") return uncertainty(f, s, d, n, Variant::Nonhomog, tol);
  if (theorem == "uncertainty_homog") return uncertainty(f, s, d, n, Variant::Homog, tol);
  throw InvalidInput("unknown theorem '" + theorem + "'");
}

std::vector<std::string> expand_theorems(const std::vector<std::string> &in) {
  std::vector<std::string> out;
  for (const auto &t : in) {
    if (t == "all") return sweep_theorems();
    out.push_back(t);
  }
  return out;
}

void emit(const RunConfig &cfg, const std::string &report, std::ostream &out) {
  if (cfg.out.empty())
    out << report;
  else
    write_atomic(cfg.out, report);
}

} // namespace

std::vector<double> parse_real_list(const std::string &spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    const auto c1 = tok.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_real(tok));
      continue;
    }
    const auto c2 = tok.find(':', c1 + 1);
    if (c2 == std::string::npos || tok.find(':', c2 + 1) != std::string::npos)
      throw InvalidInput("range must be a:b:step, got '" + tok + "'");
    const double a = parse_real(trim(tok.substr(0, c1)));
    const double b = parse_real(trim(tok.substr(c1 + 1, c2 - c1 - 1)));
    const double step = parse_real(trim(tok.substr(c2 + 1)));
    if (!(step > 0.0)) throw InvalidInput("range step must be positive, got '" + tok + "'");
    if (b < a) continue;
    const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000) throw InvalidInput("range too long: '" + tok + "'");
    for (long i = 0; i < count; ++i) {
      // 0.1:0.3:0.1 should give 0.3, not 0.30000000000000004
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", a + static_cast<double>(i) * step);
      out.push_back(std::stod(buf));
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string &spec) {
  std::vector<int> out;
  for (double v : parse_real_list(spec)) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || std::abs(r) > 1e6) throw InvalidInput("not an integer: " + g17(v));
    out.push_back(static_cast<int>(r));
  }
  return out;
}

std::string default_format(const std::string &command) { return command == "sweep" ? "csv" : "json"; }

std::string run_config_json(const RunConfig &cfg) { return config_object(cfg).dump(2) + "\n"; }

void write_atomic(const std::string &path, const std::string &data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << data;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move report to " + path);
  }
}

std::string constants_report(const RunConfig &cfg) {
  check_grid(cfg);
  const std::vector<int> ns = cfg.n.value_or(std::vector<int>{1});
  const std::vector<double> ss = cfg.s.value_or(std::vector<double>{0.5});
  const std::vector<double> ds = cfg.delta.value_or(std::vector<double>{1.0});
  check_s_range(ns, ss);
  std::vector<ConstantsTable> tables;
  for (int n : ns)
    for (double s : ss)
      for (double d : ds) tables.push_back(constants_table(n, s, d));

  const auto &fields = constant_fields();
  if (format_of(cfg) == "csv") {
    std::ostringstream os;
    os << "n,s,delta";
    for (const auto &f : fields) os << ',' << f.name;
    os << '\n';
    for (const auto &t : tables) {
      os << t.n << ',' << g17(t.s) << ',' << g17(t.delta);
      for (const auto &f : fields) os << ',' << g17(t.*(f.field));
      os << '\n';
    }
    return os.str();
  }
  ordered_json j = report_head(cfg);
  ordered_json rows = ordered_json::array();
  for (const auto &t : tables) {
    ordered_json r;
    r["n"] = t.n;
    r["s"] = t.s;
    r["delta"] = t.delta;
    ordered_json vals, prov;
    for (const auto &f : fields) {
      vals[f.name] = num(t.*(f.field));
      prov[f.name] = f.provenance;
    }
    r["values"] = vals;
    r["provenance"] = prov;
    r["unavailable"] = t.unavailable;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::vector<std::string> sweep_theorems() {
  return {"hardy_nonhomog",       "hardy_homog",      "hardy_pure_nonhomog", "hardy_pure_homog",
          "uncertainty_nonhomog", "uncertainty_homog"};
}

std::vector<SweepRow> run_sweep(const RunConfig &cfg, int threads) {
  check_grid(cfg);
  const std::vector<int> ns = cfg.n.value_or(std::vector<int>{1});
  const std::vector<double> ss = cfg.s.value_or(std::vector<double>{0.3, 0.5, 0.7});
  const std::vector<double> ds = cfg.delta.value_or(std::vector<double>{0.5, 1.0, 2.0});
  const std::vector<std::string> theorems = expand_theorems(cfg.theorems);
  if (theorems.empty()) throw InvalidInput("empty parameter grid");
  for (const auto &t : theorems) {
    const auto all = sweep_theorems();
    if (std::find(all.begin(), all.end(), t) == all.end()) throw InvalidInput("unknown theorem '" + t + "'");
  }
  check_s_range(ns, ss);

  std::vector<SweepRow> rows;
  for (int n : ns)
    for (double s : ss)
      for (double d : ds)
        for (const auto &fn : sweep_functions())
          for (const auto &th : theorems) {
            SweepRow r;
            r.n = n;
            r.s = s;
            r.delta = d;
            r.function_id = fn.label;
            r.theorem = th;
            rows.push_back(r);
          }

  const auto &fns = sweep_functions();
  auto work = [&](SweepRow &r) {
    try {
      const auto it = std::find_if(fns.begin(), fns.end(), [&](const SweepFunction &f) { return f.label == r.function_id; });
      RadialFunction f = it->make(r.n, r.s, r.delta);
      f.id = r.function_id;
      r.report = evaluate(r.theorem, f, r.n, r.s, r.delta, cfg.tol);
      r.ok = true;
      r.pass = r.report.ratio <= 1.0 + std::max(cfg.tol, 3.0 * r.report.ratio_err);
    } catch (const std::exception &e) {
      r.ok = false;
      r.pass = false;
      r.error = e.what();
    }
  };
  const int nt = std::min<int>(resolve_threads(threads), static_cast<int>(rows.size()));
  if (nt <= 1) {
    for (auto &r : rows) work(r);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (size_t i = next++; i < rows.size(); i = next++) work(rows[i]);
      });
    for (auto &th : pool) th.join();
  }
  return rows;
}

std::string sweep_report(const RunConfig &cfg, const std::vector<SweepRow> &rows) {
  if (format_of(cfg) == "csv") {
    std::ostringstream os;
    os << "n,s,delta,function,theorem,status,constant,lhs,lhs_err,rhs,rhs_err,ratio,ratio_err,truncation,pass,error\n";
    for (const auto &r : rows) {
      const InequalityReport &p = r.report;
      os << r.n << ',' << g17(r.s) << ',' << g17(r.delta) << ',' << csv_quote(r.function_id) << ',' << r.theorem << ','
         << (r.ok ? "ok" : "error") << ',';
      if (r.ok)
        os << g17(p.constant) << ',' << g17(p.lhs) << ',' << g17(p.lhs_err) << ',' << g17(p.rhs) << ','
           << g17(p.rhs_err) << ',' << g17(p.ratio) << ',' << g17(p.ratio_err) << ',' << g17(p.truncation);
      else
        os << ",,,,,,,";
      os << ',' << (r.pass ? "true" : "false") << ',' << csv_quote(r.error) << '\n';
    }
    return os.str();
  }
  ordered_json j = report_head(cfg);
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto &r : rows) {
    ordered_json o;
    o["n"] = r.n;
    o["s"] = r.s;
    o["delta"] = r.delta;
    o["function"] = r.function_id;
    o["theorem"] = r.theorem;
    o["status"] = r.ok ? "ok" : "error";
    if (r.ok) {
      const InequalityReport &p = r.report;
      o["constant"] = num(p.constant);
      o["lhs"] = num(p.lhs);
      o["lhs_err"] = num(p.lhs_err);
      o["rhs"] = num(p.rhs);
      o["rhs_err"] = num(p.rhs_err);
      o["ratio"] = num(p.ratio);
      o["ratio_err"] = num(p.ratio_err);
      o["truncation"] = num(p.truncation);
      o["provenance"] = "spectral + quadrature";
    } else {
      o["error"] = r.error;
    }
    o["pass"] = r.pass;
    all = all && r.pass;
    arr.push_back(o);
  }
  j["rows"] = arr;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

int cmd_constants(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  std::string report;
  try {
    report = constants_report(cfg);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  emit(cfg, report, out);
  return kExitPass;
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  VerifyConfig vc;
  vc.n = cfg.n;
  vc.s = cfg.s;
  vc.delta = cfg.delta;
  vc.mc_samples = cfg.mc_samples;
  vc.seed = cfg.seed;
  vc.sharpness_only = cfg.sharpness;
  try {
    check_grid(cfg);
    suite_criteria(cfg.suite, vc);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  // With a report on stdout the progress lines go to stderr.
  std::ostream &lines = cfg.out.empty() ? err : out;
  const auto results = run_suite(cfg.suite, vc, [&](const Criterion &c, double) {
    lines << criterion_line(c) << '\n';
    for (const Check &k : c.checks) lines << "  " << check_line(k) << '\n';
    for (const auto &note : c.notes) lines << "  NOTE " << note << '\n';
    lines.flush();
  });
  std::string report;
  if (format_of(cfg) == "csv") {
    report = verify_report_csv(results);
  } else {
    ordered_json j = ordered_json::parse(verify_report_json(cfg.suite, vc, results));
    j["config"] = config_object(cfg);
    report = j.dump(2) + "\n";
  }
  emit(cfg, report, out);
  bool errored = false, failed = false;
  for (const Criterion &c : results) {
    errored = errored || !c.error.empty();
    failed = failed || !c.pass();
  }
  if (errored) return kExitUsage;
  return failed ? kExitFail : kExitPass;
}

int cmd_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(cfg);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  emit(cfg, sweep_report(cfg, rows), out);
  bool failed = false, errored = false;
  for (const auto &r : rows) {
    if (!r.ok) {
      errored = true;
      err << "row error: n=" << r.n << " s=" << g17(r.s) << " delta=" << g17(r.delta) << ' ' << r.function_id << ' '
          << r.theorem << ": " << r.error << '\n';
    } else if (!r.pass) {
      failed = true;
    }
  }
  if (failed) return kExitFail;
  return errored ? kExitUsage : kExitPass;
}

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Hardy inequalities on the Heisenberg group: constants, verification suites and sweeps", "hhardy"};
  app.set_version_flag("--version", version_string());
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> n_spec, s_spec, d_spec;
  app.add_option("--n", n_spec, "dimension n: list a,b,c or range a:b:step");
  app.add_option("--s", s_spec, "fractional order s: list or range");
  app.add_option("--delta", d_spec, "delta: list or range");
  app.add_option("--tol", cfg.tol, "relative quadrature tolerance and sweep ratio slack")->check(CLI::PositiveNumber);
  app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo pair samples")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Monte Carlo seed");
  app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "report path (written atomically); default stdout");

  auto *constants = app.add_subcommand("constants", "tabulate the named constants over the (n, s, delta) grid");
  auto *verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("suite", cfg.suite, "suite name")->check(CLI::IsMember(suite_names()));
  verify->add_flag("--sharpness", cfg.sharpness, "hardy suite: optimizer ratio check only");
  auto *sweep = app.add_subcommand("sweep", "inequality reports over a parameter grid");
  std::vector<std::string> all_theorems = sweep_theorems();
  all_theorems.push_back("all");
  sweep->add_option("--theorem", cfg.theorems, "inequalities to evaluate")->check(CLI::IsMember(all_theorems));
  for (auto *sub : {constants, verify, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  auto join = [](const std::vector<std::string> &parts) {
    std::string s;
    for (const auto &p : parts) s += (s.empty() ? "" : ",") + p;
    return s;
  };
  try {
    if (app.count("--n")) cfg.n = parse_int_list(join(n_spec));
    if (app.count("--s")) cfg.s = parse_real_list(join(s_spec));
    if (app.count("--delta")) cfg.delta = parse_real_list(join(d_spec));
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (constants->parsed()) {
      cfg.command = "constants";
      return cmd_constants(cfg, out, err);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, out, err);
    }
    cfg.command = "sweep";
    return cmd_sweep(cfg, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

} // namespace hh
