#include "hhardy/verify.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hhardy/errors.hpp"
#include "hhardy/euclid.hpp"
#include "hhardy/hardy.hpp"
#include "hhardy/heatkernel.hpp"
#include "hhardy/kernels.hpp"
#include "hhardy/numerics.hpp"
#include "hhardy/spectral.hpp"

#ifndef HHARDY_VERSION
#define HHARDY_VERSION "unknown"
#endif

namespace hh {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Shortest representation that reads back to the same double.
std::string shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string g6(double v) { return fmt("%.6g", v); }
std::string e2(double v) { return fmt("%.2e", v); }

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

Check rel_check(std::string name, double measured, double expected, double tol, std::string prov) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.expected = expected;
  c.tol = tol;
  c.metric = "rel_err";
  c.provenance = std::move(prov);
  c.pass = rel_err(measured, expected) <= tol;
  return c;
}

// measured is already an error; passes when <= tol.
Check err_check(std::string name, double err, double tol, std::string prov, std::string metric = "max_rel_err") {
  Check c;
  c.name = std::move(name);
  c.measured = err;
  c.expected = 0.0;
  c.tol = tol;
  c.metric = std::move(metric);
  c.provenance = std::move(prov);
  c.pass = err <= tol;
  return c;
}

Check count_check(std::string name, double count, std::string prov) {
  Check c;
  c.name = std::move(name);
  c.measured = count;
  c.expected = 0.0;
  c.tol = 0.0;
  c.metric = "violations";
  c.provenance = std::move(prov);
  c.pass = count == 0.0;
  return c;
}

Check ratio_check(const InequalityReport &r, std::string prov) {
  Check c;
  c.name = r.theorem + " " + r.function_id + " s=" + g6(r.s) + (r.delta > 0 ? " delta=" + g6(r.delta) : "");
  c.measured = r.ratio;
  c.expected = 1.0;
  c.tol = 3.0 * r.ratio_err + 1e-12;
  c.metric = "ratio<=1+tol";
  c.provenance = std::move(prov);
  c.pass = r.holds();
  return c;
}

std::string pname(int n, double s) { return "n=" + std::to_string(n) + " s=" + g6(s); }

std::vector<int> ns_or(const VerifyConfig &cfg, std::vector<int> d) { return cfg.n ? *cfg.n : d; }
std::vector<double> ss_or(const VerifyConfig &cfg, std::vector<double> d) { return cfg.s ? *cfg.s : d; }
std::vector<double> ds_or(const VerifyConfig &cfg, std::vector<double> d) { return cfg.delta ? *cfg.delta : d; }

double worst(const std::vector<Check> &cs) {
  double w = 0.0;
  for (const auto &c : cs) w = std::max(w, c.metric == "rel_err" ? rel_err(c.measured, c.expected) : c.measured);
  return w;
}

McConfig mc_config(const VerifyConfig &cfg) {
  McConfig m;
  m.samples = cfg.mc_samples;
  m.seed = cfg.seed;
  m.threads = cfg.threads;
  return m;
}

Criterion kernel_oracle(const VerifyConfig &cfg, bool homog) {
  Criterion cr;
  cr.id = homog ? 2 : 1;
  cr.title = homog ? "kernel oracle (homogeneous)" : "kernel oracle (non-homogeneous)";
  cr.budget_seconds = 120;
  double pr_lo = INFINITY, pr_hi = 0.0;
  int points = 0;
  for (int n : ns_or(cfg, {1, 2})) {
    for (double s : ss_or(cfg, {0.25, 0.5, 0.75})) {
      Rng rng(derive_seed(cfg.seed, (homog ? 2000 : 1000) + 100 * n + static_cast<int>(std::lround(s * 100))));
      double maxrel = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double r = 0.1 + 2.4 * rng.uniform();
        const double w = -2.0 + 4.0 * rng.uniform();
        const double closed = homog ? kernel_Ks_homog_rw(n, s, r, w) : kernel_Ks_nonhomog_rw(n, s, r, w);
        const double oracle = homog ? kernel_homog_oracle(n, s, r, w).value : kernel_nonhomog_oracle(n, s, r, w).value;
        maxrel = std::max(maxrel, rel_err(closed, oracle));
        ++points;
      }
      cr.checks.push_back(err_check(pname(n, s) + " 20 random points", maxrel, 1e-6, "closed-form vs quadrature"));
      const double pr = homog ? const_c_homog_printed(n, s) / const_c_homog(n, s)
                              : const_c_nonhomog_printed(n, s) / const_c_nonhomog(n, s);
      pr_lo = std::min(pr_lo, pr);
      pr_hi = std::max(pr_hi, pr);
    }
  }
  cr.summary = "max rel err " + e2(worst(cr.checks)) + " over " + std::to_string(points) + " points (tol 1e-6)";
  cr.notes.push_back("printed kernel constant / confirmed constant = " + fmt("%.10f", pr_lo) +
                     (pr_hi != pr_lo ? " .. " + fmt("%.10f", pr_hi) : ""));
  return cr;
}

Criterion normalizations(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 3;
  cr.title = "kernel normalizations";
  cr.budget_seconds = 60;
  for (double s : ss_or(cfg, {0.5})) {
    for (double t : {0.1, 1.0, 10.0}) {
      const HeatParams hp{t, s, 1};
      cr.checks.push_back(rel_check("non-homogeneous mass t=" + g6(t) + " s=" + g6(s),
                                    modified_kernel_mass(hp, false).value, 1.0, 1e-6, "quadrature"));
      cr.checks.push_back(rel_check("homogeneous mass t=" + g6(t) + " s=" + g6(s),
                                    modified_kernel_mass(hp, true).value, 1.0, 1e-6, "quadrature"));
    }
  }
  const double mass_err = worst(cr.checks);
  // 10^3 grid scaled with t: r up to 3.6 sqrt(t), |w| up to 4.5 t
  struct GridMin {
    double rel = 1e300;
    std::string at;
  };
  auto grid_min = [](bool homog) {
    GridMin g;
    for (int a = 0; a < 10; ++a) {
      const double t = 0.1 * std::pow(100.0, a / 9.0);
      const HeatParams hp{t, 0.5, 1};
      const double peak = homog ? modified_kernel_homog_q(hp, 0.0, 0.0, 1e-9).value
                                : modified_kernel_nonhomog_q(hp, 0.0, 0.0, 1e-9).value;
      for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
          const double r = 0.4 * i * std::sqrt(t), w = 0.5 * j * t;
          const double v = homog ? modified_kernel_homog_q(hp, r, w, 1e-9).value
                                 : modified_kernel_nonhomog_q(hp, r, w, 1e-9).value;
          if (v / peak < g.rel) {
            g.rel = v / peak;
            g.at = "(t,r,w)=(" + g6(t) + "," + g6(r) + "," + g6(w) + ")";
          }
        }
    }
    return g;
  };
  {
    const GridMin g = grid_min(false);
    Check c;
    c.name = "non-homogeneous kernel min / peak on 10^3 grid";
    c.measured = g.rel;
    c.expected = 0.0;
    c.metric = "measured>expected";
    c.provenance = "quadrature";
    c.pass = g.rel > 0.0;
    cr.checks.push_back(c);
    const GridMin h = grid_min(true);
    cr.notes.push_back("homogeneous kernel sign survey (not asserted): min / peak " + fmt("%.4g", h.rel) + " at " + h.at);
  }
  cr.summary = "max |mass - 1| " + e2(mass_err) + " (tol 1e-6)";
  return cr;
}

Criterion cowling_haagerup(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 4;
  cr.title = "Cowling-Haagerup layer";
  cr.budget_seconds = 120;
  const std::vector<double> lambdas{0.4, 1.5};
  double w31 = 0, w32 = 0, wL = 0, weig = 0;
  for (int n : ns_or(cfg, {1})) {
    for (double s : ss_or(cfg, {0.25, 0.5, 0.75})) {
      for (double d : ds_or(cfg, {0.5, 1.0})) {
        const SpectralCoeffs sc = laguerre_coeffs(make_u_function(n, s, d), n, lambdas, 5);
        double m31 = 0, m32 = 0, meig = 0;
        for (size_t i = 0; i < lambdas.size(); ++i) {
          const double lam = lambdas[i];
          for (int k = 0; k <= 10; ++k) {
            const double cp = ch_coefficient(k, d, lam, s, n);
            const double cm = ch_coefficient(k, d, lam, -s, n);
            if (k <= 5) m31 = std::max(m31, rel_err(sc.coeffs[i][k], cp));
            const double g2 = std::exp(2.0 * (log_gamma(0.5 * (n + 1 + s)) - log_gamma(0.5 * (n + 1 - s))));
            const double x = 0.5 * (2.0 * k + n);
            const double rel = std::pow(2.0 * d, s) * std::pow(lam, -s) * g2 *
                               std::exp(log_gamma(x + 0.5 * (1 - s)) - log_gamma(x + 0.5 * (1 + s)));
            m32 = std::max(m32, rel_err(cm, rel * cp));
            const double lhs = multiplier_value(MultiplierKind::conformal(s), k, lam, n) * cm;
            meig = std::max(meig, rel_err(lhs, std::pow(4.0 * d, s) * g2 * cp));
          }
        }
        const std::string p = pname(n, s) + " delta=" + g6(d);
        cr.checks.push_back(err_check("coefficients vs projection " + p + " k<=5", m31, 1e-5, "closed-form vs quadrature"));
        cr.checks.push_back(err_check("c(-s) relation " + p + " k<=10", m32, 1e-8, "closed-form vs quadrature"));
        cr.checks.push_back(err_check("eigen-relation " + p + " k<=10", meig, 1e-9, "closed-form vs quadrature"));
        w31 = std::max(w31, m31);
        w32 = std::max(w32, m32);
        weig = std::max(weig, meig);
      }
    }
  }
  {
    // reference point (k, delta, lambda, s, n) = (3, 1, 0.8, 0.5, 1)
    const double cp = ch_coefficient(3, 1.0, 0.8, 0.5, 1), cm = ch_coefficient(3, 1.0, 0.8, -0.5, 1);
    const double g2 = std::exp(2.0 * (log_gamma(1.25) - log_gamma(0.75)));
    const double rel = std::pow(2.0, 0.5) * std::pow(0.8, -0.5) * g2 * std::exp(log_gamma(3.75) - log_gamma(4.25));
    cr.checks.push_back(rel_check("c(-s) relation at (3,1,0.8,0.5,1)", cm, rel * cp, 1e-8, "quadrature"));
    w32 = std::max(w32, rel_err(cm, rel * cp));
  }
  auto L_identity = [&](double lam, double a, double b) {
    const double lhs = std::exp(a * std::log(2.0 * lam) - log_gamma(a)) * ch_L(lam, a, b);
    const double rhs = std::exp(b * std::log(2.0 * lam) - log_gamma(b)) * ch_L(lam, b, a);
    const double e = rel_err(lhs, rhs);
    wL = std::max(wL, e);
    return e;
  };
  cr.checks.push_back(err_check("L identity at (0.7, 1.3, 2.1)", L_identity(0.7, 1.3, 2.1), 1e-8, "quadrature", "rel_err"));
  double mL = 0.0;
  for (double lam : {0.05, 0.5, 3.0})
    for (double a : {0.6, 1.7, 4.25})
      for (double b : {0.9, 2.6, 6.75}) mL = std::max(mL, L_identity(lam, a, b));
  cr.checks.push_back(err_check("L identity on a 3x3x3 grid", mL, 1e-8, "quadrature"));
  double mlim = 0.0;
  for (int k = 0; k <= 5; ++k) {
    const double s = 0.5, x = 0.5 * (2.0 * k + 1);
    const double L0 = ch_L(0.0, x + 0.5 * (1 - s), x + 0.5 * (1 + s));
    const double ex = std::exp(log_gamma(s) + log_gamma(x + 0.5 * (1 - s)) - log_gamma(x + 0.5 * (1 + s)));
    mlim = std::max(mlim, rel_err(L0, ex));
  }
  cr.checks.push_back(err_check("delta -> 0 limit of L, n=1 s=0.5 k<=5", mlim, 1e-8, "closed-form"));
  cr.summary = "projection " + e2(w31) + " (1e-5), c(-s) relation " + e2(w32) + " (1e-8), L identity " + e2(wL) +
               " (1e-8), eigen-relation " + e2(weig) + " (1e-9)";
  return cr;
}

Criterion fundamental(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 5;
  cr.title = "fundamental solution";
  double wf = 0.0;
  for (int n : ns_or(cfg, {1, 2, 3})) {
    const double folland = std::exp((n - 2) * std::numbers::ln2 - (n + 1) * std::log(kPi) + 2.0 * log_gamma(0.5 * n));
    cr.checks.push_back(rel_check("g_1 constant vs Folland n=" + std::to_string(n), const_g(n, 1.0), folland, 1e-14,
                                  "closed-form"));
    Rng rng(derive_seed(cfg.seed, 5000 + n));
    double m = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double r = 3.0 * rng.uniform(), w = -2.0 + 4.0 * rng.uniform();
      const double nrm = homogeneous_norm_rw(r, w);
      m = std::max(m, rel_err(fundamental_solution_rw(n, 1.0, r, w), folland * std::pow(nrm, -2.0 * n)));
    }
    cr.checks.push_back(err_check("g_1 pointwise vs Folland n=" + std::to_string(n) + " 10 points", m, 1e-14, "closed-form"));
    wf = std::max({wf, m, rel_err(const_g(n, 1.0), folland)});
  }
  double wp = 0.0;
  for (int n : ns_or(cfg, {1, 2})) {
    for (double s : {0.5, 1.0}) {
      for (double d : ds_or(cfg, {1.0})) {
        const double v = fundamental_solution_pairing(n, s, d).value;
        const double ex = std::pow(d, -(n + 1 - s));
        cr.checks.push_back(rel_check("weak delta pairing " + pname(n, s) + " delta=" + g6(d), v, ex, 1e-3,
                                      "quadrature"));
        wp = std::max(wp, rel_err(v, ex));
      }
    }
  }
  cr.summary = "Folland constant rel err " + e2(wf) + " (1e-14), weak pairing " + e2(wp) + " (1e-3)";
  return cr;
}

Criterion sharpness(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 6;
  cr.title = "sharpness of the non-homogeneous constant";
  cr.budget_seconds = 300;
  double w = 0.0;
  for (double s : ss_or(cfg, {0.3, 0.5, 0.7})) {
    for (double d : ds_or(cfg, {0.5, 1.0, 2.0})) {
      const InequalityReport r = hardy_nonhomog(make_u_function(1, -s, d), s, d, 1);
      Check c = err_check("optimizer ratio s=" + g6(s) + " delta=" + g6(d), std::abs(r.ratio - 1.0), 1e-3, "spectral",
                          "|ratio-1|");
      cr.checks.push_back(c);
      w = std::max(w, c.measured);
    }
  }
  cr.summary = "max |ratio - 1| " + e2(w) + " over " + std::to_string(cr.checks.size()) + " cases (tol 1e-3)";
  return cr;
}

struct TestFn {
  RadialFunction f;
  std::vector<double> s;
};

std::vector<TestFn> direction_functions(const VerifyConfig &cfg) {
  const std::vector<double> base = ss_or(cfg, {0.5});
  std::vector<double> wide = base;
  if (!cfg.s) wide = {0.3, 0.5, 0.7};
  std::vector<TestFn> out;
  out.push_back({make_gaussian(1.0, 1.0), wide});
  out.push_back({make_gaussian(0.5, 2.0), base});
  out.push_back({make_gaussian(2.0, 0.5), base});
  out.push_back({make_poly_gaussian(1.0, 1, 0, 1.0, 1.0), base});
  out.push_back({make_poly_gaussian(1.0, 0, 1, 1.0, 1.0), base});
  out.push_back({make_norm_power_gaussian(1, 1.0, 1.0), base});
  out.push_back({make_u_function(1, 0.2, 1.0), base});
  out.push_back({make_u_function(1, -0.2, 2.0), base});
  {
    RadialFunction f = make_u_function(1, -0.3, 1.0);
    f.add(make_gaussian(1.0, 1.0), 0.5);
    out.push_back({f, base});
  }
  {
    RadialFunction f = make_gaussian(1.0, 1.0);
    f.add(make_poly_gaussian(1.0, 1, 0, 2.0, 1.0), -0.4);
    out.push_back({f, base});
  }
  return out;
}

Criterion direction(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 7;
  cr.title = "inequality direction";
  cr.budget_seconds = 600;
  constexpr int n = 1;
  double wr = 0.0, wp = 0.0;
  std::string wp_at;
  const auto fns = direction_functions(cfg);
  for (const TestFn &t : fns) {
    for (double s : t.s) {
      const double d = 1.0;
      std::vector<InequalityReport> reps;
      reps.push_back(hardy_nonhomog(t.f, s, d, n));
      reps.push_back(hardy_pure(t.f, s, d, n, Variant::Nonhomog));
      reps.push_back(hardy_homog(t.f, s, n));
      reps.push_back(hardy_pure(t.f, s, d, n, Variant::Homog));
      reps.push_back(uncertainty(t.f, s, d, n, Variant::Nonhomog));
      reps.push_back(uncertainty(t.f, s, d, n, Variant::Homog));
      for (const auto &r : reps) {
        cr.checks.push_back(ratio_check(r, "spectral + quadrature"));
        wr = std::max(wr, r.ratio);
        if (std::isfinite(r.ratio_printed) && r.ratio_printed != r.ratio && r.ratio_printed > wp) {
          wp = r.ratio_printed;
          wp_at = r.theorem + " " + r.function_id + " s=" + g6(s);
        }
      }
    }
  }
  cr.summary = "max ratio " + fmt("%.4f", wr) + " over " + std::to_string(cr.checks.size()) + " reports, " +
               std::to_string(fns.size()) + " functions";
  if (wp > 0.0)
    cr.notes.push_back("with the printed homogeneous constant the largest ratio is " + fmt("%.4f", wp) + " (" + wp_at + ")");
  return cr;
}

Criterion ground_states(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 8;
  cr.title = "ground-state identities";
  cr.budget_seconds = 900;
  constexpr int n = 1;
  const double s = cfg.s ? cfg.s->front() : 0.5;
  const double d = cfg.delta ? cfg.delta->front() : 1.0;
  const McConfig mc = mc_config(cfg);
  {
    Check c;
    c.name = "pair samples";
    c.measured = static_cast<double>(cfg.mc_samples);
    c.expected = 1e6;
    c.metric = "measured>=expected";
    c.provenance = "config";
    c.pass = cfg.mc_samples >= 1000000;
    cr.checks.push_back(c);
  }
  auto printed_z = [](const GroundStateReport &g) {
    const double v = g.mc_constant_printed * g.mc.quad.value, e = g.mc_constant_printed * g.mc.std_error;
    return (g.hs_value - v) / std::sqrt(g.hs_err * g.hs_err + e * e);
  };

  RadialFunction f = make_u_function(n, -s, d);
  f.add(make_gaussian(1.0, 1.0), 0.5);
  const GroundStateReport gn = ground_state_nonhomog(f, s, d, n, mc);
  cr.checks.push_back(err_check("non-homogeneous " + f.id + " |z|", std::abs(gn.z_score()), 2.0,
                                "spectral vs monte-carlo", "|z|"));
  const GroundStateReport gh = ground_state_homog(make_norm_power_gaussian(1, 1.0, 1.0), s, n, mc);
  cr.checks.push_back(err_check("homogeneous " + gh.function_id + " |z|", std::abs(gh.z_score()), 2.0,
                                "spectral vs monte-carlo", "|z|"));
  const GroundStateReport go = ground_state_nonhomog(make_u_function(n, -s, d), s, d, n, mc);
  {
    Check c;
    c.name = "optimizer double integral";
    c.measured = go.mc.quad.value;
    c.expected = 0.0;
    c.metric = "exact";
    c.provenance = "monte-carlo";
    c.pass = go.mc.quad.value == 0.0;
    cr.checks.push_back(c);
  }
  cr.checks.push_back(err_check("optimizer spectral remainder |H_s| / err", std::abs(go.hs_value) / go.hs_err, 3.0,
                                "spectral", "|value|/err"));
  cr.summary = "z = " + fmt("%.2f", gn.z_score()) + " (non-homogeneous), " + fmt("%.2f", gh.z_score()) +
               " (homogeneous), optimizer remainder " + e2(go.hs_value);
  cr.notes.push_back("non-homogeneous: H_s = " + g6(gn.hs_value) + " +- " + e2(gn.hs_err) + ", a * I = " +
                     g6(gn.double_integral) + " +- " + e2(gn.double_integral_err) + "; printed a gives z = " +
                     fmt("%.1f", printed_z(gn)));
  cr.notes.push_back("homogeneous: H_s = " + g6(gh.hs_value) + " +- " + e2(gh.hs_err) + ", b * I = " +
                     g6(gh.double_integral) + " +- " + e2(gh.double_integral_err) + "; printed b gives z = " +
                     fmt("%.1f", printed_z(gh)));
  return cr;
}

Criterion operator_norms(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 9;
  cr.title = "operator norms";
  constexpr long kmax = 10000;
  for (int n : ns_or(cfg, {1, 2})) {
    for (double s : ss_or(cfg, {0.25, 0.5, 0.75})) {
      const UsScan scan = op_norm_Us_scan(s, n, 100000);
      long viol = 0;
      for (double lam : {0.3, 1.0, 7.0}) {
        for (long k = 0; k <= kmax; ++k) {
          const double c = multiplier_value(MultiplierKind::conformal(s), k, lam, n);
          const double p = multiplier_value(MultiplierKind::pure_power(s), k, lam, n);
          if (c > scan.sup * p * (1.0 + 1e-14)) ++viol;
        }
      }
      cr.checks.push_back(count_check("conformal <= |U_s| pure power " + pname(n, s) + " k<=1e4", viol, "closed-form"));
      cr.notes.push_back("|U_s| " + pname(n, s) + " = " + fmt("%.12f", scan.sup) +
                         (scan.argmax < 0 ? " (k -> infinity limit)" : " at k = " + std::to_string(scan.argmax)));
      if (s < 1.0) {
        const VsBoundReport v = vs_bound_check(s, n, kmax);
        cr.checks.push_back(count_check("V_s <= (n+2-s)/(n+s) " + pname(n, s) + " k<=1e4",
                                        v.violations_final + v.violations_intermediate, "closed-form"));
      }
    }
  }
  long total = 0;
  for (const auto &c : cr.checks) total += static_cast<long>(c.measured);
  cr.summary = std::to_string(total) + " violations over " + std::to_string(cr.checks.size()) + " scans";
  return cr;
}

Criterion hls(const VerifyConfig &cfg) {
  Criterion cr;
  cr.id = 10;
  cr.title = "HLS comparison";
  double wr = 0.0, wk = 0.0;
  for (int n : ns_or(cfg, {1, 2})) {
    for (double s : ss_or(cfg, {0.25, 0.5, 0.75})) {
      const HlsReport h = hls_weak_compare(s, n);
      cr.checks.push_back(rel_check("sharp/weak ratio " + pname(n, s), h.ratio, h.expected_ratio, 1e-14, "closed-form"));
      wr = std::max(wr, rel_err(h.ratio, h.expected_ratio));
    }
    const HlsReport h = hls_weak_compare(0.5, n);
    cr.checks.push_back(rel_check("k(n,1) quadrature n=" + std::to_string(n), h.k_quadrature.value, h.k_closed, 1e-8,
                                  "quadrature"));
    cr.checks.push_back(rel_check("k(n,1) sphere form n=" + std::to_string(n), h.k_sphere, h.k_closed, 1e-14,
                                  "closed-form"));
    wk = std::max(wk, rel_err(h.k_quadrature.value, h.k_closed));
  }
  cr.summary = "ratio rel err " + e2(wr) + " (1e-14), k(n,1) quadrature " + e2(wk) + " (1e-8)";
  return cr;
}

Criterion euclidean(const VerifyConfig &) {
  Criterion cr;
  cr.id = 11;
  cr.title = "Euclidean appendix";
  cr.budget_seconds = 180;
  cr.checks.push_back(rel_check("G_s oracle (s,m,|x|)=(0.5,1,0.7)", euclid_kernel_Gs_r(0.5, 1, 0.7),
                                euclid_kernel_Gs_oracle(0.5, 1, 0.7).value, 1e-8, "closed-form vs quadrature"));
  cr.checks.push_back(rel_check("G_s oracle (s,m,|x|)=(0.3,3,1.7)", euclid_kernel_Gs_r(0.3, 3, 1.7),
                                euclid_kernel_Gs_oracle(0.3, 3, 1.7).value, 1e-8, "closed-form vs quadrature"));
  cr.checks.push_back(rel_check("g_alpha oracle (alpha,m,|x|)=(0.6,3,1.2)", euclid_g_alpha_r(0.6, 3, 1.2),
                                euclid_g_alpha_oracle(0.6, 3, 1.2).value, 1e-8, "closed-form vs quadrature"));
  cr.checks.push_back(rel_check("E alpha-choice identity (m,s)=(1,0.25)", euclid_alpha_constant(0.25, 1, 0.375),
                                const_E_euclid(1, 0.25), 1e-14, "closed-form"));
  cr.checks.push_back(rel_check("E alpha-choice identity (m,s)=(3,0.7)", euclid_alpha_constant(0.7, 3, 1.1),
                                const_E_euclid(3, 0.7), 1e-14, "closed-form"));
  {
    EuclidFn g = [](const EuclidPoint &p) { return std::exp(-p.x[0] * p.x[0]); };
    const double pv = euclid_frac_laplacian(g, 0.5, 1, EuclidPoint{{0.0}}).value;
    cr.checks.push_back(rel_check("principal value vs semigroup, Gaussian m=1 s=0.5 x=0", pv,
                                  euclid_frac_laplacian_gaussian_oracle(0.5, 1, 0.0).value, 1e-6, "quadrature"));
  }
  {
    const InequalityReport r = euclid_hardy(euclid_gaussian(1.0), 0.3, 1);
    cr.checks.push_back(ratio_check(r, "quadrature"));
  }
  const EuclidGroundState gs = euclid_ground_state(euclid_gaussian(1.0), 0.25, 1, 0.375);
  cr.checks.push_back(rel_check("ground-state identity (m,s,alpha)=(1,0.25,0.375)", gs.lhs, gs.rhs, 1e-5, "quadrature"));
  cr.checks.push_back(rel_check("quadratic form vs Fourier, Gaussian m=1 s=0.25", gs.quad_form,
                                euclid_gaussian_quadratic_form(1.0, 0.25, 1), 1e-8, "quadrature vs closed-form"));
  const PairingReport pr = euclid_g_alpha_pairing(0.6, 3);
  cr.checks.push_back(rel_check("g_alpha Fourier pairing with |xi|^{-2 alpha}", pr.fourier_2alpha, pr.spatial, 1e-8,
                                "quadrature"));
  cr.notes.push_back("g_alpha pairing with |xi|^{-alpha} misses by " + fmt("%.1f", 100.0 * pr.rel_err_alpha()) +
                     "%; the symbol is |xi|^{-2 alpha}");
  cr.summary = "ground-state identity rel err " + e2(rel_err(gs.lhs, gs.rhs)) + " (1e-5), Hardy ratio " +
               fmt("%.4f", cr.checks[6].measured);
  return cr;
}

} // namespace

bool Criterion::pass() const {
  return error.empty() && !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

std::string version_string() { return HHARDY_VERSION; }

std::vector<std::string> suite_names() { return {"kernels", "spectral", "hardy", "euclid", "all"}; }

std::vector<int> suite_criteria(const std::string &suite, const VerifyConfig &cfg) {
  if (suite == "kernels") return {1, 2, 3, 5};
  if (suite == "spectral") return {4, 9};
  if (suite == "hardy") return cfg.sharpness_only ? std::vector<int>{6} : std::vector<int>{6, 7, 8, 10};
  if (suite == "euclid") return {11};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw InvalidInput("unknown suite '" + suite + "'");
}

Criterion run_criterion(int id, const VerifyConfig &cfg) {
  switch (id) {
  case 1: return kernel_oracle(cfg, false);
  case 2: return kernel_oracle(cfg, true);
  case 3: return normalizations(cfg);
  case 4: return cowling_haagerup(cfg);
  case 5: return fundamental(cfg);
  case 6: return sharpness(cfg);
  case 7: return direction(cfg);
  case 8: return ground_states(cfg);
  case 9: return operator_norms(cfg);
  case 10: return hls(cfg);
  case 11: return euclidean(cfg);
  default: throw InvalidInput("unknown criterion " + std::to_string(id));
  }
}

std::vector<Criterion> run_suite(const std::string &suite, const VerifyConfig &cfg, const CriterionCallback &on_done) {
  std::vector<Criterion> out;
  for (int id : suite_criteria(suite, cfg)) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out.push_back(run_criterion(id, cfg));
    } catch (const std::exception &e) {
      Criterion c;
      c.id = id;
      c.title = "criterion " + std::to_string(id);
      c.error = e.what();
      c.summary = "error: " + c.error;
      out.push_back(c);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_done) on_done(out.back(), secs);
  }
  return out;
}

std::string check_line(const Check &c) {
  std::string line = (c.pass ? "PASS  " : "FAIL  ") + c.name + ": " + c.metric + " measured=" + fmt("%.10g", c.measured);
  if (c.metric == "rel_err")
    line += " expected=" + fmt("%.10g", c.expected) + " rel_err=" + e2(rel_err(c.measured, c.expected));
  else if (c.metric == "exact" || c.metric == "measured>=expected")
    line += " expected=" + fmt("%.10g", c.expected);
  if (c.metric != "exact" && c.metric != "violations" && c.metric != "measured>=expected") line += " tol=" + e2(c.tol);
  return line + " [" + c.provenance + "]";
}

std::string criterion_line(const Criterion &c) {
  const char *tag = !c.error.empty() ? "ERROR" : c.pass() ? "PASS" : "FAIL";
  return std::string(tag) + " [" + std::to_string(c.id) + "] " + c.title + ": " + c.summary;
}

std::string verify_report_json(const std::string &suite, const VerifyConfig &cfg, const std::vector<Criterion> &results) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["tool"] = "hhardy";
  j["version"] = version_string();
  j["command"] = "verify";
  ordered_json conf;
  conf["suite"] = suite;
  conf["n"] = cfg.n ? ordered_json(*cfg.n) : ordered_json(nullptr);
  conf["s"] = cfg.s ? ordered_json(*cfg.s) : ordered_json(nullptr);
  conf["delta"] = cfg.delta ? ordered_json(*cfg.delta) : ordered_json(nullptr);
  conf["mc_samples"] = cfg.mc_samples;
  conf["seed"] = cfg.seed;
  conf["sharpness_only"] = cfg.sharpness_only;
  j["config"] = conf;
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const Criterion &c : results) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["title"] = c.title;
    cj["pass"] = c.pass();
    cj["summary"] = c.summary;
    if (!c.error.empty()) cj["error"] = c.error;
    ordered_json checks = ordered_json::array();
    for (const Check &k : c.checks) {
      ordered_json kj;
      kj["name"] = k.name;
      kj["pass"] = k.pass;
      kj["metric"] = k.metric;
      kj["measured"] = k.measured;
      kj["expected"] = k.expected;
      kj["tol"] = k.tol;
      kj["provenance"] = k.provenance;
      checks.push_back(kj);
    }
    cj["checks"] = checks;
    cj["notes"] = c.notes;
    arr.push_back(cj);
    all = all && c.pass();
  }
  j["criteria"] = arr;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

std::string verify_report_csv(const std::vector<Criterion> &results) {
  std::ostringstream os;
  os << "criterion,check,pass,metric,measured,expected,tol,provenance\n";
  auto quote = [](const std::string &s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const Criterion &c : results)
    for (const Check &k : c.checks)
      os << c.id << ',' << quote(k.name) << ',' << (k.pass ? "true" : "false") << ',' << k.metric << ','
         << shortest(k.measured) << ',' << shortest(k.expected) << ',' << shortest(k.tol) << ','
         << quote(k.provenance) << '\n';
  return os.str();
}

} // namespace hh
