#include "hhardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "hhardy/errors.hpp"
#include "hhardy/kernels.hpp"

namespace hh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

QuadOptions rel_opts(double rel_tol) {
  QuadOptions o;
  o.tol = Tol{0.0, rel_tol};
  o.max_intervals = 4000;
  return o;
}

void check_s_nonhomog(double s, int n, double delta) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (!(s > 0.0) || !(s < 0.5 * (n + 1.0))) throw DomainError("need 0 < s < (n+1)/2");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
}

void check_s_homog(double s, int n) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (!(s > 0.0) || !(s < 1.0)) throw DomainError("need 0 < s < 1");
}

void finish(InequalityReport &rep, const QuadResult &weighted, const QuadFormResult &qf, double rhs_factor) {
  rep.lhs = rep.constant * weighted.value;
  rep.lhs_err = rep.constant * weighted.abs_err_estimate;
  rep.rhs = rhs_factor * qf.quad.value;
  rep.rhs_err = rhs_factor * qf.quad.abs_err_estimate;
  rep.truncation = rhs_factor * qf.truncation_bound;
  if (rep.rhs == 0.0 && rep.lhs == 0.0) {
    rep.ratio = 0.0;
    rep.ratio_err = 0.0;
  } else {
    rep.ratio = rep.lhs / rep.rhs;
    rep.ratio_err = (rep.lhs != 0.0 ? rep.lhs_err / std::abs(rep.lhs) : 0.0) + rep.rhs_err / std::abs(rep.rhs);
  }
  rep.ratio_printed = std::isnan(rep.constant_printed) ? kNaN : rep.ratio * rep.constant_printed / rep.constant;
}

InequalityReport base_report(const char *theorem, const RadialFunction &f, int n, double s, double delta) {
  InequalityReport rep;
  rep.theorem = theorem;
  rep.function_id = f.id;
  rep.n = n;
  rep.s = s;
  rep.delta = delta;
  rep.constant_printed = kNaN;
  return rep;
}

double combine(double a, double b) { return std::sqrt(a * a + b * b); }

} // namespace

std::string variant_name(Variant v) { return v == Variant::Nonhomog ? "nonhomog" : "homog"; }

bool InequalityReport::holds() const { return ratio <= 1.0 + 3.0 * ratio_err + 1e-12; }

double spatial_scale(const RadialFunction &f) {
  double rho = 0.0;
  for (const Atom &atom : f.atoms) {
    if (const auto *g = std::get_if<PolyGaussAtom>(&atom)) {
      const double r = std::max(1.0, std::sqrt(static_cast<double>(g->j))) / std::sqrt(g->a);
      const double w = std::max(1.0, std::sqrt(0.5 * g->m)) / std::sqrt(g->b);
      rho = std::max({rho, r, 2.0 * std::sqrt(w)});
    } else if (const auto *u = std::get_if<UWeightAtom>(&atom)) {
      rho = std::max(rho, 2.0 * std::sqrt(u->delta));
    } else {
      rho = std::max(rho, std::get<NumericAtom>(atom).r_max);
    }
  }
  return rho > 0.0 ? rho : 1.0;
}

QuadResult weighted_norm_nonhomog(const RadialFunction &f, double p, double delta, int n, double rel_tol) {
  const double rho = spatial_scale(f);
  const auto F = [&](double r, double w) {
    const double v = f.eval(r, w);
    if (v == 0.0) return 0.0;
    const double a = delta + 0.25 * r * r;
    return v * v * (p == 0.0 ? 1.0 : std::pow(a * a + w * w, p));
  };
  // Polar form: slowly decaying integrands only meet a one-dimensional tail.
  return integrate_hn_polar(F, n, rel_opts(rel_tol), 2.0 * f.support.origin_vanishing_order, rho, false);
}

QuadResult weighted_norm_homog(const RadialFunction &f, double p, int n, double rel_tol) {
  const double rho = spatial_scale(f);
  const auto F = [&](double r, double w) {
    const double v = f.eval(r, w);
    if (v == 0.0) return 0.0;
    return v * v * std::pow(homogeneous_norm_rw(r, w), 2.0 * p);
  };
  const double exponent = 2.0 * p + 2.0 * f.support.origin_vanishing_order;
  return integrate_hn_polar(F, n, rel_opts(rel_tol), exponent, rho, false);
}

InequalityReport hardy_nonhomog(const RadialFunction &f, double s, double delta, int n, double rel_tol) {
  check_s_nonhomog(s, n, delta);
  InequalityReport rep = base_report("hardy_nonhomog", f, n, s, delta);
  rep.constant = const_C_s_delta(n, s, delta);
  const QuadResult W = weighted_norm_nonhomog(f, -s, delta, n, 0.1 * rel_tol);
  const QuadFormResult Q = quadratic_form(f, MultiplierKind::conformal(s), n, rel_tol);
  finish(rep, W, Q, 1.0);
  return rep;
}

InequalityReport hardy_homog(const RadialFunction &f, double s, int n, double rel_tol) {
  check_s_homog(s, n);
  InequalityReport rep = base_report("hardy_homog", f, n, s, 0.0);
  rep.constant = const_hardy_homog(n, s);
  rep.constant_printed = const_hardy_homog_printed(n, s);
  const QuadResult W = weighted_norm_homog(f, -s, n, 0.1 * rel_tol);
  const QuadFormResult Q = quadratic_form(f, MultiplierKind::lambda_op(s), n, rel_tol);
  finish(rep, W, Q, 1.0);
  return rep;
}

InequalityReport hardy_pure(const RadialFunction &f, double s, double delta, int n, Variant variant,
                            double rel_tol) {
  const QuadFormResult Q = [&] {
    if (variant == Variant::Nonhomog) check_s_nonhomog(s, n, delta);
    else check_s_homog(s, n);
    return quadratic_form(f, MultiplierKind::pure_power(s), n, rel_tol);
  }();
  if (variant == Variant::Nonhomog) {
    InequalityReport rep = base_report("hardy_pure_nonhomog", f, n, s, delta);
    rep.constant = const_C_s_delta(n, s, delta);
    finish(rep, weighted_norm_nonhomog(f, -s, delta, n, 0.1 * rel_tol), Q, op_norm_Us(s, n, 100000));
    return rep;
  }
  InequalityReport rep = base_report("hardy_pure_homog", f, n, s, 0.0);
  rep.constant = const_hardy_homog(n, s);
  rep.constant_printed = const_hardy_homog_printed(n, s);
  finish(rep, weighted_norm_homog(f, -s, n, 0.1 * rel_tol), Q, const_Vs_bound(n, s));
  return rep;
}

InequalityReport uncertainty(const RadialFunction &f, double s, double delta, int n, Variant variant,
                             double rel_tol) {
  InequalityReport rep;
  QuadResult l2, W;
  QuadFormResult Q;
  if (variant == Variant::Nonhomog) {
    check_s_nonhomog(s, n, delta);
    rep = base_report("uncertainty_nonhomog", f, n, s, delta);
    rep.constant = const_C_s_delta(n, s, delta);
    l2 = weighted_norm_nonhomog(f, 0.0, delta, n, 0.1 * rel_tol);
    // |u_{sigma,delta}|^2 times the weight decays like |x|^{-4(n+1+sigma-s)}.
    const bool infinite = std::any_of(f.atoms.begin(), f.atoms.end(), [&](const Atom &a) {
      const auto *u = std::get_if<UWeightAtom>(&a);
      return u && u->coef != 0.0 && s - u->s >= 0.5 * (n + 1);
    });
    if (infinite) {
      rep.lhs = l2.value * l2.value;
      rep.lhs_err = 2.0 * l2.value * l2.abs_err_estimate;
      rep.rhs = std::numeric_limits<double>::infinity();
      rep.ratio = 0.0;
      rep.ratio_printed = kNaN;
      return rep;
    }
    W = weighted_norm_nonhomog(f, s, delta, n, 0.1 * rel_tol);
    Q = quadratic_form(f, MultiplierKind::conformal(s), n, rel_tol);
  } else {
    check_s_homog(s, n);
    rep = base_report("uncertainty_homog", f, n, s, 0.0);
    rep.constant = const_hardy_homog(n, s);
    rep.constant_printed = const_hardy_homog_printed(n, s);
    l2 = weighted_norm_homog(f, 0.0, n, 0.1 * rel_tol);
    W = weighted_norm_homog(f, s, n, 0.1 * rel_tol);
    Q = quadratic_form(f, MultiplierKind::lambda_op(s), n, rel_tol);
  }
  QuadResult sq;
  sq.value = l2.value * l2.value;
  sq.abs_err_estimate = 2.0 * l2.value * l2.abs_err_estimate;
  QuadFormResult right = Q;
  right.quad.value = W.value * Q.quad.value;
  right.quad.abs_err_estimate = W.abs_err_estimate * Q.quad.value + W.value * Q.quad.abs_err_estimate;
  right.truncation_bound = W.value * Q.truncation_bound;
  finish(rep, sq, right, 1.0);
  return rep;
}

CauchySchwarzReport uncertainty_midstep(const RadialFunction &f, double s, double delta, int n, Variant variant) {
  CauchySchwarzReport out;
  if (variant == Variant::Nonhomog) {
    out.l2 = weighted_norm_nonhomog(f, 0.0, delta, n).value;
    out.bound = std::sqrt(weighted_norm_nonhomog(f, s, delta, n).value * weighted_norm_nonhomog(f, -s, delta, n).value);
  } else {
    out.l2 = weighted_norm_homog(f, 0.0, n).value;
    out.bound = std::sqrt(weighted_norm_homog(f, s, n).value * weighted_norm_homog(f, -s, n).value);
  }
  return out;
}

double GroundStateReport::z_score() const {
  const double diff = hs_value - double_integral;
  const double sd = combine(hs_err, double_integral_err);
  if (sd == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / sd;
}

bool GroundStateReport::agrees(double n_sigma) const { return std::abs(z_score()) <= n_sigma; }

GroundStateReport ground_state_nonhomog(const RadialFunction &f, double s, double delta, int n,
                                        const McConfig &cfg, double rel_tol) {
  if (!(s > 0.0) || !(s < 1.0)) throw DomainError("ground_state_nonhomog: need 0 < s < 1");
  check_s_nonhomog(s, n, delta);
  GroundStateReport rep;
  rep.theorem = "ground_state_nonhomog";
  rep.function_id = f.id;
  rep.n = n;
  rep.s = s;
  rep.delta = delta;
  rep.constant = const_C_s_delta(n, s, delta);
  const QuadFormResult Q = quadratic_form(f, MultiplierKind::conformal(s), n, rel_tol);
  const QuadResult W = weighted_norm_nonhomog(f, -s, delta, n, 0.1 * rel_tol);
  rep.quad_form = Q.quad.value;
  rep.quad_form_err = Q.quad.abs_err_estimate;
  rep.weighted = W.value;
  rep.weighted_err = W.abs_err_estimate;
  rep.hs_value = Q.quad.value - rep.constant * W.value;
  rep.hs_err = Q.quad.abs_err_estimate + rep.constant * W.abs_err_estimate;

  const int Q_dim = 2 * n + 2;
  const auto g = [&](const HPoint &x, double &u) {
    const double r = std::sqrt(z_norm2(x));
    u = u_weight_rw(n, r, x.w, -s, delta);
    return f.eval(r, x.w) / u;
  };
  const PairIntegrand G = [&](const HPoint &x, const HPoint &y, const HPoint &h) {
    const double nh = homogeneous_norm(h);
    if (nh == 0.0) return 0.0;
    double ux, uy;
    const double d = g(x, ux) - g(y, uy);
    if (d == 0.0) return 0.0;
    return d * d * std::pow(nh, -Q_dim - 2.0 * s) * ux * uy;
  };
  const double rho = spatial_scale(f);
  const HnSampler xs{n, RadialLaw{rho, static_cast<double>(Q_dim), 2.0}};
  const HnSampler hs{n, RadialLaw{rho, 2.0 - 2.0 * s, 2.0 * s}};
  rep.mc = mc_double_integral(G, xs, hs, cfg);
  rep.mc_constant = const_a(n, s);
  rep.mc_constant_printed = const_a_printed(n, s);
  rep.double_integral = rep.mc_constant * rep.mc.quad.value;
  rep.double_integral_err = rep.mc_constant * rep.mc.std_error;
  return rep;
}

GroundStateReport ground_state_homog(const RadialFunction &f, double s, int n, const McConfig &cfg,
                                     double rel_tol) {
  check_s_homog(s, n);
  if (!f.support.away_from_origin())
    throw InvalidInput("ground_state_homog: f must vanish near the origin");
  GroundStateReport rep;
  rep.theorem = "ground_state_homog";
  rep.function_id = f.id;
  rep.n = n;
  rep.s = s;
  rep.constant = const_B_ground(n, s);
  const QuadFormResult Q = quadratic_form(f, MultiplierKind::lambda_op(1.0 - s), n, rel_tol);
  const QuadResult W = weighted_norm_homog(f, -(1.0 - s), n, 0.1 * rel_tol);
  rep.quad_form = Q.quad.value;
  rep.quad_form_err = Q.quad.abs_err_estimate;
  rep.weighted = W.value;
  rep.weighted_err = W.abs_err_estimate;
  rep.hs_value = Q.quad.value - rep.constant * W.value;
  rep.hs_err = Q.quad.abs_err_estimate + rep.constant * W.abs_err_estimate;

  const int Q_dim = 2 * n + 2;
  const auto G1 = [&](const HPoint &x, double &g1) {
    const double r = std::sqrt(z_norm2(x));
    g1 = fundamental_solution_rw(n, 1.0, r, x.w);
    return f.eval(r, x.w) / g1;
  };
  const PairIntegrand G = [&](const HPoint &x, const HPoint &y, const HPoint &h) {
    const double nh = homogeneous_norm(h);
    if (nh == 0.0 || homogeneous_norm(x) == 0.0 || homogeneous_norm(y) == 0.0) return 0.0;
    double gx, gy;
    const double d = G1(x, gx) - G1(y, gy);
    if (d == 0.0) return 0.0;
    return d * d * omega_weight(h) * std::pow(nh, -Q_dim - 2.0 * (1.0 - s)) * gx * gy;
  };
  const double rho = spatial_scale(f);
  const HnSampler xs{n, RadialLaw{rho, 2.0, 2.0}};
  const HnSampler hs{n, RadialLaw{rho, 2.0 * s, 2.0 * (1.0 - s)}};
  rep.mc = mc_double_integral(G, xs, hs, cfg);
  rep.mc_constant = const_b(n, s);
  rep.mc_constant_printed = const_b_printed(n, s);
  rep.double_integral = rep.mc_constant * rep.mc.quad.value;
  rep.double_integral_err = rep.mc_constant * rep.mc.std_error;
  return rep;
}

HlsReport hls_weak_compare(double s, int n) {
  if (n < 1) throw InvalidInput("hls_weak_compare: n must be positive");
  if (!(s > 0.0) || !(s < n + 1.0)) throw DomainError("hls_weak_compare: need 0 < s < n+1");
  HlsReport rep;
  rep.n = n;
  rep.s = s;
  const double pi = std::numbers::pi;
  const double omega = sphere_area(2 * n + 1);
  rep.k_closed = std::pow(pi, n + 1.0) * std::pow(2.0, -2.0 * n) / std::tgamma(n + 1.0);
  rep.k_sphere = std::pow(2.0, -2.0 * n - 1.0) * omega;
  rep.sharp_constant = const_C_s_delta(n, s, 1.0);
  // C * int |f|^2 / W <= 4^s (k / omega)^{s/(n+1)} <L_s f, f> after the HLS and Hoelder steps.
  rep.ratio = std::pow(4.0, s) * std::pow(rep.k_closed / omega, s / (n + 1.0));
  rep.weak_constant = rep.sharp_constant / rep.ratio;
  rep.expected_ratio = std::pow(2.0, s / (n + 1.0));
  const auto F = [n](double r, double w) {
    const double a = 1.0 + r * r;
    return std::pow(a * a + w * w, -n - 1.0);
  };
  QuadOptions o;
  o.tol = Tol{0.0, 1e-11};
  rep.k_quadrature = integrate_hn_radial(F, n, o);
  return rep;
}

} // namespace hh
