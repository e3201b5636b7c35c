#include "hhardy/euclid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "hhardy/errors.hpp"
#include "hhardy/kernels.hpp"

namespace hh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_dim(int m, const char *who) {
  if (m != 1 && m != 3) throw DomainError(std::string(who) + ": supported dimensions are 1 and 3");
}

void require_unit(double s, const char *who) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(who) + ": need 0 < s < 1");
}

double log_g_alpha_constant(double alpha, int m) {
  return log_gamma(0.5 * m - alpha) - log_gamma(alpha) - alpha * std::log(4.0) -
         0.5 * m * std::log(kPi);
}

QuadOptions opts(double rel, double abs = 0.0) {
  QuadOptions o;
  o.tol = {abs, rel};
  o.max_intervals = 20000;
  return o;
}

// Power of r seen by g near r = 0, from two small samples.
double endpoint_exponent(const Fn1 &g, double scale) {
  const double r1 = 1e-6 * scale, r2 = 1e-5 * scale;
  const double a = std::abs(g(r1)), b = std::abs(g(r2));
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) return 0.0;
  return std::clamp(std::log10(b / a), -0.9, 6.0);
}

// int_0^inf g for g ~ r^p at 0 and ~ r^{-q} at infinity, with q estimated
// from samples; r = S u^{-1/(q-1)} flattens the algebraic tail.
QuadResult integrate_algebraic(const Fn1 &g, double p, double S, const QuadOptions &opt) {
  const double a = std::abs(g(1e3 * S)), b = std::abs(g(1e4 * S));
  double q = 8.0;
  if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)) q = std::clamp(std::log10(a / b), 1.05, 8.0);
  const double gam = 1.0 / (q - 1.0);
  const double ph = 1.0 / (1.0 + p);
  auto mapped = [&](double u) -> double {
    if (u <= 0.0) return 0.0;
    if (u < 1.0) return g(S * std::pow(u, ph)) * S * ph * std::pow(u, ph - 1.0);
    const double v = 2.0 - u;
    if (v <= 0.0) return 0.0;
    const double r = S * std::pow(v, -gam);
    if (!std::isfinite(r)) return 0.0;
    const double gr = g(r);
    return gr == 0.0 ? 0.0 : gr * gam * r / v;
  };
  return integrate_breakpoints(mapped, {0.0, 0.5, 1.0, 1.5, 2.0}, opt);
}

struct SphereRule {
  std::vector<std::array<double, 3>> dirs;
  std::vector<double> weights;
};

// Gauss-Legendre in cos(theta) times a uniform rule in phi on S^2.
const SphereRule &sphere_rule() {
  static const SphereRule rule = [] {
    SphereRule r;
    using GL = boost::math::quadrature::gauss<double, 32>;
    const auto &x = GL::abscissa();
    const auto &w = GL::weights();
    constexpr int nphi = 32;
    auto push = [&](double c, double wc) {
      const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int j = 0; j < nphi; ++j) {
        const double ph = 2.0 * kPi * (j + 0.5) / nphi;
        r.dirs.push_back({sn * std::cos(ph), sn * std::sin(ph), c});
        r.weights.push_back(wc * 2.0 * kPi / nphi);
      }
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
      push(x[i], w[i]);
      if (x[i] != 0.0) push(-x[i], w[i]);
    }
    return r;
  }();
  return rule;
}

// Solves I(rho_i) = I + A rho_i^p1 + B rho_i^p2 for I.
double richardson3(const double rho[3], const double val[3], double p1, double p2) {
  double M[3][4];
  for (int i = 0; i < 3; ++i) {
    M[i][0] = 1.0;
    M[i][1] = std::pow(rho[i], p1);
    M[i][2] = std::pow(rho[i], p2);
    M[i][3] = val[i];
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    std::swap(M[c], M[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = M[r][c] / M[c][c];
      for (int k = c; k < 4; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return M[0][3] / M[0][0];
}

// w = 1 - t, passed separately to keep it exact near the diagonal.
double reduced_kernel(double s, int m, double r, double t, double w) {
  const double e = -1.0 - 2.0 * s;
  const double base = std::pow(r, e);
  if (m == 1) return 2.0 * base * (std::pow(w, e) + std::pow(1.0 + t, e));
  const double diff = t < 0.5 ? std::pow(1.0 + t, e) * std::expm1(-2.0 * e * std::atanh(t))
                               : std::pow(w, e) - std::pow(1.0 + t, e);
  return 8.0 * kPi * kPi * r * r * t * base * diff /
         (1.0 + 2.0 * s);
}

} // namespace

double EuclidPoint::norm() const {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

EuclidRadial euclid_gaussian(double a) {
  if (!(a > 0.0)) throw DomainError("euclid_gaussian: a must be positive");
  EuclidRadial f;
  f.id = "gauss(" + std::to_string(a) + ")";
  f.profile = [a](double r) { return std::exp(-a * r * r); };
  f.scale = 1.0 / std::sqrt(a);
  return f;
}

double euclid_gaussian_heat(double t, int m, double r) {
  const double d = 1.0 + 4.0 * t;
  return std::pow(d, -0.5 * m) * std::exp(-r * r / d);
}

double euclid_g_alpha_r(double alpha, int m, double r) {
  if (!(alpha > 0.0 && alpha < 0.5 * m)) throw DomainError("euclid_g_alpha: need 0 < alpha < m/2");
  if (r == 0.0) throw SingularPointError("euclid_g_alpha: origin");
  return std::exp(log_g_alpha_constant(alpha, m) + (2.0 * alpha - m) * std::log(r));
}

double euclid_g_alpha(double alpha, int m, const EuclidPoint &x) {
  if (x.dim() != m) throw InvalidInput("euclid_g_alpha: dimension mismatch");
  return euclid_g_alpha_r(alpha, m, x.norm());
}

QuadResult euclid_g_alpha_oracle(double alpha, int m, double r, double rel_tol) {
  if (!(alpha > 0.0 && alpha < 0.5 * m)) throw DomainError("euclid_g_alpha_oracle: need 0 < alpha < m/2");
  if (r == 0.0) throw SingularPointError("euclid_g_alpha_oracle: origin");
  const double pref = std::exp(-log_gamma(alpha) - 0.5 * m * std::log(4.0 * kPi));
  // in u = 1/t the algebraic tail t^{alpha - 1 - m/2} becomes e^{-r^2 u / 4}
  const double p = 0.5 * m - alpha - 1.0;
  auto f = [&](double u) { return pref * std::exp(-0.25 * r * r * u + p * std::log(u)); };
  return integrate_semi_infinite(f, p, opts(rel_tol), 4.0 / (r * r));
}

double euclid_kernel_Gs_constant(double s, int m) {
  require_unit(s, "euclid_kernel_Gs");
  return std::exp(s * std::log(4.0) + log_gamma(0.5 * m + s) - 0.5 * m * std::log(kPi)) /
         abs_gamma_neg(s);
}

double euclid_kernel_Gs_r(double s, int m, double r) {
  if (r == 0.0) throw SingularPointError("euclid_kernel_Gs: origin");
  return euclid_kernel_Gs_constant(s, m) * std::pow(r, -2.0 * s - m);
}

double euclid_kernel_Gs(double s, int m, const EuclidPoint &x) {
  if (x.dim() != m) throw InvalidInput("euclid_kernel_Gs: dimension mismatch");
  return euclid_kernel_Gs_r(s, m, x.norm());
}

QuadResult euclid_kernel_Gs_oracle(double s, int m, double r, double rel_tol) {
  require_unit(s, "euclid_kernel_Gs_oracle");
  if (r == 0.0) throw SingularPointError("euclid_kernel_Gs_oracle: origin");
  const double pref = 1.0 / abs_gamma_neg(s);
  auto f = [&](double t) {
    return pref * std::exp(-0.5 * m * std::log(4.0 * kPi * t) - r * r / (4.0 * t) -
                           (s + 1.0) * std::log(t));
  };
  return integrate_semi_infinite(f, 0.0, opts(rel_tol), 0.25 * r * r);
}

FracLaplacianResult euclid_frac_laplacian(const EuclidFn &f, double s, int m, const EuclidPoint &x,
                                          const PvOptions &opt) {
  require_unit(s, "euclid_frac_laplacian");
  require_dim(m, "euclid_frac_laplacian");
  if (x.dim() != m) throw InvalidInput("euclid_frac_laplacian: dimension mismatch");
  if (!(opt.rho > 0.0)) throw DomainError("euclid_frac_laplacian: rho must be positive");
  const double c = euclid_kernel_Gs_constant(s, m);
  const double fx = f(x);

  // Symmetric-pair sum over the sphere of radius h around x.
  auto shell = [&](double h) {
    if (m == 1) {
      EuclidPoint p{{x.x[0] + h}}, q{{x.x[0] - h}};
      return 2.0 * fx - f(p) - f(q);
    }
    const SphereRule &rule = sphere_rule();
    double acc = 0.0;
    EuclidPoint p{{0, 0, 0}}, q{{0, 0, 0}};
    for (std::size_t i = 0; i < rule.dirs.size(); ++i) {
      for (int d = 0; d < 3; ++d) {
        p.x[d] = x.x[d] + h * rule.dirs[i][d];
        q.x[d] = x.x[d] - h * rule.dirs[i][d];
      }
      acc += rule.weights[i] * (2.0 * fx - f(p) - f(q));
    }
    return 0.5 * acc * h * h;
  };

  // Beyond R the constant part of the shell integrates in closed form.
  constexpr double R = 1.0;
  const double omega = sphere_area(m - 1);
  auto far = [&](double tau) {
    const double h = R + tau;
    return c * (omega * fx * std::pow(h, m - 1.0) - shell(h)) * std::pow(h, -1.0 - 2.0 * s - (m - 1));
  };
  const QuadResult qf = integrate_semi_infinite(far, 0.0, opts(opt.rel_tol, 1e-15), 1.0);
  const double tail = c * omega * fx * std::pow(R, -2.0 * s) / (2.0 * s) - qf.value;

  FracLaplacianResult out;
  double rho[3];
  double err = qf.abs_err_estimate;
  for (int i = 0; i < 3; ++i) {
    rho[i] = opt.rho / double(1 << i);
    if (!(rho[i] < R)) throw DomainError("euclid_frac_laplacian: rho must be below 1");
    auto g = [&](double h) { return c * shell(h) * std::pow(h, -1.0 - 2.0 * s - (m - 1)); };
    QuadResult q = integrate_interval(g, rho[i], R, opts(opt.rel_tol, 1e-15));
    out.raw[i] = q.value + tail;
    err = std::max(err, q.abs_err_estimate + qf.abs_err_estimate);
  }
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(out.raw[i]))
      throw ConvergenceError("euclid_frac_laplacian: principal value diverged", kNaN, kNaN);
  }
  const double p1 = 2.0 - 2.0 * s, p2 = 4.0 - 2.0 * s;
  out.value = richardson3(rho, out.raw, p1, p2);
  // Compare with the one-term extrapolation from the two smallest radii.
  const double k1 = std::pow(2.0, p1);
  const double two = (k1 * out.raw[2] - out.raw[1]) / (k1 - 1.0);
  out.err = std::abs(out.value - two) + err;
  return out;
}

QuadResult euclid_frac_laplacian_gaussian_oracle(double s, int m, double r, double rel_tol) {
  require_unit(s, "euclid_frac_laplacian_gaussian_oracle");
  const double f0 = std::exp(-r * r);
  const double pref = 1.0 / abs_gamma_neg(s);
  constexpr double T = 1.0;
  auto g = [&](double t) {
    const double d = 1.0 + 4.0 * t;
    const double diff = -f0 * std::expm1(-0.5 * m * std::log1p(4.0 * t) + 4.0 * t * r * r / d);
    return pref * diff * std::pow(t, -1.0 - s);
  };
  QuadResult head = integrate_interval(
      [&](double u) { return u > 0.0 ? g(T * std::pow(u, 1.0 / (1.0 - s))) * T / (1.0 - s) * std::pow(u, s / (1.0 - s)) : 0.0; },
      0.0, 1.0, opts(rel_tol, 1e-15));
  auto heat = [&](double tau) {
    const double t = T + tau;
    return pref * euclid_gaussian_heat(t, m, r) * std::pow(t, -1.0 - s);
  };
  const QuadResult tail = integrate_semi_infinite(heat, 0.0, opts(rel_tol, 1e-15), 1.0);
  QuadResult out;
  out.value = head.value + pref * f0 * std::pow(T, -s) / s - tail.value;
  out.abs_err_estimate = head.abs_err_estimate + tail.abs_err_estimate;
  out.evaluations = head.evaluations + tail.evaluations;
  return out;
}

double euclid_gaussian_quadratic_form(double a, double s, int m) {
  require_unit(s, "euclid_gaussian_quadratic_form");
  if (!(a > 0.0)) throw DomainError("euclid_gaussian_quadratic_form: a must be positive");
  return std::pow(2.0 * kPi, -m) * std::pow(kPi / a, m) * sphere_area(m - 1) * 0.5 *
         std::exp((s + 0.5 * m) * std::log(2.0 * a) + log_gamma(s + 0.5 * m));
}

QuadResult euclid_radial_pair_integral(const std::function<double(double, double)> &F, double s, int m,
                                       double scale, double rel_tol) {
  require_unit(s, "euclid_radial_pair_integral");
  require_dim(m, "euclid_radial_pair_integral");
  QuadOptions inner = opts(0.1 * rel_tol, 1e-300);
  // Far out the profile underflows and relative accuracy is meaningless.
  inner.throw_on_failure = false;
  inner.max_intervals = 4000;
  auto outer = [&](double r) {
    // The near-origin partner sits at t ~ scale / r once r is large.
    std::vector<double> cuts{0.0};
    for (double k : {1.0, 4.0, 16.0})
      if (k * scale / r < 0.5) cuts.push_back(k * scale / r);
    cuts.push_back(0.5);
    auto g = [&](double t) { return F(r, r * t) * reduced_kernel(s, m, r, t, 1.0 - t); };
    // Near the diagonal the integrand behaves like (1-t)^{1-2s}; 1 - t = u^{1/(2-2s)} / 2 flattens it.
    const double gam = 1.0 / (2.0 - 2.0 * s);
    // Below wc the difference in F cancels; use F ~ w^2 (G1 + G2' (w - wc)) fitted at wc and 2wc.
    constexpr double wc = 1e-4;
    const double G1 = F(r, r - r * wc) / (wc * wc);
    const double G2 = F(r, r - 2.0 * r * wc) / (4.0 * wc * wc);
    auto diag = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double w = 0.5 * std::pow(u, gam);
      if (!(w > 0.0)) return 0.0;
      const double d = w < wc ? w * w * (G1 + (G2 - G1) * (w / wc - 1.0)) : F(r, r - r * w);
      if (d == 0.0) return 0.0;
      return d * reduced_kernel(s, m, r, 1.0 - w, w) * 0.5 * gam * std::pow(u, gam - 1.0);
    };
    const double a = integrate_breakpoints(g, cuts, inner).value;
    const double b = integrate_breakpoints(diag, {0.0, 0.1, 0.5, 1.0}, inner).value;
    return 2.0 * r * (a + b);
  };
  const double p = endpoint_exponent(outer, scale);
  return integrate_algebraic(outer, p, scale, opts(rel_tol));
}

QuadResult euclid_quadratic_form(const EuclidRadial &f, double s, int m, double rel_tol) {
  auto F = [&](double r, double q) {
    const double d = f(r) - f(q);
    return d * d;
  };
  QuadResult q = euclid_radial_pair_integral(F, s, m, f.scale, rel_tol);
  const double e = const_e_euclid(m, s);
  q.value *= e;
  q.abs_err_estimate *= e;
  return q;
}

QuadResult euclid_weighted_norm(const EuclidRadial &f, double s, int m, double rel_tol) {
  require_dim(m, "euclid_weighted_norm");
  const double w = sphere_area(m - 1);
  auto g = [&](double r) {
    const double v = f(r);
    return w * v * v * std::pow(r, m - 1.0 - 2.0 * s);
  };
  return integrate_semi_infinite(g, m - 1.0 - 2.0 * s, opts(rel_tol), f.scale);
}

double euclid_alpha_constant(double s, int m, double alpha) {
  if (!(s < alpha && alpha < 0.5 * m)) throw DomainError("euclid_alpha_constant: need s < alpha < m/2");
  return std::exp(s * std::log(4.0) + log_gamma(0.5 * m - alpha + s) + log_gamma(alpha) -
                  log_gamma(alpha - s) - log_gamma(0.5 * m - alpha));
}

InequalityReport euclid_hardy(const EuclidRadial &f, double s, int m, double rel_tol) {
  require_dim(m, "euclid_hardy");
  InequalityReport rep;
  rep.theorem = "euclidean_hardy";
  rep.function_id = f.id;
  rep.n = m;
  rep.s = s;
  rep.delta = 0.0;
  rep.constant = const_E_euclid(m, s);
  rep.constant_printed = kNaN;
  const QuadResult wn = euclid_weighted_norm(f, s, m, 0.1 * rel_tol);
  const QuadResult qf = euclid_quadratic_form(f, s, m, rel_tol);
  rep.lhs = rep.constant * wn.value;
  rep.lhs_err = rep.constant * wn.abs_err_estimate;
  rep.rhs = qf.value;
  rep.rhs_err = qf.abs_err_estimate;
  rep.ratio = rep.lhs / rep.rhs;
  rep.ratio_err = std::abs(rep.lhs_err / rep.lhs) + std::abs(rep.rhs_err / rep.rhs);
  rep.ratio_printed = rep.ratio;
  rep.truncation = 0.0;
  return rep;
}

double EuclidGroundState::rel_diff() const { return std::abs(lhs - rhs) / std::abs(rhs); }

EuclidGroundState euclid_ground_state(const EuclidRadial &u, double s, int m, double alpha,
                                      double rel_tol) {
  require_dim(m, "euclid_ground_state");
  require_unit(s, "euclid_ground_state");
  if (!(s < alpha && alpha < 0.5 * m)) throw DomainError("euclid_ground_state: need s < alpha < m/2");
  EuclidGroundState gs;
  gs.m = m;
  gs.s = s;
  gs.alpha = alpha;
  const QuadResult qf = euclid_quadratic_form(u, s, m, rel_tol);
  gs.quad_form = qf.value;
  gs.quad_form_err = qf.abs_err_estimate;
  const double ratio = euclid_alpha_constant(s, m, alpha);
  const QuadResult wn = euclid_weighted_norm(u, s, m, 0.1 * rel_tol);
  gs.weighted = ratio * wn.value;
  gs.weighted_err = ratio * wn.abs_err_estimate;
  gs.lhs = gs.quad_form - gs.weighted;

  const double lc = log_g_alpha_constant(alpha, m);
  const double ex = 2.0 * alpha - m;
  auto F = [&](double r, double q) {
    const double gr = std::exp(lc + ex * std::log(r));
    const double gq = std::exp(lc + ex * std::log(q));
    const double d = u(r) / gr - u(q) / gq;
    return d * d * gr * gq;
  };
  const QuadResult di = euclid_radial_pair_integral(F, s, m, u.scale, rel_tol);
  const double e = const_e_euclid(m, s);
  gs.rhs = e * di.value;
  gs.rhs_err = e * di.abs_err_estimate;
  return gs;
}

double PairingReport::rel_err_2alpha() const { return std::abs(fourier_2alpha - spatial) / spatial; }
double PairingReport::rel_err_alpha() const { return std::abs(fourier_alpha - spatial) / spatial; }

PairingReport euclid_g_alpha_pairing(double alpha, int m) {
  if (!(alpha > 0.0 && alpha < 0.5 * m)) throw DomainError("euclid_g_alpha_pairing: need 0 < alpha < m/2");
  PairingReport rep;
  rep.alpha = alpha;
  rep.m = m;
  const double w = sphere_area(m - 1);
  auto spatial = [&](double r) {
    return w * euclid_g_alpha_r(alpha, m, r) * std::exp(-r * r) * std::pow(r, m - 1.0);
  };
  rep.spatial = integrate_semi_infinite(spatial, 2.0 * alpha - 1.0, opts(1e-12), 1.0).value;
  auto fourier = [&](double beta) {
    const double pref = std::pow(2.0 * kPi, -m) * w * std::pow(kPi, 0.5 * m);
    auto g = [&](double xi) { return pref * std::pow(xi, m - 1.0 - beta) * std::exp(-0.25 * xi * xi); };
    return integrate_semi_infinite(g, m - 1.0 - beta, opts(1e-12), 2.0).value;
  };
  rep.fourier_2alpha = fourier(2.0 * alpha);
  rep.fourier_alpha = fourier(alpha);
  return rep;
}

} // namespace hh
