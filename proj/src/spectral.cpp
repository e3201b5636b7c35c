#include "hhardy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hermite.hpp>

#include "hhardy/errors.hpp"

namespace hh {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma(z + d) / Gamma(z)
double gamma_shift_ratio(double z, double d) {
  if (d == 0.0) return 1.0;
  if (d > 0.0) return 1.0 / boost::math::tgamma_delta_ratio(z, d);
  return boost::math::tgamma_delta_ratio(z + d, -d);
}

struct GLRule {
  std::vector<double> x, w;  // on [-1, 1]
};

const GLRule &gl20() {
  static const GLRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    GLRule g;
    const auto &a = G::abscissa();
    const auto &wt = G::weights();
    for (size_t i = 0; i < a.size(); ++i) {
      g.x.push_back(-a[i]);
      g.w.push_back(wt[i]);
      g.x.push_back(a[i]);
      g.w.push_back(wt[i]);
    }
    return g;
  }();
  return rule;
}

void composite_gl(double a, double b, int panels, std::vector<double> &x, std::vector<double> &w) {
  const GLRule &g = gl20();
  x.clear();
  w.clear();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (size_t i = 0; i < g.x.size(); ++i) {
      x.push_back(mid + 0.5 * h * g.x[i]);
      w.push_back(0.5 * h * g.w[i]);
    }
  }
}

// out[k] = L_k^alpha(x) e^{-x/2}, rescaled on the fly so large x does not overflow.
void laguerre_fn_sequence(int kmax, double alpha, double x, std::vector<double> &out) {
  out.assign(static_cast<size_t>(kmax) + 1, 0.0);
  double log_scale = -0.5 * x;
  double scale = std::exp(log_scale);
  double prev = 1.0;
  out[0] = scale;
  if (kmax == 0) return;
  double cur = 1.0 + alpha - x;
  out[1] = cur * scale;
  for (int j = 1; j < kmax; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      cur *= 1e-150;
      prev *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
      scale = std::exp(log_scale);
    }
    out[j + 1] = cur * scale;
  }
}

double log_conformal(double s, double x, double abs_lambda) {
  const double lo = x + 0.5 * (1.0 - s);
  const double hi = x + 0.5 * (1.0 + s);
  if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("multiplier: Gamma argument at a pole");
  return s * std::log(2.0 * abs_lambda) + std::log(gamma_shift_ratio(lo, s));
}

// int w^m e^{-b w^2} e^{i lambda w} dw
std::complex<double> hermite_transform(int m, double b, double lambda) {
  const double sb = std::sqrt(b);
  const double mag = std::pow(2.0 * sb, -m) * boost::math::hermite(static_cast<unsigned>(m), lambda / (2.0 * sb)) *
                     std::sqrt(kPi / b) * std::exp(-lambda * lambda / (4.0 * b));
  switch (m % 4) {
  case 0: return {mag, 0.0};
  case 1: return {0.0, mag};
  case 2: return {-mag, 0.0};
  default: return {0.0, -mag};
  }
}

double log_ch_L(double a, double b, double c) {
  if (!(a >= 0.0) || !(b > 0.0)) throw DomainError("ch_L: need a >= 0 and b > 0");
  if (a == 0.0) {
    if (!(c > b)) throw DomainError("ch_L: divergent at a = 0 unless c > b");
    return boost::math::lgamma(b) + boost::math::lgamma(c - b) - boost::math::lgamma(c);
  }
  const auto g = [&](double x) { return -a * (2.0 * x + 1.0) + (b - 1.0) * std::log(x) - c * std::log1p(x); };
  double xs;
  if (b > 1.0) {
    const double bp = b - 1.0 - c - 2.0 * a;
    const double disc = std::sqrt(bp * bp + 8.0 * a * (b - 1.0));
    xs = bp >= 0.0 ? (bp + disc) / (4.0 * a) : 2.0 * (b - 1.0) / (disc - bp);
  } else {
    xs = 1.0 / (2.0 * a + c + 1.0);
  }
  xs = std::max(xs, 1e-300);
  const double gpk = g(xs);
  const auto f = [&](double x) { return x > 0.0 ? std::exp(g(x) - gpk) : 0.0; };
  QuadOptions opt;
  opt.tol = Tol{0.0, 1e-13};
  opt.max_intervals = 4000;
  opt.throw_on_failure = false;
  const QuadResult r = integrate_semi_infinite(f, std::min(b - 1.0, 0.0), opt, xs);
  return gpk + std::log(r.value);
}

double log_ch_coefficient(double k, double delta, double lambda, double s, int n) {
  if (!(delta > 0.0)) throw DomainError("ch_coefficient: delta must be positive");
  if (lambda == 0.0) throw DomainError("ch_coefficient: lambda must be nonzero");
  if (!(n + 1 + s > 0.0)) throw DomainError("ch_coefficient: s out of range");
  const double al = std::abs(lambda);
  const double m = 2.0 * k + n + 1.0;
  return (n + 1.0) * std::log(2.0 * kPi) + s * std::log(al) - 2.0 * boost::math::lgamma(0.5 * (n + 1.0 + s)) +
         log_ch_L(delta * al, 0.5 * (m + s), 0.5 * (m - s));
}

bool has_numeric(const RadialFunction &f) {
  return std::any_of(f.atoms.begin(), f.atoms.end(),
                     [](const Atom &a) { return std::holds_alternative<NumericAtom>(a); });
}

std::complex<double> u_w_transform(const UWeightAtom &u, double lambda, double r) {
  const double A = u.delta + 0.25 * r * r;
  const double p = 0.5 * (u.s + u.n + 1.0);
  if (A <= 0.0) throw SingularPointError("w_transform: u-weight at the origin with delta = 0");
  if (lambda == 0.0)
    return u.coef * std::sqrt(kPi) * std::exp(boost::math::lgamma(p - 0.5) - boost::math::lgamma(p)) *
           std::pow(A, 1.0 - 2.0 * p);
  const double al = std::abs(lambda);
  const double z = A * al;
  if (z > 700.0) return 0.0;
  const double nu = p - 0.5;
  const double lv = std::log(2.0 * std::sqrt(kPi)) - boost::math::lgamma(p) + nu * std::log(al / (2.0 * A)) +
                    std::log(boost::math::cyl_bessel_k(nu, z));
  return u.coef * std::exp(lv);
}

std::complex<double> numeric_w_transform(const NumericAtom &a, double lambda, double r) {
  if (r > a.r_max) return 0.0;
  std::vector<double> x, w;
  const int panels = std::max(16, static_cast<int>(std::ceil(std::abs(lambda) * a.w_max / 2.0)));
  composite_gl(-a.w_max, a.w_max, panels, x, w);
  double re = 0.0, im = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double v = a.f(r, x[i]) * w[i];
    re += v * std::cos(lambda * x[i]);
    im += v * std::sin(lambda * x[i]);
  }
  return {re, im};
}

// Upper end of the x = |lambda| r^2 / 2 range needed to project onto k <= k_max.
double projection_range(const RadialFunction &f, int n, double al, int k_max) {
  const double laguerre_edge = 4.0 * (k_max + n) + 80.0 + 12.0 * std::sqrt(k_max + n + 1.0);
  double edge = 0.0;
  for (const Atom &atom : f.atoms) {
    if (const auto *g = std::get_if<PolyGaussAtom>(&atom))
      edge = std::max(edge, al / (2.0 * g->a) * (60.0 + 4.0 * g->j));
    else if (std::holds_alternative<UWeightAtom>(atom))
      edge = std::max(edge, laguerre_edge);
    else
      edge = std::max(edge, 0.5 * al * std::get<NumericAtom>(atom).r_max * std::get<NumericAtom>(atom).r_max);
  }
  edge = std::min(edge, laguerre_edge);
  if (std::isfinite(f.support.r_max)) edge = std::min(edge, 0.5 * al * f.support.r_max * f.support.r_max);
  return edge;
}

double log_degeneracy(int n, double k) {
  return std::log(gamma_shift_ratio(k + 1.0, n - 1.0)) - boost::math::lgamma(static_cast<double>(n));
}

} // namespace

std::string MultiplierKind::name() const {
  const std::string arg = "(" + std::to_string(s) + ")";
  switch (tag) {
  case MultiplierTag::Identity: return "identity";
  case MultiplierTag::PurePower: return "pure_power" + arg;
  case MultiplierTag::Conformal: return "conformal" + arg;
  case MultiplierTag::ConformalInverse: return "conformal_inverse" + arg;
  case MultiplierTag::Lambda: return "lambda" + arg;
  }
  return "unknown";
}

double log_multiplier_value(const MultiplierKind &kind, double k, double lambda, int n) {
  if (lambda == 0.0) throw DomainError("multiplier: lambda must be nonzero");
  if (k < 0.0) throw DomainError("multiplier: k must be nonnegative");
  const double al = std::abs(lambda);
  const double mu = 2.0 * k + n;
  const double x = 0.5 * mu;
  switch (kind.tag) {
  case MultiplierTag::Identity: return 0.0;
  case MultiplierTag::PurePower: return kind.s * std::log(mu * al);
  case MultiplierTag::Conformal: return log_conformal(kind.s, x, al);
  case MultiplierTag::ConformalInverse: return log_conformal(-kind.s, x, al);
  case MultiplierTag::Lambda: return std::log(mu * al) + log_conformal(kind.s - 1.0, x, al);
  }
  return 0.0;
}

double multiplier_value(const MultiplierKind &kind, double k, double lambda, int n) {
  return std::exp(log_multiplier_value(kind, k, lambda, n));
}

double RadialFunction::eval(double r, double w) const {
  double v = 0.0;
  for (const Atom &atom : atoms) {
    if (const auto *g = std::get_if<PolyGaussAtom>(&atom)) {
      v += g->coef * std::pow(r * r, g->j) * std::pow(w, g->m) * std::exp(-g->a * r * r - g->b * w * w);
    } else if (const auto *u = std::get_if<UWeightAtom>(&atom)) {
      v += u->coef * u_weight_rw(u->n, r, w, u->s, u->delta);
    } else {
      const auto &a = std::get<NumericAtom>(atom);
      if (r <= a.r_max && std::abs(w) <= a.w_max) v += a.f(r, w);
    }
  }
  return v;
}

bool RadialFunction::closed_form() const { return !has_numeric(*this); }

RadialFunction &RadialFunction::add(const RadialFunction &other, double weight) {
  for (Atom atom : other.atoms) {
    if (auto *g = std::get_if<PolyGaussAtom>(&atom)) g->coef *= weight;
    else if (auto *u = std::get_if<UWeightAtom>(&atom)) u->coef *= weight;
    else {
      auto &a = std::get<NumericAtom>(atom);
      auto inner = a.f;
      a.f = [inner, weight](double r, double w) { return weight * inner(r, w); };
    }
    atoms.push_back(std::move(atom));
  }
  support.r_max = std::max(support.r_max, other.support.r_max);
  support.w_max = std::max(support.w_max, other.support.w_max);
  support.norm_min = std::min(support.norm_min, other.support.norm_min);
  support.origin_vanishing_order = std::min(support.origin_vanishing_order, other.support.origin_vanishing_order);
  decay_hint = std::max(decay_hint, other.decay_hint);
  id += "+" + other.id;
  return *this;
}

RadialFunction RadialFunction::scaled(double c) const {
  RadialFunction out;
  out.id = id;
  out.support = support;
  out.decay_hint = decay_hint;
  out.add(*this, c);
  out.id = id;
  return out;
}

RadialFunction make_poly_gaussian(double coef, int j, int m, double a, double b) {
  if (j < 0 || m < 0 || !(a > 0.0) || !(b > 0.0)) throw InvalidInput("poly_gaussian: need j, m >= 0 and a, b > 0");
  RadialFunction f;
  f.id = "polygauss(j=" + std::to_string(j) + ",m=" + std::to_string(m) + ")";
  f.atoms.push_back(PolyGaussAtom{coef, j, m, a, b});
  f.support.origin_vanishing_order = 2 * j + 2 * m;
  f.decay_hint = 2.0 * std::sqrt(b);
  return f;
}

RadialFunction make_gaussian(double a, double b) {
  RadialFunction f = make_poly_gaussian(1.0, 0, 0, a, b);
  f.id = "gaussian";
  return f;
}

RadialFunction make_u_function(int n, double s, double delta) {
  if (!(delta > 0.0)) throw InvalidInput("u_function: delta must be positive");
  if (!(s + n + 1.0 > 1.0)) throw InvalidInput("u_function: not integrable in w");
  RadialFunction f;
  f.id = "u(s=" + std::to_string(s) + ",delta=" + std::to_string(delta) + ")";
  f.atoms.push_back(UWeightAtom{1.0, n, s, delta});
  f.decay_hint = 1.0 / delta;
  return f;
}

RadialFunction make_norm_power_gaussian(int p, double a, double b) {
  if (p < 0) throw InvalidInput("norm_power_gaussian: p must be nonnegative");
  RadialFunction f;
  f.id = "normpow(p=" + std::to_string(p) + ")";
  for (int i = 0; i <= p; ++i) {
    const double c = boost::math::binomial_coefficient<double>(p, i) * std::pow(16.0, i);
    f.atoms.push_back(PolyGaussAtom{c, 2 * (p - i), 2 * i, a, b});
  }
  f.support.origin_vanishing_order = 4 * p;
  f.decay_hint = 2.0 * std::sqrt(b);
  return f;
}

RadialFunction make_numeric(std::string id, std::function<double(double, double)> fn, double r_max,
                            double w_max, double norm_min) {
  if (!(r_max > 0.0) || !(w_max > 0.0)) throw InvalidInput("numeric function: support box must be nonempty");
  RadialFunction f;
  f.id = std::move(id);
  f.atoms.push_back(NumericAtom{std::move(fn), r_max, w_max});
  f.support.r_max = r_max;
  f.support.w_max = w_max;
  f.support.norm_min = norm_min;
  f.decay_hint = std::max(1.0, 4.0 / w_max);
  return f;
}

RadialFunction make_annulus_bump(double rho1, double rho2) {
  if (!(rho1 >= 0.0) || !(rho2 > rho1)) throw InvalidInput("annulus_bump: need 0 <= rho1 < rho2");
  auto fn = [rho1, rho2](double r, double w) {
    const double rho = homogeneous_norm_rw(r, w);
    if (rho <= rho1 || rho >= rho2) return 0.0;
    const double t = (2.0 * rho - rho1 - rho2) / (rho2 - rho1);
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
  };
  RadialFunction f = make_numeric("annulus_bump", fn, rho2, 0.25 * rho2 * rho2, rho1);
  return f;
}

double degeneracy(int n, double k) { return std::exp(log_degeneracy(n, k)); }

double laguerre_function(int k, int n, double lambda, double r) {
  std::vector<double> seq;
  laguerre_fn_sequence(k, n - 1.0, 0.5 * std::abs(lambda) * r * r, seq);
  return seq[static_cast<size_t>(k)];
}

std::complex<double> closed_form_coefficient(const RadialFunction &f, int n, double k, double lambda) {
  if (lambda == 0.0) throw DomainError("coefficient: lambda must be nonzero");
  if (k < 0.0) throw DomainError("coefficient: k must be nonnegative");
  const double al = std::abs(lambda);
  const double omega = sphere_area(2 * n - 1);
  const bool integer_k = k == std::floor(k);
  std::complex<double> total = 0.0;
  for (const Atom &atom : f.atoms) {
    if (const auto *g = std::get_if<PolyGaussAtom>(&atom)) {
      const double p = 0.5 + 2.0 * g->a / al;
      const double rho = (2.0 * g->a - 0.5 * al) / (2.0 * g->a + 0.5 * al);
      const double log_abs_rho = al <= 4.0 * g->a ? std::log1p(-al / (2.0 * g->a + 0.5 * al))
                                                   : std::log(std::abs(rho));
      const int nj = n + g->j;
      const double pre = g->coef * 0.5 * omega * std::pow(2.0 / (0.5 * al + 2.0 * g->a), nj) *
                         std::exp(boost::math::lgamma(static_cast<double>(nj)));
      double sum = 0.0;
      double fall = 1.0;
      for (int i = 0; i <= g->j; ++i) {
        if (i > 0) fall *= (k - (i - 1));
        if (fall == 0.0) break;
        double rp;
        if (rho == 0.0) rp = k == i ? 1.0 : 0.0;
        else rp = (integer_k && rho < 0.0) ? std::pow(rho, k - i) : std::exp((k - i) * log_abs_rho);
        sum += boost::math::binomial_coefficient<double>(g->j, i) * std::pow(-1.0 / p, i) * fall * rp *
               std::exp(boost::math::lgamma(static_cast<double>(n)) - boost::math::lgamma(static_cast<double>(n + i)));
      }
      total += pre * sum * hermite_transform(g->m, g->b, lambda);
    } else if (const auto *u = std::get_if<UWeightAtom>(&atom)) {
      if (u->n != n) throw InvalidInput("coefficient: u-weight built for a different n");
      total += u->coef * std::exp(log_ch_coefficient(k, u->delta, lambda, u->s, n));
    } else {
      throw InvalidInput("coefficient: numeric atoms have no closed form");
    }
  }
  return total;
}

std::complex<double> w_transform(const RadialFunction &f, double lambda, double r) {
  std::complex<double> total = 0.0;
  for (const Atom &atom : f.atoms) {
    if (const auto *g = std::get_if<PolyGaussAtom>(&atom))
      total += g->coef * std::pow(r * r, g->j) * std::exp(-g->a * r * r) * hermite_transform(g->m, g->b, lambda);
    else if (const auto *u = std::get_if<UWeightAtom>(&atom))
      total += u_w_transform(*u, lambda, r);
    else
      total += numeric_w_transform(std::get<NumericAtom>(atom), lambda, r);
  }
  return total;
}

SpectralCoeffs laguerre_coeffs(const RadialFunction &f, int n, const std::vector<double> &lambda_grid, int k_max) {
  if (n < 1) throw InvalidInput("laguerre_coeffs: n must be positive");
  if (k_max < 0) throw InvalidInput("laguerre_coeffs: k_max must be nonnegative");
  SpectralCoeffs out;
  out.n = n;
  out.lambda_grid = lambda_grid;
  out.k_max = k_max;
  for (int k = 0; k <= k_max; ++k) out.degeneracy.push_back(degeneracy(n, k));
  const double omega = sphere_area(2 * n - 1);
  std::vector<double> v, wv, seq;
  for (double lambda : lambda_grid) {
    if (lambda == 0.0) throw DomainError("laguerre_coeffs: lambda must be nonzero");
    const double al = std::abs(lambda);
    const double X = projection_range(f, n, al, k_max);
    const double V = std::sqrt(X);
    const int panels = 32 + static_cast<int>(std::ceil(2.0 * std::sqrt((k_max + n) * X) / kPi));
    composite_gl(0.0, V, panels, v, wv);
    std::vector<double> re(k_max + 1, 0.0), im(k_max + 1, 0.0);
    for (size_t i = 0; i < v.size(); ++i) {
      const double x = v[i] * v[i];
      const double r = std::sqrt(2.0 * x / al);
      const std::complex<double> fl = w_transform(f, lambda, r);
      if (fl == 0.0) continue;
      laguerre_fn_sequence(k_max, n - 1.0, x, seq);
      const double jac = wv[i] * 2.0 * std::pow(v[i], 2 * n - 1);
      for (int k = 0; k <= k_max; ++k) {
        re[k] += jac * fl.real() * seq[k];
        im[k] += jac * fl.imag() * seq[k];
      }
    }
    const double pre = 0.5 * omega * std::pow(2.0 / al, n);
    for (int k = 0; k <= k_max; ++k) {
      re[k] *= pre / out.degeneracy[k];
      im[k] *= pre / out.degeneracy[k];
    }
    out.coeffs.push_back(std::move(re));
    out.coeffs_im.push_back(std::move(im));
  }
  return out;
}

std::complex<double> reconstruct_slice(const SpectralCoeffs &c, size_t lambda_index, double r) {
  if (lambda_index >= c.lambda_grid.size()) throw InvalidInput("reconstruct_slice: index out of range");
  const double al = std::abs(c.lambda_grid[lambda_index]);
  std::vector<double> seq;
  laguerre_fn_sequence(c.k_max, c.n - 1.0, 0.5 * al * r * r, seq);
  double re = 0.0, im = 0.0;
  for (int k = 0; k <= c.k_max; ++k) {
    re += c.coeffs[lambda_index][k] * seq[k];
    im += c.coeffs_im[lambda_index][k] * seq[k];
  }
  const double pre = std::pow(al / (2.0 * kPi), c.n) / c.kappa;
  return {pre * re, pre * im};
}

double calibrate_kappa(int n, double lambda) {
  const RadialFunction g = make_gaussian(1.0, 1.0);
  const double al = std::abs(lambda);
  const double rho = std::abs(1.0 - 1.0 / (0.5 + 2.0 / al));
  const int k_max = std::clamp(static_cast<int>(40.0 / std::max(1e-3, -std::log(rho))) + 20, 20, 4000);
  const SpectralCoeffs c = laguerre_coeffs(g, n, {lambda}, k_max);
  double lo = 1e300, hi = -1e300, sum = 0.0;
  const double pts[] = {0.2, 0.7, 1.3};
  for (double r : pts) {
    const double ratio = w_transform(g, lambda, r).real() / reconstruct_slice(c, 0, r).real();
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    sum += ratio;
  }
  if (hi - lo > 1e-6 * std::abs(hi)) throw CalibrationError("calibrate_kappa: reconstruction ratio depends on r");
  return sum / 3.0;
}

namespace {

// L(a, b0 + k, c0 + k) as moments of y = x / (1 + x) against one weight,
// so every k (integer or real) reuses the same nodes.
struct UMoments {
  double a = 0.0, b0 = 0.0, c0 = 0.0, xmin = 1e-6, log_pre = 0.0;
  std::vector<double> logy, y, w, logw;
  mutable std::vector<double> scratch;

  UMoments(const UWeightAtom &u, int n, double lambda) {
    const double al = std::abs(lambda);
    a = u.delta * al;
    b0 = 0.5 * (n + 1.0 + u.s);
    c0 = 0.5 * (n + 1.0 - u.s);
    log_pre = std::log(u.coef) + (n + 1.0) * std::log(2.0 * kPi) + u.s * std::log(al) -
              2.0 * boost::math::lgamma(0.5 * (n + 1.0 + u.s));
    const double xmax = std::max(40.0 / a, 10.0);
    const double umin = std::log(xmin), umax = std::log(xmax);
    const int panels = static_cast<int>(std::ceil((umax - umin) / 0.5));
    std::vector<double> un, uw;
    composite_gl(umin, umax, panels, un, uw);
    for (size_t i = 0; i < un.size(); ++i) {
      const double x = std::exp(un[i]);
      const double lw = -a * (2.0 * x + 1.0) + b0 * un[i] - c0 * std::log1p(x);
      if (lw < -745.0) continue;
      w.push_back(uw[i] * std::exp(lw));
      logw.push_back(std::log(w.back()));
      logy.push_back(-std::log1p(1.0 / x));
      y.push_back(std::exp(logy.back()));
    }
  }

  // Contribution of [0, xmin], where the weight is e^{-a} x^{B-1} (1 - (2a + C) x).
  double head(double k) const {
    const double B = b0 + k;
    return std::exp(-a) * (std::pow(xmin, B) / B - (2.0 * a + c0 + k) * std::pow(xmin, B + 1.0) / (B + 1.0));
  }

  double eval(double k) const {
    scratch.resize(w.size());
    double top = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < w.size(); ++i) {
      scratch[i] = logw[i] + k * logy[i];
      top = std::max(top, scratch[i]);
    }
    double sum = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
      if (scratch[i] > top - 45.0) sum += std::exp(scratch[i]);
    return std::exp(log_pre) * (sum + head(k));
  }

  void integer_block(int K, std::vector<double> &out) const {
    std::vector<double> pw = w;
    out.assign(static_cast<size_t>(K), 0.0);
    const double pre = std::exp(log_pre);
    for (int k = 0; k < K; ++k) {
      double sum = head(k);
      for (size_t i = 0; i < pw.size(); ++i) {
        sum += pw[i];
        pw[i] *= y[i];
      }
      out[k] = pre * sum;
    }
  }
};

// Coefficients of a closed-form function at fixed lambda.
class CoeffEvaluator {
public:
  CoeffEvaluator(const RadialFunction &f, int n, double lambda) : n_(n), lambda_(lambda) {
    for (const Atom &atom : f.atoms) {
      if (const auto *u = std::get_if<UWeightAtom>(&atom)) {
        if (u->n != n) throw InvalidInput("coefficient: u-weight built for a different n");
        moments_.emplace_back(*u, n, lambda);
      } else if (std::holds_alternative<PolyGaussAtom>(atom)) {
        poly_.atoms.push_back(atom);
      } else {
        throw InvalidInput("coefficient: numeric atoms have no closed form");
      }
    }
  }

  std::complex<double> operator()(double k) const {
    std::complex<double> c = poly_.atoms.empty() ? 0.0 : closed_form_coefficient(poly_, n_, k, lambda_);
    for (const UMoments &m : moments_) c += m.eval(k);
    return c;
  }

  void integer_block(int K, std::vector<std::complex<double>> &out) const {
    out.assign(static_cast<size_t>(K), 0.0);
    if (!poly_.atoms.empty())
      for (int k = 0; k < K; ++k) out[k] = closed_form_coefficient(poly_, n_, k, lambda_);
    std::vector<double> tmp;
    for (const UMoments &m : moments_) {
      m.integer_block(K, tmp);
      for (int k = 0; k < K; ++k) out[k] += tmp[k];
    }
  }

private:
  int n_;
  double lambda_;
  RadialFunction poly_;
  std::vector<UMoments> moments_;
};

} // namespace

SpectralSum spectral_sum(const RadialFunction &f, const MultiplierKind &kind, int n, double lambda) {
  if (lambda == 0.0) throw DomainError("spectral_sum: lambda must be nonzero");
  const double al = std::abs(lambda);
  // The real-k continuation is smooth only when every poly-Gaussian ratio is nonnegative.
  bool em_ok = true;
  for (const Atom &atom : f.atoms)
    if (const auto *g = std::get_if<PolyGaussAtom>(&atom))
      if (al > 4.0 * g->a) em_ok = false;

  const CoeffEvaluator coeff(f, n, lambda);
  const auto T = [&](double k) {
    const double a2 = std::norm(coeff(k));
    if (a2 == 0.0) return 0.0;
    return std::exp(log_multiplier_value(kind, k, lambda, n) + log_degeneracy(n, k)) * a2;
  };
  constexpr int kDirect = 256;
  constexpr long kCap = 400000;
  SpectralSum out;
  double sum = 0.0, prev = std::numeric_limits<double>::infinity();
  int small_run = 0;
  long k = 0;
  std::vector<std::complex<double>> block;
  long block_start = 0;
  for (;; ++k) {
    if (k == kDirect && em_ok) {
      const double K0 = kDirect;
      const double t0 = T(K0);
      if (t0 > 0.0) {
        // e-folding length of the tail
        double L = 32.0;
        for (int it = 0; it < 200; ++it, L *= 2.0) {
          const double t1 = T(K0 + L);
          if (t1 < t0 / std::exp(1.0)) {
            if (t1 > 0.0) L /= std::log(t0 / t1);
            break;
          }
        }
        L = std::max(L, 4.0);
        QuadOptions opt;
        opt.tol = Tol{1e-12 * sum, 1e-10};
        opt.max_intervals = 3000;
        opt.throw_on_failure = false;
        const QuadResult I = integrate_semi_infinite([&](double u) { return T(K0 + u); }, 0.0, opt, L);
        const double tp1 = T(K0 + 1.0), tm1 = T(K0 - 1.0), tp2 = T(K0 + 2.0), tm2 = T(K0 - 2.0);
        const double d1 = 0.5 * (tp1 - tm1);
        const double d3 = 0.5 * (tp2 - 2.0 * tp1 + 2.0 * tm1 - tm2);
        out.tail = I.value + 0.5 * t0 - d1 / 12.0 + d3 / 720.0;
        sum += out.tail;
      }
      break;
    }
    if (k >= kCap) {
      out.truncated = true;
      out.omitted = prev * 1e3;
      break;
    }
    if (k - block_start >= static_cast<long>(block.size())) {
      block_start = k;
      const int len = k < kDirect ? kDirect : static_cast<int>(std::min<long>(k, kCap - k));
      coeff.integer_block(static_cast<int>(k) + len, block);
      block.erase(block.begin(), block.begin() + k);
    }
    const double a2 = std::norm(block[k - block_start]);
    const double t = a2 == 0.0 ? 0.0
                               : std::exp(log_multiplier_value(kind, static_cast<double>(k), lambda, n) +
                                          log_degeneracy(n, static_cast<double>(k))) *
                                     a2;
    sum += t;
    if (t <= 1e-17 * sum && t <= prev) ++small_run;
    else small_run = 0;
    prev = t;
    if (small_run >= 4 && k >= 8) {
      ++k;
      break;
    }
  }
  out.value = sum;
  out.terms = static_cast<int>(k);
  return out;
}

namespace {

// <Op f, f> for compactly supported numeric profiles on a cached (r, w) grid.
QuadFormResult quadratic_form_numeric(const RadialFunction &f, const MultiplierKind &kind, int n,
                                      double rel_tol) {
  const double R = f.support.r_max, W = f.support.w_max;
  if (!std::isfinite(R) || !std::isfinite(W))
    throw InvalidInput("quadratic_form: numeric profiles need compact support");
  std::vector<double> rn, rw, wn, ww;
  composite_gl(0.0, R, 128, rn, rw);
  composite_gl(-W, W, 48, wn, ww);
  std::vector<double> grid(rn.size() * wn.size());
  for (size_t i = 0; i < rn.size(); ++i)
    for (size_t j = 0; j < wn.size(); ++j) grid[i * wn.size() + j] = f.eval(rn[i], wn[j]) * ww[j];
  const double omega = sphere_area(2 * n - 1);
  constexpr int kCap = 3000;
  double omitted = 0.0;

  auto S = [&](double lambda) {
    const double al = std::abs(lambda);
    std::vector<double> c(wn.size()), s(wn.size());
    for (size_t j = 0; j < wn.size(); ++j) {
      c[j] = std::cos(lambda * wn[j]);
      s[j] = std::sin(lambda * wn[j]);
    }
    std::vector<std::complex<double>> fl(rn.size());
    for (size_t i = 0; i < rn.size(); ++i) {
      double re = 0.0, im = 0.0;
      const double *row = &grid[i * wn.size()];
      for (size_t j = 0; j < wn.size(); ++j) {
        re += row[j] * c[j];
        im += row[j] * s[j];
      }
      fl[i] = {re, im};
    }
    const double xR = 0.5 * al * R * R;
    int K = std::min(kCap, 32 + static_cast<int>(std::ceil(xR + 400.0 / xR)));
    std::vector<double> seq;
    for (;;) {
      std::vector<double> re(K + 1, 0.0), im(K + 1, 0.0);
      for (size_t i = 0; i < rn.size(); ++i) {
        laguerre_fn_sequence(K, n - 1.0, 0.5 * al * rn[i] * rn[i], seq);
        const double jw = rw[i] * std::pow(rn[i], 2 * n - 1);
        for (int k = 0; k <= K; ++k) {
          re[k] += jw * fl[i].real() * seq[k];
          im[k] += jw * fl[i].imag() * seq[k];
        }
      }
      double total = 0.0, last = 0.0;
      for (int k = 0; k <= K; ++k) {
        const double d = degeneracy(n, k);
        const double ck2 = (re[k] * re[k] + im[k] * im[k]) * omega * omega / (d * d);
        const double t = multiplier_value(kind, k, lambda, n) * d * ck2;
        total += t;
        if (4 * k >= 3 * K) last += t;
      }
      if (last <= 1e-9 * total || K >= kCap) {
        if (K >= kCap) omitted = std::max(omitted, last);
        return total;
      }
      K = std::min(kCap, 2 * K);
    }
  };

  const double lambda_min = 0.5 / (R * R);
  const auto F = [&](double lambda) { return std::pow(lambda, n) * S(lambda); };
  QuadOptions opt;
  opt.tol = Tol{0.0, rel_tol};
  opt.max_intervals = 400;
  opt.throw_on_failure = false;
  const QuadResult upper = integrate_semi_infinite([&](double u) { return F(lambda_min + u); }, 0.0, opt,
                                                   f.decay_hint);
  const double f1 = F(lambda_min), f2 = F(0.5 * lambda_min);
  const double e = (f1 > 0.0 && f2 > 0.0) ? std::clamp(std::log(f1 / f2) / std::log(2.0), -0.9, 6.0) : 0.0;
  const double lower = lambda_min * f1 / (1.0 + e);
  const double norm = 2.0 * std::pow(2.0 * kPi, -n - 1.0);
  QuadFormResult out;
  out.closed_form_coefficients = false;
  out.quad.value = norm * (upper.value + lower);
  out.quad.abs_err_estimate = norm * (upper.abs_err_estimate + 0.5 * std::abs(lower));
  out.quad.evaluations = upper.evaluations;
  out.truncation_bound = norm * omitted;
  return out;
}

} // namespace

QuadFormResult quadratic_form(const RadialFunction &f, const MultiplierKind &kind, int n, double rel_tol) {
  if (n < 1) throw InvalidInput("quadratic_form: n must be positive");
  if (f.atoms.empty()) return {};
  if (has_numeric(f)) {
    for (const Atom &atom : f.atoms)
      if (!std::holds_alternative<NumericAtom>(atom))
        throw InvalidInput("quadratic_form: cannot mix numeric and closed-form atoms");
    return quadratic_form_numeric(f, kind, n, rel_tol);
  }
  double omitted = 0.0;
  const auto F = [&](double lambda) {
    const SpectralSum s = spectral_sum(f, kind, n, lambda);
    omitted = std::max(omitted, s.omitted);
    return std::pow(lambda, n) * s.value;
  };
  const double scale = f.decay_hint;
  const double floor = 1e-9 * scale;
  const double f1 = F(floor), f2 = F(10.0 * floor);
  const double e = (f1 > 0.0 && f2 > 0.0) ? std::clamp(std::log10(f2 / f1), -0.95, 6.0) : 0.0;
  // Below the floor the power law fitted above is used.
  const auto Fx = [&](double lambda) { return lambda < floor ? f1 * std::pow(lambda / floor, e) : F(lambda); };
  QuadOptions opt;
  opt.tol = Tol{0.0, rel_tol};
  opt.max_intervals = 3000;
  opt.throw_on_failure = false;
  const QuadResult r = integrate_semi_infinite(Fx, e, opt, scale);
  const double norm = 2.0 * std::pow(2.0 * kPi, -n - 1.0);
  QuadFormResult out;
  out.quad.value = norm * r.value;
  out.quad.abs_err_estimate = norm * r.abs_err_estimate;
  out.quad.evaluations = r.evaluations;
  out.truncation_bound = norm * omitted;
  return out;
}

double ch_L(double a, double b, double c) { return std::exp(log_ch_L(a, b, c)); }

double ch_coefficient(double k, double delta, double lambda, double s, int n) {
  return std::exp(log_ch_coefficient(k, delta, lambda, s, n));
}

UsScan op_norm_Us_scan(double s, int n, long k_search_max) {
  if (!(s > 0.0) || !(s < 0.5 * (n + 1.0))) throw DomainError("op_norm_Us: need 0 < s < (n+1)/2");
  UsScan out;
  out.sup = 1.0;
  out.argmax = -1;
  for (long k = 0; k <= k_search_max; ++k) {
    const double x = 0.5 * (2.0 * k + n);
    const double v = std::pow(x, -s) * gamma_shift_ratio(x + 0.5 * (1.0 - s), s);
    if (v > out.sup) {
      out.sup = v;
      out.argmax = k;
    }
    if (k == k_search_max) out.value_at_kmax = v;
  }
  return out;
}

double op_norm_Us(double s, int n, long k_search_max) { return op_norm_Us_scan(s, n, k_search_max).sup; }

double vs_multiplier(double s, int n, long k) {
  const double x = 0.5 * (2.0 * k + n);
  return std::pow(x, 1.0 - s) / gamma_shift_ratio(x + 0.5 * s, 1.0 - s);
}

VsBoundReport vs_bound_check(double s, int n, long k_max) {
  if (!(s > 0.0) || !(s < 1.0)) throw DomainError("vs_bound_check: need 0 < s < 1");
  VsBoundReport out;
  out.k_max = k_max;
  out.bound = (n + 2.0 - s) / (n + s);
  for (long k = 0; k <= k_max; ++k) {
    const double m = vs_multiplier(s, n, k);
    out.max_multiplier = std::max(out.max_multiplier, m);
    const double mu = 2.0 * k + n;
    if (m > out.bound * (1.0 + 1e-14)) ++out.violations_final;
    if (m > (mu + 2.0 - s) / (mu + s) * (1.0 + 1e-14)) ++out.violations_intermediate;
  }
  return out;
}

} // namespace hh
