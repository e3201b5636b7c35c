#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hhardy/errors.hpp"
#include "hhardy/numerics.hpp"

namespace hh {

namespace {

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment &o) const { return err < o.err; }
};

// One GK21 panel with the QUADPACK error heuristic.
Segment gk21(const Fn1 &f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  static const auto &xk = GK::abscissa();
  static const auto &wk = GK::weights();
  static const auto &wg = G::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double fv[21];
  fv[10] = fc;
  for (size_t i = 1; i < xk.size(); ++i) {
    fv[10 - i] = f(c - h * xk[i]);
    fv[10 + i] = f(c + h * xk[i]);
  }
  double rk = wk[0] * fc, rabs = std::abs(rk), rg = 0.0;
  for (size_t i = 1; i < xk.size(); ++i) {
    const double s = fv[10 - i] + fv[10 + i];
    rk += wk[i] * s;
    rabs += wk[i] * (std::abs(fv[10 - i]) + std::abs(fv[10 + i]));
  }
  // Gauss-10 nodes are the odd Kronrod indices.
  for (size_t i = 1, g = 0; i < xk.size(); i += 2, ++g)
    rg += wg[g] * (fv[10 - i] + fv[10 + i]);
  const double mean = 0.5 * rk;
  double rasc = wk[0] * std::abs(fc - mean);
  for (size_t i = 1; i < xk.size(); ++i)
    rasc += wk[i] * (std::abs(fv[10 - i] - mean) + std::abs(fv[10 + i] - mean));

  for (double v : fv)
    if (!std::isfinite(v)) throw DomainError("quadrature: integrand not finite");

  const double result = rk * h;
  double err = std::abs((rk - rg) * h);
  const double resasc = rasc * std::abs(h);
  const double resabs = rabs * std::abs(h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, result, err};
}

} // namespace

QuadResult integrate_breakpoints(const Fn1 &f, const std::vector<double> &pts,
                                 const QuadOptions &opt) {
  if (pts.size() < 2) throw InvalidInput("integrate: need at least two breakpoints");
  std::priority_queue<Segment> heap;
  QuadResult r;
  double total = 0.0, total_err = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] == pts[i]) continue;
    Segment s = gk21(f, pts[i], pts[i + 1]);
    r.evaluations += 21;
    total += s.value;
    total_err += s.err;
    heap.push(s);
  }
  int count = static_cast<int>(heap.size());
  auto done = [&] { return total_err <= std::max(opt.tol.abs, opt.tol.rel * std::abs(total)); };
  while (!heap.empty() && !done()) {
    if (count >= opt.max_intervals) {
      if (opt.throw_on_failure)
        throw ConvergenceError("integrate: interval budget exhausted (value " +
                                   std::to_string(total) + ", err " +
                                   std::to_string(total_err) + ")",
                               total, total_err);
      break;
    }
    Segment s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    if (m == s.a || m == s.b) {
      // Interval cannot be split further in floating point.
      if (opt.throw_on_failure)
        throw ConvergenceError("integrate: interval underflow", total, total_err);
      heap.push(s);
      break;
    }
    Segment l = gk21(f, s.a, m), rr = gk21(f, m, s.b);
    r.evaluations += 42;
    total += l.value + rr.value - s.value;
    total_err += l.err + rr.err - s.err;
    heap.push(l);
    heap.push(rr);
    ++count;
  }
  // Re-sum the leaves to remove drift from the running totals.
  std::vector<Segment> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Segment &x, const Segment &y) { return x.a < y.a; });
  r.value = 0.0;
  r.abs_err_estimate = 0.0;
  for (const auto &s : leaves) {
    r.value += s.value;
    r.abs_err_estimate += s.err;
  }
  return r;
}

QuadResult integrate_interval(const Fn1 &f, double a, double b, const QuadOptions &opt) {
  return integrate_breakpoints(f, {a, b}, opt);
}

QuadResult integrate_semi_infinite(const Fn1 &f, double p, const QuadOptions &opt, double scale) {
  if (!(p > -1.0)) throw DomainError("integrate_semi_infinite: endpoint exponent must exceed -1");
  if (!(scale > 0.0)) throw DomainError("integrate_semi_infinite: scale must be positive");
  const double gam = 1.0 / (1.0 + p);
  auto g = [&](double u) -> double {
    if (u < 1.0) {
      if (u <= 0.0) return 0.0;
      const double t = scale * std::pow(u, gam);
      return f(t) * scale * gam * std::pow(u, gam - 1.0);
    }
    const double v = 2.0 - u;
    if (v <= 0.0) return 0.0;
    const double t = scale / v;
    if (!std::isfinite(t)) return 0.0;
    const double ft = f(t);
    if (ft == 0.0) return 0.0;
    return ft * scale / (v * v);
  };
  return integrate_breakpoints(g, {0.0, 0.5, 1.0, 1.5, 2.0}, opt);
}

QuadResult integrate_semi_infinite(const Fn1 &f, double p, double tol, double scale) {
  QuadOptions o;
  o.tol = {tol, tol};
  return integrate_semi_infinite(f, p, o, scale);
}

QuadResult integrate_hn_radial(const Fn2 &F, int n, const QuadOptions &opt, double r_scale,
                               double w_scale) {
  if (n < 1) throw InvalidInput("integrate_hn_radial: n must be positive");
  QuadOptions inner = opt;
  inner.tol.rel = opt.tol.rel * 0.05;
  inner.tol.abs = opt.tol.abs * 0.05;
  long evals = 0;
  auto outer = [&](double r) {
    auto fw = [&](double w) { return F(r, w) + F(r, -w); };
    QuadResult q = integrate_semi_infinite(fw, 0.0, inner, w_scale);
    evals += q.evaluations;
    return q.value * std::pow(r, 2 * n - 1);
  };
  QuadResult q = integrate_semi_infinite(outer, 2.0 * n - 1.0, opt, r_scale);
  const double om = sphere_area(2 * n - 1);
  q.value *= om;
  q.abs_err_estimate *= om;
  q.evaluations += evals;
  return q;
}

QuadResult integrate_hn_radial(const Fn2 &F, int n, double tol) {
  QuadOptions o;
  o.tol = {tol, tol};
  return integrate_hn_radial(F, n, o);
}

QuadResult integrate_hn_polar(const Fn2 &F, int n, const QuadOptions &opt, double rho_exponent,
                              double rho_scale, bool even_in_w) {
  if (n < 1) throw InvalidInput("integrate_hn_polar: n must be positive");
  QuadOptions inner = opt;
  inner.tol.rel = opt.tol.rel * 0.05;
  inner.tol.abs = opt.tol.abs * 0.05;
  const double half_pi = 0.5 * std::numbers::pi;
  long evals = 0;
  auto outer = [&](double rho) {
    auto fa = [&](double a) {
      const double ca = std::cos(a);
      const double r = rho * std::sqrt(std::max(ca, 0.0));
      const double w = 0.25 * rho * rho * std::sin(a);
      double v = even_in_w ? 2.0 * F(r, w) : F(r, w) + F(r, -w);
      if (n > 1) v *= std::pow(ca, n - 1);
      return v;
    };
    QuadResult q = integrate_interval(fa, 0.0, half_pi, inner);
    evals += q.evaluations;
    return q.value * std::pow(rho, 2 * n + 1);
  };
  QuadResult q = integrate_semi_infinite(outer, 2.0 * n + 1.0 + rho_exponent, opt, rho_scale);
  const double c = 0.25 * sphere_area(2 * n - 1);
  q.value *= c;
  q.abs_err_estimate *= c;
  q.evaluations += evals;
  return q;
}

} // namespace hh
