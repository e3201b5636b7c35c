#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "hhardy/errors.hpp"
#include "hhardy/numerics.hpp"

namespace hh {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char *env = std::getenv("HHARDY_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over (seed, stream)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  for (;;) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * std::numbers::pi * u2);
}

double RadialLaw::sample(Rng &rng) const {
  const double p_in = (1.0 / inner) / (1.0 / inner + 1.0 / outer);
  const double u = rng.uniform();
  const double v = rng.uniform();
  if (u < p_in) return scale * std::pow(v, 1.0 / inner);
  return scale * std::pow(v, -1.0 / outer);
}

double RadialLaw::pdf(double rho) const {
  if (!(rho > 0.0)) return 0.0;
  const double c = 1.0 / (scale * (1.0 / inner + 1.0 / outer));
  const double x = rho / scale;
  return x < 1.0 ? c * std::pow(x, inner - 1.0) : c * std::pow(x, -outer - 1.0);
}

HPoint HnSampler::sample(Rng &rng) const {
  const double rho = law.sample(rng);
  double a;
  for (;;) {
    a = std::numbers::pi * (rng.uniform() - 0.5);
    if (n == 1 || rng.uniform() <= std::pow(std::cos(a), n - 1)) break;
  }
  HPoint x;
  x.z.resize(2 * static_cast<size_t>(n));
  double nrm = 0.0;
  for (double &c : x.z) {
    c = rng.normal();
    nrm += c * c;
  }
  const double r = rho * std::sqrt(std::cos(a));
  const double scale_z = r / std::sqrt(nrm);
  for (double &c : x.z) c *= scale_z;
  x.w = 0.25 * rho * rho * std::sin(a);
  return x;
}

double HnSampler::density_rw(double r, double w) const {
  const double rho = homogeneous_norm_rw(r, w);
  if (!(rho > 0.0)) throw SingularPointError("HnSampler: density at the origin");
  // Normalisation of cos^{n-1} on (-pi/2, pi/2).
  const double za = std::sqrt(std::numbers::pi) * std::exp(log_gamma(0.5 * n) - log_gamma(0.5 * (n + 1)));
  const double sphere = sphere_area(2 * n - 1);
  return 4.0 * law.pdf(rho) / (za * sphere * std::pow(rho, 2 * n + 1));
}

double HnSampler::density(const HPoint &x) const {
  return density_rw(std::sqrt(z_norm2(x)), x.w);
}

namespace {

struct BlockSums {
  double sum = 0.0, sum2 = 0.0, max_abs = 0.0;
  long long count = 0;
};

} // namespace

McResult mc_double_integral(const PairIntegrand &G, const HnSampler &xs, const HnSampler &hs,
                            const McConfig &cfg) {
  if (cfg.samples < 1) throw InvalidInput("mc_double_integral: samples must be >= 1");
  if (cfg.strata < 1) throw InvalidInput("mc_double_integral: strata must be >= 1");
  const int blocks = cfg.strata;
  std::vector<BlockSums> out(static_cast<size_t>(blocks));

  auto run_block = [&](int b) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(b)));
    long long m = cfg.samples / blocks + (b < cfg.samples % blocks ? 1 : 0);
    BlockSums s;
    for (long long i = 0; i < m; ++i) {
      const bool branch = rng.coin();
      const HPoint anchor = xs.sample(rng);
      const HPoint h = hs.sample(rng);
      HPoint x, y;
      if (branch) {
        x = anchor;
        y = group_mul(anchor, group_inv(h));
      } else {
        y = anchor;
        x = group_mul(anchor, h);
      }
      const double qh = hs.density(h);
      const double p = 0.5 * qh * (xs.density(x) + xs.density(y));
      if (!(p > 0.0)) throw InvalidInput("mc_double_integral: sampler density vanished");
      const HPoint hinv = group_inv(h);
      const double g = 0.5 * (G(x, y, h) + G(y, x, hinv));
      const double wgt = g / p;
      s.sum += wgt;
      s.sum2 += wgt * wgt;
      s.max_abs = std::max(s.max_abs, std::abs(wgt));
      ++s.count;
    }
    out[static_cast<size_t>(b)] = s;
  };

  const int threads = std::min(resolve_threads(cfg.threads), blocks);
  if (threads <= 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const int b = next.fetch_add(1);
          if (b >= blocks || failed) return;
          try {
            run_block(b);
          } catch (...) {
            if (!failed.exchange(true)) err = std::current_exception();
            return;
          }
        }
      });
    for (auto &th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }

  McResult r;
  double sum = 0.0, sum2 = 0.0;
  for (const auto &s : out) {
    sum += s.sum;
    sum2 += s.sum2;
    r.samples += s.count;
    r.max_abs_weight = std::max(r.max_abs_weight, s.max_abs);
  }
  const double N = static_cast<double>(r.samples);
  const double mean = sum / N;
  const double var = N > 1 ? std::max(0.0, (sum2 - N * mean * mean) / (N - 1.0)) : 0.0;
  r.std_error = std::sqrt(var / N);
  r.quad.value = mean;
  r.quad.abs_err_estimate = r.std_error;
  r.quad.evaluations = 2 * r.samples;
  return r;
}

} // namespace hh
