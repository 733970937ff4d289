// SPDX-License-Identifier: Apache-2.0

#include "bcast/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "bcast/types.hpp"

namespace bcast::bounds {

namespace {

std::size_t ceil_count(double x) {
  if (!(x > 0)) return 0;
  return static_cast<std::size_t>(std::ceil(x));
}

double log2d(double x) { return std::log2(x); }

double iso_bound(std::size_t k, std::size_t d) {
  const double kk = static_cast<double>(k);
  return kk * (static_cast<double>(d) - std::log2(kk));
}

template <class Fn>
std::size_t cached(std::map<std::pair<double, double>, std::size_t>& cache, std::mutex& mu,
                   double alpha, double eps, Fn compute) {
  {
    std::lock_guard lock(mu);
    auto it = cache.find({alpha, eps});
    if (it != cache.end()) return it->second;
  }
  const std::size_t value = compute();
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(alpha, eps), value);
  return value;
}

}  // namespace

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::invalid_parameter, "alpha must lie in (0,1)");
  }
}

Constants constants(double alpha) {
  check_alpha(alpha);
  const double q = 1.0 - alpha;
  Constants k;
  k.alpha = alpha;
  k.X = 1.0 / (alpha * q);
  k.beta = q * q;
  k.c = std::min(q * q / 4.0, q * q * q / 2.0);
  k.Y = 1.0 - alpha - 2.0 * alpha * alpha + alpha * alpha * alpha;
  return k;
}

double f_root(std::size_t n, double alpha) {
  const double X = constants(alpha).X;
  const double nn = static_cast<double>(n);
  const double disc = nn * nn - 4.0 * X * (nn - 2.0);
  if (disc < 0) return std::nan("");
  return 0.5 * (nn - std::sqrt(disc));
}

std::size_t rounds_kn(std::size_t n, double alpha) {
  if (n < 2) throw Error(ErrorKind::invalid_parameter, "rounds_kn needs n >= 2");
  const double c = constants(alpha).c;
  const double nn = static_cast<double>(n);
  return ceil_count(std::log(3.0 * nn * (nn - 1.0)) / -std::log1p(-c));
}

HypercubeRounds rounds_hypercube(std::size_t d, double alpha, double eps) {
  if (d < 2) throw Error(ErrorKind::invalid_parameter, "rounds_hypercube needs d >= 2");
  if (!(eps > 0 && eps < 1)) throw Error(ErrorKind::invalid_parameter, "eps must lie in (0,1)");
  const double beta = constants(alpha).beta;
  const double dd = static_cast<double>(d);
  const double cube = std::ldexp(dd, static_cast<int>(d));  // d 2^d
  HypercubeRounds r;
  r.t1 = ceil_count(log2d(cube / 3.0) * dd / (beta * log2d(3.0)));
  const double rho = 1.0 + beta * log2d(2.0 / 3.0) / dd;
  if (rho <= 0.0) {
    r.t2 = static_cast<std::size_t>(cube);
  } else {
    r.t2 = ceil_count(log2d(7.0 / 3.0 * cube) / log2d(1.0 / rho));
  }
  return r;
}

LoopLengths l_params(std::size_t n, double alpha, double eps) {
  const auto k = constants(alpha);
  if (!(k.Y > 0)) throw Error(ErrorKind::unsupported_alpha, "1 - a - 2a^2 + a^3 must be positive");
  if (n < 3) throw Error(ErrorKind::invalid_parameter, "l_params needs n >= 3");
  if (!(eps > 0)) throw Error(ErrorKind::invalid_parameter, "eps must be positive");
  LoopLengths l;
  l.l1 = ceil_count(k.X * eps);
  l.l2 = ceil_count(std::log(k.X * static_cast<double>(n - 2)) / -std::log1p(-k.Y / 2.0));
  l.l3 = ceil_count(2.0 / k.Y) + 1;
  l.l4 = rounds_kn(n, alpha);
  return l;
}

std::size_t candidate_cap(double alpha, double eps) {
  return static_cast<std::size_t>(std::floor(3.0 * constants(alpha).X * (1.0 + eps)));
}

bool kn_conditions_hold(std::size_t n, double alpha, double eps) {
  const auto k = constants(alpha);
  const double nn = static_cast<double>(n);
  if (nn * nn < 4.0 * k.X * (nn - 2.0)) return false;
  const double f = f_root(n, alpha);
  if (!(k.X * eps > f)) return false;
  const double a = alpha * k.beta;
  return nn >= (eps + a) / a;
}

std::size_t n_min(double alpha, double eps) {
  static std::map<std::pair<double, double>, std::size_t> cache;
  static std::mutex mu;
  check_alpha(alpha);
  if (!(eps > 1)) throw Error(ErrorKind::invalid_parameter, "eps must exceed 1 on K_n");
  return cached(cache, mu, alpha, eps, [&] {
    std::size_t run = 0;
    for (std::size_t n = 2;; ++n) {
      run = kn_conditions_hold(n, alpha, eps) ? run + 1 : 0;
      if (run == 101) return n - 100;
    }
  });
}

std::size_t n_min_sod(double alpha, double eps) {
  const double xe = constants(alpha).X * eps;
  return std::max(n_min(alpha, eps), ceil_count(2.0 * xe) + 1);
}

bool qd_conditions_hold(std::size_t d, double alpha, double eps) {
  const auto k = constants(alpha);
  const std::size_t cube = std::size_t{1} << d;
  const double need = k.X * (static_cast<double>(d) - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(k.X / (1.0 - eps))) + 1;
  const std::size_t informed_floor =
      std::max<std::size_t>(1, ceil_count(greedy_qd_floor(d, alpha) - 1e-12));
  if (informed_floor >= cube) return true;
  const std::size_t hi = cube - informed_floor;
  for (std::size_t kk = lo; kk <= hi; ++kk) {
    const double inside = iso_bound(kk, d);
    const double outside = kk == cube ? 0.0 : iso_bound(cube - kk, d);
    if (std::max(inside, outside) < need) return false;
  }
  return true;
}

std::size_t d_min(double alpha, double eps) {
  static std::map<std::pair<double, double>, std::size_t> cache;
  static std::mutex mu;
  check_alpha(alpha);
  if (!(eps > 0 && eps < 1)) throw Error(ErrorKind::invalid_parameter, "eps must lie in (0,1)");
  return cached(cache, mu, alpha, eps, [&] {
    std::size_t best = 25;
    for (std::size_t d = 24; d >= 2; --d) {
      if (!qd_conditions_hold(d, alpha, eps)) break;
      best = d;
    }
    return best;
  });
}

bool log_inequality_holds(double x) {
  if (!(x >= 2)) throw Error(ErrorKind::invalid_parameter, "the inequality needs x >= 2");
  return log2d((x + 1.0) / x) >= 1.0 / x;
}

double greedy_kn_floor(std::size_t n, double alpha) {
  const double nn = static_cast<double>(n);
  return 1.0 + std::min(nn / 2.0, (nn - 1.0) * (1.0 - alpha));
}

double greedy_qd_floor(std::size_t d, double alpha) {
  return (1.0 - alpha) / 2.0 * (2.0 * static_cast<double>(d) - 1.0);
}

}  // namespace bcast::bounds
