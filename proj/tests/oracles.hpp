// Test-side reference implementations. These deliberately share no code with
// the library: different algorithms (Euler-Maclaurin instead of the
// accelerated alternating series, Stirling instead of Lanczos), long double
// throughout.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using LD = long double;
using CL = std::complex<LD>;
using CD = std::complex<double>;

inline constexpr LD kPi = 3.141592653589793238462643383279502884L;

inline CL to_cl(CD z) { return {z.real(), z.imag()}; }
inline CD to_cd(CL z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// B_2 .. B_40
inline const LD kBernoulli[] = {
    1.0L / 6,          -1.0L / 30,          1.0L / 42,           -1.0L / 30,         5.0L / 66,
    -691.0L / 2730,    7.0L / 6,            -3617.0L / 510,      43867.0L / 798,     -174611.0L / 330,
    854513.0L / 138,   -236364091.0L / 2730, 8553103.0L / 6,     -23749461029.0L / 870,
    8615841276005.0L / 14322, -7709321041217.0L / 510, 2577687858367.0L / 6,
    -26315271553053477373.0L / 1919190, 2929993913841559.0L / 6,
    -261082718496449122051.0L / 13530};

// log Gamma on the principal branch continuous in the right half-plane:
// recurrence up to Re >= 30, then Stirling with 12 correction terms.
inline CL log_gamma(CL z) {
  CL shift = 0;
  while (z.real() < 30) {
    shift += std::log(z);
    z += 1;
  }
  CL s = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2 * kPi);
  CL zp = z;
  const CL z2 = z * z;
  for (int k = 1; k <= 12; ++k) {
    s += kBernoulli[k - 1] / (LD(2 * k) * LD(2 * k - 1) * zp);
    zp *= z2;
  }
  return s - shift;
}

inline CL gamma(CL z) {
  if (z.real() < 0.5L) return kPi / (std::sin(kPi * z) * std::exp(log_gamma(1.0L - z)));
  return std::exp(log_gamma(z));
}

// Euler-Maclaurin zeta for Re s >= 1/2 and near 0, functional equation
// elsewhere (the sum cancels catastrophically for Re s << 0).
inline CL zeta(CL s) {
  if (s.real() < 0.5L && std::abs(s) > 0.25L) {
    const CL u = 1.0L - s;
    return std::pow(CL(2), s) * std::pow(CL(kPi), s - 1.0L) * std::sin(kPi * s / 2.0L) * gamma(u) * zeta(u);
  }
  const int n = 40 + static_cast<int>(std::abs(s.imag()));
  CL sum = 0;
  for (int k = 1; k < n; ++k) sum += std::exp(-s * std::log(LD(k)));
  const LD N = n;
  const CL Ns = std::exp(-s * std::log(N));
  sum += N * Ns / (s - 1.0L) + 0.5L * Ns;
  // B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
  CL poch = s;  // (s)_1
  CL term = Ns / N;
  LD fact = 2;  // (2k)!
  for (int k = 1; k <= 20; ++k) {
    sum += kBernoulli[k - 1] / fact * poch * term;
    poch *= (s + LD(2 * k - 1)) * (s + LD(2 * k));
    term /= N * N;
    fact *= LD(2 * k + 1) * LD(2 * k + 2);
  }
  return sum;
}

inline CD zeta(CD s) { return to_cd(zeta(to_cl(s))); }

// Two-level Richardson central difference.
template <class F>
CD richardson_derivative(F&& f, CD z, double h) {
  auto d = [&](double hh) { return (f(z + hh) - f(z - hh)) / (2.0 * hh); };
  const CD d1 = d(h);
  const CD d2 = d(h / 2);
  return (4.0 * d2 - d1) / 3.0;
}

inline CD zeta_deriv(CD s) {
  const CL z = to_cl(s);
  const LD h = 1e-4L;
  auto d = [&](LD hh) { return (zeta(z + hh) - zeta(z - hh)) / (2 * hh); };
  return to_cd((4.0L * d(h / 2) - d(h)) / 3.0L);
}

// Hardy Z(t) = exp(i theta) zeta(1/2 + it), theta = Im logGamma(1/4 + it/2) - t log(pi)/2.
inline LD hardy_z(LD t) {
  const LD theta = log_gamma(CL(0.25L, t / 2)).imag() - t * std::log(kPi) / 2;
  return (std::exp(CL(0, theta)) * zeta(CL(0.5L, t))).real();
}

// Ordinates of sign changes of Z on (a, b] at the given step, refined by bisection.
inline std::vector<double> critical_line_zeros(double a, double b, double step) {
  std::vector<double> out;
  LD t0 = a, z0 = hardy_z(a);
  for (LD t1 = a + step; t1 <= b + 1e-12; t1 += step) {
    const LD z1 = hardy_z(t1);
    if ((z0 < 0) != (z1 < 0)) {
      LD lo = t0, hi = t1, flo = z0;
      for (int i = 0; i < 60; ++i) {
        const LD mid = (lo + hi) / 2;
        const LD fm = hardy_z(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(static_cast<double>((lo + hi) / 2));
    }
    t0 = t1;
    z0 = z1;
  }
  return out;
}

// Sign-change bisection of a real function sampled on [a, b].
inline std::vector<double> real_roots(const std::function<double(double)>& f, double a, double b, double step) {
  std::vector<double> out;
  double x0 = a, f0 = f(a);
  for (double x1 = a + step; x1 <= b + 1e-12; x1 += step) {
    const double f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

// Catalan's constant from the alternating series with a midpoint correction.
inline LD catalan_series(int n_terms) {
  LD s = 0, prev = 0;
  for (int k = 0; k < n_terms; ++k) {
    prev = s;
    const LD d = 2.0L * k + 1;
    s += ((k % 2) ? -1.0L : 1.0L) / (d * d);
  }
  return (s + prev) / 2;  // average of the last two partial sums
}

// Farey sequence by brute force: all reduced p/q with q <= n, sorted.
inline std::vector<std::pair<long, long>> farey_brute(int n) {
  std::vector<std::pair<long, long>> out;
  for (long q = 1; q <= n; ++q) {
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.first * b.second < b.first * a.second; });
  return out;
}

enum class Fate { Escaped, Periodic, Bounded };

struct OrbitFate {
  Fate fate = Fate::Bounded;
  int steps = 0;
  int period = 0;
  CD last{0, 0};
};

// Plain orbit loop with an unbounded history (O(n^2) but obviously correct).
inline OrbitFate brute_orbit(const std::function<CD(CD)>& step, CD z0, int max_iter, double radius, double eps,
                             int max_period = 32) {
  std::vector<CD> hist{z0};
  CD z = z0;
  for (int n = 1; n <= max_iter; ++n) {
    z = step(z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > radius) {
      return {Fate::Escaped, n, 0, z};
    }
    for (int p = 1; p <= max_period && p <= static_cast<int>(hist.size()); ++p) {
      if (std::abs(z - hist[hist.size() - static_cast<size_t>(p)]) < eps) return {Fate::Periodic, n, p, z};
    }
    hist.push_back(z);
  }
  return {Fate::Bounded, max_iter, 0, z};
}

}  // namespace oracle
