#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "doctest.h"

namespace tu {

using CD = std::complex<double>;

inline double rel_err(CD a, CD b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Fixed seeds keep every property run reproducible.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline CD uniform_box(double re_lo, double re_hi, double im_lo, double im_hi) {
  return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
}

// f^(k)(x0) from central differences, two Richardson levels (error O(h^6)).
inline double nth_derivative(const std::function<double(double)>& f, double x0, int k, double h) {
  auto central = [&](double hh) {
    // binomial stencil on the half-step grid: sum (-1)^j C(k,j) f(x0 + (k/2 - j) hh)
    double s = 0.0, binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      s += ((j % 2) ? -1.0 : 1.0) * binom * f(x0 + (0.5 * k - j) * hh);
      binom = binom * (k - j) / (j + 1);
    }
    return s / std::pow(hh, k);
  };
  const double d1 = central(h), d2 = central(h / 2), d3 = central(h / 4);
  const double r1 = (4 * d2 - d1) / 3, r2 = (4 * d3 - d2) / 3;
  return (16 * r2 - r1) / 15;
}

}  // namespace tu

#define CHECK_NEAR(a, b, tol)                                       \
  do {                                                              \
    const auto zd_a_ = (a);                                         \
    const auto zd_b_ = (b);                                         \
    INFO("lhs=", zd_a_, " rhs=", zd_b_, " tol=", (tol));            \
    CHECK(std::abs(zd_a_ - zd_b_) <= (tol));                        \
  } while (0)
