#include <array>
#include <cmath>
#include <numbers>

#include "special_functions.hpp"

namespace zd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_gamma_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Valid for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Reduce x to r in (-1, 1] with sin(pi x) = sin(pi r), cos(pi x) = cos(pi r).
double reduce_mod2(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r <= -1.0) r += 2.0;
  return r;
}

// sin(pi r) for r in (-1, 1]; exact zero at r = 0 and r = 1.
double sinpi_reduced(double r) {
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

double cospi_reduced(double r) {
  if (r > 0.5) return -sinpi_reduced(r - 0.5);
  if (r < -0.5) return -sinpi_reduced(-0.5 - r);
  return sinpi_reduced(0.5 - std::fabs(r));
}

}  // namespace

Complex sin_pi(Complex z) {
  const double r = reduce_mod2(z.real());
  const double y = kPi * z.imag();
  return {sinpi_reduced(r) * std::cosh(y), cospi_reduced(r) * std::sinh(y)};
}

Complex log_sin_pi(Complex z) {
  const double y = z.imag();
  if (std::fabs(y) < 5.0) return std::log(sin_pi(z));
  const double r = reduce_mod2(z.real());
  const Complex i(0.0, 1.0);
  if (y > 0.0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
    const Complex small = std::exp(-2.0 * kPi * y) * Complex(std::cos(2.0 * kPi * r), std::sin(2.0 * kPi * r));
    return std::log(0.5 * i) + Complex(kPi * y, -kPi * r) + std::log(1.0 - small);
  }
  const Complex small = std::exp(2.0 * kPi * y) * Complex(std::cos(2.0 * kPi * r), -std::sin(2.0 * kPi * r));
  return std::log(-0.5 * i) + Complex(-kPi * y, kPi * r) + std::log(1.0 - small);
}

Complex log_gamma(Complex z) {
  if (is_gamma_pole(z)) fail(ErrorCode::Pole, "gamma: pole at non-positive integer");
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

Complex gamma(Complex z) {
  if (is_gamma_pole(z)) fail(ErrorCode::Pole, "gamma: pole at non-positive integer");
  Complex g;
  if (z.real() >= 0.5 || std::fabs(z.imag()) > 200.0) {
    g = std::exp(log_gamma(z));
  } else {
    g = kPi / (sin_pi(z) * std::exp(lanczos_log_gamma(1.0 - z)));
  }
  return is_finite(g) ? g : overflow_value();
}

Complex digamma(Complex z) {
  if (is_gamma_pole(z)) fail(ErrorCode::Pole, "digamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    Complex cot;
    if (z.imag() > 20.0) {
      cot = Complex(0.0, -1.0);
    } else if (z.imag() < -20.0) {
      cot = Complex(0.0, 1.0);
    } else {
      cot = sin_pi(z + 0.5) / sin_pi(z);
    }
    return digamma(1.0 - z) - kPi * cot;
  }
  Complex acc = 0.0;
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv2 = 1.0 / (z * z);
  // Asymptotic series with B_2k / (2k).
  const Complex series =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
  return acc + std::log(z) - 0.5 / z - series;
}

}  // namespace zd
