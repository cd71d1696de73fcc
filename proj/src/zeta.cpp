#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "special_functions.hpp"
#include "zeta_detail.hpp"

namespace zd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
const double kLnPi = std::log(kPi);

// Above this real part the Dirichlet series itself converges to full precision
// within a handful of terms.
constexpr double kDirectSeriesRe = 16.0;
constexpr int kMaxAcceleratedTerms = 60000;

// Removable singularities of 1/(1 - 2^{1-s}) at 1 + 2 pi i k / ln 2, k != 0.
constexpr double kRemovableRadius = 1e-3;
constexpr double kAverageRadius = 2e-3;

// Stieltjes constants for (s-1) zeta(s) near s = 1.
constexpr double kStieltjes0 = 0.57721566490153286061;
constexpr double kStieltjes1 = -0.07281584548367672486;
constexpr double kStieltjes2 = -0.00969036319287231848;
constexpr double kStieltjes3 = 0.00205383442030334587;

// Chebyshev weights w_k = 1 - d_k/d_n, computed as normalised suffix sums so
// that no d_k (which grow like 5.83^n) is ever formed.
std::vector<double> compute_weights(int n) {
  std::vector<long double> log_t(static_cast<size_t>(n) + 1);
  log_t[0] = 0.0L;
  long double peak = 0.0L;
  for (int i = 1; i <= n; ++i) {
    const long double ratio = 4.0L * (n + i - 1.0L) * (n - i + 1.0L) / ((2.0L * i) * (2.0L * i - 1.0L));
    log_t[static_cast<size_t>(i)] = log_t[static_cast<size_t>(i) - 1] + std::log(ratio);
    peak = std::max(peak, log_t[static_cast<size_t>(i)]);
  }
  std::vector<long double> suffix(static_cast<size_t>(n) + 2, 0.0L);
  for (int i = n; i >= 0; --i) {
    suffix[static_cast<size_t>(i)] = suffix[static_cast<size_t>(i) + 1] + std::exp(log_t[static_cast<size_t>(i)] - peak);
  }
  const long double total = suffix[0];
  std::vector<double> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = static_cast<double>(suffix[static_cast<size_t>(k) + 1] / total);
  return w;
}

const std::vector<double>& borwein_weights(int n) {
  static std::mutex mu;
  static std::unordered_map<int, std::unique_ptr<const std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const std::vector<double>>(compute_weights(n));
  return *slot;
}

// Round n up to m * 2^e with m in [16, 32) so the weight cache stays small.
int bucket_terms(int n) {
  int scale = 1;
  while (n > 32 * scale) scale *= 2;
  return ((n + scale - 1) / scale) * scale;
}

inline Complex power_neg(double log_k, Complex s) { return std::exp(-s * log_k); }

// 1 - 2^{1-s}, accurate near s = 1.
Complex one_minus_pow2(Complex s) {
  const Complex w = (1.0 - s) * kLn2;
  if (std::abs(w) < 1e-4) return -(w * (1.0 + w * (0.5 + w * (1.0 / 6 + w / 24.0))));
  return 1.0 - std::exp(w);
}

int direct_terms(double re) {
  // Tail of sum k^-s beyond N is below N^{1-re}/(re-1) < 1e-17.
  const double n = std::ceil(std::pow(1e17, 1.0 / (re - 1.0)));
  return static_cast<int>(std::max(2.0, n));
}

detail::SeriesValue alternating_sum(Complex s, int n_terms, bool want_deriv) {
  detail::SeriesValue out;
  for (int k = n_terms; k >= 1; --k) {
    const double lk = std::log(static_cast<double>(k));
    const Complex term = power_neg(lk, s);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    out.value += sign * term;
    if (want_deriv) out.deriv -= sign * lk * term;
  }
  return out;
}

detail::SeriesValue accelerated_sum(Complex s, int n, bool want_deriv) {
  const auto& w = borwein_weights(n);
  detail::SeriesValue out;
  for (int k = n - 1; k >= 0; --k) {
    const double lk = std::log(static_cast<double>(k) + 1.0);
    const Complex term = w[static_cast<size_t>(k)] * power_neg(lk, s);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.value += sign * term;
    if (want_deriv) out.deriv -= sign * lk * term;
  }
  return out;
}

detail::SeriesValue dirichlet_sum(Complex s, int n_terms, bool want_deriv) {
  detail::SeriesValue out;
  for (int k = n_terms; k >= 1; --k) {
    const double lk = std::log(static_cast<double>(k));
    const Complex term = power_neg(lk, s);
    out.value += term;
    if (want_deriv) out.deriv -= lk * term;
  }
  return out;
}

bool near_removable_point(Complex s) {
  const double step = 2.0 * kPi / kLn2;
  const double k = std::round(s.imag() / step);
  if (k == 0.0) return false;
  return std::abs(s - Complex(1.0, k * step)) < kRemovableRadius;
}

Complex circle_average(Complex s, const auto& f) {
  const Complex r = kAverageRadius;
  const Complex i(0.0, 1.0);
  return 0.25 * (f(s + r) + f(s + i * r) + f(s - r) + f(s - i * r));
}

void check_pole(Complex s, const char* what) {
  if (s == Complex(1.0, 0.0)) fail(ErrorCode::Pole, std::string(what) + ": pole at z = 1");
}

// log of 2^s pi^{s-1} Gamma(1-s); the chi factor is this times sin(pi s / 2).
Complex log_chi_base(Complex s) { return s * kLn2 + (s - 1.0) * kLnPi + log_gamma(1.0 - s); }

Complex exp_or_overflow(Complex log_value) {
  if (log_value.real() > 709.0) return overflow_value();
  return std::exp(log_value);
}

}  // namespace

int accelerated_terms(double t) {
  t = std::fabs(t);
  const double need = (kPi * t / 2.0 + std::log1p(2.0 * t) + 39.0) / std::log(3.0 + std::sqrt(8.0));
  const int n = std::max(24, static_cast<int>(std::ceil(need)));
  return std::min(bucket_terms(n), kMaxAcceleratedTerms);
}

namespace detail {

SeriesValue eta_series(Complex s, const EvalParams& p, bool want_deriv) {
  if (p.mode == EvalMode::TruncatedEta) return alternating_sum(s, p.terms, want_deriv);
  if (s.real() >= kDirectSeriesRe) return alternating_sum(s, direct_terms(s.real()), want_deriv);
  return accelerated_sum(s, accelerated_terms(s.imag()), want_deriv);
}

SeriesValue zeta_series(Complex s, const EvalParams& p, bool want_deriv) {
  check_pole(s, "zeta");
  if (p.mode == EvalMode::Accelerated && s.real() >= kDirectSeriesRe) {
    return dirichlet_sum(s, direct_terms(s.real()), want_deriv);
  }
  if (near_removable_point(s)) {
    SeriesValue out;
    out.value = circle_average(s, [&](Complex u) { return zeta_series(u, p, false).value; });
    if (want_deriv) out.deriv = circle_average(s, [&](Complex u) { return zeta_series(u, p, true).deriv; });
    return out;
  }
  const SeriesValue e = eta_series(s, p, want_deriv);
  const Complex f = one_minus_pow2(s);
  SeriesValue out;
  out.value = e.value / f;
  if (want_deriv) out.deriv = (e.deriv - (1.0 - f) * kLn2 * out.value) / f;
  return out;
}

Complex zeta_functional(Complex s, const EvalParams& p) {
  const Complex u = 1.0 - s;
  const Complex zu = zeta_series(u, p, false).value;
  const Complex log_chi = log_chi_base(s) + log_sin_pi(0.5 * s);
  if (!std::isfinite(log_chi.real())) return 0.0;  // trivial zero
  if (log_chi.real() < 700.0) {
    const Complex v = std::exp(log_chi) * zu;
    return is_finite(v) ? v : overflow_value();
  }
  if (zu == 0.0) return 0.0;
  return exp_or_overflow(log_chi + std::log(zu));
}

Complex zeta_deriv_functional(Complex s, const EvalParams& p) {
  const Complex u = 1.0 - s;
  const SeriesValue zu = zeta_series(u, p, true);
  const Complex base = log_chi_base(s);
  const Complex ls = base + log_sin_pi(0.5 * s);
  const Complex lc = base + log_sin_pi(0.5 * s + 0.5);
  if (std::max(ls.real(), lc.real()) > 700.0) return overflow_value();
  const Complex chi = std::isfinite(ls.real()) ? std::exp(ls) : Complex(0.0);
  const Complex chi_cos = std::isfinite(lc.real()) ? std::exp(lc) : Complex(0.0);
  // chi'(s) = chi (ln 2 + ln pi - psi(1-s)) + (pi/2) 2^s pi^{s-1} cos(pi s/2) Gamma(1-s)
  const Complex dchi = chi * (kLn2 + kLnPi - digamma(u)) + 0.5 * kPi * chi_cos;
  const Complex v = dchi * zu.value - chi * zu.deriv;
  return is_finite(v) ? v : overflow_value();
}

Complex pole_free_zeta(Complex s, const EvalParams& p) {
  const Complex d = s - 1.0;
  if (std::abs(d) < 1e-3) {
    return 1.0 + d * (kStieltjes0 + d * (-kStieltjes1 + d * (0.5 * kStieltjes2 - d * kStieltjes3 / 6.0)));
  }
  return d * zeta(s, p);
}

}  // namespace detail

// Near the origin the reflected form meets the pole of zeta(1-s); the strip
// series is used on a small disc there instead.
static bool use_series(Complex s) { return s.real() >= 0.5 || std::abs(s) < 0.1; }

Complex zeta(Complex s, const EvalParams& p) {
  p.validate();
  check_pole(s, "zeta");
  if (use_series(s)) return detail::zeta_series(s, p, false).value;
  return detail::zeta_functional(s, p);
}

Complex zeta_deriv(Complex s, const EvalParams& p) {
  p.validate();
  check_pole(s, "zeta'");
  if (use_series(s)) return detail::zeta_series(s, p, true).deriv;
  return detail::zeta_deriv_functional(s, p);
}

Complex eta(Complex s, const EvalParams& p) {
  p.validate();
  if (use_series(s)) return detail::eta_series(s, p, false).value;
  return one_minus_pow2(s) * detail::zeta_functional(s, p);
}

Complex eta_deriv(Complex s, const EvalParams& p) {
  p.validate();
  if (use_series(s)) return detail::eta_series(s, p, true).deriv;
  const Complex f = one_minus_pow2(s);
  return (1.0 - f) * kLn2 * detail::zeta_functional(s, p) + f * detail::zeta_deriv_functional(s, p);
}

Complex xi(Complex s, const EvalParams& p) {
  p.validate();
  if (s.real() >= 0.5) {
    // (s-1) Gamma(s/2 + 1) pi^{-s/2} zeta(s)
    const Complex scale = std::exp(log_gamma(0.5 * s + 1.0) - 0.5 * s * kLnPi);
    return detail::pole_free_zeta(s, p) * scale;
  }
  // Reflected through zeta(s) = chi(s) zeta(1-s) and Gamma reflection so that
  // no Gamma pole is evaluated: xi(s) = -(s-1)/2 2^s pi^{s/2}
  //   Gamma(1-s)/Gamma(1-s/2) (u-1) zeta(u), u = 1 - s.
  const Complex u = 1.0 - s;
  const Complex log_scale = s * kLn2 + 0.5 * s * kLnPi + log_gamma(u) - log_gamma(1.0 - 0.5 * s);
  const Complex v = -0.5 * (s - 1.0) * exp_or_overflow(log_scale) * detail::pole_free_zeta(u, p);
  return is_finite(v) ? v : overflow_value();
}

}  // namespace zd
