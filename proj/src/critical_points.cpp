#include "critical_points.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "special_functions.hpp"

namespace zd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSecondDerivStep = 1e-5;
constexpr int kNewtonMaxIter = 50;
constexpr double kNewtonStepTol = 1e-13;
constexpr double kDedupe = 1e-6;
constexpr double kStripMargin = 2.0;

std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string label_number(const CriticalPoint& cp, int decimals) {
  if (cp.kind == CriticalKind::AsymptoticQuasi) return format_number(cp.location.real(), 0);
  if (decimals == 0) {
    if (cp.kind == CriticalKind::RealAxis) return std::to_string(static_cast<long long>(std::trunc(cp.location.real())));
    return std::to_string(static_cast<long long>(std::floor(cp.location.imag())));
  }
  const double scale = std::pow(10.0, decimals);
  if (cp.kind == CriticalKind::RealAxis) return format_number(std::trunc(cp.location.real() * scale) / scale, decimals);
  return format_number(std::floor(cp.location.imag() * scale) / scale, decimals);
}

// Colliding labels get one decimal.
void assign_labels(const FunctionId& fid, std::vector<CriticalPoint>& pts) {
  std::map<std::string, int> seen;
  for (auto& cp : pts) {
    cp.label = fid.label_prefix() + label_number(cp, 0);
    ++seen[cp.label];
  }
  for (auto& cp : pts) {
    if (seen[cp.label] > 1) cp.label = fid.label_prefix() + label_number(cp, 1);
  }
}

double deriv_re(const FunctionId& fid, double x, const EvalParams& ep) { return eval_derivative(fid, x, ep).real(); }

// Counting estimate of criticals with 0 < Im < t.
double critical_count_estimate(double t) {
  if (t <= 4.0 * kPi) return 0.0;
  const double a = t / (2.0 * kPi);
  return a * std::log(t / (4.0 * kPi)) - a;
}

bool supports_zeros(const FunctionId& fid) {
  return fid.tag == FunctionTag::Zeta || fid.tag == FunctionTag::Eta || fid.tag == FunctionTag::Xi;
}

Complex polish_zero(Complex rho, const EvalParams& ep) {
  for (int k = 0; k < 6; ++k) {
    const Complex d = zeta_deriv(rho, ep);
    if (d == 0.0) break;
    const Complex step = zeta(rho, ep) / d;
    rho -= step;
    if (std::abs(step) < 1e-15 * std::abs(rho)) break;
  }
  return rho;
}

}  // namespace

const char* to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::RealAxis: return "real";
    case CriticalKind::NearCriticalLine: return "unreal";
    case CriticalKind::AsymptoticQuasi: return "quasi";
  }
  return "?";
}

std::string critical_label(const FunctionId& fid, Complex location, CriticalKind kind) {
  CriticalPoint cp{location, {}, kind, {}};
  return fid.label_prefix() + label_number(cp, 0);
}

std::optional<Complex> polish_critical(const FunctionId& fid, Complex z, const EvalParams& ep) {
  const double h = kSecondDerivStep;
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    const Complex d1 = eval_derivative(fid, z, ep);
    if (!is_finite(d1)) return std::nullopt;
    const Complex d2 = (eval_derivative(fid, z + h, ep) - eval_derivative(fid, z - h, ep)) / (2.0 * h);
    if (!is_finite(d2) || d2 == 0.0) return std::nullopt;
    const Complex step = d1 / d2;
    z -= step;
    if (!is_finite(z) || std::abs(step) > 10.0) return std::nullopt;
    if (std::abs(step) < kNewtonStepTol || std::abs(step) < 4e-16 * std::abs(z)) break;
  }
  const Complex d = eval_derivative(fid, z, ep);
  if (!is_finite(d) || std::abs(d) >= kCriticalTol) return std::nullopt;
  return z;
}

std::vector<CriticalPoint> find_real_criticals(const FunctionId& fid, double x_min, double x_max,
                                               const EvalParams& ep, const ScanOptions& so,
                                               std::vector<std::string>* warnings) {
  ep.validate();
  if (!(x_min <= x_max)) fail(ErrorCode::InvalidArgument, "real criticals: x_max < x_min");
  if (!(so.real_step > 0.0)) fail(ErrorCode::InvalidArgument, "scan step must be positive");
  if (fid.tag == FunctionTag::Xi) {
    // Only the centre is catalogued; xi' = 0 there by the s -> 1-s symmetry,
    // which a sign scan of the finite-difference derivative only finds to ~1e-9.
    if (x_min > 0.5 || x_max < 0.5) return {};
    const Complex half(0.5, 0.0);
    return {CriticalPoint{half, xi(half, ep), CriticalKind::RealAxis, critical_label(fid, half, CriticalKind::RealAxis)}};
  }
  const auto n = static_cast<size_t>(std::ceil((x_max - x_min) / so.real_step));
  std::vector<double> xs(n + 1);
  for (size_t i = 0; i <= n; ++i) xs[i] = std::min(x_max, x_min + static_cast<double>(i) * so.real_step);
  std::vector<double> ds(xs.size());
  parallel_for(xs.size(), so.threads, [&](size_t i) {
    if (has_pole_at_one(fid) && xs[i] == 1.0) {
      ds[i] = std::numeric_limits<double>::quiet_NaN();
    } else {
      ds[i] = deriv_re(fid, xs[i], ep);
    }
  });

  std::vector<double> roots;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    double a = xs[i];
    double b = xs[i + 1];
    double fa = ds[i];
    const double fb = ds[i + 1];
    if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0) || fb == 0.0) continue;
    if (has_pole_at_one(fid) && a < 1.0 && b > 1.0) continue;
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::fabs(a)); ++it) {
      const double m = 0.5 * (a + b);
      const double fm = deriv_re(fid, m, ep);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  if (!xs.empty() && ds.back() == 0.0) roots.push_back(xs.back());

  std::vector<CriticalPoint> out;
  for (double x0 : roots) {
    Complex z = x0;
    if (auto polished = polish_critical(fid, z, ep); polished && std::abs(*polished - z) < 1e-6) z = *polished;
    z = Complex(z.real(), 0.0);
    if (const double d = std::abs(eval_derivative(fid, z, ep)); !(d < kCriticalTol)) {
      // Far left |f| is huge and f' cannot get below the tolerance in doubles.
      if (warnings) {
        std::ostringstream os;
        os.precision(10);
        os << "sign change of f' at " << z.real() << " dropped: |f'| = " << d << " there";
        warnings->push_back(os.str());
      }
      continue;
    }
    if (!out.empty() && std::abs(out.back().location - z) < kDedupe) continue;
    out.push_back({z, eval_function(fid, z, ep), CriticalKind::RealAxis, {}});
  }
  std::sort(out.begin(), out.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.location.real() > b.location.real(); });
  assign_labels(fid, out);
  return out;
}

std::vector<CriticalPoint> find_unreal_criticals(const FunctionId& fid, double t_min, double t_max,
                                                 const EvalParams& ep, const ScanOptions& so,
                                                 std::vector<std::string>* warnings) {
  ep.validate();
  if (!(0.0 < t_min && t_min < t_max)) fail(ErrorCode::InvalidArgument, "unreal criticals: need 0 < t_min < t_max");
  if (fid.tag == FunctionTag::Xi) return {};

  std::vector<Complex> seeds;
  for (double t = t_min; t <= t_max + 1e-12; t += so.seed_im_step) {
    for (double x = so.seed_re_min; x <= so.seed_re_max + 1e-12; x += so.seed_re_step) seeds.emplace_back(x, t);
  }
  std::vector<std::optional<Complex>> found(seeds.size());
  parallel_for(seeds.size(), so.threads, [&](size_t i) { found[i] = polish_critical(fid, seeds[i], ep); });

  std::vector<Complex> roots;
  for (const auto& r : found) {
    if (!r || r->imag() < t_min || r->imag() > t_max) continue;
    // Far right f' is below the tolerance everywhere; only roots near the
    // seeded strip are genuine.
    if (r->real() < so.seed_re_min - kStripMargin || r->real() > so.seed_re_max + kStripMargin) continue;
    roots.push_back(*r);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  std::vector<CriticalPoint> out;
  for (Complex z : roots) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const CriticalPoint& cp) { return std::abs(cp.location - z) < kDedupe; });
    if (dup) continue;
    out.push_back({z, eval_function(fid, z, ep), CriticalKind::NearCriticalLine, {}});
  }
  assign_labels(fid, out);

  if (warnings && fid.tag == FunctionTag::Zeta) {
    const double expected = critical_count_estimate(t_max) - critical_count_estimate(t_min);
    if (static_cast<double>(out.size()) < expected - 2.0) {
      warnings->push_back("found " + std::to_string(out.size()) + " criticals where about " +
                          format_number(expected, 1) + " are expected; some may be missed");
    }
    const auto zeros = find_zeros(fid, t_min, t_max, ep, so);
    for (size_t k = 0; k + 1 < zeros.size(); ++k) {
      const double lo = zeros[k].rho.imag();
      const double hi = zeros[k + 1].rho.imag();
      const bool any = std::any_of(out.begin(), out.end(), [&](const CriticalPoint& cp) {
        return cp.location.imag() > lo && cp.location.imag() < hi;
      });
      if (!any) {
        warnings->push_back("no critical between zeros " + std::to_string(zeros[k].index) + " and " +
                            std::to_string(zeros[k + 1].index) + " (Im " + format_number(lo, 3) + " .. " +
                            format_number(hi, 3) + ")");
      }
    }
  }
  return out;
}

double riemann_siegel_theta(double t) {
  const double t2 = t * t;
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) +
         31.0 / (80640.0 * t * t2 * t2);
}

double hardy_z(double t, const EvalParams& ep) {
  // theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi; only e^{i theta} is needed
  // so the branch of log Gamma does not matter.
  const double theta = log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
  return (std::polar(1.0, theta) * zeta(Complex(0.5, t), ep)).real();
}

int zero_count(double t, const EvalParams& ep) {
  if (t < 10.0) return 0;
  // arg zeta(1/2 + it) by continuous variation from Re = 3.
  double arg = std::arg(zeta(Complex(3.0, t), ep));
  double prev = arg;
  const int steps = 500;
  for (int k = 1; k <= steps; ++k) {
    const double sigma = 3.0 - 2.5 * k / steps;
    const double a = std::arg(zeta(Complex(sigma, t), ep));
    double d = a - prev;
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    arg += d;
    prev = a;
  }
  return static_cast<int>(std::lround(riemann_siegel_theta(t) / kPi + 1.0 + arg / kPi));
}

std::vector<ZeroLocation> find_zeros(const FunctionId& fid, double t_min, double t_max, const EvalParams& ep,
                                     const ScanOptions& so, std::vector<std::string>* warnings) {
  ep.validate();
  if (!supports_zeros(fid)) fail(ErrorCode::Unsupported, "zeros: only zeta, eta and xi are supported");
  if (!(0.0 <= t_min && t_min < t_max)) fail(ErrorCode::InvalidArgument, "zeros: need 0 <= t_min < t_max");
  // Z has no zeros below 14; skip the region where the scan would start at t = 0.
  const double start = std::max(t_min, 1.0);
  const auto n = static_cast<size_t>(std::ceil((t_max - start) / so.zero_step));
  std::vector<double> ts(n + 1);
  for (size_t i = 0; i <= n; ++i) ts[i] = std::min(t_max, start + static_cast<double>(i) * so.zero_step);
  std::vector<double> zs(ts.size());
  parallel_for(ts.size(), so.threads, [&](size_t i) { zs[i] = hardy_z(ts[i], ep); });

  std::vector<double> brackets;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    double a = ts[i];
    double b = ts[i + 1];
    double fa = zs[i];
    if ((fa < 0.0) == (zs[i + 1] < 0.0)) continue;
    for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = hardy_z(m, ep);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    brackets.push_back(0.5 * (a + b));
  }

  const int base = zero_count(t_min, ep);
  std::vector<ZeroLocation> out;
  for (double t : brackets) {
    const Complex rho = polish_zero(Complex(0.5, t), ep);
    if (rho.imag() <= t_min || rho.imag() > t_max) continue;
    out.push_back({rho, 0});
  }
  for (size_t k = 0; k < out.size(); ++k) out[k].index = base + 1 + static_cast<int>(k);
  if (warnings) {
    const int expected = zero_count(t_max, ep) - base;
    if (expected != static_cast<int>(out.size())) {
      warnings->push_back("zero count mismatch: scan found " + std::to_string(out.size()) + ", counting function gives " +
                          std::to_string(expected));
    }
  }
  return out;
}

CriticalPoint quasi_critical(const FunctionId& fid, const EvalParams& ep) {
  if (!has_plateau(fid)) fail(ErrorCode::Unsupported, "quasi-critical point needs a plateau (zeta, eta, L)");
  CriticalPoint cp{kQuasiCriticalRe, eval_function(fid, kQuasiCriticalRe, ep), CriticalKind::AsymptoticQuasi, {}};
  cp.label = fid.label_prefix() + label_number(cp, 0);
  return cp;
}

CriticalPoint resolve_critical(const FunctionId& fid, std::string_view text, const EvalParams& ep) {
  const std::string prefix = fid.label_prefix();
  if (text.substr(0, prefix.size()) != prefix || text.size() == prefix.size()) {
    const auto z = parse_complex(text);
    if (!z) fail(ErrorCode::NotFound, "unknown critical '" + std::string(text) + "'");
    CriticalPoint cp{*z, eval_function(fid, *z, ep), z->imag() == 0.0 ? CriticalKind::RealAxis : CriticalKind::NearCriticalLine,
                     std::string(text)};
    return cp;
  }
  const std::string rest(text.substr(prefix.size()));
  char* end = nullptr;
  const double num = std::strtod(rest.c_str(), &end);
  if (end != rest.c_str() + rest.size() || !std::isfinite(num)) {
    fail(ErrorCode::NotFound, "unknown critical '" + std::string(text) + "'");
  }
  if (num == kQuasiCriticalRe && has_plateau(fid)) return quasi_critical(fid, ep);

  std::vector<CriticalPoint> candidates;
  if (rest.front() == '-' || (fid.tag == FunctionTag::Xi && num == 0.0)) {
    const double lo = std::floor(num) - 1.05;
    const double hi = std::floor(num) + 1.05;
    if (hi - lo < 10.0) candidates = find_real_criticals(fid, lo, hi, ep);
  } else if (num >= 1.0 && num < 1e5) {
    const double fl = std::floor(num);
    candidates = find_unreal_criticals(fid, std::max(0.5, fl - 0.5), fl + 1.5, ep);
  }
  for (const auto& cp : candidates) {
    if (cp.label == text) return cp;
  }
  fail(ErrorCode::NotFound, "unknown critical '" + std::string(text) + "'");
}

}  // namespace zd
