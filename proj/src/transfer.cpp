#include "transfer.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "special_functions.hpp"

namespace zd {
namespace {

constexpr double kRootTol = 1e-8;
constexpr double kDedupe = 1e-6;
constexpr double kDegenerateSlope = 1e-12;

Complex transfer_deriv(const FunctionId& fid, const CriticalPoint& cp, FamilyKind fam, Complex c, const EvalParams& ep) {
  if (fam == FamilyKind::Additive) return eval_derivative(fid, cp.value + c, ep);
  return cp.value * eval_derivative(fid, c * cp.value, ep);
}

std::optional<Complex> newton_transfer(const FunctionId& fid, const CriticalPoint& cp, FamilyKind fam, Complex c,
                                       const EvalParams& ep) {
  try {
    for (int it = 0; it < 50; ++it) {
      const Complex t = transfer_value(fid, cp, fam, c, ep);
      const Complex d = transfer_deriv(fid, cp, fam, c, ep);
      if (!is_finite(t) || !is_finite(d) || d == 0.0) return std::nullopt;
      const Complex step = t / d;
      c -= step;
      if (!is_finite(c)) return std::nullopt;
      if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(c))) break;
    }
    if (std::abs(transfer_value(fid, cp, fam, c, ep)) < kRootTol) return c;
  } catch (const Error&) {
  }
  return std::nullopt;
}

bool inside(const Viewport& vp, Complex c, double margin) {
  const Complex d = c - vp.center;
  return std::fabs(d.real()) <= 0.5 * vp.width + margin && std::fabs(d.imag()) <= 0.5 * vp.height() + margin;
}

}  // namespace

Complex principal_point(const CriticalPoint& cp, FamilyKind fam) {
  if (fam == FamilyKind::Additive) return cp.location - cp.value;
  if (cp.value == 0.0) fail(ErrorCode::DivisionByZero, "principal point: critical value is zero");
  return cp.location / cp.value;
}

Complex induced_fixed_point(const CriticalPoint& cp, FamilyKind fam, Complex c) {
  return fam == FamilyKind::Additive ? cp.value + c : c * cp.value;
}

Complex transfer_value(const FunctionId& fid, const CriticalPoint& cp, FamilyKind fam, Complex c, const EvalParams& ep) {
  return eval_function(fid, induced_fixed_point(cp, fam, c), ep) - cp.value;
}

Viewport default_transfer_region(const CriticalPoint& cp, FamilyKind fam) {
  if (cp.kind == CriticalKind::AsymptoticQuasi) return {Complex(cp.location.real(), 0.0), 20.0, 256, 256};
  (void)fam;
  // Central valley: Re in [-15, 1], |Im| <= 6, i.e. the negative-real valley up
  // to the critical strip, short of the basal frond tip near -16.
  return {Complex(-7.0, 0.0), 16.0, 256, 192};
}

TransferAnalysis find_fixed_values(const FunctionId& fid, const CriticalPoint& cp, FamilyKind fam,
                                   const Viewport& region, const EvalParams& ep, const TransferOptions& to) {
  ep.validate();
  region.validate();
  if (to.grid < 2) fail(ErrorCode::InvalidArgument, "transfer grid must be at least 2");
  TransferAnalysis out;
  out.critical = cp;
  out.fid = fid;
  out.family = fam;
  out.principal = principal_point(cp, fam);

  const int gw = to.grid;
  const int gh = std::max(2, static_cast<int>(std::lround(to.grid * region.height() / region.width)));
  const Viewport grid{region.center, region.width, gw, gh};
  std::vector<double> mag(static_cast<size_t>(gw) * static_cast<size_t>(gh));
  parallel_for(static_cast<size_t>(gh), to.threads, [&](size_t j) {
    for (int i = 0; i < gw; ++i) {
      double m = std::numeric_limits<double>::infinity();
      try {
        const Complex t = transfer_value(fid, cp, fam, grid.pixel_center(i, static_cast<double>(j)), ep);
        if (is_finite(t)) m = std::abs(t);
      } catch (const Error&) {
      }
      mag[j * static_cast<size_t>(gw) + static_cast<size_t>(i)] = m;
    }
  });

  std::vector<Complex> seeds;
  for (int j = 0; j < gh; ++j) {
    for (int i = 0; i < gw; ++i) {
      const double m = mag[static_cast<size_t>(j) * static_cast<size_t>(gw) + static_cast<size_t>(i)];
      if (!std::isfinite(m)) continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          const int jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= gw || jj >= gh) continue;
          if (mag[static_cast<size_t>(jj) * static_cast<size_t>(gw) + static_cast<size_t>(ii)] < m) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) seeds.push_back(grid.pixel_center(i, j));
    }
  }

  std::vector<std::optional<Complex>> roots(seeds.size());
  parallel_for(seeds.size(), to.threads, [&](size_t k) { roots[k] = newton_transfer(fid, cp, fam, seeds[k], ep); });

  const double cell = region.width / gw;
  std::vector<Complex> accepted;
  for (const auto& r : roots) {
    if (!r || !inside(region, *r, 0.5 * cell)) continue;
    // Far right T vanishes to machine precision on whole areas (f == 1 there);
    // such "roots" are not isolated and are not reported.
    if (!(std::abs(transfer_deriv(fid, cp, fam, *r, ep)) > kDegenerateSlope)) continue;
    if (std::any_of(accepted.begin(), accepted.end(), [&](Complex a) { return std::abs(a - *r) < kDedupe; })) continue;
    accepted.push_back(*r);
  }
  const bool principal_listed =
      std::any_of(accepted.begin(), accepted.end(), [&](Complex a) { return std::abs(a - out.principal) < kDedupe; });
  if (!principal_listed && inside(region, out.principal, 0.0)) accepted.push_back(out.principal);

  for (Complex c : accepted) {
    FixedValue fv;
    fv.c = c;
    fv.fixed_point = induced_fixed_point(cp, fam, c);
    fv.deriv_mod = std::abs(family_map_deriv(fid, fam, c, fv.fixed_point, ep));
    fv.stability = classify_multiplier(fv.deriv_mod);
    fv.principal = std::abs(c - out.principal) < kDedupe;
    out.fixed_values.push_back(fv);
  }
  std::sort(out.fixed_values.begin(), out.fixed_values.end(), [](const FixedValue& a, const FixedValue& b) {
    return a.c.real() != b.c.real() ? a.c.real() < b.c.real() : a.c.imag() < b.c.imag();
  });
  return out;
}

}  // namespace zd
