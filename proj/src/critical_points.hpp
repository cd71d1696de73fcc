// Critical points (zeros of f') and nontrivial zeros.
#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace zd {

enum class CriticalKind { RealAxis, NearCriticalLine, AsymptoticQuasi };

const char* to_string(CriticalKind k);

struct CriticalPoint {
  Complex location{0.0, 0.0};
  Complex value{0.0, 0.0};
  CriticalKind kind = CriticalKind::RealAxis;
  std::string label;
};

struct ZeroLocation {
  Complex rho{0.0, 0.5};
  int index = 0;
};

struct ScanOptions {
  int threads = 0;
  double real_step = 0.05;
  double seed_re_min = 0.0;
  double seed_re_max = 3.0;
  double seed_re_step = 0.25;
  double seed_im_step = 0.5;
  double zero_step = 0.05;
};

inline constexpr double kCriticalTol = 1e-8;
inline constexpr double kQuasiCriticalRe = 1000.0;

// Real criticals in [x_min, x_max], sorted by decreasing x. Sign changes of f'
// whose refined point misses kCriticalTol are dropped and noted in *warnings.
std::vector<CriticalPoint> find_real_criticals(const FunctionId& fid, double x_min, double x_max,
                                               const EvalParams& ep = {}, const ScanOptions& so = {},
                                               std::vector<std::string>* warnings = nullptr);

// Criticals with Im in [t_min, t_max] seeded from the strip Re in [0, 3];
// sorted by Im. Warnings from the counting heuristics go to *warnings.
std::vector<CriticalPoint> find_unreal_criticals(const FunctionId& fid, double t_min, double t_max,
                                                 const EvalParams& ep = {}, const ScanOptions& so = {},
                                                 std::vector<std::string>* warnings = nullptr);

// Nontrivial zeros on Re = 1/2 with 0 <= t_min < Im <= t_max (zeta, eta, xi).
std::vector<ZeroLocation> find_zeros(const FunctionId& fid, double t_min, double t_max, const EvalParams& ep = {},
                                     const ScanOptions& so = {}, std::vector<std::string>* warnings = nullptr);

// The plateau stand-in 1000 + 0i.
CriticalPoint quasi_critical(const FunctionId& fid, const EvalParams& ep = {});

// Newton on f' from a seed; returns the converged point or nothing.
std::optional<Complex> polish_critical(const FunctionId& fid, Complex seed, const EvalParams& ep);

// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t.
double hardy_z(double t, const EvalParams& ep = {});
// Riemann-Siegel theta by its Stirling expansion (t >= 1).
double riemann_siegel_theta(double t);
// Zero-counting N(t) = theta/pi + 1 + S(t), rounded; t must not be a zero ordinate.
int zero_count(double t, const EvalParams& ep = {});

// Resolves a label ("z-15", "z95", "z1000", "e60.8") or a literal "re,im"
// to a critical point. Unknown labels raise NotFound.
CriticalPoint resolve_critical(const FunctionId& fid, std::string_view label_or_point, const EvalParams& ep = {});

std::string critical_label(const FunctionId& fid, Complex location, CriticalKind kind);

}  // namespace zd
