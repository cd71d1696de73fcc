// Orbits of the additive family z -> f(z) + c and the multiplicative family
// z -> c f(z).
#pragma once

#include <optional>
#include <vector>

#include "common.hpp"

namespace zd {

struct IterationParams {
  int max_iter = 256;
  double escape_radius = 1e6;
  // Right of this line zeta, eta and L are treated as exactly 1.
  double plateau_re = 50.0;
  double eps_cycle = 1e-9;
  int history = 32;

  void validate() const;
};

enum class OrbitStatus { Escaped, Periodic, MaxIterBounded };

const char* to_string(OrbitStatus s);

struct OrbitResult {
  OrbitStatus status = OrbitStatus::MaxIterBounded;
  // Escaped: step at which the orbit left. Periodic: step at which the repeat
  // was seen (steps_to_lock). Bounded: max_iter.
  int steps = 0;
  int period = 0;
  std::vector<Complex> cycle;
  Complex final{0.0, 0.0};
  std::vector<Complex> trace;  // z0, z1, ... when requested
  std::optional<Complex> multiplier;
  bool overflow = false;
  bool pole_hit = false;
};

struct OrbitOptions {
  bool want_trace = false;
  size_t trace_limit = 512;
  bool want_multiplier = true;
};

// One application of the family map. Plateau points (Re z > plateau_re for
// functions with a plateau) evaluate f as exactly 1.
Complex family_map(const FunctionId& fid, FamilyKind fam, Complex c, Complex z, const IterationParams& ip,
                   const EvalParams& ep);
// Derivative of the family map in z: f'(z) or c f'(z).
Complex family_map_deriv(const FunctionId& fid, FamilyKind fam, Complex c, Complex z, const EvalParams& ep);

OrbitResult iterate_orbit(const FunctionId& fid, FamilyKind fam, Complex c, Complex z0, const IterationParams& ip,
                          const EvalParams& ep, const OrbitOptions& opts = {});

Complex cycle_multiplier(const FunctionId& fid, FamilyKind fam, Complex c, const std::vector<Complex>& cycle,
                         const EvalParams& ep);

enum class Stability { Attracting, Repelling, Indifferent };

const char* to_string(Stability s);

struct PointClass {
  Stability stability = Stability::Indifferent;
  double deriv_mod = 0.0;
  // |f_c(v) - v|; above 1e-6 the point is not actually fixed.
  double residual = 0.0;
  bool not_fixed = false;
};

inline constexpr double kClassifyTol = 1e-6;

Stability classify_multiplier(double deriv_mod);
PointClass classify_point(Complex v, const FunctionId& fid, FamilyKind fam, Complex c, const EvalParams& ep);

}  // namespace zd
