// Transfer functions T(c) whose zeros make a critical value land on a fixed
// point of the family map.
#pragma once

#include <vector>

#include "critical_points.hpp"
#include "dynamics.hpp"

namespace zd {

struct FixedValue {
  Complex c{0.0, 0.0};
  Complex fixed_point{0.0, 0.0};
  double deriv_mod = 0.0;
  Stability stability = Stability::Indifferent;
  bool principal = false;
};

struct TransferAnalysis {
  CriticalPoint critical;
  FunctionId fid;
  FamilyKind family = FamilyKind::Additive;
  Complex principal{0.0, 0.0};
  std::vector<FixedValue> fixed_values;
};

struct TransferOptions {
  int grid = 256;
  int threads = 0;
};

Complex principal_point(const CriticalPoint& cp, FamilyKind fam);

// T(c) = f(v + c) - v or f(c v) - v, v the critical value.
Complex transfer_value(const FunctionId& fid, const CriticalPoint& cp, FamilyKind fam, Complex c,
                       const EvalParams& ep = {});

// The fixed point of f_c reached by the critical value: v + c or c v.
Complex induced_fixed_point(const CriticalPoint& cp, FamilyKind fam, Complex c);

TransferAnalysis find_fixed_values(const FunctionId& fid, const CriticalPoint& cp, FamilyKind fam,
                                   const Viewport& region, const EvalParams& ep = {}, const TransferOptions& to = {});

// Region used when a transfer request names no viewport: the central valley
// Re in [-15, 1], |Im| <= 6 for finite criticals, Re in [990, 1010] for the
// plateau stand-in.
Viewport default_transfer_region(const CriticalPoint& cp, FamilyKind fam);

}  // namespace zd
