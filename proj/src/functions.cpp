#include "special_functions.hpp"

namespace zd {

Complex eval_function(const FunctionId& fid, Complex z, const EvalParams& p) {
  switch (fid.tag) {
    case FunctionTag::Zeta: return zeta(z, p);
    case FunctionTag::Eta: return eta(z, p);
    case FunctionTag::Xi: return xi(z, p);
    case FunctionTag::DirichletL: return dirichlet_l(fid.modulus, fid.char_index, z, p);
    case FunctionTag::Rosetta: {
      const Complex v = z * std::exp(-z);
      return is_finite(v) ? v : overflow_value();
    }
    case FunctionTag::Quadratic: return z * z;
  }
  fail(ErrorCode::Unsupported, "unknown function");
}

Complex eval_derivative(const FunctionId& fid, Complex z, const EvalParams& p) {
  switch (fid.tag) {
    case FunctionTag::Zeta: return zeta_deriv(z, p);
    case FunctionTag::Eta: return eta_deriv(z, p);
    case FunctionTag::DirichletL: return dirichlet_l_deriv(fid.modulus, fid.char_index, z, p);
    case FunctionTag::Rosetta: {
      const Complex v = (1.0 - z) * std::exp(-z);
      return is_finite(v) ? v : overflow_value();
    }
    case FunctionTag::Quadratic: return 2.0 * z;
    case FunctionTag::Xi: {
      const double h = p.deriv_step;
      return (xi(z + h, p) - xi(z - h, p)) / (2.0 * h);
    }
  }
  fail(ErrorCode::Unsupported, "unknown function");
}

bool has_plateau(const FunctionId& fid) {
  return fid.tag == FunctionTag::Zeta || fid.tag == FunctionTag::Eta || fid.tag == FunctionTag::DirichletL;
}

bool has_pole_at_one(const FunctionId& fid) {
  if (fid.tag == FunctionTag::Zeta) return true;
  if (fid.tag == FunctionTag::DirichletL) return fid.char_index == 1;
  return false;
}

}  // namespace zd
