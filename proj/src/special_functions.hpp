// Zeta-family special functions evaluated in double precision across the
// whole complex plane.
//
// zeta/eta use an accelerated alternating series (Chebyshev-weighted, so the
// error falls like (3+sqrt 8)^-n) for Re z >= 1/2 and the functional equation
// below that line. TruncatedEta mode replaces the accelerated series with the
// plain n-term alternating sum.
#pragma once

#include <span>
#include <vector>

#include "common.hpp"

namespace zd {

Complex gamma(Complex z);
// Principal-branch-free log Gamma: exp(log_gamma(z)) == gamma(z), the
// imaginary part is not normalised to (-pi, pi].
Complex log_gamma(Complex z);
Complex digamma(Complex z);

// sin(pi z) with exact reduction of Re z, so integer arguments give exact zeros.
Complex sin_pi(Complex z);
// log sin(pi z) without overflow for large |Im z| (branch unspecified).
Complex log_sin_pi(Complex z);

Complex zeta(Complex z, const EvalParams& p = {});
Complex zeta_deriv(Complex z, const EvalParams& p = {});
Complex eta(Complex z, const EvalParams& p = {});
Complex eta_deriv(Complex z, const EvalParams& p = {});
Complex xi(Complex z, const EvalParams& p = {});

// Number of accelerated-series terms used at height |Im z| = t.
int accelerated_terms(double t);

struct CharacterTable {
  int modulus = 1;
  int order = 1;
  std::vector<Complex> values;  // values[n] = chi(n mod q), n = 0..q-1
  std::vector<int> exponents;   // exponent of each cyclic factor

  Complex operator()(long long n) const { return values[static_cast<size_t>(((n % modulus) + modulus) % modulus)]; }
  bool is_principal() const;
  bool is_real() const;
};

// Structure of (Z/qZ)^*: generators (smallest primitive roots of the prime
// power factors lifted by CRT, 2-part first) and their orders.
struct UnitGroup {
  int modulus = 1;
  std::vector<int> generators;
  std::vector<int> orders;
};
UnitGroup unit_group(int q);

// All phi(q) characters mod q ordered lexicographically by exponent tuple;
// index 0 (user index 1) is the principal character. Results are memoised.
const std::vector<CharacterTable>& characters(int q);

Complex dirichlet_l(int q, int char_index, Complex z, const EvalParams& p = {});
Complex dirichlet_l_deriv(int q, int char_index, Complex z, const EvalParams& p = {});

// Hurwitz zeta by Euler-Maclaurin (exposed for tests).
Complex hurwitz_zeta(Complex s, double a);

Complex eval_function(const FunctionId& fid, Complex z, const EvalParams& p = {});
Complex eval_derivative(const FunctionId& fid, Complex z, const EvalParams& p = {});

// True for functions that tend to 1 as Re z -> +inf (zeta, eta, L).
bool has_plateau(const FunctionId& fid);
// True when z = 1 is a pole (zeta, principal L).
bool has_pole_at_one(const FunctionId& fid);

}  // namespace zd
