#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>

#include "special_functions.hpp"

namespace zd {
namespace {

using LComplex = std::complex<long double>;

struct PrimePower {
  long long p = 0;
  int e = 0;
  long long pe = 1;
};

std::vector<PrimePower> factor(long long q) {
  std::vector<PrimePower> out;
  for (long long p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    PrimePower f{p, 0, 1};
    while (q % p == 0) {
      q /= p;
      ++f.e;
      f.pe *= p;
    }
    out.push_back(f);
  }
  if (q > 1) out.push_back({q, 1, q});
  return out;
}

long long phi_of(const PrimePower& f) { return f.pe / f.p * (f.p - 1); }

// Multiplicative order of g modulo m (g a unit).
long long order_mod(long long g, long long m) {
  long long x = g % m;
  long long k = 1;
  while (x != 1 % m) {
    x = x * g % m;
    ++k;
  }
  return k;
}

// A cyclic factor of (Z/p^eZ)^* together with a discrete-log table over p^e.
struct LocalFactor {
  long long generator_local = 1;  // generator mod p^e
  long long order = 1;
  long long lifted = 1;  // generator lifted to mod q, == 1 on the other components
  size_t component = 0;  // index into the prime-power list
  int slot = 0;          // position within that component's log vector
};

struct Component {
  PrimePower pp;
  // log_table[r] = exponent vector of residue r mod p^e (empty for non-units)
  std::vector<std::vector<int>> log_table;
};

long long crt_lift(long long residue, const PrimePower& f, long long q) {
  // x == residue (mod p^e), x == 1 (mod q / p^e)
  const long long rest = q / f.pe;
  for (long long k = 0; k < f.pe; ++k) {
    const long long x = 1 + k * rest;
    if (x % f.pe == ((residue % f.pe) + f.pe) % f.pe) return x % q;
  }
  return 1;
}

struct GroupData {
  UnitGroup group;
  std::vector<LocalFactor> factors;
  std::vector<Component> components;
};

GroupData build_group(int q) {
  GroupData data;
  data.group.modulus = q;
  const auto primes = factor(q);
  for (size_t ci = 0; ci < primes.size(); ++ci) {
    const PrimePower& f = primes[ci];
    Component comp{f, std::vector<std::vector<int>>(static_cast<size_t>(f.pe))};
    std::vector<std::pair<long long, long long>> gens;  // (local generator, order)
    if (f.p == 2) {
      if (f.e == 2) gens = {{3, 2}};
      if (f.e >= 3) gens = {{f.pe - 1, 2}, {5, f.pe / 4}};
    } else {
      const long long phi = phi_of(f);
      for (long long g = 2; g < f.pe; ++g) {
        if (g % f.p != 0 && order_mod(g, f.pe) == phi) {
          gens = {{g, phi}};
          break;
        }
      }
    }
    // Discrete logs by enumerating all products of the local generators.
    if (gens.empty()) {
      if (f.pe >= 2) comp.log_table[1 % static_cast<size_t>(f.pe)] = {};
    } else if (gens.size() == 1) {
      long long x = 1;
      for (long long k = 0; k < gens[0].second; ++k) {
        comp.log_table[static_cast<size_t>(x)] = {static_cast<int>(k)};
        x = x * gens[0].first % f.pe;
      }
    } else {
      long long a = 1;
      for (long long i = 0; i < gens[0].second; ++i) {
        long long x = a;
        for (long long j = 0; j < gens[1].second; ++j) {
          comp.log_table[static_cast<size_t>(x)] = {static_cast<int>(i), static_cast<int>(j)};
          x = x * gens[1].first % f.pe;
        }
        a = a * gens[0].first % f.pe;
      }
    }
    for (size_t slot = 0; slot < gens.size(); ++slot) {
      LocalFactor lf;
      lf.generator_local = gens[slot].first;
      lf.order = gens[slot].second;
      lf.lifted = crt_lift(gens[slot].first, f, q);
      lf.component = ci;
      lf.slot = static_cast<int>(slot);
      data.factors.push_back(lf);
    }
    data.components.push_back(std::move(comp));
  }
  std::stable_sort(data.factors.begin(), data.factors.end(),
                   [](const LocalFactor& a, const LocalFactor& b) { return a.lifted < b.lifted; });
  for (const auto& lf : data.factors) {
    data.group.generators.push_back(static_cast<int>(lf.lifted));
    data.group.orders.push_back(static_cast<int>(lf.order));
  }
  return data;
}

// exp(2 pi i m / L) with exact values on the quarter turns.
Complex root_of_unity(long long m, long long L) {
  m %= L;
  if (m < 0) m += L;
  if ((4 * m) % L == 0) {
    switch ((4 * m) / L) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(L);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<CharacterTable> build_characters(int q) {
  const GroupData data = build_group(q);
  const size_t r = data.factors.size();
  long long L = 1;
  for (const auto& lf : data.factors) L = std::lcm(L, lf.order);

  // Per residue: exponent in each factor (in sorted factor order), or none.
  std::vector<std::vector<int>> logs(static_cast<size_t>(q));
  std::vector<bool> unit(static_cast<size_t>(q), false);
  for (int n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    unit[static_cast<size_t>(n)] = true;
    std::vector<int> e(r, 0);
    for (size_t j = 0; j < r; ++j) {
      const auto& lf = data.factors[j];
      const auto& comp = data.components[lf.component];
      const auto& local = comp.log_table[static_cast<size_t>(n % comp.pp.pe)];
      if (!local.empty()) e[j] = local[static_cast<size_t>(lf.slot)];
    }
    logs[static_cast<size_t>(n)] = std::move(e);
  }

  std::vector<CharacterTable> out;
  std::vector<int> a(r, 0);
  while (true) {
    CharacterTable chi;
    chi.modulus = q;
    chi.exponents = a;
    chi.values.assign(static_cast<size_t>(q), Complex(0.0, 0.0));
    long long order = 1;
    for (size_t j = 0; j < r; ++j) {
      const long long nj = data.factors[j].order;
      order = std::lcm(order, nj / std::gcd(static_cast<long long>(a[j]), nj));
    }
    chi.order = static_cast<int>(order);
    for (int n = 0; n < q; ++n) {
      if (!unit[static_cast<size_t>(n)]) continue;
      long long m = 0;
      for (size_t j = 0; j < r; ++j) {
        m += static_cast<long long>(a[j]) * logs[static_cast<size_t>(n)][j] * (L / data.factors[j].order);
      }
      chi.values[static_cast<size_t>(n)] = root_of_unity(m, L);
    }
    out.push_back(std::move(chi));
    // Next exponent tuple in lexicographic order (last factor fastest).
    size_t j = r;
    while (j > 0) {
      --j;
      if (++a[j] < data.factors[j].order) break;
      a[j] = 0;
      if (j == 0) return out;
    }
    if (r == 0) return out;
  }
}

// Bernoulli numbers B_2 .. B_30.
constexpr std::array<long double, 15> kBernoulli = {
    1.0L / 6,          -1.0L / 30,        1.0L / 42,          -1.0L / 30,          5.0L / 66,
    -691.0L / 2730,    7.0L / 6,          -3617.0L / 510,     43867.0L / 798,      -174611.0L / 330,
    854513.0L / 138,   -236364091.0L / 2730, 8553103.0L / 6,  -23749461029.0L / 870, 8615841276005.0L / 14322};

// sum_k (kq + a)^{-s} = q^{-s} zeta_H(s, a/q), by Euler-Maclaurin with 15
// Bernoulli terms after M explicit terms. Everything is expressed through
// powers of (kq + a) so nothing overflows for large Re s. The tail integral
// (Mq + a)^{1-s} / (q (s-1)) is split as 1/(q (s-1)) plus a regular part; the
// pole part is left out when with_pole is false (it cancels in L(s, chi) for
// non-principal chi, which keeps s = 1 and its neighbourhood accurate).
LComplex scaled_hurwitz(LComplex s, long double q, long double a, bool with_pole) {
  const long double mag = std::abs(s);
  const int M = std::max(20, static_cast<int>(std::ceil((mag + 30.0L) / 1.5L)));
  LComplex sum = 0.0L;
  for (int k = M - 1; k >= 0; --k) sum += std::exp(-s * std::log(k * q + a));
  const long double log_end = std::log(M * q + a);
  const long double x = M + a / q;
  const LComplex P = std::exp(-s * log_end);
  // ((Mq + a)^{1-s} - 1) / (s - 1)
  const LComplex w = (s - 1.0L) * log_end;
  LComplex regular;
  if (std::abs(w) < 1e-3L) {
    regular = -log_end * (1.0L - w * (0.5L - w * (1.0L / 6 - w / 24.0L)));
  } else {
    regular = (std::exp(-w) - 1.0L) / (s - 1.0L);
  }
  LComplex tail = regular / q;
  if (with_pole) tail += 1.0L / (q * (s - 1.0L));
  LComplex bracket = 0.5L;
  LComplex rising = s;  // (s)_{2j-1}
  long double fact = 2.0L;  // (2j)!
  long double xpow = x;  // x^{2j-1}
  for (int j = 1; j <= 15; ++j) {
    bracket += kBernoulli[static_cast<size_t>(j) - 1] / fact * rising / xpow;
    rising *= (s + static_cast<long double>(2 * j - 1)) * (s + static_cast<long double>(2 * j));
    fact *= static_cast<long double>(2 * j + 1) * static_cast<long double>(2 * j + 2);
    xpow *= x * x;
  }
  return sum + tail + P * bracket;
}

}  // namespace

bool CharacterTable::is_principal() const {
  return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

bool CharacterTable::is_real() const {
  return std::all_of(values.begin(), values.end(), [](Complex v) { return v.imag() == 0.0; });
}

UnitGroup unit_group(int q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  return build_group(q).group;
}

const std::vector<CharacterTable>& characters(int q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const std::vector<CharacterTable>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<const std::vector<CharacterTable>>(build_characters(q));
  return *slot;
}

Complex hurwitz_zeta(Complex s, double a) {
  if (s == Complex(1.0, 0.0)) fail(ErrorCode::Pole, "hurwitz zeta: pole at s = 1");
  if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "hurwitz zeta: a must be positive");
  const LComplex v = scaled_hurwitz(LComplex(s.real(), s.imag()), 1.0L, a, true);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex dirichlet_l(int q, int char_index, Complex z, const EvalParams& p) {
  p.validate();
  FunctionId::dirichlet(q, char_index).validate();
  const CharacterTable& chi = characters(q)[static_cast<size_t>(char_index) - 1];
  if (chi.is_principal() && z == Complex(1.0, 0.0)) fail(ErrorCode::Pole, "L-function: pole at z = 1");
  const bool principal = chi.is_principal();
  const LComplex s(z.real(), z.imag());
  LComplex total = 0.0L;
  for (int a = 1; a <= q; ++a) {
    const Complex c = chi.values[static_cast<size_t>(a % q)];
    if (c == Complex(0.0, 0.0)) continue;
    total += LComplex(c.real(), c.imag()) * scaled_hurwitz(s, q, a, principal);
  }
  const Complex v(static_cast<double>(total.real()), static_cast<double>(total.imag()));
  return is_finite(v) ? v : overflow_value();
}

Complex dirichlet_l_deriv(int q, int char_index, Complex z, const EvalParams& p) {
  const double h = p.deriv_step;
  return (dirichlet_l(q, char_index, z + h, p) - dirichlet_l(q, char_index, z - h, p)) / (2.0 * h);
}

}  // namespace zd
