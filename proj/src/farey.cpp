#include "farey.hpp"

#include <cmath>
#include <numeric>

#include "common.hpp"

namespace zd {
namespace {

void check_order(int n) {
  if (n < 1 || n > kMaxFareyOrder) {
    fail(ErrorCode::OutOfRange, "farey order must be in [1, " + std::to_string(kMaxFareyOrder) + "]");
  }
}

}  // namespace

Fraction mediant(Fraction a, Fraction b) {
  const int64_t num = a.num + b.num;
  const int64_t den = a.den + b.den;
  const int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

int64_t farey_length(int n) {
  check_order(n);
  // totient sieve
  std::vector<int64_t> phi(static_cast<size_t>(n) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (int p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;
    for (int k = p; k <= n; k += p) phi[k] -= phi[k] / p;
  }
  int64_t m = 1;
  for (int k = 1; k <= n; ++k) m += phi[k];
  return m;
}

std::vector<Fraction> farey(int n) {
  check_order(n);
  std::vector<Fraction> out;
  out.reserve(static_cast<size_t>(farey_length(n)));
  int64_t a = 0, b = 1, c = 1, d = n;
  out.push_back({a, b});
  while (c <= n) {
    const int64_t k = (n + b) / d;
    const int64_t e = k * c - a;
    const int64_t f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
    out.push_back({a, b});
  }
  return out;
}

FareyStats rh_stats(int n) {
  const auto seq = farey(n);
  FareyStats st;
  st.n = n;
  st.m_n = static_cast<int64_t>(seq.size());
  const double m = static_cast<double>(st.m_n);
  for (size_t k = 0; k < seq.size(); ++k) {
    const double d = seq[k].value() - static_cast<double>(k + 1) / m;
    st.sum_abs_d += std::fabs(d);
    st.sum_sq_d += d * d;
  }
  return st;
}

}  // namespace zd
