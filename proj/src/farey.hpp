// Farey sequences and the deviation statistics d_k = a_k - k/m.
#pragma once

#include <cstdint>
#include <vector>

namespace zd {

struct Fraction {
  int64_t num = 0;
  int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction&) const = default;
};

struct FareyStats {
  int n = 0;
  int64_t m_n = 0;
  double sum_abs_d = 0.0;
  double sum_sq_d = 0.0;
};

// Reduced mediant (a+c)/(b+d).
Fraction mediant(Fraction a, Fraction b);
int64_t farey_length(int n);
std::vector<Fraction> farey(int n);
FareyStats rh_stats(int n);

inline constexpr int kMaxFareyOrder = 20000;

}  // namespace zd
