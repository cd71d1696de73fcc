// Core value types shared by every zetadyn module.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace zd {

using Complex = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  Pole,
  DivisionByZero,
  Unsupported,
  NotFound,
  OutOfRange,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Overflowed evaluations are reported as (+inf, +inf) rather than thrown.
inline Complex overflow_value() {
  return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

enum class EvalMode { Accelerated, TruncatedEta };

struct EvalParams {
  EvalMode mode = EvalMode::Accelerated;
  // Term count of the plain alternating sum. Accelerated mode picks its own
  // count from |Im z| and ignores this field.
  int terms = 64;
  double deriv_step = 1e-6;

  void validate() const;
};

inline constexpr int kMaxTerms = 100000;

enum class FunctionTag { Zeta, Eta, Xi, DirichletL, Rosetta, Quadratic };

struct FunctionId {
  FunctionTag tag = FunctionTag::Zeta;
  int modulus = 0;     // DirichletL only
  int char_index = 0;  // DirichletL only, 1-based, 1 = principal

  static FunctionId zeta() { return {FunctionTag::Zeta, 0, 0}; }
  static FunctionId eta() { return {FunctionTag::Eta, 0, 0}; }
  static FunctionId xi() { return {FunctionTag::Xi, 0, 0}; }
  static FunctionId rosetta() { return {FunctionTag::Rosetta, 0, 0}; }
  static FunctionId quadratic() { return {FunctionTag::Quadratic, 0, 0}; }
  static FunctionId dirichlet(int q, int k) { return {FunctionTag::DirichletL, q, k}; }

  // Accepts "zeta", "eta", "xi", "rosetta", "quadratic" and "L(q,k)".
  static FunctionId parse(std::string_view text);
  std::string to_string() const;
  // Prefix used for critical-point labels: z, e, xi, L(q,k), r, q.
  std::string label_prefix() const;
  void validate() const;

  bool operator==(const FunctionId&) const = default;
};

enum class FamilyKind { Additive, Multiplicative };

FamilyKind parse_family(std::string_view text);
const char* to_string(FamilyKind fam);

// Rectangle of the plane sampled at pixel centres; the imaginary axis points
// up, so row 0 is the top edge.
struct Viewport {
  Complex center{0.0, 0.0};
  double width = 4.0;
  int px_w = 256;
  int px_h = 256;

  double height() const { return width * static_cast<double>(px_h) / static_cast<double>(px_w); }
  Complex pixel_center(double i, double j) const {
    const double x = ((i + 0.5) / px_w - 0.5) * width;
    const double y = (0.5 - (j + 0.5) / px_h) * height();
    return center + Complex(x, y);
  }
  // Continuous pixel coordinates (i, j) of a plane point; pixel_center inverts it.
  std::pair<double, double> to_pixel(Complex z) const {
    const Complex d = z - center;
    return {(d.real() / width + 0.5) * px_w - 0.5, (0.5 - d.imag() / height()) * px_h - 0.5};
  }
  void validate() const;
};

// "re,im" or a bare real number.
std::optional<Complex> parse_complex(std::string_view text);

}  // namespace zd
