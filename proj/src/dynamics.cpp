#include "dynamics.hpp"

#include "special_functions.hpp"

namespace zd {
namespace {

constexpr double kPoleRadius = 1e-12;

bool on_plateau(const FunctionId& fid, Complex z, const IterationParams& ip) {
  return has_plateau(fid) && z.real() > ip.plateau_re;
}

// Fixed-size ring of the most recent iterates.
class History {
 public:
  explicit History(int size) : buf_(static_cast<size_t>(size)) {}

  void push(Complex z) {
    buf_[head_] = z;
    head_ = (head_ + 1) % buf_.size();
    if (count_ < buf_.size()) ++count_;
  }
  // k = 1 is the newest entry.
  Complex back(size_t k) const { return buf_[(head_ + buf_.size() - k) % buf_.size()]; }
  size_t size() const { return count_; }

 private:
  std::vector<Complex> buf_;
  size_t head_ = 0;
  size_t count_ = 0;
};

}  // namespace

void IterationParams::validate() const {
  if (max_iter < 1) fail(ErrorCode::InvalidArgument, "max_iter must be positive");
  if (!(escape_radius > 0.0)) fail(ErrorCode::InvalidArgument, "escape_radius must be positive");
  if (!(plateau_re > 0.0)) fail(ErrorCode::InvalidArgument, "plateau_re must be positive");
  if (!(eps_cycle > 0.0)) fail(ErrorCode::InvalidArgument, "eps_cycle must be positive");
  if (history < 1 || history > max_iter) fail(ErrorCode::InvalidArgument, "history must be in [1, max_iter]");
}

const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Escaped: return "escaped";
    case OrbitStatus::Periodic: return "periodic";
    case OrbitStatus::MaxIterBounded: return "bounded";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    case Stability::Indifferent: return "indifferent";
  }
  return "?";
}

Complex family_map(const FunctionId& fid, FamilyKind fam, Complex c, Complex z, const IterationParams& ip,
                   const EvalParams& ep) {
  const Complex fz = on_plateau(fid, z, ip) ? Complex(1.0, 0.0) : eval_function(fid, z, ep);
  return fam == FamilyKind::Additive ? fz + c : c * fz;
}

Complex family_map_deriv(const FunctionId& fid, FamilyKind fam, Complex c, Complex z, const EvalParams& ep) {
  const Complex d = eval_derivative(fid, z, ep);
  return fam == FamilyKind::Additive ? d : c * d;
}

OrbitResult iterate_orbit(const FunctionId& fid, FamilyKind fam, Complex c, Complex z0, const IterationParams& ip,
                          const EvalParams& ep, const OrbitOptions& opts) {
  ip.validate();
  ep.validate();
  if (!is_finite(c) || !is_finite(z0)) fail(ErrorCode::InvalidArgument, "orbit: c and z0 must be finite");

  OrbitResult out;
  const bool pole_at_one = has_pole_at_one(fid);
  History hist(ip.history);
  Complex z = z0;
  hist.push(z);
  if (opts.want_trace) out.trace.push_back(z);

  for (int n = 1; n <= ip.max_iter; ++n) {
    if (pole_at_one && !on_plateau(fid, z, ip) && std::abs(z - 1.0) < kPoleRadius) {
      out.status = OrbitStatus::Escaped;
      out.pole_hit = true;
      out.steps = n;
      out.final = z;
      return out;
    }
    const Complex next = family_map(fid, fam, c, z, ip, ep);
    if (opts.want_trace && out.trace.size() < opts.trace_limit && is_finite(next)) out.trace.push_back(next);
    if (!is_finite(next)) {
      out.status = OrbitStatus::Escaped;
      out.overflow = true;
      out.steps = n;
      out.final = next;
      return out;
    }
    if (std::abs(next) > ip.escape_radius && !on_plateau(fid, next, ip)) {
      out.status = OrbitStatus::Escaped;
      out.steps = n;
      out.final = next;
      return out;
    }
    for (size_t p = 1; p <= hist.size(); ++p) {
      if (std::abs(next - hist.back(p)) < ip.eps_cycle) {
        out.status = OrbitStatus::Periodic;
        out.period = static_cast<int>(p);
        out.steps = n;
        out.final = next;
        for (size_t k = p; k >= 1; --k) out.cycle.push_back(hist.back(k));
        if (opts.want_multiplier) {
          try {
            const Complex m = cycle_multiplier(fid, fam, c, out.cycle, ep);
            if (is_finite(m)) out.multiplier = m;
          } catch (const Error&) {
          }
        }
        return out;
      }
    }
    hist.push(next);
    z = next;
  }
  out.status = OrbitStatus::MaxIterBounded;
  out.steps = ip.max_iter;
  out.final = z;
  return out;
}

Complex cycle_multiplier(const FunctionId& fid, FamilyKind fam, Complex c, const std::vector<Complex>& cycle,
                         const EvalParams& ep) {
  if (cycle.empty()) fail(ErrorCode::InvalidArgument, "cycle must not be empty");
  Complex m(1.0, 0.0);
  for (const Complex& z : cycle) m *= family_map_deriv(fid, fam, c, z, ep);
  return m;
}

Stability classify_multiplier(double deriv_mod) {
  if (deriv_mod < 1.0 - kClassifyTol) return Stability::Attracting;
  if (deriv_mod > 1.0 + kClassifyTol) return Stability::Repelling;
  return Stability::Indifferent;
}

PointClass classify_point(Complex v, const FunctionId& fid, FamilyKind fam, Complex c, const EvalParams& ep) {
  PointClass out;
  const Complex image = fam == FamilyKind::Additive ? eval_function(fid, v, ep) + c : c * eval_function(fid, v, ep);
  out.residual = std::abs(image - v);
  out.not_fixed = !(out.residual <= 1e-6);
  out.deriv_mod = std::abs(family_map_deriv(fid, fam, c, v, ep));
  out.stability = classify_multiplier(out.deriv_mod);
  return out;
}

}  // namespace zd
