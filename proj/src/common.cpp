#include <charconv>
#include <cstdlib>
#include <string>

#include "common.hpp"
#include "special_functions.hpp"

namespace zd {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

void EvalParams::validate() const {
  if (terms < 1 || terms > kMaxTerms) fail(ErrorCode::InvalidArgument, "terms must be in [1, " + std::to_string(kMaxTerms) + "]");
  if (!(deriv_step > 0.0) || !std::isfinite(deriv_step)) fail(ErrorCode::InvalidArgument, "deriv_step must be positive");
}

void Viewport::validate() const {
  if (!is_finite(center)) fail(ErrorCode::InvalidArgument, "viewport centre must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) fail(ErrorCode::InvalidArgument, "viewport width must be positive");
  if (px_w < 1 || px_h < 1) fail(ErrorCode::InvalidArgument, "viewport size must be at least 1x1");
}

FunctionId FunctionId::parse(std::string_view text) {
  text = trim(text);
  if (text == "zeta") return zeta();
  if (text == "eta") return eta();
  if (text == "xi") return xi();
  if (text == "rosetta") return rosetta();
  if (text == "quadratic") return quadratic();
  if (text.size() > 3 && text.front() == 'L' && text[1] == '(' && text.back() == ')') {
    const auto inner = text.substr(2, text.size() - 3);
    const auto comma = inner.find(',');
    if (comma != std::string_view::npos) {
      const auto q = parse_int(inner.substr(0, comma));
      const auto k = parse_int(inner.substr(comma + 1));
      if (q && k) {
        const FunctionId fid = dirichlet(*q, *k);
        fid.validate();
        return fid;
      }
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown function '" + std::string(text) + "'");
}

std::string FunctionId::to_string() const {
  switch (tag) {
    case FunctionTag::Zeta: return "zeta";
    case FunctionTag::Eta: return "eta";
    case FunctionTag::Xi: return "xi";
    case FunctionTag::Rosetta: return "rosetta";
    case FunctionTag::Quadratic: return "quadratic";
    case FunctionTag::DirichletL: return "L(" + std::to_string(modulus) + "," + std::to_string(char_index) + ")";
  }
  return "?";
}

std::string FunctionId::label_prefix() const {
  switch (tag) {
    case FunctionTag::Zeta: return "z";
    case FunctionTag::Eta: return "e";
    case FunctionTag::Xi: return "xi";
    case FunctionTag::Rosetta: return "r";
    case FunctionTag::Quadratic: return "q";
    case FunctionTag::DirichletL: return to_string();
  }
  return "?";
}

void FunctionId::validate() const {
  if (tag != FunctionTag::DirichletL) return;
  if (modulus < 1 || modulus > 100000) fail(ErrorCode::InvalidArgument, "L-function modulus out of range");
  const auto count = static_cast<int>(characters(modulus).size());
  if (char_index < 1 || char_index > count) {
    fail(ErrorCode::InvalidArgument, "character index must be in [1, " + std::to_string(count) + "]");
  }
}

FamilyKind parse_family(std::string_view text) {
  text = trim(text);
  if (text == "additive" || text == "add") return FamilyKind::Additive;
  if (text == "multiplicative" || text == "mul" || text == "mult") return FamilyKind::Multiplicative;
  fail(ErrorCode::InvalidArgument, "unknown family '" + std::string(text) + "'");
}

const char* to_string(FamilyKind fam) { return fam == FamilyKind::Additive ? "additive" : "multiplicative"; }

std::optional<Complex> parse_complex(std::string_view text) {
  text = trim(text);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    const auto re = parse_double(text);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  const auto re = parse_double(text.substr(0, comma));
  const auto im = parse_double(text.substr(comma + 1));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

}  // namespace zd
