#include "request.hpp"

#include "special_functions.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <initializer_list>
#include <set>

namespace zd {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string url_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%') {
      if (i + 2 >= s.size()) fail(ErrorCode::InvalidArgument, "bad percent escape");
      const int hi = hex_digit(s[i + 1]);
      const int lo = hex_digit(s[i + 2]);
      if (hi < 0 || lo < 0) fail(ErrorCode::InvalidArgument, "bad percent escape");
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

bool unreserved(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == ',' || c == '(' || c == ')';
}

// Reads typed values out of a query and remembers which keys were used.
class Reader {
 public:
  Reader(const Query& q, std::initializer_list<std::string_view> allowed) : q_(q) {
    for (const auto& [k, v] : q) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        fail(ErrorCode::InvalidArgument, "unknown parameter '" + k + "'");
      }
    }
  }

  std::optional<std::string> text(std::string_view key) const {
    auto it = q_.find(key);
    if (it == q_.end()) return std::nullopt;
    return it->second;
  }
  std::string text(std::string_view key, std::string_view dflt) const { return text(key).value_or(std::string(dflt)); }

  std::optional<double> real(std::string_view key) const {
    auto t = text(key);
    if (!t) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(t->c_str(), &end);
    if (t->empty() || end != t->c_str() + t->size() || !std::isfinite(v)) bad(key, *t);
    return v;
  }
  double real(std::string_view key, double dflt) const { return real(key).value_or(dflt); }

  std::optional<int> integer(std::string_view key) const {
    auto t = text(key);
    if (!t) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(t->c_str(), &end, 10);
    if (t->empty() || end != t->c_str() + t->size() || errno != 0 || v < -1000000000L || v > 1000000000L) {
      bad(key, *t);
    }
    return static_cast<int>(v);
  }
  int integer(std::string_view key, int dflt) const { return integer(key).value_or(dflt); }

  bool flag(std::string_view key, bool dflt) const {
    auto t = text(key);
    if (!t) return dflt;
    if (*t == "1" || *t == "true" || *t == "yes" || t->empty()) return true;
    if (*t == "0" || *t == "false" || *t == "no") return false;
    bad(key, *t);
  }

  std::optional<Complex> complex(std::string_view key) const {
    auto t = text(key);
    if (!t) return std::nullopt;
    auto z = parse_complex(*t);
    if (!z || !is_finite(*z)) bad(key, *t);
    return z;
  }
  Complex complex(std::string_view key, Complex dflt) const { return complex(key).value_or(dflt); }

 private:
  [[noreturn]] static void bad(std::string_view key, const std::string& value) {
    fail(ErrorCode::InvalidArgument, "bad value for '" + std::string(key) + "': '" + value + "'");
  }
  const Query& q_;
};

#define ZD_ITER_KEYS "max_iter", "escape_radius", "plateau_re", "eps_cycle", "history"
#define ZD_EVAL_KEYS "mode", "terms", "deriv_step"
#define ZD_VIEWPORT_KEYS "center", "width", "px", "px_w", "px_h"

IterationParams read_iteration(const Reader& r, const Limits& lim) {
  IterationParams ip;
  ip.max_iter = r.integer("max_iter", ip.max_iter);
  ip.escape_radius = r.real("escape_radius", ip.escape_radius);
  ip.plateau_re = r.real("plateau_re", ip.plateau_re);
  ip.eps_cycle = r.real("eps_cycle", ip.eps_cycle);
  ip.history = r.integer("history", ip.history);
  ip.validate();
  if (ip.max_iter > lim.max_iter) {
    fail(ErrorCode::OutOfRange, "max_iter " + std::to_string(ip.max_iter) + " over the limit " +
                                    std::to_string(lim.max_iter));
  }
  return ip;
}

EvalParams read_eval(const Reader& r, const EvalParams& dflt) {
  EvalParams ep = dflt;
  if (auto m = r.text("mode")) {
    if (*m == "accelerated") {
      ep.mode = EvalMode::Accelerated;
    } else if (*m == "truncated" || *m == "truncated-eta") {
      ep.mode = EvalMode::TruncatedEta;
    } else {
      fail(ErrorCode::InvalidArgument, "mode must be accelerated or truncated");
    }
  }
  ep.terms = r.integer("terms", ep.terms);
  ep.deriv_step = r.real("deriv_step", ep.deriv_step);
  ep.validate();
  return ep;
}

void check_px(int px, const Limits& lim) {
  if (px > lim.max_px) {
    fail(ErrorCode::OutOfRange, "pixel size " + std::to_string(px) + " over the limit " + std::to_string(lim.max_px));
  }
}

void check_im(double im, const Limits& lim, std::string_view what) {
  if (std::fabs(im) > lim.max_im) {
    fail(ErrorCode::OutOfRange, std::string(what) + " |Im| over the limit " + std::to_string(lim.max_im));
  }
}

std::optional<Viewport> read_viewport(const Reader& r, const Limits& lim) {
  if (!r.text("center") && !r.text("width") && !r.text("px") && !r.text("px_w") && !r.text("px_h")) {
    return std::nullopt;
  }
  Viewport vp;
  vp.center = r.complex("center", vp.center);
  vp.width = r.real("width", vp.width);
  const int px = r.integer("px", 256);
  vp.px_w = r.integer("px_w", px);
  vp.px_h = r.integer("px_h", px);
  vp.validate();
  check_px(vp.px_w, lim);
  check_px(vp.px_h, lim);
  const double half = 0.5 * vp.height();
  check_im(vp.center.imag() + half, lim, "viewport");
  check_im(vp.center.imag() - half, lim, "viewport");
  return vp;
}

std::vector<Marker> read_markers(const std::string& text) {
  std::vector<Marker> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "marker must be kind:re,im");
    Marker m;
    m.kind = parse_marker(item.substr(0, colon));
    auto z = parse_complex(item.substr(colon + 1));
    if (!z || !is_finite(*z)) fail(ErrorCode::InvalidArgument, "bad marker position '" + item + "'");
    m.pos = *z;
    out.push_back(m);
  }
  return out;
}

std::pair<double, double> read_range(const Reader& r, double lo, double hi) {
  lo = r.real("min", lo);
  hi = r.real("max", hi);
  if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "range needs min < max");
  return {lo, hi};
}

Json warnings_json(const std::vector<std::string>& w) {
  Json a = Json::array();
  for (const auto& s : w) a.push_back(s);
  return a;
}

Json analyze_criticals(const Query& q, const RequestContext& ctx) {
  Reader r(q, {"function", "kind", "min", "max", ZD_EVAL_KEYS});
  const FunctionId fid = FunctionId::parse(r.text("function", "zeta"));
  const EvalParams ep = read_eval(r, ctx.eval);
  const std::string kind = r.text("kind", "real");
  ScanOptions so;
  so.threads = ctx.threads;
  std::vector<CriticalPoint> cps;
  std::vector<std::string> warnings;
  Json range = nullptr;
  if (kind == "real") {
    const auto [lo, hi] = read_range(r, -20.0, 0.0);
    check_im(lo, ctx.limits, "range");
    check_im(hi, ctx.limits, "range");
    cps = find_real_criticals(fid, lo, hi, ep, so, &warnings);
    range = Json::array({lo, hi});
  } else if (kind == "unreal") {
    const auto [lo, hi] = read_range(r, 0.0, 100.0);
    check_im(lo, ctx.limits, "range");
    check_im(hi, ctx.limits, "range");
    cps = find_unreal_criticals(fid, lo, hi, ep, so, &warnings);
    range = Json::array({lo, hi});
  } else if (kind == "quasi") {
    if (!has_plateau(fid)) fail(ErrorCode::Unsupported, fid.to_string() + " has no plateau");
    cps.push_back(quasi_critical(fid, ep));
  } else {
    fail(ErrorCode::InvalidArgument, "kind must be real, unreal or quasi");
  }
  Json list = Json::array();
  for (const auto& cp : cps) list.push_back(to_json(cp));
  return {{"function", fid.to_string()},
          {"kind", kind},
          {"range", range},
          {"count", cps.size()},
          {"criticals", std::move(list)},
          {"warnings", warnings_json(warnings)}};
}

Json analyze_zeros(const Query& q, const RequestContext& ctx) {
  Reader r(q, {"function", "min", "max", ZD_EVAL_KEYS});
  const FunctionId fid = FunctionId::parse(r.text("function", "zeta"));
  const EvalParams ep = read_eval(r, ctx.eval);
  const auto [lo, hi] = read_range(r, 0.0, 100.0);
  if (lo < 0.0) fail(ErrorCode::InvalidArgument, "zero range must start at Im >= 0");
  check_im(hi, ctx.limits, "range");
  ScanOptions so;
  so.threads = ctx.threads;
  std::vector<std::string> warnings;
  const auto zeros = find_zeros(fid, lo, hi, ep, so, &warnings);
  Json list = Json::array();
  for (const auto& z : zeros) list.push_back(to_json(z));
  return {{"function", fid.to_string()},
          {"range", Json::array({lo, hi})},
          {"count", zeros.size()},
          {"zeros", std::move(list)},
          {"warnings", warnings_json(warnings)}};
}

Json analyze_transfer(const Query& q, const RequestContext& ctx) {
  Reader r(q, {"function", "family", "critical", "grid", ZD_VIEWPORT_KEYS, ZD_EVAL_KEYS});
  const FunctionId fid = FunctionId::parse(r.text("function", "zeta"));
  const FamilyKind fam = parse_family(r.text("family", "additive"));
  const EvalParams ep = read_eval(r, ctx.eval);
  const auto label = r.text("critical");
  if (!label) fail(ErrorCode::InvalidArgument, "transfer needs a critical label or point");
  const CriticalPoint cp = resolve_critical(fid, *label, ep);
  check_im(cp.location.imag(), ctx.limits, "critical");
  const Viewport region = read_viewport(r, ctx.limits).value_or(default_transfer_region(cp, fam));
  TransferOptions to;
  to.threads = ctx.threads;
  to.grid = r.integer("grid", to.grid);
  if (to.grid < 8) fail(ErrorCode::InvalidArgument, "grid must be at least 8");
  check_px(to.grid, ctx.limits);
  const TransferAnalysis ta = find_fixed_values(fid, cp, fam, region, ep, to);
  Json j = to_json(ta);
  j["region"] = to_json(region);
  return j;
}

Json analyze_orbit(const Query& q, const RequestContext& ctx) {
  Reader r(q, {"function", "family", "c", "z0", "trace", "trace_limit", ZD_ITER_KEYS, ZD_EVAL_KEYS});
  const FunctionId fid = FunctionId::parse(r.text("function", "zeta"));
  const FamilyKind fam = parse_family(r.text("family", "additive"));
  const EvalParams ep = read_eval(r, ctx.eval);
  const IterationParams ip = read_iteration(r, ctx.limits);
  const Complex c = r.complex("c", Complex(0.0, 0.0));
  Complex z0{0.0, 0.0};
  std::string z0_text = "0";
  if (auto t = r.text("z0")) {
    z0_text = *t;
    if (auto z = parse_complex(*t)) {
      if (!is_finite(*z)) fail(ErrorCode::InvalidArgument, "z0 must be finite");
      z0 = *z;
    } else {
      z0 = resolve_critical(fid, *t, ep).location;
    }
  }
  OrbitOptions opts;
  opts.want_trace = r.flag("trace", true);
  const int limit = r.integer("trace_limit", 512);
  if (limit < 1 || limit > 512) fail(ErrorCode::OutOfRange, "trace_limit must be in [1, 512]");
  opts.trace_limit = static_cast<size_t>(limit);
  const OrbitResult res = iterate_orbit(fid, fam, c, z0, ip, ep, opts);
  Json j = to_json(res);
  j["function"] = fid.to_string();
  j["family"] = to_string(fam);
  j["c"] = complex_json(c);
  j["z0"] = complex_json(z0);
  return j;
}

Json analyze_farey(const Query& q) {
  Reader r(q, {"n", "sequence"});
  const auto n = r.integer("n");
  if (!n) fail(ErrorCode::InvalidArgument, "farey needs n");
  if (*n < 1 || *n > kMaxFareyOrder) fail(ErrorCode::OutOfRange, "n out of range");
  Json j = to_json(rh_stats(*n));
  if (r.flag("sequence", *n <= 1000)) {
    if (*n > 1000) fail(ErrorCode::OutOfRange, "sequence output is limited to n <= 1000");
    Json seq = Json::array();
    for (const Fraction& f : farey(*n)) seq.push_back(std::to_string(f.num) + "/" + std::to_string(f.den));
    j["sequence"] = std::move(seq);
  }
  return j;
}

}  // namespace

Query parse_query(std::string_view text) {
  Query q;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('&', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = item.find('=');
    std::string key = url_decode(item.substr(0, eq));
    std::string value = eq == std::string_view::npos ? std::string() : url_decode(item.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::InvalidArgument, "empty parameter name");
    if (q.count(key)) fail(ErrorCode::InvalidArgument, "repeated parameter '" + key + "'");
    q.emplace(std::move(key), std::move(value));
    if (end == text.size()) break;
  }
  return q;
}

std::string encode_query(const Query& q) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  auto put = [&](const std::string& s) {
    for (unsigned char c : s) {
      if (unreserved(c)) {
        out.push_back(static_cast<char>(c));
      } else {
        out.push_back('%');
        out.push_back(hex[c >> 4]);
        out.push_back(hex[c & 15]);
      }
    }
  };
  for (const auto& [k, v] : q) {
    if (!out.empty()) out.push_back('&');
    put(k);
    out.push_back('=');
    put(v);
  }
  return out;
}

Limits Limits::from_env() {
  Limits lim;
  auto env_num = [](const char* name) -> std::optional<double> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const double x = std::strtod(v, &end);
    if (*end != '\0' || !(x > 0.0)) fail(ErrorCode::InvalidArgument, std::string("bad ") + name);
    return x;
  };
  if (auto x = env_num("ZETADYN_MAX_PX")) lim.max_px = static_cast<int>(*x);
  if (auto x = env_num("ZETADYN_MAX_IM")) lim.max_im = *x;
  if (auto x = env_num("ZETADYN_MAX_ITER")) lim.max_iter = static_cast<int>(*x);
  return lim;
}

Limits Limits::unlimited() {
  Limits lim;
  lim.max_px = 16384;
  lim.max_im = 1e5;
  lim.max_iter = 1 << 20;
  return lim;
}

Json TileRequest::resolved() const {
  Json j = to_json(spec);
  if (spec.view == ViewKind::Parameter) j["start_label"] = start_text;
  if (!preset.empty()) j["preset"] = preset;
  return j;
}

TileRequest parse_tile_request(const Query& q_in, const RequestContext& ctx) {
  TileRequest out;
  Query q = q_in;
  if (auto it = q.find("preset"); it != q.end()) {
    const PresetTable& table = ctx.presets ? *ctx.presets : PresetTable::builtin();
    const Preset* p = table.find(it->second);
    if (!p) fail(ErrorCode::NotFound, "unknown preset '" + it->second + "'");
    out.preset = p->name;
    Query merged = parse_query(p->query);
    q.erase(it);
    for (auto& [k, v] : q) merged[k] = v;
    q = std::move(merged);
  }
  Reader r(q, {"view", "function", "family", "derivative", "start", "c", "scheme", "supersample", "adaptive",
               "markers", ZD_VIEWPORT_KEYS, ZD_ITER_KEYS, ZD_EVAL_KEYS});
  RenderSpec& s = out.spec;
  s.view = parse_view(r.text("view", "parameter"));
  s.fid = FunctionId::parse(r.text("function", "zeta"));
  s.fid.validate();
  s.family = parse_family(r.text("family", "additive"));
  s.derivative = r.flag("derivative", false);
  s.scheme = parse_scheme(r.text("scheme", s.view == ViewKind::Portrait ? "portrait" : "escape"));
  s.iter = read_iteration(r, ctx.limits);
  s.eval = read_eval(r, ctx.eval);
  s.viewport = read_viewport(r, ctx.limits).value_or(Viewport{});
  if (!r.text("px") && !r.text("px_w") && !r.text("px_h")) check_px(s.viewport.px_w, ctx.limits);
  s.supersample = r.integer("supersample", 1);
  s.adaptive_terms = r.flag("adaptive", true);
  s.c = r.complex("c", Complex(0.0, 0.0));
  if (s.view == ViewKind::Parameter) {
    auto start = r.text("start");
    if (!start) {
      if (!has_plateau(s.fid)) fail(ErrorCode::InvalidArgument, "parameter view needs start for " + s.fid.to_string());
      start = s.fid.label_prefix() + "1000";
    }
    out.start_text = *start;
    s.start = resolve_critical(s.fid, *start, s.eval).location;
    check_im(s.start.imag(), ctx.limits, "start");
  } else if (r.text("start") && s.view == ViewKind::Julia) {
    fail(ErrorCode::InvalidArgument, "julia view takes c, not start");
  }
  if (s.view == ViewKind::Julia) check_im(s.c.imag(), ctx.limits, "c");
  if (auto m = r.text("markers")) s.markers = read_markers(*m);
  s.validate();
  return out;
}

Json run_analysis(std::string_view kind, const Query& q, const RequestContext& ctx) {
  if (kind == "criticals") return analyze_criticals(q, ctx);
  if (kind == "zeros") return analyze_zeros(q, ctx);
  if (kind == "transfer") return analyze_transfer(q, ctx);
  if (kind == "orbit") return analyze_orbit(q, ctx);
  if (kind == "farey") return analyze_farey(q);
  fail(ErrorCode::InvalidArgument, "unknown analysis '" + std::string(kind) + "'");
}

Json presets_json(const PresetTable& table) {
  Json list = Json::array();
  for (const Preset& p : table.entries()) list.push_back(to_json(p));
  return {{"version", table.version()}, {"presets", std::move(list)}};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfRange: return 400;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Pole:
    case ErrorCode::DivisionByZero:
    case ErrorCode::Unsupported: return 422;
    case ErrorCode::Io: return 500;
  }
  return 500;
}

}  // namespace zd
