#include "render.hpp"

#include <algorithm>
#include <array>
#include <numbers>

#include "parallel.hpp"
#include "special_functions.hpp"

namespace zd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

uint8_t to_byte(double x) { return static_cast<uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); }

// HSV with h in degrees.
std::array<double, 3> hsv_to_rgb(double h, double s, double v) {
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  std::array<double, 3> rgb{0.0, 0.0, 0.0};
  if (hp < 1.0) {
    rgb = {c, x, 0.0};
  } else if (hp < 2.0) {
    rgb = {x, c, 0.0};
  } else if (hp < 3.0) {
    rgb = {0.0, c, x};
  } else if (hp < 4.0) {
    rgb = {0.0, x, c};
  } else if (hp < 5.0) {
    rgb = {x, 0.0, c};
  } else {
    rgb = {c, 0.0, x};
  }
  const double m = v - c;
  return {rgb[0] + m, rgb[1] + m, rgb[2] + m};
}

double step_ramp(int steps, int max_iter) {
  return std::log1p(static_cast<double>(std::max(steps, 0))) / std::log1p(static_cast<double>(std::max(max_iter, 1)));
}

Rgba average(const std::array<Rgba, 4>& s) {
  auto avg = [&](auto field) {
    int sum = 0;
    for (const auto& c : s) sum += c.*field;
    return static_cast<uint8_t>((sum + 2) / 4);
  };
  return {avg(&Rgba::r), avg(&Rgba::g), avg(&Rgba::b), avg(&Rgba::a)};
}

Rgba marker_color(MarkerKind k) {
  switch (k) {
    case MarkerKind::Critical: return {255, 255, 255, 255};
    case MarkerKind::Principal: return {255, 220, 0, 255};
    case MarkerKind::FixedValue: return {0, 255, 255, 255};
    case MarkerKind::Zero: return {255, 0, 255, 255};
  }
  return {};
}

bool glyph_cell(MarkerKind k, int dx, int dy) {
  switch (k) {
    case MarkerKind::Critical: return dx == 0 || dy == 0;
    case MarkerKind::Principal: return true;
    case MarkerKind::FixedValue: return std::abs(dx) == std::abs(dy);
    case MarkerKind::Zero: return std::abs(dx) == 2 || std::abs(dy) == 2;
  }
  return false;
}

Rgba sample(const RenderSpec& spec, Complex point, const EvalParams& ep) {
  if (spec.view == ViewKind::Portrait) {
    try {
      const Complex f = spec.derivative ? eval_derivative(spec.fid, point, ep) : eval_function(spec.fid, point, ep);
      return is_finite(f) ? portrait_color(f) : portrait_overflow_color();
    } catch (const Error& e) {
      return e.code() == ErrorCode::Pole ? portrait_pole_color() : portrait_overflow_color();
    }
  }
  return orbit_color(pixel_orbit(spec, point, ep), spec.scheme, spec.iter);
}

}  // namespace

ViewKind parse_view(std::string_view t) {
  if (t == "portrait") return ViewKind::Portrait;
  if (t == "parameter" || t == "mandelbrot") return ViewKind::Parameter;
  if (t == "julia") return ViewKind::Julia;
  fail(ErrorCode::InvalidArgument, "unknown view '" + std::string(t) + "'");
}

SchemeTag parse_scheme(std::string_view t) {
  if (t == "portrait") return SchemeTag::Portrait;
  if (t == "escape" || t == "escape-steps") return SchemeTag::EscapeSteps;
  if (t == "period" || t == "step-period") return SchemeTag::StepPeriod;
  fail(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(t) + "'");
}

MarkerKind parse_marker(std::string_view t) {
  if (t == "critical") return MarkerKind::Critical;
  if (t == "principal") return MarkerKind::Principal;
  if (t == "fixed" || t == "fixed-value") return MarkerKind::FixedValue;
  if (t == "zero") return MarkerKind::Zero;
  fail(ErrorCode::InvalidArgument, "unknown marker kind '" + std::string(t) + "'");
}

const char* to_string(ViewKind v) {
  switch (v) {
    case ViewKind::Portrait: return "portrait";
    case ViewKind::Parameter: return "parameter";
    case ViewKind::Julia: return "julia";
  }
  return "?";
}

const char* to_string(SchemeTag s) {
  switch (s) {
    case SchemeTag::Portrait: return "portrait";
    case SchemeTag::EscapeSteps: return "escape";
    case SchemeTag::StepPeriod: return "step-period";
  }
  return "?";
}

const char* to_string(MarkerKind m) {
  switch (m) {
    case MarkerKind::Critical: return "critical";
    case MarkerKind::Principal: return "principal";
    case MarkerKind::FixedValue: return "fixed";
    case MarkerKind::Zero: return "zero";
  }
  return "?";
}

Rgba ImageTile::at(int i, int j) const {
  const size_t o = (static_cast<size_t>(j) * static_cast<size_t>(px_w) + static_cast<size_t>(i)) * 4;
  return {pixels[o], pixels[o + 1], pixels[o + 2], pixels[o + 3]};
}

void ImageTile::set(int i, int j, Rgba c) {
  const size_t o = (static_cast<size_t>(j) * static_cast<size_t>(px_w) + static_cast<size_t>(i)) * 4;
  pixels[o] = c.r;
  pixels[o + 1] = c.g;
  pixels[o + 2] = c.b;
  pixels[o + 3] = c.a;
}

void RenderSpec::validate() const {
  viewport.validate();
  iter.validate();
  eval.validate();
  fid.validate();
  if (supersample != 1 && supersample != 2) fail(ErrorCode::InvalidArgument, "supersample must be 1 or 2");
  if (view == ViewKind::Portrait && scheme != SchemeTag::Portrait) {
    fail(ErrorCode::InvalidArgument, "portrait view needs the portrait scheme");
  }
  if (view != ViewKind::Portrait && scheme == SchemeTag::Portrait) {
    fail(ErrorCode::InvalidArgument, "parameter and julia views need the escape or step-period scheme");
  }
  if (!is_finite(start) || !is_finite(c)) fail(ErrorCode::InvalidArgument, "start and c must be finite");
}

Rgba portrait_pole_color() { return {255, 0, 255, 255}; }
Rgba portrait_overflow_color() { return {110, 0, 0, 255}; }

Rgba portrait_color(Complex f) {
  if (!is_finite(f)) return portrait_overflow_color();
  const double m = std::abs(f);
  if (m == 0.0) return {0, 0, 0, 255};
  double u = std::arg(f) / kTwoPi;
  if (u < 0.0) u += 1.0;
  // green (arg 0) -> yellow -> red (arg pi) and back
  const double hue = 120.0 * std::fabs(1.0 - 2.0 * u);
  const double l = std::log2(m);
  const double v = 0.35 + 0.55 * (l - std::floor(l));
  auto rgb = hsv_to_rgb(hue, 0.9, v);
  if (std::fabs(m - 1.0) < 0.02 * m) {
    rgb = {0.96, 0.96, 0.96};
  } else if (m < 1.0) {
    rgb = {0.35 * rgb[0], 0.35 * rgb[1], 0.35 * rgb[2] + 0.65 * v};
  }
  if (m < 0.05) {
    const double k = m / 0.05;
    for (double& ch : rgb) ch *= k;
  }
  return {to_byte(rgb[0]), to_byte(rgb[1]), to_byte(rgb[2]), 255};
}

Rgba orbit_color(const OrbitResult& r, SchemeTag scheme, const IterationParams& ip) {
  const double t = step_ramp(r.steps, ip.max_iter);
  if (scheme == SchemeTag::EscapeSteps) {
    if (r.status != OrbitStatus::Escaped) return {0, 0, 0, 255};
    return {to_byte((20.0 + 40.0 * t) / 255.0), to_byte((40.0 + 120.0 * t) / 255.0), to_byte((90.0 + 165.0 * t) / 255.0), 255};
  }
  switch (r.status) {
    case OrbitStatus::Periodic:
      return {static_cast<uint8_t>(std::min(255, 32 * r.period)), 0, to_byte((64.0 + 191.0 * t) / 255.0), 255};
    case OrbitStatus::Escaped: {
      const uint8_t g = to_byte((40.0 + 120.0 * t) / 255.0);
      return {g, g, g, 255};
    }
    case OrbitStatus::MaxIterBounded: return {0, 0, 0, 255};
  }
  return {};
}

OrbitResult pixel_orbit(const RenderSpec& spec, Complex point, const EvalParams& ep) {
  OrbitOptions opts;
  opts.want_multiplier = false;
  try {
    if (spec.view == ViewKind::Julia) return iterate_orbit(spec.fid, spec.family, spec.c, point, spec.iter, ep, opts);
    return iterate_orbit(spec.fid, spec.family, point, spec.start, spec.iter, ep, opts);
  } catch (const Error&) {
    OrbitResult r;
    r.status = OrbitStatus::Escaped;
    r.pole_hit = true;
    r.steps = 1;
    return r;
  }
}

int tile_terms(const RenderSpec& spec, int tx, int ty) {
  (void)tx;
  if (spec.eval.mode != EvalMode::TruncatedEta || !spec.adaptive_terms) return spec.eval.terms;
  const Viewport& vp = spec.viewport;
  const double pad = spec.supersample == 2 ? 0.25 : 0.0;
  const double j0 = ty * kTileSize - pad;
  const double j1 = std::min(vp.px_h, (ty + 1) * kTileSize) - 1 + pad;
  const double max_im = std::max(std::fabs(vp.pixel_center(0, j0).imag()), std::fabs(vp.pixel_center(0, j1).imag()));
  const double terms = std::max(64.0, 8.0 * std::ceil(max_im));
  return static_cast<int>(std::min(terms, static_cast<double>(kMaxTerms)));
}

ImageTile render_window(const RenderSpec& spec, int x0, int y0, int w, int h, int threads) {
  spec.validate();
  const Viewport& vp = spec.viewport;
  if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > vp.px_w || y0 + h > vp.px_h) {
    fail(ErrorCode::InvalidArgument, "render window outside the viewport");
  }
  ImageTile out(w, h);
  // Work items are row segments clipped to one tile of the global grid, so the
  // term count (a per-tile quantity) never depends on the window.
  struct Segment {
    int j, i0, i1, tx;
  };
  std::vector<Segment> segs;
  for (int j = y0; j < y0 + h; ++j) {
    for (int tx = x0 / kTileSize; tx * kTileSize < x0 + w; ++tx) {
      const int i0 = std::max(x0, tx * kTileSize);
      const int i1 = std::min(x0 + w, (tx + 1) * kTileSize);
      segs.push_back({j, i0, i1, tx});
    }
  }
  parallel_for(segs.size(), threads, [&](size_t k) {
    const Segment& s = segs[k];
    EvalParams ep = spec.eval;
    ep.terms = tile_terms(spec, s.tx, s.j / kTileSize);
    for (int i = s.i0; i < s.i1; ++i) {
      Rgba col;
      if (spec.supersample == 1) {
        col = sample(spec, vp.pixel_center(i, s.j), ep);
      } else {
        col = average({sample(spec, vp.pixel_center(i - 0.25, s.j - 0.25), ep),
                       sample(spec, vp.pixel_center(i + 0.25, s.j - 0.25), ep),
                       sample(spec, vp.pixel_center(i - 0.25, s.j + 0.25), ep),
                       sample(spec, vp.pixel_center(i + 0.25, s.j + 0.25), ep)});
      }
      out.set(i - x0, s.j - y0, col);
    }
  });
  return out;
}

ImageTile render(const RenderSpec& spec, int threads) {
  ImageTile tile = render_window(spec, 0, 0, spec.viewport.px_w, spec.viewport.px_h, threads);
  if (spec.markers.empty()) return tile;
  return render_overlays(std::move(tile), spec.viewport, spec.markers);
}

ImageTile render_overlays(ImageTile tile, const Viewport& vp, const std::vector<Marker>& markers) {
  for (const Marker& m : markers) {
    if (!is_finite(m.pos)) continue;
    const auto [fx, fy] = vp.to_pixel(m.pos);
    const long ci = std::lround(fx);
    const long cj = std::lround(fy);
    if (ci < 0 || cj < 0 || ci >= tile.px_w || cj >= tile.px_h) continue;
    const Rgba col = marker_color(m.kind);
    for (int dy = -2; dy <= 2; ++dy) {
      for (int dx = -2; dx <= 2; ++dx) {
        const long i = ci + dx;
        const long j = cj + dy;
        if (i < 0 || j < 0 || i >= tile.px_w || j >= tile.px_h || !glyph_cell(m.kind, dx, dy)) continue;
        tile.set(static_cast<int>(i), static_cast<int>(j), col);
      }
    }
  }
  return tile;
}

}  // namespace zd
