// Deterministic tile rendering of function portraits, parameter planes and
// Julia sets.
#pragma once

#include <cstdint>
#include <vector>

#include "dynamics.hpp"

namespace zd {

enum class ViewKind { Portrait, Parameter, Julia };
enum class SchemeTag { Portrait, EscapeSteps, StepPeriod };
enum class MarkerKind { Critical, Principal, FixedValue, Zero };

ViewKind parse_view(std::string_view text);
SchemeTag parse_scheme(std::string_view text);
MarkerKind parse_marker(std::string_view text);
const char* to_string(ViewKind v);
const char* to_string(SchemeTag s);
const char* to_string(MarkerKind m);

struct Rgba {
  uint8_t r = 0, g = 0, b = 0, a = 255;
  bool operator==(const Rgba&) const = default;
};

struct ImageTile {
  int px_w = 0;
  int px_h = 0;
  std::vector<uint8_t> pixels;  // row-major RGBA

  ImageTile() = default;
  ImageTile(int w, int h) : px_w(w), px_h(h), pixels(static_cast<size_t>(w) * static_cast<size_t>(h) * 4, 0) {}
  Rgba at(int i, int j) const;
  void set(int i, int j, Rgba c);
  bool operator==(const ImageTile&) const = default;
};

struct Marker {
  Complex pos{0.0, 0.0};
  MarkerKind kind = MarkerKind::Critical;
};

struct RenderSpec {
  ViewKind view = ViewKind::Parameter;
  FunctionId fid = FunctionId::zeta();
  FamilyKind family = FamilyKind::Additive;
  // Portrait of f' instead of f.
  bool derivative = false;
  // Parameter view: orbit start (a critical point). Julia view: unused.
  Complex start{kDefaultStartRe, 0.0};
  // Julia view: the fixed parameter.
  Complex c{0.0, 0.0};
  Viewport viewport;
  SchemeTag scheme = SchemeTag::EscapeSteps;
  IterationParams iter;
  EvalParams eval;
  // 1 or 2 (2x2 supersampling).
  int supersample = 1;
  // TruncatedEta only: per 256x256 tile, terms = max(64, 8 ceil(max |Im|)).
  bool adaptive_terms = true;
  std::vector<Marker> markers;

  static constexpr double kDefaultStartRe = 1000.0;
  void validate() const;
};

inline constexpr int kTileSize = 256;

// Colour maps (pure functions, exposed for tests).
Rgba portrait_color(Complex f);
Rgba portrait_pole_color();
Rgba portrait_overflow_color();
Rgba orbit_color(const OrbitResult& r, SchemeTag scheme, const IterationParams& ip);

// Term count used by a pixel in the tile (tx, ty) of the full viewport grid.
int tile_terms(const RenderSpec& spec, int tx, int ty);

// Whole viewport, markers included.
ImageTile render(const RenderSpec& spec, int threads = 0);
// Pixel window [x0, x0+w) x [y0, y0+h) of the viewport grid, no markers. The
// bytes equal the same window cut out of render(spec).
ImageTile render_window(const RenderSpec& spec, int x0, int y0, int w, int h, int threads = 0);

ImageTile render_overlays(ImageTile tile, const Viewport& vp, const std::vector<Marker>& markers);

// Per-pixel orbit outcome; the parameter/Julia pixel colour is a function of this.
OrbitResult pixel_orbit(const RenderSpec& spec, Complex point, const EvalParams& ep);

std::vector<uint8_t> encode_png(const ImageTile& tile);

}  // namespace zd
