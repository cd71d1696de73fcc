// zetadyn command line: render presets and views, dump catalogs, run the service.
#include <zetadyn/zetadyn.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

namespace {

// Exit codes: 2 bad arguments / unknown names / limits, 3 mathematical
// failures (pole, unsupported), 4 I/O, 5 internal.
int exit_code(zd_status s) {
  switch (s) {
    case ZD_OK: return 0;
    case ZD_E_INVALID:
    case ZD_E_NOT_FOUND:
    case ZD_E_RANGE: return 2;
    case ZD_E_POLE:
    case ZD_E_DIVZERO:
    case ZD_E_UNSUPPORTED: return 3;
    case ZD_E_IO: return 4;
    case ZD_E_INTERNAL: return 5;
  }
  return 5;
}

std::string encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == ',' || c == '(' || c == ')' ||
        c == ':' || c == ';') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

class QueryBuilder {
 public:
  void add(const std::string& key, const std::string& value) {
    if (!q_.empty()) q_.push_back('&');
    q_ += encode(key) + "=" + encode(value);
  }
  // Repeated --set key=value pairs.
  void add_pairs(const std::vector<std::string>& pairs) {
    for (const auto& p : pairs) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--set", "expected key=value, got '" + p + "'");
      add(p.substr(0, eq), p.substr(eq + 1));
    }
  }
  const std::string& str() const { return q_; }

 private:
  std::string q_;
};

struct Buffer {
  zd_buffer* p = nullptr;
  ~Buffer() { zd_buffer_destroy(p); }
  std::string_view view() const {
    return {reinterpret_cast<const char*>(zd_buffer_data(p)), zd_buffer_size(p)};
  }
};

struct Context {
  zd_context* ctx = nullptr;
  ~Context() { zd_context_destroy(ctx); }
};

int report(const Context& c, zd_status s) {
  if (s != ZD_OK) std::cerr << "zetadyn: " << zd_last_error(c.ctx) << "\n";
  return exit_code(s);
}

struct Common {
  std::string presets_file;
  int threads = 0;
  std::string mode;
  int terms = 64;
  double deriv_step = 1e-6;
};

zd_status configure(Context& c, const Common& com, bool env_limits) {
  zd_status s = zd_context_create(env_limits ? 1 : 0, &c.ctx);
  if (s != ZD_OK) return s;
  if ((s = zd_set_threads(c.ctx, com.threads)) != ZD_OK) return s;
  if (!com.mode.empty() && (s = zd_set_eval(c.ctx, com.mode.c_str(), com.terms, com.deriv_step)) != ZD_OK) return s;
  if (!com.presets_file.empty() && (s = zd_load_presets(c.ctx, com.presets_file.c_str())) != ZD_OK) return s;
  return ZD_OK;
}

void add_common(CLI::App* app, Common& com) {
  app->add_option("--presets", com.presets_file, "preset manifest merged over the built-in presets");
  app->add_option("--threads", com.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app->add_option("--eval-mode", com.mode, "default evaluation: accelerated or truncated");
  app->add_option("--eval-terms", com.terms, "default truncated-eta term count");
  app->add_option("--eval-deriv-step", com.deriv_step, "default finite-difference step");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zetadyn: zeta dynamics renderer and analyser"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(zd_version()));
  Common com;
  add_common(&app, com);

  // render
  auto* render = app.add_subcommand("render", "render a preset or view to PNG; prints resolved parameters as JSON");
  std::string preset, out = "out.png";
  std::vector<std::pair<std::string, std::string>> rkeys;
  std::vector<std::string> sets;
  struct Flag {
    const char* opt;
    const char* key;
    const char* help;
  };
  const Flag render_flags[] = {
      {"--view", "view", "portrait, parameter or julia"},
      {"--function", "function", "zeta, eta, xi, L(q,k), rosetta, quadratic"},
      {"--family", "family", "additive or multiplicative"},
      {"--start", "start", "critical label or re,im (parameter view)"},
      {"--c", "c", "parameter re,im (julia view)"},
      {"--center", "center", "viewport centre re,im"},
      {"--width", "width", "viewport width"},
      {"--px", "px", "image size in pixels (square)"},
      {"--px-w", "px_w", "image width in pixels"},
      {"--px-h", "px_h", "image height in pixels"},
      {"--scheme", "scheme", "portrait, escape or step-period"},
      {"--max-iter", "max_iter", "iteration cap"},
      {"--escape-radius", "escape_radius", "escape radius"},
      {"--mode", "mode", "accelerated or truncated"},
      {"--terms", "terms", "truncated-eta terms"},
      {"--supersample", "supersample", "1 or 2"},
      {"--markers", "markers", "kind:re,im;... (critical, principal, fixed, zero)"},
  };
  std::vector<std::string> render_values(std::size(render_flags));
  for (size_t i = 0; i < std::size(render_flags); ++i) {
    render->add_option(render_flags[i].opt, render_values[i], render_flags[i].help)->allow_extra_args(false);
  }
  bool derivative = false;
  render->add_flag("--derivative", derivative, "portrait of f' instead of f");
  render->add_option("--preset", preset, "named preset");
  render->add_option("--out,-o", out, "output PNG path");
  render->add_option("--set", sets, "extra request key=value (repeatable)");
  add_common(render, com);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "catalogs and analyses as JSON");
  analyze->require_subcommand(1);
  std::string function = "zeta", family = "additive";
  std::vector<double> range;
  auto* crit = analyze->add_subcommand("criticals", "critical points of f");
  bool real = false, unreal = false, quasi = false;
  crit->add_flag("--real", real, "real-axis criticals");
  crit->add_flag("--unreal", unreal, "criticals near the critical line");
  crit->add_flag("--quasi", quasi, "the plateau stand-in");
  crit->add_option("--range", range, "lo hi (Re for --real, Im for --unreal)")->expected(2);
  crit->add_option("--function", function);
  auto* zeros = analyze->add_subcommand("zeros", "nontrivial zeros on the critical line");
  zeros->add_option("--range", range, "Im lo hi")->expected(2);
  zeros->add_option("--function", function);
  auto* transfer = analyze->add_subcommand("transfer", "principal point and fixed values of a critical");
  std::string critical, tcenter, twidth, tpx, tgrid;
  transfer->add_option("--critical", critical, "label or re,im")->required();
  transfer->add_option("--function", function);
  transfer->add_option("--family", family);
  transfer->add_option("--center", tcenter, "region centre re,im");
  transfer->add_option("--width", twidth, "region width");
  transfer->add_option("--px", tpx, "region sample grid (square)");
  transfer->add_option("--grid", tgrid, "seed grid size");
  auto* orbit = analyze->add_subcommand("orbit", "orbit of z0 under f + c or c f");
  std::string oc = "0", oz0 = "0", omax;
  bool no_trace = false;
  orbit->add_option("--function", function);
  orbit->add_option("--family", family);
  orbit->add_option("--c", oc, "parameter re,im");
  orbit->add_option("--z0", oz0, "start re,im or critical label");
  orbit->add_option("--max-iter", omax);
  orbit->add_flag("--no-trace", no_trace);
  auto* farey = analyze->add_subcommand("farey", "Farey sequence and deviation sums");
  int farey_n = 0;
  farey->add_option("--n", farey_n, "order")->required()->check(CLI::PositiveNumber);
  for (auto* sub : {crit, zeros, transfer, orbit, farey}) {
    sub->add_option("--set", sets, "extra request key=value (repeatable)");
    add_common(sub, com);
  }

  auto* presets = app.add_subcommand("presets", "list presets as JSON");
  add_common(presets, com);

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  std::string host = "127.0.0.1", static_dir;
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--static", static_dir, "directory served at /");
  add_common(serve, com);

  auto* eval = app.add_subcommand("eval", "evaluate f or f' at a point");
  std::string ez;
  bool ederiv = false;
  eval->add_option("--function", function);
  eval->add_option("--z", ez, "re,im")->required();
  eval->add_flag("--derivative", ederiv);
  add_common(eval, com);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Context c;
  // The service applies the environment limits; batch commands do not.
  if (zd_status s = configure(c, com, serve->parsed()); s != ZD_OK) return report(c, s);

  try {
    if (render->parsed()) {
      QueryBuilder q;
      if (!preset.empty()) q.add("preset", preset);
      for (size_t i = 0; i < std::size(render_flags); ++i) {
        if (render->count(render_flags[i].opt)) q.add(render_flags[i].key, render_values[i]);
      }
      if (derivative) q.add("derivative", "1");
      q.add_pairs(sets);
      Buffer png, resolved;
      if (zd_status s = zd_render(c.ctx, q.str().c_str(), &png.p, &resolved.p); s != ZD_OK) return report(c, s);
      std::ofstream f(out, std::ios::binary);
      f.write(png.view().data(), static_cast<std::streamsize>(png.view().size()));
      if (!f.flush()) {
        std::cerr << "zetadyn: cannot write " << out << "\n";
        return 4;
      }
      std::cout << resolved.view() << "\n";
      return 0;
    }
    if (presets->parsed()) {
      Buffer j;
      if (zd_status s = zd_presets_json(c.ctx, &j.p); s != ZD_OK) return report(c, s);
      std::cout << j.view() << "\n";
      return 0;
    }
    if (serve->parsed()) {
      return report(c, zd_serve(c.ctx, host.c_str(), port, static_dir.empty() ? nullptr : static_dir.c_str()));
    }
    if (eval->parsed()) {
      double re = 0.0, im = 0.0;
      const auto comma = ez.find(',');
      re = std::stod(ez.substr(0, comma));
      if (comma != std::string::npos) im = std::stod(ez.substr(comma + 1));
      double vr = 0.0, vi = 0.0;
      const zd_status s = ederiv ? zd_eval_derivative(c.ctx, function.c_str(), re, im, &vr, &vi)
                                 : zd_eval(c.ctx, function.c_str(), re, im, &vr, &vi);
      if (s != ZD_OK) return report(c, s);
      std::printf("[%.17g, %.17g]\n", vr, vi);
      return 0;
    }
    // analyze
    QueryBuilder q;
    std::string kind;
    auto add_range = [&] {
      if (range.size() == 2) {
        q.add("min", CLI::detail::to_string(range[0]));
        q.add("max", CLI::detail::to_string(range[1]));
      }
    };
    if (crit->parsed()) {
      kind = "criticals";
      if (real + unreal + quasi > 1) throw CLI::ValidationError("criticals", "pick one of --real, --unreal, --quasi");
      q.add("function", function);
      q.add("kind", unreal ? "unreal" : quasi ? "quasi" : "real");
      add_range();
    } else if (zeros->parsed()) {
      kind = "zeros";
      q.add("function", function);
      add_range();
    } else if (transfer->parsed()) {
      kind = "transfer";
      q.add("function", function);
      q.add("family", family);
      q.add("critical", critical);
      if (!tcenter.empty()) q.add("center", tcenter);
      if (!twidth.empty()) q.add("width", twidth);
      if (!tpx.empty()) q.add("px", tpx);
      if (!tgrid.empty()) q.add("grid", tgrid);
    } else if (orbit->parsed()) {
      kind = "orbit";
      q.add("function", function);
      q.add("family", family);
      q.add("c", oc);
      q.add("z0", oz0);
      if (!omax.empty()) q.add("max_iter", omax);
      if (no_trace) q.add("trace", "0");
    } else {
      kind = "farey";
      q.add("n", std::to_string(farey_n));
    }
    q.add_pairs(sets);
    Buffer j;
    if (zd_status s = zd_analyze_json(c.ctx, kind.c_str(), q.str().c_str(), &j.p); s != ZD_OK) return report(c, s);
    std::cout << j.view() << "\n";
    return 0;
  } catch (const CLI::Error& e) {
    std::cerr << "zetadyn: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "zetadyn: " << e.what() << "\n";
    return 2;
  }
}
