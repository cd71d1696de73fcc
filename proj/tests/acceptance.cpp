// Acceptance report: one PASS/FAIL line per primary criterion, tolerances as
// agreed. Exit status is nonzero when any criterion fails.
#define DOCTEST_CONFIG_DISABLE  // only the numeric helpers of test_util are used
#include <chrono>
#include <cstdio>
#include <sstream>

#include "critical_points.hpp"
#include "dynamics.hpp"
#include "farey.hpp"
#include "oracles.hpp"
#include "render.hpp"
#include "service.hpp"
#include "special_functions.hpp"
#include "test_util.hpp"
#include "transfer.hpp"
#include "zeta_detail.hpp"

using zd::Complex;
using zd::FamilyKind;
using zd::FunctionId;

namespace {

const FunctionId kZeta = FunctionId::zeta();
constexpr double kPi = 3.14159265358979323846;

// Collects failed sub-checks of one criterion.
class Probe {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failed_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::fabs(got - want) <= tol, os.str());
  }
  void rel(double got, double want, double frac, const std::string& what) {
    near(got, want, frac * std::fabs(want), what);
  }
  template <class F>
  void guard(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      expect(false, what + " threw: " + e.what());
    }
  }
  const std::vector<std::string>& failed() const { return failed_; }
  int checks() const { return checks_; }

 private:
  int checks_ = 0;
  std::vector<std::string> failed_;
};

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(8);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

void special_functions(Probe& p) {
  p.near(std::abs(zd::zeta({2, 0}) - kPi * kPi / 6), 0, 1e-8, "zeta(2) - pi^2/6");
  p.near(std::abs(zd::zeta({0, 0}) - (-0.5)), 0, 1e-8, "zeta(0) + 1/2");
  p.near(std::abs(zd::zeta({-1, 0}) - (-1.0 / 12)), 0, 1e-8, "zeta(-1) + 1/12");
  for (int k = 1; k <= 5; ++k) p.near(std::abs(zd::zeta({-2.0 * k, 0})), 0, 1e-8, "|zeta(-" + std::to_string(2 * k) + ")|");
  p.near(std::abs(zd::eta({1, 0}) - std::log(2.0)), 0, 1e-10, "eta(1) - ln 2");
  for (int i = 0; i < 20; ++i) {
    const Complex z = tu::uniform_box(0, 1, -40, 40);
    p.near(std::abs(zd::xi(z) - zd::xi(1.0 - z)), 0, 1e-9, "xi symmetry at " + fmt(z));
  }
  int n = 0;
  while (n < 50) {
    const Complex z = tu::uniform_box(-0.4, 0.4, -60, 60);
    if (std::abs(z) < 0.15) continue;
    ++n;
    const Complex series = zd::detail::zeta_series(z, {}, false).value;
    const Complex functional = zd::detail::zeta_functional(z, {});
    p.near(tu::rel_err(series, functional), 0, 1e-8, "functional equation at " + fmt(z));
  }
}

void derivative_anchors(Probe& p) {
  const double d1 = zd::zeta_deriv({-17.8120, 0}).real();
  const double d2 = zd::zeta_deriv({-19.8882, 0}).real();
  const double d3 = zd::zeta_deriv({-4.9145, 0}).real();
  p.rel(d1, -8.8565, 0.01, "zeta'(-17.8120)");
  p.rel(d2, 101.3019, 0.01, "zeta'(-19.8882)");
  p.rel(d3, 1.5049e-5, 0.02, "zeta'(-4.9145)");
  p.rel(d1 * d2 * d3, -0.0135, 0.10, "chain-rule product");
}

void critical_catalog(Probe& p) {
  const auto real = zd::find_real_criticals(kZeta, -20, 0);
  std::string labels;
  for (const auto& cp : real) labels += cp.label + " ";
  p.expect(real.size() == 8, "real criticals in [-20,0]: " + std::to_string(real.size()) + " (" + labels + ")");
  const std::vector<std::string> want{"z-2", "z-4", "z-7", "z-9", "z-11", "z-13", "z-15", "z-17"};
  bool labels_ok = real.size() == want.size();
  for (size_t i = 0; labels_ok && i < want.size(); ++i) labels_ok = real[i].label == want[i];
  p.expect(labels_ok, "labels z-2 ... z-17");
  for (int k = 1; k <= 9; ++k) {
    int in_gap = 0;
    for (const auto& cp : real) in_gap += cp.location.real() > -2.0 * k - 2 && cp.location.real() < -2.0 * k;
    p.expect(in_gap == 1, "one critical in (" + std::to_string(-2 * k - 2) + ", " + std::to_string(-2 * k) + ")");
  }
  const zd::CriticalPoint* z15 = nullptr;
  for (const auto& cp : real) {
    if (cp.label == "z-15") z15 = &cp;
  }
  p.expect(z15 != nullptr, "z-15 present");
  if (z15) {
    p.near(z15->location.real(), -15.339, 1e-3, "z-15 location");
    p.near(z15->value.real(), 0.52, 0.01, "z-15 value");
  }
  p.guard("z95", [&] {
    const auto cp = zd::resolve_critical(kZeta, "z95");
    p.near(cp.location.real(), 0.78, 0.01, "z95 Re");
    p.near(cp.location.imag(), 95.29, 0.01, "z95 Im");
  });
  p.guard("z223", [&] {
    const auto cat = zd::find_unreal_criticals(kZeta, 222.5, 224.5);
    const zd::CriticalPoint* cp = nullptr;
    for (const auto& c : cat) {
      if (c.label == "z223") cp = &c;
    }
    p.expect(cp != nullptr, "z223 present");
    if (!cp) return;
    p.near(cp->location.real(), 2.500042, 1e-4, "z223 Re");
    p.near(cp->location.imag(), 223.408567, 1e-4, "z223 Im");
  });
}

void transfer_anchors(Probe& p) {
  p.near(std::abs(zd::principal_point(zd::quasi_critical(kZeta), FamilyKind::Additive) - 999.0), 0, 1e-12,
         "principal(z1000, additive) - 999");
  p.guard("multiplicative principal points", [&] {
    const Complex c95 = zd::principal_point(zd::resolve_critical(kZeta, "z95"), FamilyKind::Multiplicative);
    p.near(c95.real(), 40.7, 0.5, "principal(z95, mult) Re");
    p.near(c95.imag(), 241.71, 0.5, "principal(z95, mult) Im");
    const Complex c31 = zd::principal_point(zd::resolve_critical(kZeta, "z31"), FamilyKind::Multiplicative);
    p.near(c31.real(), 1.8190, 1e-3, "principal(z31, mult) Re");
    p.near(c31.imag(), 44.8408, 1e-3, "principal(z31, mult) Im");
  });
  auto cat = zd::find_real_criticals(kZeta, -20, 0);
  for (auto cp : zd::find_unreal_criticals(kZeta, 1, 100)) {
    cat.push_back(cp);
    cp.location = std::conj(cp.location);
    cp.value = std::conj(cp.value);
    cat.push_back(cp);
  }
  double worst = 0.0;
  for (const auto& cp : cat) {
    worst = std::max(worst, std::abs(zd::transfer_value(kZeta, cp, FamilyKind::Additive,
                                                        zd::principal_point(cp, FamilyKind::Additive))));
    if (std::abs(cp.value) < 1e-6) continue;
    worst = std::max(worst, std::abs(zd::transfer_value(kZeta, cp, FamilyKind::Multiplicative,
                                                        zd::principal_point(cp, FamilyKind::Multiplicative))));
  }
  p.near(worst, 0, 1e-8, "max |T(principal)| over " + std::to_string(cat.size()) + " criticals");
  for (const auto& [label, want] : {std::pair{"z23", zd::Stability::Repelling}, std::pair{"z-13", zd::Stability::Attracting}}) {
    const auto cp = zd::resolve_critical(kZeta, label);
    const auto ta = zd::find_fixed_values(kZeta, cp, FamilyKind::Additive, zd::default_transfer_region(cp, FamilyKind::Additive));
    p.expect(!ta.fixed_values.empty(), std::string(label) + " has fixed values in the central valley");
    for (const auto& fv : ta.fixed_values) {
      p.expect(fv.stability == want, std::string(label) + " fixed value " + fmt(fv.c) + " is " + zd::to_string(fv.stability));
    }
  }
}

void dynamics_anchors(Probe& p) {
  const zd::IterationParams ip;
  auto r = zd::iterate_orbit(kZeta, FamilyKind::Additive, 0.0, 0.0, ip, {});
  p.expect(r.status == zd::OrbitStatus::Periodic && r.period == 1, "c=0 orbit from 0 locks period 1");
  p.near(std::abs(r.final - Complex(-0.2959, 0)), 0, 5e-4, "c=0 fixed point");
  r = zd::iterate_orbit(kZeta, FamilyKind::Additive, 1000.0, 1000.0, ip, {});
  p.expect(r.status == zd::OrbitStatus::Periodic && r.period == 1 && r.final == Complex(1001, 0) && r.steps <= 2,
           "plateau orbit locks at 1001 within 2 steps (steps " + std::to_string(r.steps) + ")");

  const auto zeros = zd::find_zeros(kZeta, 613, 614);
  p.expect(zeros.size() == 1, "one zero with Im in (613, 614]");
  if (zeros.size() == 1) {
    const Complex rho = zeros[0].rho;
    r = zd::iterate_orbit(kZeta, FamilyKind::Multiplicative, rho, rho, ip, {});
    p.expect(r.status == zd::OrbitStatus::Periodic && r.period == 4, "rho613 orbit has period 4");
    if (r.cycle.size() == 4) {
      size_t start = 0;
      for (size_t k = 0; k < 4; ++k) {
        if (std::abs(r.cycle[k] - rho) < 1e-6) start = k;
      }
      const Complex want[] = {rho, {0, 0}, {-0.25, -306.8}, {353.98, 11665}};
      for (size_t k = 0; k < 4; ++k) {
        const Complex got = r.cycle[(start + k) % 4];
        for (int part = 0; part < 2; ++part) {
          const double g = part ? got.imag() : got.real();
          const double w = part ? want[k].imag() : want[k].real();
          const std::string what = "rho613 cycle[" + std::to_string(k) + "]." + (part ? "im" : "re");
          if (w == 0.0) {
            p.near(g, 0.0, 1e-6, what);
          } else {
            p.rel(g, w, 5e-3, what);
          }
        }
      }
    }
  }

  int held = 0;
  std::string first_bad;
  for (int i = 0; i < 20; ++i) {
    Complex c;
    do {
      c = tu::uniform_box(-5, 5, -5, 5);
    } while (std::abs(c) >= 5);
    const Complex z0(tu::uniform(100, 1000), tu::uniform(-10, 10));
    const auto o = zd::iterate_orbit(kZeta, FamilyKind::Additive, c, z0, ip, {});
    const bool ok = o.status == zd::OrbitStatus::Periodic && o.period == 1 && std::abs(o.final - (c + 1.0)) < 1e-9;
    held += ok;
    if (!ok && first_bad.empty()) first_bad = "c=" + fmt(c) + " -> " + zd::to_string(o.status) + " " + fmt(o.final);
  }
  p.expect(held == 20, "plateau law for small c: " + std::to_string(held) + "/20 (e.g. " + first_bad + ")");
}

zd::ImageTile stitch(const zd::RenderSpec& s, int sx, int sy, int threads) {
  const int w = s.viewport.px_w, h = s.viewport.px_h;
  zd::ImageTile out(w, h);
  const int xs[3] = {0, sx, w}, ys[3] = {0, sy, h};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto part = zd::render_window(s, xs[a], ys[b], xs[a + 1] - xs[a], ys[b + 1] - ys[b], threads);
      for (int j = 0; j < part.px_h; ++j)
        for (int i = 0; i < part.px_w; ++i) out.set(xs[a] + i, ys[b] + j, part.at(i, j));
    }
  }
  return out;
}

bool is_black(zd::Rgba c) { return c.r == 0 && c.g == 0 && c.b == 0; }

void renderer_properties(Probe& p) {
  zd::RenderSpec s;
  s.view = zd::ViewKind::Parameter;
  s.start = 1000.0;
  s.viewport = {Complex(-4.0, 0.0), 40.0, 264, 40};
  s.iter.max_iter = 64;
  const auto whole = zd::render(s, 1);
  p.expect(whole == zd::render(s, 3), "1 vs 3 threads");
  p.expect(whole == stitch(s, 132, 20, 1), "whole vs quadrants (1 thread)");
  p.expect(whole == stitch(s, 257, 7, 4), "whole vs quadrants across the tile grid (4 threads)");

  zd::RenderSpec q;
  q.view = zd::ViewKind::Parameter;
  q.start = zd::resolve_critical(kZeta, "z-2").location;
  q.viewport = {Complex(-10.0, 0.0), 40.0, 16, 16};
  q.iter.max_iter = 64;
  const auto grid = zd::render(q);
  int mismatched = 0;
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) {
      bool escaped = true;
      try {
        escaped = zd::iterate_orbit(kZeta, FamilyKind::Additive, q.viewport.pixel_center(i, j), q.start, q.iter, {}).status ==
                  zd::OrbitStatus::Escaped;
      } catch (const zd::Error&) {
      }
      mismatched += escaped == is_black(grid.at(i, j));
    }
  }
  p.expect(mismatched == 0, "parameter pixel class vs iterate_orbit: " + std::to_string(mismatched) + " mismatches");

  zd::RenderSpec par;
  par.view = zd::ViewKind::Parameter;
  par.start = 1000.0;
  par.iter.max_iter = 128;
  zd::RenderSpec jul = par;
  jul.view = zd::ViewKind::Julia;
  const zd::Viewport cgrid{Complex(-6.0, 0.0), 24.0, 16, 16};
  int differ = 0;
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) {
      const Complex c = cgrid.pixel_center(i, j);
      jul.c = c;
      const auto a = zd::pixel_orbit(par, c, par.eval);
      const auto b = zd::pixel_orbit(jul, Complex(2000.0, 0.0), jul.eval);
      differ += a.status != b.status || a.steps != b.steps;
    }
  }
  p.expect(differ == 0, "plateau step correspondence: " + std::to_string(differ) + " of 256 differ");
}

void number_theory(Probe& p) {
  const std::vector<zd::Fraction> f5{{0, 1}, {1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}, {3, 4}, {4, 5}, {1, 1}};
  p.expect(zd::farey(5) == f5, "F5 sequence");
  int bad = 0;
  for (int n = 1; n <= 50; ++n) {
    const auto f = zd::farey(n);
    for (size_t k = 1; k + 1 < f.size(); ++k) bad += !(zd::mediant(f[k - 1], f[k + 1]) == f[k]);
  }
  p.expect(bad == 0, "mediant property n <= 50: " + std::to_string(bad) + " violations");
  const auto s = zd::rh_stats(1);
  p.near(s.sum_abs_d, 0.5, 1e-15, "rh_stats(1) sum |d|");
  p.near(s.sum_sq_d, 0.25, 1e-15, "rh_stats(1) sum d^2");
}

void l_functions(Probe& p) {
  for (int i = 0; i < 10; ++i) {
    const int q = std::array{4, 6, 10, 12, 30, 210}[static_cast<size_t>(i % 6)];
    const Complex z = tu::uniform_box(1.5, 5, -30, 30);
    Complex ref = zd::zeta(z);
    for (int pr = 2; pr <= q; ++pr) {
      bool prime = true;
      for (int d = 2; d * d <= pr; ++d) prime = prime && pr % d != 0;
      if (prime && q % pr == 0) ref *= 1.0 - std::pow(Complex(pr, 0), -z);
    }
    p.near(std::abs(zd::dirichlet_l(q, 1, z) - ref), 0, 1e-8, "Euler restriction q=" + std::to_string(q) + " at " + fmt(z));
  }
  const double catalan = static_cast<double>(oracle::catalan_series(2000000));
  p.near(std::abs(zd::dirichlet_l(4, 2, {2, 0}) - catalan), 0, 1e-8, "L(2, chi4) - Catalan");
  auto f = [](double x) { return zd::dirichlet_l(210, 1, {x, 0}).real(); };
  p.near(std::abs(zd::dirichlet_l(210, 1, {0, 0})), 0, 1e-12, "L(0, principal mod 210)");
  for (int k = 1; k <= 3; ++k) {
    p.near(tu::nth_derivative(f, 0.0, k, 0.04), 0, 1e-6, "order " + std::to_string(k) + " derivative at 0");
  }
  const double d4 = tu::nth_derivative(f, 0.0, 4, 0.04);
  p.expect(std::fabs(d4) > 1.0, "order 4 derivative nonzero (" + std::to_string(d4) + ")");
}

void service_facade(Probe& p) {
  zd::ServiceConfig cfg;
  cfg.port = 0;
  zd::Service svc(cfg);
  const auto r = svc.handle_target("/api/tile?view=parameter&start=z1000&center=0,0&width=30&px=24&max_iter=64");
  zd::RenderSpec s;
  s.view = zd::ViewKind::Parameter;
  s.start = 1000.0;
  s.viewport = {0.0, 30.0, 24, 24};
  s.iter.max_iter = 64;
  const auto direct = zd::encode_png(zd::render(s));
  p.expect(r.status == 200 && r.body == std::string(direct.begin(), direct.end()), "tile bytes equal direct render");
  p.expect(svc.handle_target("/api/tile?px_w=4096&px_h=8").status == 400, "px_w=4096 -> 400");
  p.expect(svc.handle_target("/api/tile?start=z-999&px=8").status == 404, "unknown critical label -> 404");
  p.expect(svc.handle_target("/api/tile?preset=nope").status == 404, "unknown preset -> 404");
  p.expect(svc.handle_target("/api/tile?center=0,299&width=4&px=8").status == 400, "|Im| over 300 -> 400");
  p.expect(svc.handle_target("/api/tile?max_iter=5000&px=8").status == 400, "max_iter over 4096 -> 400");
  p.expect(svc.handle_target("/api/tile?px=8&bogus=1").status == 400, "unknown parameter -> 400");
  const auto orbit = zd::Json::parse(svc.handle_target("/api/orbit?c=1000&z0=1000").body);
  p.expect(orbit["status"] == "periodic" && orbit["final"][0] == 1001.0, "orbit probe c=1000 z0=1000 -> 1001");
  const auto zeros = zd::Json::parse(svc.handle_target("/api/zeros?min=0&max=30").body);
  p.expect(zeros["count"] == 3, "zeros in [0,30]: 3");
  const auto transfer = zd::Json::parse(svc.handle_target("/api/transfer?critical=z1000&family=additive").body);
  p.expect(transfer["principal"][0] == 999.0, "transfer z1000 principal 999");
  const auto crit = zd::Json::parse(svc.handle_target("/api/criticals?kind=real&min=-20&max=0").body);
  p.expect(crit["count"] == 8, "criticals real [-20,0]: " + crit["count"].dump() + " entries");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Probe&)>> criteria{
      {"special-function exactness", special_functions},
      {"derivative anchors", derivative_anchors},
      {"critical catalog", critical_catalog},
      {"transfer anchors", transfer_anchors},
      {"dynamics anchors", dynamics_anchors},
      {"renderer properties", renderer_properties},
      {"number theory", number_theory},
      {"L-functions", l_functions},
      {"service facade", service_facade},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Probe p;
    const auto t0 = std::chrono::steady_clock::now();
    p.guard(name, [&] { run(p); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = p.failed().empty();
    failed += !ok;
    std::printf("%s  %-28s %3d checks  %6.2fs", ok ? "PASS" : "FAIL", name, p.checks(), secs);
    if (!ok) {
      std::printf("  %zu failed: %s", p.failed().size(), p.failed().front().c_str());
      for (size_t k = 1; k < p.failed().size() && k < 4; ++k) std::printf("; %s", p.failed()[k].c_str());
      if (p.failed().size() > 4) std::printf("; ...");
    }
    std::printf("\n");
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
