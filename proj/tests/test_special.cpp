#include <numbers>

#include "oracles.hpp"
#include "special_functions.hpp"
#include "test_util.hpp"
#include "zeta_detail.hpp"

using zd::Complex;
using zd::EvalParams;
using std::numbers::pi;

TEST_SUITE("special") {
  TEST_CASE("complex arithmetic is associative to machine precision") {
    for (int i = 0; i < 100; ++i) {
      const Complex a = tu::uniform_box(-10, 10, -10, 10), b = tu::uniform_box(-10, 10, -10, 10),
                    c = tu::uniform_box(-10, 10, -10, 10);
      CHECK(tu::rel_err((a * b) * c, a * (b * c)) < 1e-12);
    }
  }

  TEST_CASE("gamma: classical values and poles") {
    CHECK_NEAR(zd::gamma({5, 0}), Complex(24, 0), 1e-12);
    CHECK_NEAR(zd::gamma({0.5, 0}), Complex(std::sqrt(pi), 0), 1e-13);
    CHECK_NEAR(zd::gamma({1, 0}), Complex(1, 0), 1e-14);
    for (int k = 0; k <= 5; ++k) {
      CHECK_THROWS_AS(zd::gamma({-static_cast<double>(k), 0}), zd::Error);
    }
  }

  TEST_CASE("gamma agrees with a Stirling oracle across the plane") {
    for (int i = 0; i < 60; ++i) {
      const Complex z = tu::uniform_box(-8, 12, -40, 40);
      CHECK(tu::rel_err(zd::gamma(z), oracle::to_cd(oracle::gamma(oracle::to_cl(z)))) < 1e-11);
    }
  }

  TEST_CASE("gamma at height 300: direct and log form agree with the oracle") {
    const Complex z(0.5, 300);
    const Complex direct = zd::gamma(z);
    const Complex via_log = std::exp(zd::log_gamma(z));
    const Complex ref = oracle::to_cd(std::exp(oracle::log_gamma(oracle::to_cl(z))));
    CHECK(std::abs(direct) > 0.0);
    CHECK(tu::rel_err(direct, via_log) < 1e-9);
    CHECK(tu::rel_err(direct, ref) < 1e-9);
  }

  TEST_CASE("zeta: classical identities") {
    CHECK_NEAR(zd::zeta({2, 0}), Complex(pi * pi / 6, 0), 1e-10);
    CHECK_NEAR(zd::zeta({0, 0}), Complex(-0.5, 0), 1e-8);
    CHECK_NEAR(zd::zeta({-1, 0}), Complex(-1.0 / 12, 0), 1e-8);
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(zd::zeta({-2.0 * k, 0})) < 1e-8);
    CHECK_NEAR(zd::zeta({1000, 0}), Complex(1, 0), 1e-15);
    CHECK_THROWS_AS(zd::zeta({1, 0}), zd::Error);
  }

  TEST_CASE("zeta vanishes at the first zero found by the oracle") {
    const auto zeros = oracle::critical_line_zeros(10, 15, 0.01);
    REQUIRE(zeros.size() == 1);
    CHECK(std::abs(zeros[0] - 14.134725) < 1e-5);
    CHECK(std::abs(zd::zeta({0.5, zeros[0]})) < 1e-6);
    CHECK(std::abs(zd::zeta({0.5, 14.134725})) < 1e-6);
  }

  TEST_CASE("zeta agrees with the Euler-Maclaurin oracle") {
    for (int i = 0; i < 80; ++i) {
      const Complex z = tu::uniform_box(-20, 10, -120, 120);
      if (std::abs(z - 1.0) < 0.1) continue;
      const Complex ref = oracle::zeta(z);
      INFO("z=", z);
      CHECK(std::abs(zd::zeta(z) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }

  TEST_CASE("functional equation consistency inside the strip") {
    for (int i = 0; i < 50; ++i) {
      const Complex z = tu::uniform_box(-0.4, 0.4, -60, 60);
      if (std::abs(z) < 0.15) continue;  // next to the pole of zeta(1-z)
      const Complex series = zd::detail::zeta_series(z, {}, false).value;
      const Complex functional = zd::detail::zeta_functional(z, {});
      INFO("z=", z);
      CHECK(tu::rel_err(series, functional) < 1e-8);
    }
  }

  TEST_CASE("eta/zeta identity") {
    for (int i = 0; i < 50; ++i) {
      const Complex z = tu::uniform_box(0.2, 3, -50, 50);
      if (std::abs(z - 1.0) < 0.05) continue;
      const Complex lhs = zd::eta(z);
      const Complex rhs = (1.0 - std::pow(Complex(2, 0), 1.0 - z)) * zd::zeta(z);
      INFO("z=", z);
      CHECK(tu::rel_err(lhs, rhs) < 1e-9);
    }
  }

  TEST_CASE("eta: values") {
    CHECK_NEAR(zd::eta({1, 0}), Complex(std::log(2.0), 0), 1e-10);
    CHECK_NEAR(zd::eta({2, 0}), Complex(pi * pi / 12, 0), 1e-12);
    CHECK(std::abs(zd::eta({1, 2 * pi / std::log(2.0)})) < 1e-8);
    CHECK(std::abs(zd::eta({1, -4 * pi / std::log(2.0)})) < 1e-8);
  }

  TEST_CASE("zeta near the removable points is continuous") {
    const Complex s0(1, 2 * pi / std::log(2.0));
    const Complex at = zd::zeta(s0);
    const Complex ref = oracle::zeta(s0);
    CHECK(tu::rel_err(at, ref) < 1e-7);
    for (double d : {5e-4, 2e-3, 1e-2}) {
      CHECK(tu::rel_err(zd::zeta(s0 + Complex(d, d)), oracle::zeta(s0 + Complex(d, d))) < 1e-7);
    }
  }

  TEST_CASE("zeta' agrees with Richardson finite differences") {
    auto f = [](Complex z) { return zd::zeta(z); };
    for (int i = 0; i < 30; ++i) {
      const Complex z = tu::uniform_box(-10, 6, -40, 40);
      if (std::abs(z - 1.0) < 0.5) continue;
      const Complex fd = oracle::richardson_derivative(f, z, 1e-5);
      INFO("z=", z);
      CHECK(tu::rel_err(zd::zeta_deriv(z), fd) < 1e-6);
    }
  }

  TEST_CASE("zeta' agrees with the oracle derivative") {
    for (double x : {-19.8882, -17.8120, -15.339, -4.9145, -2.5, 0.3, 2.0}) {
      const Complex ref = oracle::zeta_deriv({x, 0});
      INFO("x=", x);
      CHECK(tu::rel_err(zd::zeta_deriv({x, 0}), ref) < 1e-7);
    }
  }

  TEST_CASE("conjugate symmetry") {
    for (int i = 0; i < 40; ++i) {
      const Complex z = tu::uniform_box(-15, 10, -80, 80);
      if (std::abs(z - 1.0) < 0.1) continue;
      const Complex a = zd::zeta(std::conj(z));
      const Complex b = std::conj(zd::zeta(z));
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
  }

  TEST_CASE("xi: symmetry, zeros and special values") {
    for (int i = 0; i < 20; ++i) {
      const Complex z = tu::uniform_box(0, 1, -40, 40);
      CHECK(std::abs(zd::xi(z) - zd::xi(1.0 - z)) < 1e-9);
    }
    CHECK(std::abs(zd::xi({0.5, 14.134725})) < 1e-6);
    CHECK_NEAR(zd::xi({0, 0}), zd::xi({1, 0}), 1e-12);
    CHECK_NEAR(zd::xi({1, 0}), Complex(0.5, 0), 1e-12);
    // (z-1) zeta(z) is finite through z = 1
    CHECK(std::isfinite(std::abs(zd::xi({1 + 1e-9, 0}))));
  }

  TEST_CASE("validation functions") {
    CHECK(zd::eval_function(zd::FunctionId::rosetta(), {0, 0}) == Complex(0, 0));
    CHECK_NEAR(zd::eval_function(zd::FunctionId::rosetta(), {1, 0}), Complex(std::exp(-1.0), 0), 1e-15);
    CHECK(zd::eval_function(zd::FunctionId::quadratic(), {2, 0}) == Complex(4, 0));
    CHECK_NEAR(zd::eval_derivative(zd::FunctionId::rosetta(), {1, 0}), Complex(0, 0), 1e-15);
  }

  TEST_CASE("truncated eta mode honours the term knob") {
    EvalParams p;
    p.mode = zd::EvalMode::TruncatedEta;
    p.terms = 1500;
    CHECK(tu::rel_err(zd::zeta({2, 3}, p), oracle::zeta(Complex(2, 3))) < 1e-5);
    p.terms = 8;
    CHECK(tu::rel_err(zd::zeta({2, 3}, p), oracle::zeta(Complex(2, 3))) > 1e-4);
    p.terms = 0;
    CHECK_THROWS_AS(p.validate(), zd::Error);
  }

  TEST_CASE("overflow deep in the left half-plane is flagged, not thrown") {
    const Complex v = zd::zeta({-400, 0.5});
    CHECK_FALSE(zd::is_finite(v));
  }
}
