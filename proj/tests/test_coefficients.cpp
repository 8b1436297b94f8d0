#include <doctest.h>

#include <cmath>

#include "spectral4/coefficients.hpp"
#include "spectral4/errors.hpp"

using namespace spectral4;

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

CoefficientSet smooth(std::size_t n) {
  return CoefficientSet::sample(
      n, [](double x) { return Complex(std::cos(x), x); }, [](double x) { return Complex(std::exp(x), -x * x); },
      [](double x) { return Complex(std::sin(3.0 * x), 1.0); });
}

}  // namespace

TEST_CASE("primitives invariants hold for a generic coefficient set") {
  const CoefficientSet cs = smooth(257);
  const Primitives p = build_primitives(cs);
  const double tol = 1e-10 * (1.0 + std::max({max_abs(cs.tau2), max_abs(cs.tau1), max_abs(cs.r0)}));
  CHECK(std::abs(p.sigma0.front()) <= tol);
  CHECK(std::abs(p.sigma0.back()) <= tol);
  CHECK(std::abs(p.sigma1.front()) <= tol);
  CHECK(std::abs(p.sigma1.back() - p.sigma) <= tol);
  CHECK(std::abs(p.tau2_int1.back() - p.theta) <= tol);
  CHECK(p.t0 == cs.tau2.front());
  CHECK(p.t1 == cs.tau2.back());
}

TEST_CASE("zero tau1 gives zero sigma1") {
  const Primitives p = build_primitives(CoefficientSet::zero(33));
  CHECK(max_abs(p.sigma1) == 0.0);
  CHECK(p.sigma == Complex{});
  CHECK(eval_primitive(p, PrimitiveKind::sigma0, 0.7) == Complex{});
}

TEST_CASE("constant r0 is annihilated") {
  const auto cs = CoefficientSet::sample(
      65, [](double) { return Complex{}; }, [](double) { return Complex{}; }, [](double) { return Complex(1.0); });
  const Primitives p = build_primitives(cs);
  CHECK(std::abs(p.c0 + 1.0) < 1e-14);
  CHECK(max_abs(p.sigma0) < 1e-14);
}

TEST_CASE("step r0 gives the kinked sigma0 of a point mass") {
  const std::size_t n = 513;
  const auto cs = CoefficientSet::sample(
      n, [](double) { return Complex{}; }, [](double) { return Complex{}; },
      [](double x) { return Complex(x >= 0.5 ? 1.0 : 0.0); });
  const Primitives p = build_primitives(cs);
  const double h = p.h;
  // sigma0 = max(0, x - 1/2) - x/2 up to the half-cell smearing of the jump.
  CHECK(std::abs(eval_primitive(p, PrimitiveKind::sigma0, 0.5) + 0.25) <= h);
  for (double x : {0.1, 0.3, 0.8, 0.95}) {
    const double exact = std::max(0.0, x - 0.5) - x / 2.0;
    CHECK(std::abs(eval_primitive(p, PrimitiveKind::sigma0, x) - exact) <= h);
  }
}

TEST_CASE("linear tau2 constants") {
  const auto cs = CoefficientSet::sample(
      101, [](double x) { return Complex(x); }, [](double) { return Complex{}; }, [](double) { return Complex{}; });
  const Primitives p = build_primitives(cs);
  CHECK(std::abs(p.theta - 0.5) < 1e-14);
  CHECK(p.t0 == Complex(0.0));
  CHECK(p.t1 == Complex(1.0));
}

TEST_CASE("constant tau2 antiderivatives") {
  const auto cs = CoefficientSet::sample(
      17, [](double) { return Complex(1.0); }, [](double) { return Complex{}; }, [](double) { return Complex{}; });
  const Primitives p = build_primitives(cs);
  for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    CHECK(std::abs(eval_primitive(p, PrimitiveKind::tau2_int1, x) - x) < 1e-14);
    CHECK(std::abs(eval_primitive(p, PrimitiveKind::tau2_int2, x) - x * x / 2.0) < 1e-14);
  }
  CHECK(std::abs(p.tau2_int2.back() - p.theta * p.theta / 2.0) < 1e-14);
}

TEST_CASE("tau2_int2 converges under refinement for non-constant tau2") {
  // tau2 = x: tau2_int2(1) = int x * x^2/2 = 1/8.
  double prev = 0.0;
  for (std::size_t n : {33, 65, 129}) {
    const auto cs = CoefficientSet::sample(
        n, [](double x) { return Complex(x); }, [](double) { return Complex{}; }, [](double) { return Complex{}; });
    const double err = std::abs(build_primitives(cs).tau2_int2.back() - 0.125);
    if (prev > 0.0) CHECK(prev / err > 3.5);
    prev = err;
  }
}

TEST_CASE("quadrature is second order for smooth data") {
  const auto exact_theta = std::sin(1.0);  // int cos
  const auto exact_sigma = std::exp(1.0) - 1.0;
  const Primitives a = build_primitives(smooth(101));
  const Primitives b = build_primitives(smooth(201));
  const double ea = std::abs(a.theta.real() - exact_theta), eb = std::abs(b.theta.real() - exact_theta);
  const double sa = std::abs(a.sigma.real() - exact_sigma), sb = std::abs(b.sigma.real() - exact_sigma);
  CHECK(ea / eb == doctest::Approx(4.0).epsilon(0.05));
  CHECK(sa / sb == doctest::Approx(4.0).epsilon(0.05));
  const Primitives c = build_primitives(smooth(401));
  const Complex d1 = eval_primitive(a, PrimitiveKind::sigma0, 0.5) - eval_primitive(b, PrimitiveKind::sigma0, 0.5);
  const Complex d2 = eval_primitive(b, PrimitiveKind::sigma0, 0.5) - eval_primitive(c, PrimitiveKind::sigma0, 0.5);
  CHECK(std::abs(d1) / std::abs(d2) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("sigma1 is linear in tau1") {
  const std::size_t n = 129;
  const auto zero = [](double) { return Complex{}; };
  const auto f = [](double x) { return Complex(std::sin(5.0 * x), x); };
  const auto g = [](double x) { return Complex(x < 0.3 ? 1.0 : -2.0, 0.0); };
  const Complex a(2.0, -1.0), b(0.5, 3.0);
  const Primitives pf = build_primitives(CoefficientSet::sample(n, zero, f, zero));
  const Primitives pg = build_primitives(CoefficientSet::sample(n, zero, g, zero));
  const Primitives pc = build_primitives(CoefficientSet::sample(n, zero, [&](double x) { return a * f(x) + b * g(x); }, zero));
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(pc.sigma1[i] - (a * pf.sigma1[i] + b * pg.sigma1[i])) < 1e-13);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(build_primitives(CoefficientSet::zero(1)), InputError);
  CoefficientSet cs = CoefficientSet::zero(10);
  cs.tau1.pop_back();
  CHECK_THROWS_AS(build_primitives(cs), InputError);
  cs = CoefficientSet::zero(10);
  cs.r0[3] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(build_primitives(cs), InputError);
  const Primitives p = build_primitives(CoefficientSet::zero(10));
  CHECK_THROWS_AS(eval_primitive(p, PrimitiveKind::sigma0, 1.5), DomainError);
  CHECK_THROWS_AS(eval_primitive(p, PrimitiveKind::tau2, -0.1), DomainError);
}

TEST_CASE("adjoint coefficients") {
  const CoefficientSet cs = smooth(9);
  const CoefficientSet adj = adjoint_coefficients(cs);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(adj.tau2[i] == std::conj(cs.tau2[i]));
    CHECK(adj.tau1[i] == -std::conj(cs.tau1[i]));
    CHECK(adj.r0[i] == std::conj(cs.r0[i]));
  }
}
