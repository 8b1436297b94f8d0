#include <doctest.h>

#include <cmath>

#include "spectral4/coefficients.hpp"
#include "spectral4/errors.hpp"
#include "spectral4/regularization.hpp"

using namespace spectral4;

namespace {

const auto zero_fn = [](double) { return Complex{}; };

SampledFunctions sine_derivatives(const Primitives& p) {
  SampledFunctions y;
  for (auto& f : y) f.resize(p.grid);
  for (std::size_t i = 0; i < p.grid; ++i) {
    const double x = p.node(i), s = std::sin(kPi * x), c = std::cos(kPi * x);
    y[0][i] = s;
    y[1][i] = kPi * c;
    y[2][i] = -kPi * kPi * s;
    y[3][i] = -kPi * kPi * kPi * c;
    y[4][i] = kPi * kPi * kPi * kPi * s;
  }
  return y;
}

}  // namespace

TEST_CASE("F for zero coefficients is the companion shift") {
  const Primitives p = build_primitives(CoefficientSet::zero(17));
  const Matrix4c f = assemble_F(p, 0.4);
  Matrix4c expected = Matrix4c::Zero();
  expected(0, 1) = expected(1, 2) = expected(2, 3) = 1.0;
  CHECK((f - expected).norm() == 0.0);
}

TEST_CASE("F entries for constant tau1") {
  // tau1 = 1: sigma1 = x, sigma0 = 0.
  const Primitives p = build_primitives(CoefficientSet::sample(
      33, zero_fn, [](double) { return Complex(1.0); }, zero_fn));
  const double x = 0.25;
  const Matrix4c f = assemble_F(p, x);
  CHECK(std::abs(f(1, 0) + x) < 1e-14);
  CHECK(std::abs(f(3, 0) + x * x) < 1e-14);
  CHECK(std::abs(f(3, 2) - x) < 1e-14);
  CHECK(std::abs(f(2, 1)) < 1e-14);
}

TEST_CASE("F entries for constant tau2") {
  const Primitives p = build_primitives(CoefficientSet::sample(
      33, [](double) { return Complex(2.0, 1.0); }, zero_fn, zero_fn));
  const Matrix4c f = assemble_F(p, 0.6);
  CHECK(std::abs(f(2, 1) - Complex(-2.0, -1.0)) < 1e-14);
  CHECK(std::abs(f(1, 0)) == 0.0);
}

TEST_CASE("F rejects points outside the interval") {
  const Primitives p = build_primitives(CoefficientSet::zero(5));
  CHECK_THROWS_AS(assemble_F(p, 1.01), DomainError);
  CHECK_THROWS_AS(assemble_F(p, -1e-9), DomainError);
}

TEST_CASE("system_rhs of y'''' = lambda y") {
  const Primitives p = build_primitives(CoefficientSet::zero(5));
  const Vector4c v(1.0, 2.0, 3.0, 4.0);
  const Vector4c r = system_rhs(p, Complex(5.0), 0.5, v);
  CHECK(r(0) == Complex(2.0));
  CHECK(r(1) == Complex(3.0));
  CHECK(r(2) == Complex(4.0));
  CHECK(r(3) == Complex(5.0));
}

TEST_CASE("quasi-derivatives reduce to classical ones for zero coefficients") {
  const Primitives p = build_primitives(CoefficientSet::zero(201));
  const SampledFunctions y = sine_derivatives(p);
  const SampledFunctions q = quasi_chain(p, y);
  for (int k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < p.grid; ++i) CHECK(std::abs(q[k][i] - y[k][i]) < 1e-12);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.grid; ++i) worst = std::max(worst, std::abs(q[4][i] - y[4][i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("y^[4] matches the classical operator with second-order error") {
  // tau2 = 1 + x^2, tau1 = cos x, tau0 = r0' with r0 = sin 2x.
  const auto make = [](std::size_t n) {
    return build_primitives(CoefficientSet::sample(
        n, [](double x) { return Complex(1.0 + x * x); }, [](double x) { return Complex(std::cos(x)); },
        [](double x) { return Complex(std::sin(2.0 * x)); }));
  };
  const auto error = [&](std::size_t n) {
    const Primitives p = make(n);
    const SampledFunctions y = sine_derivatives(p);
    const SampledFunctions q = quasi_chain(p, y);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = p.node(i);
      const double tau2 = 1.0 + x * x, dtau2 = 2.0 * x, tau1 = std::cos(x), dtau1 = -std::sin(x);
      const double tau0 = 2.0 * std::cos(2.0 * x);
      const Complex classical = y[4][i] + tau2 * y[2][i] + (2.0 * tau1 + dtau2) * y[1][i] + (dtau1 + tau0) * y[0][i];
      worst = std::max(worst, std::abs(q[4][i] - classical));
    }
    return worst;
  };
  const double coarse = error(1001), fine = error(2001);
  CHECK(fine < 1e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("quasi_chain checks its input sizes") {
  const Primitives p = build_primitives(CoefficientSet::zero(11));
  SampledFunctions y;
  for (auto& f : y) f.assign(10, Complex{});
  CHECK_THROWS_AS(quasi_chain(p, y), InputError);
}

TEST_CASE("system_rhs examples") {
  const Primitives zero = build_primitives(CoefficientSet::zero(9));
  const Vector4c e1(1.0, 0.0, 0.0, 0.0);
  CHECK(system_rhs(zero, 0.0, 0.3, e1).norm() == 0.0);
  const Vector4c r = system_rhs(zero, 16.0, 0.3, e1);
  CHECK(r(3) == Complex(16.0));
  CHECK(r.head<3>().norm() == 0.0);

  const Primitives p = build_primitives(CoefficientSet::sample(
      33, zero_fn, [](double) { return Complex(1.0); }, zero_fn));
  const Vector4c s = system_rhs(p, 0.0, 0.5, e1);
  CHECK(std::abs(s(0)) < 1e-14);
  CHECK(std::abs(s(1) + 0.5) < 1e-14);
  CHECK(std::abs(s(2)) < 1e-14);
  CHECK(std::abs(s(3) + 0.25) < 1e-14);
}

TEST_CASE("polynomials under zero coefficients") {
  const Primitives p = build_primitives(CoefficientSet::zero(51));
  SampledFunctions cube, one;
  for (auto* y : {&cube, &one})
    for (auto& f : *y) f.assign(p.grid, Complex{});
  for (std::size_t i = 0; i < p.grid; ++i) {
    const double x = p.node(i);
    cube[0][i] = x * x * x;
    cube[1][i] = 3.0 * x * x;
    cube[2][i] = 6.0 * x;
    cube[3][i] = 6.0;
    one[0][i] = 1.0;
  }
  const SampledFunctions qc = quasi_chain(p, cube), q1 = quasi_chain(p, one);
  for (std::size_t i = 0; i < p.grid; ++i) {
    for (int k = 0; k < 4; ++k) CHECK(std::abs(qc[k][i] - cube[k][i]) < 1e-12);
    CHECK(std::abs(qc[4][i]) < 1e-9);
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(q1[k][i]) < 1e-12);
  }
}

TEST_CASE("all-one coefficients with tau0 = 0") {
  // tau2 = tau1 = 1 and constant r0, so l(y) = y'''' + y'' + 2 y'.
  const Primitives p = build_primitives(CoefficientSet::sample(
      4001, [](double) { return Complex(1.0); }, [](double) { return Complex(1.0); },
      [](double) { return Complex(1.0); }));
  const SampledFunctions y = sine_derivatives(p);
  const SampledFunctions q = quasi_chain(p, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.grid; ++i)
    worst = std::max(worst, std::abs(q[4][i] - (y[4][i] + y[2][i] + 2.0 * y[1][i])));
  CHECK(worst < 1e-5);
}
