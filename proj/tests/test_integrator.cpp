#include <doctest.h>

#include <cmath>

#include "spectral4/coefficients.hpp"
#include "spectral4/errors.hpp"
#include "spectral4/integrator.hpp"

using namespace spectral4;

namespace {

Primitives smooth_set() {
  return build_primitives(CoefficientSet::sample(
      257, [](double x) { return Complex(1.0 + x, 0.3 * x); }, [](double x) { return Complex(std::cos(x), 0.5); },
      [](double x) { return Complex(x * x, -x); }));
}

Primitives step_set() {
  return build_primitives(CoefficientSet::sample(
      257, [](double) { return Complex(0.5); }, [](double x) { return Complex(x < 0.3 ? 1.0 : -1.0); },
      [](double x) { return Complex(x >= 0.5 ? 2.0 : 0.0); }));
}

double rel(const Matrix4c& a, const Matrix4c& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("polynomial fundamental matrix at lambda = 0") {
  const Primitives p = build_primitives(CoefficientSet::zero(33));
  const Matrix4c c = integrate_fundamental(p, 0.0).value();
  Matrix4c expected;
  expected << 1.0, 1.0, 0.5, 1.0 / 6.0,  //
      0.0, 1.0, 1.0, 0.5,                //
      0.0, 0.0, 1.0, 1.0,                //
      0.0, 0.0, 0.0, 1.0;
  CHECK(rel(c, expected) < 1e-13);
}

TEST_CASE("beam entry at rho = 2") {
  const Primitives p = build_primitives(CoefficientSet::zero(33));
  const Matrix4c c = integrate_fundamental(p, 16.0).value();
  CHECK(std::abs(c(0, 3) - (std::sinh(2.0) - std::sin(2.0)) / 16.0) < 1e-10);
  CHECK(std::abs(c(0, 2) - (std::cosh(2.0) - std::cos(2.0)) / 8.0) < 1e-10);
}

TEST_CASE("Liouville determinant at moderate lambda") {
  for (const Primitives& p : {smooth_set(), step_set()}) {
    const ScaledMatrixSolution s = integrate_fundamental(p, Complex(50.0, 3.0));
    CHECK(std::abs(s.value().determinant() - 1.0) < 1e-8);
    CHECK(std::abs(s.liouville_defect()) < 1e-8);
  }
}

TEST_CASE("normalized state") {
  const ScaledMatrixSolution s = integrate_fundamental(smooth_set(), Complex(-3e4, 2e4));
  const double norm = s.m.cwiseAbs().maxCoeff();
  CHECK(norm >= 1e-2);
  CHECK(norm <= 1e2);
  CHECK(s.m.allFinite());
}

TEST_CASE("lambda-derivative at zero is 1/7!") {
  const Primitives p = build_primitives(CoefficientSet::zero(33));
  const FundamentalWithDerivative f = integrate_with_lambda_derivative(p, 0.0);
  const Complex d = f.dsol(0, 3) * std::exp(f.sol.log_scale);
  CHECK(std::abs(d - 1.0 / 5040.0) < 1e-14);
}

TEST_CASE("lambda-derivative against central differences") {
  const auto check = [](const Primitives& p, Complex lambda) {
    const FundamentalWithDerivative f = integrate_with_lambda_derivative(p, lambda, 1e-12);
    const Matrix4c d = f.dsol * std::exp(f.sol.log_scale);
    const Complex h = 1e-3 * std::abs(lambda);
    const Matrix4c fd =
        (integrate_fundamental(p, lambda + h, 1e-12).value() - integrate_fundamental(p, lambda - h, 1e-12).value()) /
        (2.0 * h);
    return rel(fd, d);
  };
  CHECK(check(build_primitives(CoefficientSet::zero(33)), 16.0) < 1e-6);
  for (double angle : {0.3, 1.9, 4.4}) CHECK(check(smooth_set(), std::polar(100.0, angle)) < 1e-5);
}

TEST_CASE("tolerance refinement") {
  const Primitives p = step_set();
  for (Complex lambda : {Complex(200.0, 10.0), Complex(-800.0, 0.0)}) {
    const double tol = 1e-8;
    const Matrix4c a = integrate_fundamental(p, lambda, tol).value();
    const Matrix4c b = integrate_fundamental(p, lambda, tol / 2.0).value();
    CHECK(rel(a, b) < 10.0 * tol);
  }
}

TEST_CASE("scale covariance") {
  const Primitives p = smooth_set();
  const Complex lambda(-700.0, 250.0);
  const Matrix4c a = integrate_fundamental(p, lambda).value();
  const Matrix4c b = integrate_fundamental_from(p, lambda, 2.0 * Matrix4c::Identity()).value();
  CHECK(rel(b, 2.0 * a) < 1e-12);
}

TEST_CASE("compound form matches minors of the fundamental matrix") {
  const Primitives p = smooth_set();
  const Complex lambda(120.0, -40.0);
  const Matrix4c c = integrate_fundamental(p, lambda, 1e-12).value();
  const ExteriorPower e2(2);
  const ScaledForm form = integrate_form(p, lambda, e2, e2.basis({2, 3}), false, 1e-12);
  const VectorXc exact = e2.wedge(c.rightCols(2));
  CHECK((form.components * std::exp(form.log_scale) - exact).norm() < 1e-9 * exact.norm());
}

TEST_CASE("invalid tolerance") {
  const Primitives p = build_primitives(CoefficientSet::zero(9));
  CHECK_THROWS_AS(integrate_fundamental(p, 1.0, 0.0), InputError);
  CHECK_THROWS_AS(integrate_fundamental(p, 1.0, -1e-3), InputError);
}

TEST_CASE("rho balance") {
  CHECK(rho_balance(0.0) == 1.0);
  CHECK(rho_balance(Complex(0.0, 1e4)) == doctest::Approx(10.0));
}
