#include "spectral4/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral4/errors.hpp"

namespace spectral4 {

namespace {

bool all_finite(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

void CoefficientSet::validate() const {
  const std::size_t n = tau2.size();
  if (n < 2) throw InputError("coefficient grid needs at least 2 points, got " + std::to_string(n));
  if (tau1.size() != n || r0.size() != n)
    throw InputError("tau2, tau1 and r0 must be sampled on the same grid");
  if (!all_finite(tau2)) throw InputError("tau2 has non-finite samples");
  if (!all_finite(tau1)) throw InputError("tau1 has non-finite samples");
  if (!all_finite(r0)) throw InputError("r0 has non-finite samples");
}

CoefficientSet CoefficientSet::zero(std::size_t grid) {
  CoefficientSet cs;
  cs.tau2.assign(grid, Complex{});
  cs.tau1.assign(grid, Complex{});
  cs.r0.assign(grid, Complex{});
  return cs;
}

CoefficientSet CoefficientSet::sample(std::size_t grid, const std::function<Complex(double)>& tau2,
                                      const std::function<Complex(double)>& tau1,
                                      const std::function<Complex(double)>& r0) {
  if (grid < 2) throw InputError("coefficient grid needs at least 2 points");
  CoefficientSet cs;
  cs.tau2.resize(grid);
  cs.tau1.resize(grid);
  cs.r0.resize(grid);
  const double h = 1.0 / static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = (i + 1 == grid) ? 1.0 : static_cast<double>(i) * h;
    cs.tau2[i] = tau2(x);
    cs.tau1[i] = tau1(x);
    cs.r0[i] = r0(x);
  }
  return cs;
}

CoefficientSet adjoint_coefficients(const CoefficientSet& cs) {
  CoefficientSet out = cs;
  for (auto& z : out.tau2) z = std::conj(z);
  for (auto& z : out.tau1) z = -std::conj(z);
  for (auto& z : out.r0) z = std::conj(z);
  return out;
}

std::vector<Complex> cumulative_trapezoid(const std::vector<Complex>& f, double h) {
  std::vector<Complex> out(f.size());
  if (f.empty()) return out;
  out[0] = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  return out;
}

std::pair<std::size_t, double> Primitives::locate(double x) const {
  const double s = x / h;
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= cells()) i = cells() - 1;
  return {i, s - static_cast<double>(i)};
}

Primitives build_primitives(const CoefficientSet& cs) {
  cs.validate();
  Primitives p;
  p.grid = cs.grid_size();
  p.h = cs.spacing();
  p.tau2 = cs.tau2;
  p.tau1 = cs.tau1;
  p.r0 = cs.r0;

  p.sigma1 = cumulative_trapezoid(cs.tau1, p.h);
  p.sigma = p.sigma1.back();

  // sigma0 = int_0^x r0 + c0 x with c0 fixed by sigma0(1) = 0.
  const std::vector<Complex> r0_int = cumulative_trapezoid(cs.r0, p.h);
  p.c0 = -r0_int.back();
  p.sigma0.resize(p.grid);
  for (std::size_t i = 0; i < p.grid; ++i) p.sigma0[i] = r0_int[i] + p.c0 * p.node(i);
  p.sigma0.back() = 0.0;

  p.tau2_int1 = cumulative_trapezoid(cs.tau2, p.h);
  p.theta = p.tau2_int1.back();
  p.t0 = cs.tau2.front();
  p.t1 = cs.tau2.back();

  // Exact cell integrals of tau2 * tau2_int1 for piecewise-linear tau2.
  p.tau2_int2.assign(p.grid, Complex{});
  for (std::size_t i = 0; i + 1 < p.grid; ++i) {
    const Complex a = p.tau2[i];
    const Complex b = (p.tau2[i + 1] - p.tau2[i]) / p.h;
    const Complex base = p.tau2_int1[i];
    const double s = p.h;
    p.tau2_int2[i + 1] = p.tau2_int2[i] + a * base * s + (a * a + b * base) * (s * s / 2.0) +
                         a * b * (s * s * s / 2.0) + b * b * (s * s * s * s / 8.0);
  }
  return p;
}

Complex eval_primitive(const Primitives& p, PrimitiveKind which, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_primitive: x must lie in [0,1]");
  const auto [i, t] = p.locate(x);
  auto lerp = [&](const std::vector<Complex>& v) { return v[i] + t * (v[i + 1] - v[i]); };
  switch (which) {
    case PrimitiveKind::sigma0:
      return lerp(p.sigma0);
    case PrimitiveKind::sigma1:
      return lerp(p.sigma1);
    case PrimitiveKind::tau2:
      return lerp(p.tau2);
    case PrimitiveKind::tau2_int1:
    case PrimitiveKind::tau2_int2: {
      const Complex a = p.tau2[i];
      const Complex b = (p.tau2[i + 1] - p.tau2[i]) / p.h;
      const Complex base = p.tau2_int1[i];
      const double s = t * p.h;
      if (which == PrimitiveKind::tau2_int1) return base + a * s + b * (s * s / 2.0);
      return p.tau2_int2[i] + a * base * s + (a * a + b * base) * (s * s / 2.0) + a * b * (s * s * s / 2.0) +
             b * b * (s * s * s * s / 8.0);
    }
  }
  return {};
}

}  // namespace spectral4
