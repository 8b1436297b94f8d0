#include "spectral4/regularization.hpp"

#include "spectral4/errors.hpp"

namespace spectral4 {

Matrix4c assemble_F_in_cell(const Primitives& p, std::size_t cell, double t) {
  const Complex s0 = p.sigma0[cell] + t * (p.sigma0[cell + 1] - p.sigma0[cell]);
  const Complex s1 = p.sigma1[cell] + t * (p.sigma1[cell + 1] - p.sigma1[cell]);
  const Complex tau2 = p.tau2[cell] + t * (p.tau2[cell + 1] - p.tau2[cell]);
  Matrix4c f = Matrix4c::Zero();
  f(0, 1) = 1.0;
  f(1, 2) = 1.0;
  f(2, 3) = 1.0;
  f(1, 0) = -(s1 + s0);
  f(2, 1) = -tau2 + 2.0 * s0;
  f(3, 0) = s0 * s0 - s1 * s1;
  f(3, 2) = s1 - s0;
  return f;
}

Matrix4c assemble_F(const Primitives& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("assemble_F: x must lie in [0,1]");
  const auto [cell, t] = p.locate(x);
  return assemble_F_in_cell(p, cell, t);
}

Vector4c system_rhs(const Primitives& p, Complex lambda, double x, const Vector4c& v) {
  Matrix4c a = assemble_F(p, x);
  a(3, 0) += lambda;
  return a * v;
}

namespace {

using Coeffs = std::array<std::vector<Complex>, 5>;

std::vector<Complex> finite_difference(const std::vector<Complex>& f, double h) {
  const std::size_t n = f.size();
  std::vector<Complex> d(n);
  if (n < 3) {
    const Complex slope = (f[1] - f[0]) / h;
    d.assign(n, slope);
    return d;
  }
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

// a -= f * b, pointwise on all classical-derivative slots.
void subtract_product(Coeffs& a, const std::vector<Complex>& f, const Coeffs& b) {
  for (std::size_t m = 0; m < 5; ++m)
    for (std::size_t i = 0; i < f.size(); ++i) a[m][i] -= f[i] * b[m][i];
}

}  // namespace

SampledFunctions quasi_chain(const Primitives& p, const SampledFunctions& derivatives) {
  const std::size_t n = p.grid;
  for (const auto& d : derivatives)
    if (d.size() != n) throw InputError("quasi_chain: derivative samples must lie on the coefficient grid");

  std::vector<Complex> f21(n), f32(n), f41(n), f43(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex s0 = p.sigma0[i], s1 = p.sigma1[i];
    f21[i] = -(s1 + s0);
    f32[i] = -p.tau2[i] + 2.0 * s0;
    f41[i] = s0 * s0 - s1 * s1;
    f43[i] = s1 - s0;
  }

  // chain[k][m](x): coefficient of y^(m) in y^[k].
  std::array<Coeffs, 5> chain;
  for (auto& c : chain)
    for (auto& v : c) v.assign(n, Complex{});
  chain[0][0].assign(n, Complex{1.0});

  for (std::size_t k = 1; k <= 4; ++k) {
    Coeffs& next = chain[k];
    const Coeffs& prev = chain[k - 1];
    for (std::size_t m = 0; m < 5; ++m) {
      const std::vector<Complex> dm = finite_difference(prev[m], p.h);
      for (std::size_t i = 0; i < n; ++i) next[m][i] += dm[i];
      if (m + 1 < 5)
        for (std::size_t i = 0; i < n; ++i) next[m + 1][i] += prev[m][i];
    }
    switch (k) {
      case 2:
        subtract_product(next, f21, chain[0]);
        break;
      case 3:
        subtract_product(next, f32, chain[1]);
        break;
      case 4:
        subtract_product(next, f41, chain[0]);
        subtract_product(next, f43, chain[2]);
        break;
      default:
        break;
    }
  }

  SampledFunctions out;
  for (std::size_t k = 0; k < 5; ++k) {
    out[k].assign(n, Complex{});
    for (std::size_t m = 0; m < 5; ++m)
      for (std::size_t i = 0; i < n; ++i) out[k][i] += chain[k][m][i] * derivatives[m][i];
  }
  return out;
}

}  // namespace spectral4
