#include "spectral4/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral4/errors.hpp"

namespace spectral4 {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Complex ipow(Complex z, int e) {
  Complex out = 1.0;
  const Complex base = e >= 0 ? z : 1.0 / z;
  for (int i = 0; i < std::abs(e); ++i) out *= base;
  return out;
}

}  // namespace

SectorContext omega_order(int kappa) {
  if (kappa < 1 || kappa > 8) throw InputError("sector index must lie in 1..8, got " + std::to_string(kappa));
  SectorContext ctx;
  ctx.kappa = kappa;
  const Complex mid = std::polar(1.0, kPi * (kappa - 0.5) / 8.0);
  std::array<Complex, 4> roots = {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}};
  std::sort(roots.begin(), roots.end(),
            [&](const Complex& a, const Complex& b) { return (mid * a).real() < (mid * b).real(); });
  ctx.omegas = roots;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) ctx.big_omega(j, k) = ipow(roots[k], j);
  return ctx;
}

CTables c_constants(const SectorContext& ctx) {
  CTables t;
  t.c0.setZero();
  t.c1.setZero();
  const auto& w = ctx.omegas;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      Complex s0 = 0.0, s1 = 0.0;
      for (int l = 0; l < 4; ++l) {
        if (l == k) continue;
        const Complex ratio = ipow(w[l] / w[k], j);
        const Complex denom = w[l] - w[k];
        s0 += ratio * ipow(w[l], -2) * w[k] / denom;
        s1 += ratio * (ipow(w[l], -3) * w[k] * w[k] - ipow(w[l], -1)) / denom;
      }
      t.c0(j, k) = 0.25 * s0;
      t.c1(j, k) = -0.25 * s1;
    }
  }
  return t;
}

AsymptoticConstants make_constants(Complex theta, Complex t0, Complex t1, Complex sigma, int kappa) {
  AsymptoticConstants ac;
  ac.theta = theta;
  ac.t0 = t0;
  ac.t1 = t1;
  ac.sigma = sigma;
  ac.ctx = omega_order(kappa);
  ac.c = c_constants(ac.ctx);
  const auto& w = ac.ctx.omegas;
  for (int l = 0; l < 4; ++l) {
    for (int k = 0; k < 4; ++k) {
      ac.a_end0(l, k) = -0.25 * t0 * ipow(w[l], -2) * w[k];
      ac.a_end1(l, k) = -0.25 * t1 * ipow(w[l], -2) * w[k] +
                        0.25 * sigma * (ipow(w[l], -3) * w[k] * w[k] - ipow(w[l], -1));
    }
  }
  return ac;
}

AsymptoticConstants make_constants(const Primitives& p, int kappa) {
  return make_constants(p.theta, p.t0, p.t1, p.sigma, kappa);
}

Complex predict_lambda(int k, int n, const AsymptoticConstants& ac) {
  if (k < 1 || k > 3) throw InputError("problem kind must be 1, 2 or 3");
  if (n < 1) throw InputError("eigenvalue index must be >= 1");
  if (k == 2) {
    const double r = kPi * n + kPi / 2.0;
    return r * r * r * r - ac.theta * (r * r) + (ac.t0 + ac.t1) * r;
  }
  const double r = kSqrt2 * kPi * n + kPi / (2.0 * kSqrt2);
  const Complex shift = (k == 1 ? 4.0 : -4.0) * ac.sigma;
  return -(r * r * r * r - ac.theta * (r * r) + (ac.t0 + ac.t1 + shift) / kSqrt2 * r);
}

Complex predict_rho3(int n, const AsymptoticConstants& ac) {
  if (n < 1) throw InputError("eigenvalue index must be >= 1");
  const double r = kSqrt2 * kPi * n + kPi / (2.0 * kSqrt2);
  const double pn2 = (kPi * n) * (kPi * n);
  const Complex radial =
      r - ac.theta / (4.0 * r) - ac.sigma / (2.0 * kSqrt2 * pn2) + (ac.t0 + ac.t1) / (8.0 * kSqrt2 * pn2);
  return std::polar(1.0, kPi / 4.0) * radial;
}

Complex predict_beta(int k, int n, Complex lambda, const AsymptoticConstants& ac) {
  if (k < 1 || k > 3) throw InputError("problem kind must be 1, 2 or 3");
  if (n < 1) throw InputError("eigenvalue index must be >= 1");
  const double pn2 = (kPi * n) * (kPi * n);
  if (k == 2) return -4.0 * lambda * (1.0 + (ac.t0 + 2.0 * ac.theta) / (4.0 * pn2));
  return -4.0 * lambda * (1.0 + (ac.t0 + ac.theta) / (8.0 * pn2));
}

ReducedPair reduced_coefficients(Complex rho, const AsymptoticConstants& ac, bool plus) {
  const Complex i = kI;
  const Complex inv = 1.0 / rho;
  const Complex inv2 = inv * inv;
  const Complex th = ac.theta, th2 = ac.theta * ac.theta;
  const Complex ts = ac.t0 + ac.t1, td = ac.t0 - ac.t1;
  ReducedPair r;
  if (!plus) {
    r.r1 = -4.0 * i + i * th * inv + 2.0 * i * ac.sigma * inv2 - i * ts / 2.0 * inv2 - i * th2 / 8.0 * inv2;
    r.r2 = 4.0 - i * th * inv + 2.0 * ac.sigma * inv2 - ts / 2.0 * inv2 - th2 / 8.0 * inv2;
  } else {
    r.r1 = 4.0 * i - i * th * inv - 2.0 * i * ac.sigma * inv2 - i * td / 2.0 * inv2 + i * th2 / 8.0 * inv2;
    r.r2 = 4.0 * i + th * inv + 2.0 * i * ac.sigma * inv2 + i * td / 2.0 * inv2 - i * th2 / 8.0 * inv2;
  }
  return r;
}

Complex reduced_char(Complex rho, const AsymptoticConstants& ac, bool plus) {
  const ReducedPair r = reduced_coefficients(rho, ac, plus);
  // On Gamma_1: w3 - w4 = -i - 1.
  return r.r1 - r.r2 * std::exp(rho * Complex(-1.0, -1.0));
}

Matrix4c birkhoff_boundary_values(Complex rho, const AsymptoticConstants& ac, bool at_one) {
  Matrix4c y;
  const auto& w = ac.ctx.omegas;
  const Complex inv2 = 1.0 / (rho * rho);
  for (int k = 0; k < 4; ++k) {
    const Complex rw = rho * w[k];
    for (int j = 0; j < 4; ++j) {
      Complex bracket;
      if (!at_one) {
        bracket = 1.0 + ac.c.c0(j, k) * ac.t0 * inv2;
      } else {
        bracket = 1.0 - ac.theta / (4.0 * rw) + ac.theta * ac.theta / (32.0 * rw * rw) + ac.c.c0(j, k) * ac.t1 * inv2 +
                  ac.c.c1(j, k) * ac.sigma * inv2;
      }
      y(j, k) = ipow(rw, j) * bracket * (at_one ? std::exp(rw) : Complex{1.0});
    }
  }
  return y;
}

Complex birkhoff_determinant(Complex rho, const AsymptoticConstants& ac, bool plus) {
  const Matrix4c y0 = birkhoff_boundary_values(rho, ac, false);
  const Matrix4c y1 = birkhoff_boundary_values(rho, ac, true);
  Matrix4c d;
  d.row(0) = y0.row(0);
  d.row(1) = y0.row(1);
  d.row(2) = y0.row(plus ? 3 : 2);
  d.row(3) = y1.row(0);
  return d.determinant();
}

RemainderReport remainder_analysis(const std::vector<Complex>& numeric, const std::vector<Complex>& predicted,
                                   int power, int first_index) {
  if (numeric.size() != predicted.size())
    throw InputError("remainder_analysis: numeric and predicted sequences differ in length");
  if (numeric.size() < 5) throw InputError("remainder_analysis: need at least 5 terms");
  RemainderReport rep;
  const std::size_t len = numeric.size();
  const std::size_t half = (len + 1) / 2;
  double running = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double n = static_cast<double>(first_index) + static_cast<double>(i);
    const Complex kappa = (numeric[i] - predicted[i]) / std::pow(n, power);
    rep.kappa.push_back(kappa);
    running += std::norm(kappa);
    rep.partial_sums.push_back(running);
    if (i >= half) rep.tail_max = std::max(rep.tail_max, std::abs(kappa));
  }
  rep.first_half = rep.partial_sums[half - 1];
  rep.second_half = rep.partial_sums.back() - rep.first_half;
  rep.l2_consistent = rep.first_half == 0.0 ? rep.second_half == 0.0 : rep.second_half < 0.1 * rep.first_half;
  return rep;
}

}  // namespace spectral4
