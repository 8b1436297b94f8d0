#pragma once

#include <array>
#include <vector>

#include "spectral4/coefficients.hpp"
#include "spectral4/types.hpp"

namespace spectral4 {

/// Ordering of the fourth roots of unity on the sector
/// Gamma_kappa = { pi (kappa-1)/8 < arg rho < pi kappa/8 }:
/// Re(rho w1) < Re(rho w2) < Re(rho w3) < Re(rho w4).
struct SectorContext {
  int kappa = 1;
  std::array<Complex, 4> omegas;
  Matrix4c big_omega;  // (j,k) entry w_k^(j-1)
};

/// Throws InputError unless kappa is in 1..8.
SectorContext omega_order(int kappa);

/// Tables indexed [j][k], j = quasi-derivative order 0..3, k = root index 0..3.
struct CTables {
  Matrix4c c0;  // coefficient of t0 (at x=0) and t1 (at x=1) over rho^2
  Matrix4c c1;  // coefficient of sigma over rho^2 at x=1
};

CTables c_constants(const SectorContext& ctx);

struct AsymptoticConstants {
  Complex theta;
  Complex t0;
  Complex t1;
  Complex sigma;
  SectorContext ctx;
  CTables c;
  Matrix4c a_end0;  // a_lk(0), indexed [l][k]
  Matrix4c a_end1;  // a_lk(1)
};

AsymptoticConstants make_constants(Complex theta, Complex t0, Complex t1, Complex sigma, int kappa = 1);
AsymptoticConstants make_constants(const Primitives& p, int kappa = 1);

/// Main terms of the eigenvalue asymptotics for problem k in {1,2,3}.
Complex predict_lambda(int k, int n, const AsymptoticConstants& ac);

/// Main terms of rho_n for problem 3 (on the ray arg rho = pi/4).
Complex predict_rho3(int n, const AsymptoticConstants& ac);

/// Main terms of the weight-number asymptotics at the eigenvalue `lambda`.
Complex predict_beta(int k, int n, Complex lambda, const AsymptoticConstants& ac);

/// Reduced characteristic function d(rho) (or d+(rho) when `plus`) on Gamma_1.
Complex reduced_char(Complex rho, const AsymptoticConstants& ac, bool plus);

struct ReducedPair {
  Complex r1;
  Complex r2;
};
ReducedPair reduced_coefficients(Complex rho, const AsymptoticConstants& ac, bool plus);

/// Leading boundary behaviour of the Birkhoff-type solutions:
/// entry (j,k) approximates y_k^[j](x, rho) at x = 0 (`at_one` false) or x = 1,
/// with the o(rho^-2) remainder dropped. Uses the ordering in ac.ctx.
Matrix4c birkhoff_boundary_values(Complex rho, const AsymptoticConstants& ac, bool at_one);

/// 4x4 boundary determinant built from the Birkhoff expansions: rows
/// y(0), y'(0), y^[2](0), y(1) (or y^[3](0) in the third row when `plus`).
Complex birkhoff_determinant(Complex rho, const AsymptoticConstants& ac, bool plus);

struct RemainderReport {
  std::vector<Complex> kappa;        // (numeric - predicted) / n^power
  std::vector<double> partial_sums;  // running sums of |kappa|^2
  double tail_max = 0.0;             // max |kappa| over the second half
  double first_half = 0.0;           // sum of |kappa|^2 over the first half
  double second_half = 0.0;          // sum over the second half
  bool l2_consistent = true;         // second_half < 0.1 * first_half
};

/// Empirical check of an l2 remainder. `first_index` is the n of the first entry.
RemainderReport remainder_analysis(const std::vector<Complex>& numeric, const std::vector<Complex>& predicted,
                                   int power, int first_index = 1);

}  // namespace spectral4
