#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "spectral4/types.hpp"

namespace spectral4 {

/// Coefficient triple of the fourth-order equation, sampled on the uniform
/// grid x_i = i/(N-1), i = 0..N-1.
///
/// The distribution tau0 is never stored; it enters only through its
/// antiderivative r0 (tau0 = r0').
struct CoefficientSet {
  std::vector<Complex> tau2;
  std::vector<Complex> tau1;
  std::vector<Complex> r0;

  std::size_t grid_size() const noexcept { return tau2.size(); }
  double spacing() const noexcept { return 1.0 / static_cast<double>(grid_size() - 1); }

  /// Throws InputError unless all arrays share a size >= 2 with finite entries.
  void validate() const;

  static CoefficientSet zero(std::size_t grid);
  /// Samples the three callables on a grid of `grid` points.
  static CoefficientSet sample(std::size_t grid, const std::function<Complex(double)>& tau2,
                               const std::function<Complex(double)>& tau1,
                               const std::function<Complex(double)>& r0);
};

/// Coefficients of the adjoint problem: (conj tau0, -conj tau1, conj tau2).
CoefficientSet adjoint_coefficients(const CoefficientSet& cs);

enum class PrimitiveKind { sigma0, sigma1, tau2, tau2_int1, tau2_int2 };

/// Antiderivatives and scalar constants derived from a CoefficientSet.
///
///   sigma0'' = tau0, sigma0(0) = sigma0(1) = 0   (sigma0 = int r0 + c0 x)
///   sigma1'  = tau1, sigma1(0) = 0
///   tau2_int1(x) = int_0^x tau2,  tau2_int2(x) = int_0^x tau2 * tau2_int1
struct Primitives {
  std::size_t grid = 0;
  double h = 0.0;

  std::vector<Complex> tau2;
  std::vector<Complex> tau1;
  std::vector<Complex> r0;
  std::vector<Complex> sigma0;
  std::vector<Complex> sigma1;
  std::vector<Complex> tau2_int1;
  std::vector<Complex> tau2_int2;

  Complex c0;     // sigma0 = int_0^x r0 + c0 x
  Complex theta;  // int_0^1 tau2
  Complex t0;     // tau2(0)
  Complex t1;     // tau2(1)
  Complex sigma;  // sigma1(1)

  std::size_t cells() const noexcept { return grid - 1; }
  double node(std::size_t i) const noexcept { return static_cast<double>(i) * h; }

  /// Cell index and local coordinate in [0,1] for x in [0,1].
  std::pair<std::size_t, double> locate(double x) const;
};

Primitives build_primitives(const CoefficientSet& cs);

/// Value of one primitive at x in [0,1]; throws DomainError outside.
Complex eval_primitive(const Primitives& p, PrimitiveKind which, double x);

/// Composite trapezoid running integral of samples with spacing h.
std::vector<Complex> cumulative_trapezoid(const std::vector<Complex>& f, double h);

}  // namespace spectral4
