#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "spectral4/coefficients.hpp"
#include "spectral4/types.hpp"

namespace spectral4 {

/// Associated matrix F(x) of the regularized equation:
///
///   [ 0               1             0          0 ]
///   [ -(s1 + s0)      0             1          0 ]
///   [ 0               -tau2 + 2 s0  0          1 ]
///   [ s0^2 - s1^2     0             s1 - s0    0 ]
///
/// with s0 = sigma0(x), s1 = sigma1(x). Throws DomainError for x outside [0,1].
Matrix4c assemble_F(const Primitives& p, double x);

/// F evaluated inside cell `cell` at local coordinate t in [0,1]; no range checks.
Matrix4c assemble_F_in_cell(const Primitives& p, std::size_t cell, double t);

/// (F(x) + Lambda) v, where Lambda carries lambda in entry (4,1).
Vector4c system_rhs(const Primitives& p, Complex lambda, double x, const Vector4c& v);

using SampledFunctions = std::array<std::vector<Complex>, 5>;

/// Quasi-derivatives y^[0..4] of a manufactured function.
///
/// `derivatives` holds y, y', y'', y''', y'''' sampled on the coefficient grid.
/// Each y^[k] is tracked as a combination of classical derivatives with sampled
/// coefficient functions; their derivatives are taken by second-order finite
/// differences, so y^[4] carries an O(h^2) error.
SampledFunctions quasi_chain(const Primitives& p, const SampledFunctions& derivatives);

}  // namespace spectral4
