#pragma once

#include "spectral4/coefficients.hpp"
#include "spectral4/exterior.hpp"
#include "spectral4/types.hpp"

namespace spectral4 {

inline constexpr double kDefaultTolerance = 1e-10;

/// A 4x4 fundamental matrix stored as exp(log_scale) * m with max|m_ij| = 1.
struct ScaledMatrixSolution {
  Matrix4c m = Matrix4c::Identity();
  double log_scale = 0.0;

  Matrix4c value() const { return std::exp(log_scale) * m; }
  /// log|det m| + 4 log_scale; zero for the exact flow since trace(F + Lambda) = 0.
  double liouville_defect() const;
};

struct FundamentalWithDerivative {
  ScaledMatrixSolution sol;
  Matrix4c dsol = Matrix4c::Zero();  // exp(-log_scale) * dC(1, lambda)/dlambda
};

/// Columns C_k(1, lambda) and their quasi-derivatives, C_k^[j-1](0) = delta_kj.
/// Throws IntegrationError if the step size underflows.
ScaledMatrixSolution integrate_fundamental(const Primitives& p, Complex lambda,
                                           double tol = kDefaultTolerance);

/// Same flow started from arbitrary initial data at x = 0.
ScaledMatrixSolution integrate_fundamental_from(const Primitives& p, Complex lambda, const Matrix4c& initial,
                                                double tol = kDefaultTolerance);

/// Fundamental matrix and its lambda-derivative from the variational system
///   (dC)' = (F + Lambda) dC + E41 C,   dC(0) = 0.
FundamentalWithDerivative integrate_with_lambda_derivative(const Primitives& p, Complex lambda,
                                                           double tol = kDefaultTolerance);

/// A k-vector propagated to x = 1, scaled like ScaledMatrixSolution.
struct ScaledForm {
  VectorXc components;
  VectorXc derivative;  // d/dlambda of the components, same scale; empty if not requested
  double log_scale = 0.0;
};

/// Propagates the k-vector `initial` of the exterior power `ext` under the
/// compound flow of F + Lambda. Working with minors directly avoids the
/// cancellation incurred by forming them from a dense fundamental matrix.
ScaledForm integrate_form(const Primitives& p, Complex lambda, const ExteriorPower& ext, const VectorXc& initial,
                          bool with_derivative, double tol = kDefaultTolerance);

/// max(1, |lambda|^(1/4)): the magnitude of rho used to balance quasi-derivative orders.
double rho_balance(Complex lambda);

}  // namespace spectral4
