#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectral4/coefficients.hpp"
#include "spectral4/integrator.hpp"
#include "spectral4/types.hpp"

namespace spectral4 {

/// Boundary conditions: y^[j](0) = 0 for j < k, y^[j](1) = 0 for j < 4 - k.
class ProblemKind {
 public:
  explicit ProblemKind(int k);
  int value() const noexcept { return k_; }
  /// Size 4 - k of the characteristic determinant.
  int order() const noexcept { return 4 - k_; }
  friend bool operator==(ProblemKind a, ProblemKind b) { return a.k_ == b.k_; }

 private:
  int k_;
};

/// A characteristic-function value exp(log_scale) * value together with the
/// rho-balanced size of the whole solution block it was read from.
struct CharValue {
  Complex value;
  double log_scale = 0.0;
  double local_scale = 1.0;  // balanced max-norm of all minors, in the same units as value
  double weight = 1.0;       // balancing weight applied to |value| in relative()
  Complex derivative;        // d/dlambda in the units of value; zero unless requested

  Complex unscaled() const { return value * std::exp(log_scale); }
  /// |Delta| against the local scale; small near a zero.
  double relative() const { return local_scale > 0.0 ? weight * std::abs(value) / local_scale : 0.0; }
};

/// Delta_k(lambda): the (4-k)x(4-k) determinant of quasi-derivatives of
/// order 3-k, ..., 0 of C_{k+1}, ..., C_4 at x = 1.
CharValue char_fn(const Primitives& p, ProblemKind k, Complex lambda, double tol = kDefaultTolerance,
                  bool with_derivative = false);

/// Delta_k^+(lambda): the same rows with columns C_k, C_{k+2}, ..., C_4.
CharValue char_fn_plus(const Primitives& p, ProblemKind k, Complex lambda, double tol = kDefaultTolerance);

/// Fourth root of lambda with arg in [0, pi/2). Arguments within 1e-9 below
/// pi/2 are wrapped to the real axis so that real positive lambda gives real rho.
Complex rho_in_sector(Complex lambda);

enum class BetaMethod { none, newton, contour_residue };
enum class DatumStatus { ok, failed };

const char* to_string(BetaMethod m);

struct SpectralDatum {
  int n = 0;
  int k = 0;
  Complex lambda;
  Complex rho;
  std::optional<Complex> beta;
  double residual = 0.0;  // |Delta_k| relative to its local scale
  BetaMethod method = BetaMethod::none;
  int iterations = 0;
  int multiplicity = 1;
  DatumStatus status = DatumStatus::ok;
  std::string message;
};

struct SpectrumOptions {
  double tol = 1e-12;          // integration tolerance for refinement
  double count_tol = 1e-8;     // integration tolerance for winding counts
  int small_indices = 3;       // indices located by subdivision instead of seeding
  int max_iterations = 60;
  bool check_completeness = true;
  unsigned threads = 0;        // 0: hardware concurrency
};

/// Eigenvalues lambda_{n,k}, n = 1..nmax. Indices n <= small_indices are found
/// by subdividing a disk into boxes with winding counts; larger indices by
/// Newton iteration seeded with the asymptotic main terms. Throws
/// CompletenessError when the zero count on the enclosing circle disagrees
/// with the number of located eigenvalues.
std::vector<SpectralDatum> find_eigenvalues(const Primitives& p, ProblemKind k, int nmax,
                                            const SpectrumOptions& opts = {});

/// Number of zeros of Delta_k inside |lambda - center| = radius. Throws
/// ContourTooClose if the circle passes too near a zero.
int count_zeros(const Primitives& p, ProblemKind k, Complex center, double radius, int samples = 0,
                double tol = 1e-8);

/// count_zeros with up to `attempts` slightly perturbed radii.
int count_zeros_retry(const Primitives& p, ProblemKind k, Complex center, double radius, int samples = 0,
                      double tol = 1e-8, int attempts = 6);

/// Fills beta for every datum: -Delta^+/Delta' with the exact derivative, or
/// the residue on a circle of half the neighbour gap when the zero looks multiple.
std::vector<SpectralDatum> weight_numbers(const Primitives& p, ProblemKind k, std::vector<SpectralDatum> data,
                                          const SpectrumOptions& opts = {});

/// -Delta^+(lambda) / Delta'(lambda) at a simple zero.
Complex weight_direct(const Primitives& p, ProblemKind k, Complex lambda, double tol = 1e-12);

/// -(1/2 pi i) integral of Delta^+/Delta over |z - center| = radius (trapezoid rule).
Complex weight_residue(const Primitives& p, ProblemKind k, Complex center, double radius, int samples = 64,
                       double tol = 1e-12);

}  // namespace spectral4
