#include "spectral4/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <thread>

#include "spectral4/asymptotics.hpp"
#include "spectral4/contour.hpp"
#include "spectral4/errors.hpp"
#include "spectral4/exterior.hpp"

namespace spectral4 {

namespace {

const ExteriorPower& exterior(int order) {
  static const std::array<ExteriorPower, 3> powers{ExteriorPower(1), ExteriorPower(2), ExteriorPower(3)};
  return powers.at(order - 1);
}

// Reversing the row order 3-k, ..., 0 into 0, ..., 3-k flips the sign m(m-1)/2 times.
double row_sign(int m) { return ((m * (m - 1) / 2) % 2) != 0 ? -1.0 : 1.0; }

CharValue evaluate(const Primitives& p, ProblemKind k, Complex lambda, const std::vector<int>& cols, double tol,
                   bool with_derivative) {
  const int m = k.order();
  const ExteriorPower& ext = exterior(m);
  const ScaledForm form = integrate_form(p, lambda, ext, ext.basis(cols), with_derivative, tol);
  const double r = rho_balance(lambda);
  double local = 0.0;
  for (int i = 0; i < ext.dim(); ++i) local = std::max(local, std::pow(r, -ext.degree(i)) * std::abs(form.components(i)));
  const double sign = row_sign(m);
  CharValue out;
  out.value = sign * form.components(0);
  out.log_scale = form.log_scale;
  out.local_scale = local;
  out.weight = std::pow(r, -ext.degree(0));
  if (with_derivative) out.derivative = sign * form.derivative(0);
  return out;
}

std::vector<int> main_columns(ProblemKind k) {
  std::vector<int> cols;
  for (int j = k.value(); j < 4; ++j) cols.push_back(j);
  return cols;
}

std::vector<int> plus_columns(ProblemKind k) {
  std::vector<int> cols{k.value() - 1};
  for (int j = k.value() + 1; j < 4; ++j) cols.push_back(j);
  return cols;
}

int auto_samples(double reach) { return 32 + 8 * static_cast<int>(std::ceil(std::pow(reach, 0.25))); }

ContourFunction contour_function(const Primitives& p, ProblemKind k, double tol) {
  return [&p, k, tol](Complex z) {
    const CharValue cv = char_fn(p, k, z, tol);
    return ContourSample{cv.value, cv.relative()};
  };
}

struct Refined {
  Complex lambda;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

Refined newton(const Primitives& p, ProblemKind k, Complex seed, double max_step, const SpectrumOptions& opts) {
  Refined out;
  Complex lambda = seed;
  double previous = std::numeric_limits<double>::infinity();
  double last = previous;
  int it = 0;
  while (it < opts.max_iterations) {
    const CharValue cv = char_fn(p, k, lambda, opts.tol, true);
    ++it;
    if (cv.value == Complex{}) {
      last = 0.0;
      break;
    }
    Complex step = cv.value / cv.derivative;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    const double size = std::abs(step);
    if (size > max_step) step *= max_step / size;
    lambda -= step;
    last = size;
    const double scale = std::max(1.0, std::abs(lambda));
    if (size <= 1e-14 * scale) break;
    // Quadratic convergence has stalled at the noise floor of Delta.
    if (size <= 1e-9 * scale && size >= 0.5 * previous) break;
    previous = size;
  }
  out.lambda = lambda;
  out.iterations = it;
  out.residual = char_fn(p, k, lambda, opts.tol).relative();
  out.converged = out.residual <= 1e-8 && last <= 1e-9 * std::max(1.0, std::abs(lambda));
  return out;
}

struct Located {
  Complex lambda;
  int multiplicity = 1;
  int iterations = 0;
  double residual = 0.0;
};

// Recursive isolation of the zeros of Delta_k inside rectangles.
class BoxLocator {
 public:
  BoxLocator(const Primitives& p, ProblemKind k, const SpectrumOptions& opts)
      : p_(p), k_(k), opts_(opts), f_(contour_function(p, k, opts.count_tol)) {}

  int count(Complex lo, Complex hi) const {
    const double reach = std::max({std::abs(lo), std::abs(hi), std::abs(Complex(lo.real(), hi.imag())),
                                   std::abs(Complex(hi.real(), lo.imag()))});
    WindingOptions w;
    w.initial_samples = auto_samples(reach);
    return winding_number_rectangle(f_, lo, hi, w);
  }

  void locate(Complex lo, Complex hi, int n, int depth, std::vector<Located>& out) const {
    if (n <= 0) return;
    const Complex center = 0.5 * (lo + hi);
    const double width = std::max(hi.real() - lo.real(), hi.imag() - lo.imag());
    const double scale = std::max(1.0, std::abs(center));
    if (n == 1 || width < 1e-7 * scale || depth >= kMaxDepth) {
      const Refined r = newton(p_, k_, center, 0.5 * width, opts_);
      const double slack = 1e-9 * scale;
      const bool inside = r.lambda.real() >= lo.real() - slack && r.lambda.real() <= hi.real() + slack &&
                          r.lambda.imag() >= lo.imag() - slack && r.lambda.imag() <= hi.imag() + slack;
      if (r.converged && inside) {
        out.push_back({r.lambda, n, r.iterations, r.residual});
        return;
      }
      if (width < 1e-7 * scale || depth >= kMaxDepth) {
        if (n > 1) {
          out.push_back({center, n, r.iterations, char_fn(p_, k_, center, opts_.tol).relative()});
          return;
        }
        throw ConvergenceError("subdivision could not isolate a zero near " + describe(center));
      }
    }
    for (int attempt = 0; attempt < 6; ++attempt) {
      const double fx = 0.5 + kSplitShift * (1 + attempt) * (attempt % 2 == 0 ? 1.0 : -1.0);
      const double fy = 0.5 - kSplitShift * 1.37 * (1 + attempt) * (attempt % 2 == 0 ? 1.0 : -1.0);
      const double xs = lo.real() + fx * (hi.real() - lo.real());
      const double ys = lo.imag() + fy * (hi.imag() - lo.imag());
      const std::array<std::pair<Complex, Complex>, 4> boxes{
          std::pair{lo, Complex(xs, ys)}, std::pair{Complex(xs, lo.imag()), Complex(hi.real(), ys)},
          std::pair{Complex(lo.real(), ys), Complex(xs, hi.imag())}, std::pair{Complex(xs, ys), hi}};
      std::array<int, 4> counts{};
      try {
        int sum = 0;
        for (int b = 0; b < 3; ++b) {
          counts[b] = count(boxes[b].first, boxes[b].second);
          sum += counts[b];
        }
        counts[3] = n - sum;
        if (counts[3] < 0 || counts[0] < 0 || counts[1] < 0 || counts[2] < 0) continue;
      } catch (const ContourTooClose&) {
        continue;
      }
      for (int b = 0; b < 4; ++b) locate(boxes[b].first, boxes[b].second, counts[b], depth + 1, out);
      return;
    }
    throw ConvergenceError("subdivision failed to split the box around " + describe(center));
  }

  static std::string describe(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
  }

 private:
  static constexpr int kMaxDepth = 60;
  static constexpr double kSplitShift = 0.0731;
  const Primitives& p_;
  ProblemKind k_;
  const SpectrumOptions& opts_;
  ContourFunction f_;
};

bool by_modulus_then_arg(const SpectralDatum& a, const SpectralDatum& b) {
  const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
  if (ma != mb) return ma < mb;
  return std::arg(a.lambda) < std::arg(b.lambda);
}

SpectralDatum make_datum(int n, ProblemKind k, Complex lambda) {
  SpectralDatum d;
  d.n = n;
  d.k = k.value();
  d.lambda = lambda;
  d.rho = rho_in_sector(lambda);
  return d;
}

// Newton from the asymptotic seed, with box subdivision as the fallback.
SpectralDatum refine_seeded(const Primitives& p, ProblemKind k, int n, Complex seed, double gap,
                            const SpectrumOptions& opts) {
  SpectralDatum d = make_datum(n, k, seed);
  try {
    const Refined r = newton(p, k, seed, 0.25 * gap, opts);
    if (r.converged && std::abs(r.lambda - seed) < 0.5 * gap) {
      d = make_datum(n, k, r.lambda);
      d.iterations = r.iterations;
      d.residual = r.residual;
      return d;
    }
    BoxLocator boxes(p, k, opts);
    const double half = 0.5 * gap;
    const Complex lo = seed - Complex(half * 1.013, half * 0.987);
    const Complex hi = seed + Complex(half * 0.991, half * 1.009);
    const int inside = boxes.count(lo, hi);
    if (inside != 1) {
      d.status = DatumStatus::failed;
      d.message = "expected one zero near the seed, found " + std::to_string(inside);
      return d;
    }
    std::vector<Located> found;
    boxes.locate(lo, hi, 1, 0, found);
    d = make_datum(n, k, found.front().lambda);
    d.iterations = r.iterations + found.front().iterations;
    d.residual = found.front().residual;
  } catch (const std::exception& e) {
    d.status = DatumStatus::failed;
    d.message = e.what();
  }
  return d;
}

unsigned worker_count(const SpectrumOptions& opts) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return opts.threads == 0 ? hw : opts.threads;
}

}  // namespace

ProblemKind::ProblemKind(int k) : k_(k) {
  if (k < 1 || k > 3) throw InputError("problem kind must be 1, 2 or 3");
}

CharValue char_fn(const Primitives& p, ProblemKind k, Complex lambda, double tol, bool with_derivative) {
  return evaluate(p, k, lambda, main_columns(k), tol, with_derivative);
}

CharValue char_fn_plus(const Primitives& p, ProblemKind k, Complex lambda, double tol) {
  return evaluate(p, k, lambda, plus_columns(k), tol, false);
}

Complex rho_in_sector(Complex lambda) {
  if (lambda == Complex{}) return {};
  const double quarter = kPi / 2.0;
  double phi = std::fmod(std::arg(lambda) / 4.0, quarter);
  if (phi < 0.0) phi += quarter;
  if (quarter - phi < 1e-9) phi -= quarter;
  return std::polar(std::pow(std::abs(lambda), 0.25), phi);
}

const char* to_string(BetaMethod m) {
  switch (m) {
    case BetaMethod::newton:
      return "newton";
    case BetaMethod::contour_residue:
      return "contour-residue";
    default:
      return "none";
  }
}

int count_zeros(const Primitives& p, ProblemKind k, Complex center, double radius, int samples, double tol) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("count_zeros: radius must be positive");
  WindingOptions w;
  w.initial_samples = samples > 0 ? samples : auto_samples(std::abs(center) + radius);
  return winding_number_circle(contour_function(p, k, tol), center, radius, w);
}

int count_zeros_retry(const Primitives& p, ProblemKind k, Complex center, double radius, int samples, double tol,
                      int attempts) {
  for (int a = 0; a < attempts; ++a) {
    const double factor = 1.0 + 1e-3 * ((a + 1) / 2) * (a % 2 == 0 ? 1.0 : -1.0);
    try {
      return count_zeros(p, k, center, radius * factor, samples, tol);
    } catch (const ContourTooClose&) {
    }
  }
  throw ContourTooClose("count_zeros: every perturbed circle of radius near " + std::to_string(radius) +
                        " passes too close to a zero");
}

std::vector<SpectralDatum> find_eigenvalues(const Primitives& p, ProblemKind k, int nmax, const SpectrumOptions& opts) {
  if (nmax < 1) throw InputError("nmax must be >= 1");
  const AsymptoticConstants ac = make_constants(p);
  std::vector<Complex> pred(nmax + 2);
  for (int n = 1; n <= nmax + 1; ++n) pred[n] = predict_lambda(k.value(), n, ac);

  // Small indices: every zero inside a circle between the predicted
  // eigenvalues `small` and `small + 1`.
  const int small = std::clamp(opts.small_indices, 1, nmax);
  const double radius = std::sqrt(std::abs(pred[small]) * std::abs(pred[small + 1]));
  const int expected = count_zeros_retry(p, k, 0.0, radius, 0, opts.count_tol);
  BoxLocator boxes(p, k, opts);
  const Complex lo(-1.0213 * radius, -1.0117 * radius), hi(0.9937 * radius, 1.0171 * radius);
  const int in_box = boxes.count(lo, hi);
  std::vector<Located> found;
  boxes.locate(lo, hi, in_box, 0, found);
  std::erase_if(found, [&](const Located& z) { return std::abs(z.lambda) >= radius; });
  int located = 0;
  for (const auto& z : found) located += z.multiplicity;
  if (located != expected)
    throw CompletenessError("subdivision located " + std::to_string(located) + " zeros but |lambda| = " +
                            std::to_string(radius) + " encloses " + std::to_string(expected));

  std::vector<SpectralDatum> data;
  for (const auto& z : found) {
    SpectralDatum d = make_datum(0, k, z.lambda);
    d.multiplicity = z.multiplicity;
    d.iterations = z.iterations;
    d.residual = z.residual;
    data.push_back(d);
  }
  std::sort(data.begin(), data.end(), by_modulus_then_arg);
  int next = 1;
  for (auto& d : data) {
    d.n = next;
    next += d.multiplicity;
  }
  std::erase_if(data, [&](const SpectralDatum& d) { return d.n > nmax; });

  // Seeded indices, refined concurrently in index order.
  std::vector<int> indices;
  for (int n = next; n <= nmax; ++n) indices.push_back(n);
  std::vector<SpectralDatum> seeded(indices.size());
  const auto work = [&](std::size_t i) {
    const int n = indices[i];
    double gap = std::abs(pred[n + 1] - pred[n]);
    if (n > 1) gap = std::min(gap, std::abs(pred[n] - pred[n - 1]));
    seeded[i] = refine_seeded(p, k, n, pred[n], gap, opts);
  };
  const unsigned workers = std::min<unsigned>(worker_count(opts), std::max<std::size_t>(1, indices.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < indices.size(); ++i) work(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < indices.size(); i += workers) work(i);
      }));
    for (auto& j : jobs) j.get();
  }

  bool failures = false;
  for (auto& d : seeded) {
    for (const auto& other : data) {
      if (d.status == DatumStatus::ok &&
          std::abs(d.lambda - other.lambda) <= 1e-8 * std::max(1.0, std::abs(d.lambda))) {
        d.status = DatumStatus::failed;
        d.message = "converged to the eigenvalue of index " + std::to_string(other.n);
      }
    }
    failures = failures || d.status != DatumStatus::ok;
    data.push_back(d);
  }
  if (!failures) {
    std::sort(data.begin(), data.end(), by_modulus_then_arg);
    int n = 1;
    for (auto& d : data) {
      d.n = n;
      n += d.multiplicity;
    }
  } else {
    std::sort(data.begin(), data.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  }

  if (opts.check_completeness && !failures && !data.empty()) {
    int total = 0;
    for (const auto& d : data) total += d.multiplicity;
    const double last = std::abs(data.back().lambda);
    const double outer = std::abs(pred[nmax + 1]) > last ? std::abs(pred[nmax + 1]) : 1.5 * last;
    const double r = std::sqrt(last * outer);
    const int counted = count_zeros_retry(p, k, 0.0, r, 0, opts.count_tol);
    if (counted != total)
      throw CompletenessError("circle |lambda| = " + std::to_string(r) + " encloses " + std::to_string(counted) +
                              " zeros but " + std::to_string(total) + " eigenvalues were located");
  }
  return data;
}

Complex weight_direct(const Primitives& p, ProblemKind k, Complex lambda, double tol) {
  const CharValue main = char_fn(p, k, lambda, tol, true);
  const CharValue plus = char_fn_plus(p, k, lambda, tol);
  return -(plus.value / main.derivative) * std::exp(plus.log_scale - main.log_scale);
}

Complex weight_residue(const Primitives& p, ProblemKind k, Complex center, double radius, int samples, double tol) {
  if (!(radius > 0.0)) throw InputError("weight_residue: radius must be positive");
  if (samples < 8) throw InputError("weight_residue: need at least 8 samples");
  Complex sum{};
  for (int j = 0; j < samples; ++j) {
    const Complex offset = std::polar(radius, 2.0 * kPi * (j + 0.5) / samples);
    const Complex z = center + offset;
    const CharValue main = char_fn(p, k, z, tol);
    const CharValue plus = char_fn_plus(p, k, z, tol);
    sum += (plus.value / main.value) * std::exp(plus.log_scale - main.log_scale) * offset;
  }
  return -sum / static_cast<double>(samples);
}

std::vector<SpectralDatum> weight_numbers(const Primitives& p, ProblemKind k, std::vector<SpectralDatum> data,
                                          const SpectrumOptions& opts) {
  const AsymptoticConstants ac = make_constants(p);
  for (std::size_t i = 0; i < data.size(); ++i) {
    SpectralDatum& d = data[i];
    if (d.status != DatumStatus::ok) continue;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < data.size(); ++j)
      if (j != i) gap = std::min(gap, std::abs(data[j].lambda - d.lambda));
    if (data.size() == 1) gap = std::abs(predict_lambda(k.value(), d.n + d.multiplicity, ac) - d.lambda);
    try {
      const CharValue cv = char_fn(p, k, d.lambda, opts.tol, true);
      const double slope =
          cv.local_scale > 0.0 ? std::abs(cv.derivative) * std::max(1.0, std::abs(d.lambda)) * cv.weight / cv.local_scale
                               : 0.0;
      if (d.multiplicity > 1 || slope < 1e-6) {
        if (!(gap > 0.0) || !std::isfinite(gap)) throw ConvergenceError("cannot separate the eigenvalue from its neighbours");
        d.beta = weight_residue(p, k, d.lambda, 0.5 * gap, 64, opts.tol);
        d.method = BetaMethod::contour_residue;
      } else {
        const CharValue plus = char_fn_plus(p, k, d.lambda, opts.tol);
        d.beta = -(plus.value / cv.derivative) * std::exp(plus.log_scale - cv.log_scale);
        d.method = BetaMethod::newton;
      }
    } catch (const std::exception& e) {
      d.status = DatumStatus::failed;
      d.message = e.what();
    }
  }
  return data;
}

}  // namespace spectral4
