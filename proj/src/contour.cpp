#include "spectral4/contour.hpp"

#include <cmath>
#include <vector>

#include "spectral4/errors.hpp"

namespace spectral4 {

namespace {

class Walker {
 public:
  Walker(const ContourFunction& f, const std::function<Complex(double)>& path, const WindingOptions& opts)
      : f_(f), path_(path), opts_(opts) {}

  ContourSample sample(double t) {
    ContourSample s = f_(path_(t));
    if (!(s.relative >= opts_.min_relative) || s.value == Complex{})
      throw ContourTooClose("contour passes within the exclusion distance of a zero");
    return s;
  }

  // Accumulated change of argument from t0 to t1.
  double arc(double t0, const ContourSample& s0, double t1, const ContourSample& s1, int depth) {
    const double step = std::arg(s1.value / s0.value);
    if (std::abs(step) <= opts_.max_arg_step) return step;
    if (depth >= opts_.max_depth) throw ContourTooClose("argument refinement did not settle on the contour");
    const double tm = 0.5 * (t0 + t1);
    const ContourSample sm = sample(tm);
    return arc(t0, s0, tm, sm, depth + 1) + arc(tm, sm, t1, s1, depth + 1);
  }

 private:
  const ContourFunction& f_;
  const std::function<Complex(double)>& path_;
  const WindingOptions& opts_;
};

}  // namespace

int winding_number(const ContourFunction& f, const std::function<Complex(double)>& path, const WindingOptions& opts) {
  if (opts.initial_samples < 4) throw InputError("winding_number: need at least 4 initial samples");
  Walker walker(f, path, opts);
  const int m = opts.initial_samples;
  std::vector<ContourSample> samples;
  samples.reserve(m);
  for (int i = 0; i < m; ++i) samples.push_back(walker.sample(static_cast<double>(i) / m));

  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    const double t0 = static_cast<double>(i) / m;
    const double t1 = static_cast<double>(i + 1) / m;
    total += walker.arc(t0, samples[i], t1, samples[j], 0);
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.1) throw ContourTooClose("winding number is not close to an integer");
  return static_cast<int>(rounded);
}

int winding_number_circle(const ContourFunction& f, Complex center, double radius, const WindingOptions& opts) {
  if (!(radius > 0.0)) throw InputError("contour radius must be positive");
  return winding_number(
      f, [&](double t) { return center + std::polar(radius, 2.0 * kPi * t); }, opts);
}

int winding_number_rectangle(const ContourFunction& f, Complex lo, Complex hi, const WindingOptions& opts) {
  if (!(hi.real() > lo.real() && hi.imag() > lo.imag())) throw InputError("rectangle must have positive extent");
  const Complex c1 = lo, c2{hi.real(), lo.imag()}, c3 = hi, c4{lo.real(), hi.imag()};
  const auto path = [&](double t) {
    const double s = 4.0 * t;
    if (s < 1.0) return c1 + s * (c2 - c1);
    if (s < 2.0) return c2 + (s - 1.0) * (c3 - c2);
    if (s < 3.0) return c3 + (s - 2.0) * (c4 - c3);
    return c4 + (s - 3.0) * (c1 - c4);
  };
  return winding_number(f, path, opts);
}

}  // namespace spectral4
