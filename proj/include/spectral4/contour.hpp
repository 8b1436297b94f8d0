#pragma once

#include <functional>

#include "spectral4/types.hpp"

namespace spectral4 {

/// A sample of an analytic function on a contour. `relative` measures how
/// close the value is to zero against the function's local magnitude; the
/// winding count refuses to pass closer than WindingOptions::min_relative.
struct ContourSample {
  Complex value;
  double relative = 1.0;
};

using ContourFunction = std::function<ContourSample(Complex)>;

struct WindingOptions {
  int initial_samples = 64;
  int max_depth = 30;
  double min_relative = 1e-6;
  double max_arg_step = kPi / 4.0;
};

/// Winding number of f around 0 along the closed curve path(t), t in [0,1].
/// Arcs are bisected until consecutive samples differ in argument by less than
/// max_arg_step. Throws ContourTooClose if a sample is too close to a zero or
/// the refinement does not settle.
int winding_number(const ContourFunction& f, const std::function<Complex(double)>& path,
                   const WindingOptions& opts = {});

int winding_number_circle(const ContourFunction& f, Complex center, double radius, const WindingOptions& opts = {});

/// Counter-clockwise boundary of the axis-aligned rectangle [lo, hi].
int winding_number_rectangle(const ContourFunction& f, Complex lo, Complex hi, const WindingOptions& opts = {});

}  // namespace spectral4
