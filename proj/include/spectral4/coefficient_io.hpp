#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "spectral4/coefficients.hpp"

namespace spectral4 {

inline constexpr std::size_t kDefaultGrid = 513;

/// Sampler for a single field preset:
///   "zero", "const:<re>[,<im>]", "linear:<a>,<b>" (a + b x),
///   "step:<x0>,<h>" (h for x >= x0, else 0).
std::function<Complex(double)> field_preset(const std::string& spec);

/// Whole coefficient sets by name:
///   zero   all fields zero
///   smooth tau2 = 1 + x, tau1 = x, r0 = x^2
///   mixed  tau2 = 1 + x, tau1 = 1, r0 = step at 1/2 (a unit point mass in tau0)
///   dirac  tau2 = tau1 = 0, r0 = step at 1/2
CoefficientSet named_preset(const std::string& name, std::size_t grid = kDefaultGrid);
std::vector<std::string> preset_names();

/// Parses a JSON document with fields grid, tau2, tau1, r0. Each field is an
/// array of [re, im] pairs or a field preset string. `grid` may be omitted
/// when at least one field is an array.
CoefficientSet parse_coefficients(const std::string& text);

/// Loads a file if `source` names one, otherwise resolves a preset name.
CoefficientSet load_coefficients(const std::string& source, std::size_t grid = kDefaultGrid);

}  // namespace spectral4
