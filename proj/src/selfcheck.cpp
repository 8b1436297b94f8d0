#include "spectral4/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "spectral4/asymptotics.hpp"
#include "spectral4/coefficient_io.hpp"
#include "spectral4/errors.hpp"
#include "spectral4/integrator.hpp"
#include "spectral4/regularization.hpp"
#include "spectral4/spectral.hpp"

namespace spectral4 {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Root of cos(r) cosh(r) = 1 in [a, b] by bisection.
double beam_root(double a, double b) {
  const auto f = [](double r) { return std::cos(r) * std::cosh(r) - 1.0; };
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome localization() {
  const auto t0 = std::chrono::steady_clock::now();
  const Primitives p = build_primitives(CoefficientSet::zero(kDefaultGrid));
  const auto data = find_eigenvalues(p, ProblemKind(3), 20);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0.0;
  bool ok = data.size() == 20;
  for (const auto& d : data) {
    const Complex target =
        std::polar(1.0, kPi / 4.0) * (std::sqrt(2.0) * kPi * d.n + kPi / (2.0 * std::sqrt(2.0)));
    worst = std::max(worst, std::abs(d.rho - target));
    ok = ok && d.status == DatumStatus::ok;
  }
  return {ok && worst < 0.1 && secs < 60.0,
          "max |rho_n - rho_n^0| = " + fmt("%.3e", worst) + " over n=1..20, " + fmt("%.1f", secs) + " s"};
}

Outcome exact_values() {
  const Primitives p = build_primitives(CoefficientSet::zero(kDefaultGrid));
  const ProblemKind k(3);
  const double e0 = std::abs(char_fn(p, k, 0.0, 1e-12).unscaled() - 1.0 / 6.0);
  const double closed = (std::sinh(2.0) - std::sin(2.0)) / 16.0;
  const double e2 = std::abs(char_fn(p, k, 16.0, 1e-12).unscaled() - closed);
  return {e0 <= 1e-9 && e2 <= 1e-8,
          "|Delta3(0) - 1/6| = " + fmt("%.2e", e0) + ", |Delta3(16) - (sinh2-sin2)/16| = " + fmt("%.2e", e2)};
}

Outcome clamped_beam() {
  const Primitives p = build_primitives(CoefficientSet::zero(kDefaultGrid));
  const auto data = find_eigenvalues(p, ProblemKind(2), 1);
  const double oracle = beam_root(4.5, 5.0);
  const double rel = std::abs(data.at(0).rho - oracle) / oracle;
  return {data.at(0).status == DatumStatus::ok && rel <= 1e-8,
          "rho_1 = " + fmt("%.12f", data.at(0).rho.real()) + ", bisection " + fmt("%.12f", oracle) +
              ", relative error " + fmt("%.2e", rel)};
}

Outcome liouville() {
  double worst = 0.0;
  Complex worst_lambda;
  int bad = 0, total = 0;
  for (const char* name : {"zero", "smooth", "mixed"}) {
    const Primitives p = build_primitives(named_preset(name));
    for (int j = 0; j < 50; ++j) {
      const double mag = std::pow(10.0, 6.0 * j / 49.0);
      const double turn = std::fmod(0.6180339887 * j, 1.0);
      const Complex lambda = std::polar(mag, 2.0 * kPi * turn - kPi);
      const double defect = std::abs(integrate_fundamental(p, lambda).liouville_defect());
      ++total;
      if (defect > 1e-7) ++bad;
      if (defect > worst) {
        worst = defect;
        worst_lambda = lambda;
      }
    }
  }
  return {bad == 0, std::to_string(bad) + "/" + std::to_string(total) + " integrations exceed 1e-7; worst " +
                        fmt("%.3e", worst) + " at |lambda| = " + fmt("%.3g", std::abs(worst_lambda))};
}

double regularization_error(std::size_t grid) {
  const CoefficientSet cs = named_preset("smooth", grid);
  const Primitives p = build_primitives(cs);
  SampledFunctions y;
  for (auto& f : y) f.resize(grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = p.node(i);
    const double s = std::sin(kPi * x), c = std::cos(kPi * x);
    y[0][i] = s;
    y[1][i] = kPi * c;
    y[2][i] = -kPi * kPi * s;
    y[3][i] = -kPi * kPi * kPi * c;
    y[4][i] = kPi * kPi * kPi * kPi * s;
  }
  const SampledFunctions chain = quasi_chain(p, y);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = p.node(i);
    // smooth preset: tau2 = 1 + x, tau1 = x, tau0 = r0' = 2x
    const Complex tau2 = 1.0 + x, dtau2 = 1.0, tau1 = x, dtau1 = 1.0, tau0 = 2.0 * x;
    const Complex classical = y[4][i] + tau2 * y[2][i] + (2.0 * tau1 + dtau2) * y[1][i] + (dtau1 + tau0) * y[0][i];
    worst = std::max(worst, std::abs(chain[4][i] - classical));
  }
  return worst;
}

Outcome regularization_identity() {
  const double fine = regularization_error(10000);
  const double coarse = regularization_error(5000);
  const double order = std::log2(coarse / fine);
  return {fine <= 1e-6 && order > 1.8,
          "max |y^[4] - l(y)| = " + fmt("%.3e", fine) + " at N=10^4, observed order " + fmt("%.2f", order)};
}

Outcome theorem_42_remainder() {
  const Primitives p = build_primitives(named_preset("mixed"));
  const AsymptoticConstants ac = make_constants(p);
  bool ok = true;
  std::ostringstream detail;
  for (int k = 1; k <= 3; ++k) {
    SpectrumOptions opts;
    const auto data = find_eigenvalues(p, ProblemKind(k), 40, opts);
    std::vector<Complex> num, pred;
    for (int n = 5; n <= 40; ++n) {
      num.push_back(data.at(n - 1).lambda);
      pred.push_back(predict_lambda(k, n, ac));
    }
    const RemainderReport r = remainder_analysis(num, pred, 1, 5);
    double jitter = 0.0;
    for (int n = 20; n < 40; ++n) {
      const double a = std::abs(r.kappa[n - 5]), b = std::abs(r.kappa[n - 4]);
      if (a > 0.0) jitter = std::max(jitter, b / a);
    }
    const bool monotone = jitter <= 1.2;
    ok = ok && r.l2_consistent && monotone;
    detail << (k > 1 ? "; " : "") << "k=" << k << " tail/head " << fmt("%.4f", r.second_half / r.first_half)
           << (r.l2_consistent ? " ok" : " FAIL") << ", max e_{n+1}/e_n " << fmt("%.3f", jitter)
           << (monotone ? " ok" : " FAIL");
  }
  return {ok, detail.str()};
}

Outcome theorem_51_remainder() {
  const Primitives p = build_primitives(CoefficientSet::zero(kDefaultGrid));
  double worst = 0.0, worst_residue = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const ProblemKind kind(k);
    auto data = weight_numbers(p, kind, find_eigenvalues(p, kind, 30));
    for (const auto& d : data)
      if (d.n >= 5) worst = std::max(worst, std::abs(*d.beta / (-4.0 * d.lambda) - 1.0) * d.n * d.n);
    const Complex direct = weight_direct(p, kind, data[0].lambda);
    const Complex residue = weight_residue(p, kind, data[0].lambda, 0.5 * std::abs(data[1].lambda - data[0].lambda));
    worst_residue = std::max(worst_residue, std::abs(direct - residue) / std::abs(direct));
  }
  return {worst <= 5.0 && worst_residue <= 1e-7,
          "max |beta/(-4 lambda) - 1| n^2 = " + fmt("%.3e", worst) + " over n=5..30; direct vs residue at n=1 " +
              fmt("%.2e", worst_residue)};
}

Outcome adjoint_symmetry() {
  double worst = 0.0;
  for (const char* name : {"smooth", "mixed"}) {
    const CoefficientSet cs = named_preset(name);
    const auto l1 = find_eigenvalues(build_primitives(cs), ProblemKind(1), 15);
    const auto l3 = find_eigenvalues(build_primitives(adjoint_coefficients(cs)), ProblemKind(3), 15);
    for (int i = 0; i < 15; ++i)
      worst = std::max(worst, std::abs(l1.at(i).lambda - std::conj(l3.at(i).lambda)) / std::abs(l1.at(i).lambda));
  }
  return {worst <= 1e-7, "max relative |lambda_n1 - conj lambda_n3| = " + fmt("%.2e", worst) + " (smooth, mixed)"};
}

Outcome completeness(const std::vector<std::string>& presets) {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& name : presets) {
    const Primitives p = build_primitives(named_preset(name));
    const AsymptoticConstants ac = make_constants(p);
    detail << name << ":";
    for (int k = 1; k <= 3; ++k) {
      const double r = std::sqrt(std::abs(predict_lambda(k, 10, ac)) * std::abs(predict_lambda(k, 11, ac)));
      const int count = count_zeros_retry(p, ProblemKind(k), 0.0, r);
      ok = ok && count == 10;
      detail << " " << count;
    }
    detail << "  ";
  }
  return {ok, detail.str() + "(expected 10 per k)"};
}

struct Entry {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {1, "zero-coefficient L3 localization", localization},
      {2, "zero-coefficient exact values", exact_values},
      {3, "clamped-beam oracle", clamped_beam},
      {4, "Liouville invariant", liouville},
      {5, "regularization identity", regularization_identity},
      {6, "eigenvalue remainder property", theorem_42_remainder},
      {7, "weight-number remainder property", theorem_51_remainder},
      {8, "adjoint symmetry", adjoint_symmetry},
      {9, "completeness", [] { return completeness({"zero", "mixed"}); }},
      {10, "completeness (zero preset)", [] { return completeness({"zero"}); }},
  };
  return entries;
}

}  // namespace

std::vector<int> all_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

std::vector<int> zero_coefficient_criteria() { return {1, 2, 3, 7, 10}; }

CriterionResult run_criterion(int id) {
  const auto& entries = registry();
  const auto it = std::find_if(entries.begin(), entries.end(), [id](const Entry& e) { return e.id == id; });
  if (it == entries.end()) throw InputError("unknown criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id == 10 ? 9 : id;
  r.title = it->title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = it->run();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " + r.detail;
}

}  // namespace spectral4
