#include <doctest.h>

#include <random>

#include "spectral4/errors.hpp"
#include "spectral4/exterior.hpp"

using namespace spectral4;

namespace {

Matrix4c random_matrix(std::mt19937& gen) {
  std::normal_distribution<double> d;
  Matrix4c a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(d(gen), d(gen));
  return a;
}

}  // namespace

TEST_CASE("dimensions and lexicographic subsets") {
  CHECK(ExteriorPower(1).dim() == 4);
  CHECK(ExteriorPower(2).dim() == 6);
  CHECK(ExteriorPower(3).dim() == 4);
  CHECK(ExteriorPower(4).dim() == 1);
  const ExteriorPower e2(2);
  CHECK(e2.subset(0) == std::vector<int>{0, 1});
  CHECK(e2.subset(5) == std::vector<int>{2, 3});
  CHECK(e2.index_of({1, 3}) == 4);
  CHECK(e2.index_of({3, 1}) == -1);
  CHECK(e2.degree(5) == 5);
  CHECK_THROWS_AS(ExteriorPower(0), InputError);
  CHECK_THROWS_AS(ExteriorPower(5), InputError);
}

TEST_CASE("wedge coordinates are minors") {
  std::mt19937 gen(7);
  const Matrix4c a = random_matrix(gen);
  const ExteriorPower e2(2);
  const VectorXc w = e2.wedge(a.leftCols(2));
  for (int i = 0; i < e2.dim(); ++i) {
    const auto& s = e2.subset(i);
    const Complex minor = a(s[0], 0) * a(s[1], 1) - a(s[1], 0) * a(s[0], 1);
    CHECK(std::abs(w(i) - minor) < 1e-14);
  }
  const ExteriorPower e4(4);
  CHECK(std::abs(e4.wedge(a)(0) - a.determinant()) < 1e-12);
}

TEST_CASE("compound matrix differentiates the wedge") {
  // d/dt wedge(exp(tA) V) at t = 0 equals A^(k) wedge(V).
  std::mt19937 gen(11);
  const Matrix4c a = random_matrix(gen);
  const Matrix4c v = random_matrix(gen);
  for (int k = 1; k <= 4; ++k) {
    const ExteriorPower ext(k);
    const double h = 1e-5;
    const Matrix4c plus = (Matrix4c::Identity() + h * a + 0.5 * h * h * a * a) * v;
    const Matrix4c minus = (Matrix4c::Identity() - h * a + 0.5 * h * h * a * a) * v;
    const VectorXc fd = (ext.wedge(plus.leftCols(k)) - ext.wedge(minus.leftCols(k))) / (2.0 * h);
    const VectorXc exact = ext.compound(a) * ext.wedge(v.leftCols(k));
    CHECK((fd - exact).norm() <= 1e-7 * exact.norm());
  }
  // The top compound is the trace.
  CHECK(std::abs(ExteriorPower(4).compound(a)(0, 0) - a.trace()) < 1e-13);
}

TEST_CASE("basis vectors") {
  const ExteriorPower e3(3);
  const VectorXc b = e3.basis({1, 2, 3});
  CHECK(b(3) == Complex(1.0));
  CHECK(b.norm() == 1.0);
  CHECK_THROWS_AS(e3.basis({1, 2}), InputError);
}
