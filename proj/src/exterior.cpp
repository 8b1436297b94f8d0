#include "spectral4/exterior.hpp"

#include <algorithm>

#include "spectral4/errors.hpp"

namespace spectral4 {

namespace {

// Sorts in place and returns the sign of the sorting permutation.
double sort_with_sign(std::vector<int>& v) {
  double sign = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
  return sign;
}

}  // namespace

ExteriorPower::ExteriorPower(int order) : order_(order) {
  if (order < 1 || order > 4) throw InputError("exterior power order must be in 1..4");
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) != order) continue;
    std::vector<int> s;
    for (int b = 0; b < 4; ++b)
      if (mask & (1 << b)) s.push_back(b);
    subsets_.push_back(s);
  }
  std::sort(subsets_.begin(), subsets_.end());
  for (const auto& s : subsets_) {
    int d = 0;
    for (int r : s) d += r;
    degrees_.push_back(d);
  }

  for (int target = 0; target < dim(); ++target) {
    const auto& rows = subsets_[target];
    for (int p = 0; p < order_; ++p) {
      for (int j = 0; j < 4; ++j) {
        std::vector<int> replaced = rows;
        replaced[p] = j;
        std::vector<int> sorted = replaced;
        const double sign = sort_with_sign(sorted);
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        terms_.push_back({target, rows[p], j, index_of(sorted), sign});
      }
    }
  }
}

int ExteriorPower::index_of(const std::vector<int>& subset) const {
  auto it = std::lower_bound(subsets_.begin(), subsets_.end(), subset);
  if (it == subsets_.end() || *it != subset) return -1;
  return static_cast<int>(it - subsets_.begin());
}

void ExteriorPower::compound(const Matrix4c& a, MatrixXc& out) const {
  out.setZero(dim(), dim());
  for (const Term& t : terms_) out(t.target, t.source) += t.sign * a(t.row, t.col);
}

MatrixXc ExteriorPower::compound(const Matrix4c& a) const {
  MatrixXc out;
  compound(a, out);
  return out;
}

VectorXc ExteriorPower::wedge(const MatrixXc& cols) const {
  if (cols.rows() != 4 || cols.cols() != order_) throw InputError("wedge: expected a 4 x order matrix");
  VectorXc out(dim());
  for (int idx = 0; idx < dim(); ++idx) {
    MatrixXc minor(order_, order_);
    for (int r = 0; r < order_; ++r) minor.row(r) = cols.row(subsets_[idx][r]);
    out(idx) = minor.determinant();
  }
  return out;
}

VectorXc ExteriorPower::basis(const std::vector<int>& cols) const {
  const int idx = index_of(cols);
  if (idx < 0) throw InputError("basis: column set must be increasing with the exterior order's size");
  VectorXc out = VectorXc::Zero(dim());
  out(idx) = 1.0;
  return out;
}

}  // namespace spectral4
