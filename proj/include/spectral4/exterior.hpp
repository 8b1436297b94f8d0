#pragma once

#include <array>
#include <vector>

#include "spectral4/types.hpp"

namespace spectral4 {

/// The order-th exterior power of C^4, with basis e_I for the increasing
/// index sets I of {0,1,2,3} in lexicographic order.
///
/// A k-vector v_1 ^ ... ^ v_k has coordinates equal to the k x k minors of the
/// 4 x k matrix [v_1 ... v_k] taken on rows I. If every v_j solves v' = A v,
/// the minors solve M' = A^(k) M with A^(k) the additive compound of A.
class ExteriorPower {
 public:
  explicit ExteriorPower(int order);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return static_cast<int>(subsets_.size()); }

  const std::vector<int>& subset(int index) const { return subsets_[index]; }
  /// Index of an increasing subset, or -1.
  int index_of(const std::vector<int>& subset) const;
  /// Sum of the row indices in subset `index`; used for rho-balancing.
  int degree(int index) const { return degrees_[index]; }

  /// Additive compound A^(k) (dim x dim).
  void compound(const Matrix4c& a, MatrixXc& out) const;
  MatrixXc compound(const Matrix4c& a) const;

  /// Coordinates of the wedge product of the columns of `cols` (4 x order).
  VectorXc wedge(const MatrixXc& cols) const;

  /// Coordinates of e_{c_1} ^ ... ^ e_{c_k} for increasing column indices.
  VectorXc basis(const std::vector<int>& cols) const;

 private:
  struct Term {
    int target;
    int row;
    int col;
    int source;
    double sign;
  };
  int order_;
  std::vector<std::vector<int>> subsets_;
  std::vector<int> degrees_;
  std::vector<Term> terms_;
};

}  // namespace spectral4
