#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpa/params.hpp"

namespace dpa {

/// Limits xi_kl of the coefficient ratios b_{k,l,n}/b_{i,j,n} for one target
/// pair (i,j), on 0 <= k <= i, 0 <= l <= j. Out-of-box lookups return 0.
///
/// The (0,0) entry is 0 by convention (the coefficient multiplies
/// N_n(0,0) == 0, so its value never matters downstream); the raw recursion
/// limit, which is what the b ratio actually converges to, is kept in raw00.
struct XiTable {
  int ti = 0;
  int tj = 0;
  std::vector<double> values;
  double raw00 = 0.0;

  double at(int k, int l) const {
    if (k < 0 || l < 0 || k > ti || l > tj) return 0.0;
    return values[std::size_t(k) * (tj + 1) + l];
  }
};

/// Boundary-row limit (cells (k, j) of target (i, j)):
/// (-1)^{i-k} prod_{d=k}^{i-1} (lambda+d)/(i-d). Equals 1 at k == i.
double xi_row_limit(const ModelParams& params, int i, int k);

/// Boundary-column limit (cells (i, l)), the mu-side analog of
/// xi_row_limit. Equals 1 at l == j.
double xi_col_limit(const ModelParams& params, int j, int l);

/// Full xi table for target (i, j): boundary row/column from the closed
/// forms, interior from
///   xi_kl = -[c1 (k+lambda) xi_{k+1,l} + c2 (l+mu) xi_{k,l+1}]
///           / (delta_ij - delta_kl),
/// filled in decreasing (k, l); the denominator c1(i-k)+c2(j-l) is positive
/// on the whole box.
XiTable xi_table(const ModelParams& params, int i, int j);

/// Unit-lower-triangular matrix of xi values over a coordinate list: row w,
/// column c holds xi_c^{(w)}. Row-major, coords ordered as given
/// (lexicographic order from IndexWindow gives the triangular shape).
struct XiMatrix {
  std::vector<DegreePair> coords;
  std::vector<double> values;

  std::size_t dim() const noexcept { return coords.size(); }
  double at(std::size_t r, std::size_t c) const {
    return values[r * coords.size() + c];
  }
  double det() const;  // product of diagonal entries; 1 by construction
};

XiMatrix xi_matrix(const ModelParams& params,
                   std::span<const DegreePair> coords);

/// Finite-n martingale coefficients b_{k,l,n} for one target (i,j),
/// advanced forward in n by the defining recursions (solved for the n+1
/// values). Starting index n0 = floor(delta_ij) + 1 clears every singular
/// factor (1 - delta_kl/n); delta_11 == 1 makes the n=1 start in the
/// literal product form unusable for any target containing cell (1,1).
class BTable {
 public:
  /// All-ones start at n0(i,j).
  BTable(const ModelParams& params, int i, int j);
  /// Custom start vector (size (i+1)*(j+1), row-major) at n0(i,j).
  BTable(const ModelParams& params, int i, int j, std::vector<double> start);

  static std::uint64_t start_index(const ModelParams& params, int i, int j);

  void advance();  // n -> n+1
  void advance_to(std::uint64_t n_target);

  std::uint64_t n() const noexcept { return n_; }
  int ti() const noexcept { return ti_; }
  int tj() const noexcept { return tj_; }
  double at(int k, int l) const {
    if (k < 0 || l < 0 || k > ti_ || l > tj_) return 0.0;
    return b_[std::size_t(k) * (tj_ + 1) + l];
  }
  /// b_{k,l,n} / b_{i,j,n}.
  double ratio(int k, int l) const { return at(k, l) / at(ti_, tj_); }

 private:
  ModelParams params_;
  int ti_, tj_;
  std::uint64_t n_;
  std::vector<double> b_, scratch_;
};

}  // namespace dpa
