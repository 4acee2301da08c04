#pragma once

#include <optional>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

/// Dense exact matrix over the rationals. Desk-scale Gaussian elimination;
/// tolerance is identically zero everywhere.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<std::vector<Rat>> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(r, std::vector<Rat>(c, Rat(0))) {}
  Rat& at(int r, int c) { return a[r][c]; }
  const Rat& at(int r, int c) const { return a[r][c]; }
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m);

int rank(Mat m);

/// Basis of the right kernel {x : M x = 0}.
std::vector<std::vector<Rat>> kernel_basis(const Mat& m);

/// One solution of M x = b, if consistent.
std::optional<std::vector<Rat>> solve(const Mat& m, const std::vector<Rat>& b);

/// Repeated coordinate queries against a fixed spanning family: holds the
/// RREF of the row matrix of the given vectors together with the row
/// operations, so coords() runs in O(rank * dim).
class SubspaceCoords {
 public:
  /// `vectors` must be linearly independent rows (throws otherwise).
  SubspaceCoords(std::vector<std::vector<Rat>> vectors, int dim);

  int dim() const { return dim_; }
  int count() const { return static_cast<int>(orig_.size()); }

  /// Coefficients c with sum c_i * vectors[i] = v, or nullopt if v is not in
  /// the span.
  std::optional<std::vector<Rat>> coords(const std::vector<Rat>& v) const;

  bool contains(const std::vector<Rat>& v) const { return coords(v).has_value(); }

 private:
  int dim_;
  std::vector<std::vector<Rat>> orig_;
  std::vector<std::vector<Rat>> rrows_;   // RREF rows
  std::vector<std::vector<Rat>> trans_;   // rrows_[i] = sum trans_[i][j] orig_[j]
  std::vector<int> pivots_;
};

}  // namespace linfty
