#include "linfty/linalg.hpp"

namespace linfty {

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.a[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m.a[p], m.a[r]);
    Rat inv = 1 / m.a[r][c];
    for (int j = c; j < m.cols; ++j) m.a[r][j] *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.a[i][c] == 0) continue;
      Rat f = m.a[i][c];
      for (int j = c; j < m.cols; ++j) m.a[i][j] -= f * m.a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rat>> kernel_basis(const Mat& m) {
  Mat w = m;
  std::vector<int> pivots = rref(w);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w.a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> solve(const Mat& m, const std::vector<Rat>& b) {
  Mat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.a[i][j] = m.a[i][j];
    aug.a[i][m.cols] = b[i];
  }
  std::vector<int> pivots = rref(aug);
  for (int c : pivots)
    if (c == m.cols) return std::nullopt;  // inconsistent
  std::vector<Rat> x(m.cols, Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.a[i][m.cols];
  return x;
}

SubspaceCoords::SubspaceCoords(std::vector<std::vector<Rat>> vectors, int dim)
    : dim_(dim), orig_(std::move(vectors)) {
  int n = static_cast<int>(orig_.size());
  rrows_ = orig_;
  trans_.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) trans_[i][i] = 1;
  int r = 0;
  for (int c = 0; c < dim_ && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (rrows_[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rrows_[p], rrows_[r]);
    std::swap(trans_[p], trans_[r]);
    Rat inv = 1 / rrows_[r][c];
    for (auto& x : rrows_[r]) x *= inv;
    for (auto& x : trans_[r]) x *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || rrows_[i][c] == 0) continue;
      Rat f = rrows_[i][c];
      for (int j = 0; j < dim_; ++j) rrows_[i][j] -= f * rrows_[r][j];
      for (int j = 0; j < n; ++j) trans_[i][j] -= f * trans_[r][j];
    }
    pivots_.push_back(c);
    ++r;
  }
  if (r != n) throw error("SubspaceCoords: vectors are linearly dependent");
}

std::optional<std::vector<Rat>> SubspaceCoords::coords(
    const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw error("SubspaceCoords::coords: dimension mismatch");
  std::vector<Rat> residual = v;
  int n = count();
  std::vector<Rat> c(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    Rat f = residual[pivots_[i]];
    if (f == 0) continue;
    for (int j = 0; j < dim_; ++j) residual[j] -= f * rrows_[i][j];
    for (int j = 0; j < n; ++j) c[j] += f * trans_[i][j];
  }
  for (const Rat& x : residual)
    if (x != 0) return std::nullopt;
  return c;
}

}  // namespace linfty
