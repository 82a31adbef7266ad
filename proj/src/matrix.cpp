#include "bvmin/matrix.hpp"

#include <stdexcept>

namespace bvmin {

Mat mat_zero(int rows, int cols) {
  return Mat(rows, std::vector<Rat>(cols, Rat(0)));
}

Mat mat_id(int n) {
  Mat m = mat_zero(n, n);
  for (int k = 0; k < n; ++k) m[k][k] = 1;
  return m;
}

static void check_same_shape(const Mat& a, const Mat& b) {
  if (a.size() != b.size() || (!a.empty() && a[0].size() != b[0].size()))
    throw std::invalid_argument("matrix shape mismatch");
}

Mat mat_add(const Mat& a, const Mat& b) {
  check_same_shape(a, b);
  Mat r = a;
  for (size_t j = 0; j < r.size(); ++j)
    for (size_t k = 0; k < r[j].size(); ++k) r[j][k] += b[j][k];
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  check_same_shape(a, b);
  Mat r = a;
  for (size_t j = 0; j < r.size(); ++j)
    for (size_t k = 0; k < r[j].size(); ++k) r[j][k] -= b[j][k];
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  size_t inner = a.empty() ? b.size() : a[0].size();
  if (inner != b.size()) throw std::invalid_argument("matrix product shape mismatch");
  size_t cols = b.empty() ? 0 : b[0].size();
  Mat r = mat_zero(int(a.size()), int(cols));
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t i = 0; i < inner; ++i) {
      if (a[j][i] == 0) continue;
      for (size_t k = 0; k < cols; ++k) r[j][k] += a[j][i] * b[i][k];
    }
  return r;
}

Mat mat_transpose(const Mat& a) {
  size_t cols = a.empty() ? 0 : a[0].size();
  Mat r = mat_zero(int(cols), int(a.size()));
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t k = 0; k < cols; ++k) r[k][j] = a[j][k];
  return r;
}

Mat mat_inverse(const Mat& a) {
  int n = int(a.size());
  if (n && int(a[0].size()) != n) throw std::invalid_argument("inverse of a non-square matrix");
  Mat work = a;
  Mat inv = mat_id(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (work[row][col] != 0) { piv = row; break; }
    if (piv < 0) throw std::invalid_argument("singular matrix");
    std::swap(work[piv], work[col]);
    std::swap(inv[piv], inv[col]);
    Rat lead = work[col][col];
    for (int k = 0; k < n; ++k) {
      work[col][k] /= lead;
      inv[col][k] /= lead;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col || work[row][col] == 0) continue;
      Rat f = work[row][col];
      for (int k = 0; k < n; ++k) {
        work[row][k] -= f * work[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

bool mat_is_zero(const Mat& a) {
  for (auto& row : a)
    for (auto& x : row)
      if (x != 0) return false;
  return true;
}

int mat_rank(Mat a) {
  int rows = int(a.size());
  int cols = rows ? int(a[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int row = rank; row < rows; ++row)
      if (a[row][col] != 0) { piv = row; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int row = 0; row < rows; ++row) {
      if (row == rank || a[row][col] == 0) continue;
      Rat f = a[row][col] / a[rank][col];
      for (int k = col; k < cols; ++k) a[row][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<Rat> mat_apply(const Mat& a, const std::vector<Rat>& v) {
  size_t cols = a.empty() ? 0 : a[0].size();
  if (cols != v.size()) throw std::invalid_argument("matrix apply shape mismatch");
  std::vector<Rat> r(a.size(), Rat(0));
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t k = 0; k < cols; ++k)
      if (a[j][k] != 0 && v[k] != 0) r[j] += a[j][k] * v[k];
  return r;
}

}  // namespace bvmin
