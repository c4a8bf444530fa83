#include "vb/linsolve.hpp"

namespace vb {

std::optional<std::vector<Rational>> solve(LinearSystem sys) {
  const int m = static_cast<int>(sys.rows.size());
  const int n = sys.cols;
  std::vector<int> pivot_col;  // per eliminated row

  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int r = row; r < m; ++r)
      if (sys.rows[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(sys.rows[p], sys.rows[row]);
    std::swap(sys.rhs[p], sys.rhs[row]);

    const Rational inv = sys.rows[row][col];
    for (int c = col; c < n; ++c) sys.rows[row][c] /= inv;
    sys.rhs[row] /= inv;

    for (int r = 0; r < m; ++r) {
      if (r == row) continue;
      const Rational f = sys.rows[r][col];
      if (f == 0) continue;
      for (int c = col; c < n; ++c) sys.rows[r][c] -= f * sys.rows[row][c];
      sys.rhs[r] -= f * sys.rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }

  // consistency of the zero rows
  for (int r = row; r < m; ++r)
    if (sys.rhs[r] != 0) return std::nullopt;

  std::vector<Rational> x(n, 0);
  for (int r = 0; r < row; ++r) x[pivot_col[r]] = sys.rhs[r];
  return x;
}

}  // namespace vb
