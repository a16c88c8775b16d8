#include "toriclg/lp.hpp"

#include "toriclg/errors.hpp"

namespace toriclg {

std::optional<std::vector<Rational>> find_nonnegative_solution(
    const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
    std::size_t variables) {
  const std::size_t m = a.size();
  if (b.size() != m) throw InternalError("find_nonnegative_solution: shape mismatch");
  const std::size_t n = variables;
  const std::size_t width = n + m + 1;  // variables, artificials, rhs
  const std::size_t rhs = n + m;

  // Rows 0..m-1 are constraints; row m is the phase-one objective
  // (maximize minus the sum of artificials).
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw InternalError("find_nonnegative_solution: ragged row");
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -a[i][j] : a[i][j];
    t[i][n + i] = 1;
    t[i][rhs] = flip ? -b[i] : b[i];
    basis[i] = n + i;
    for (std::size_t j = 0; j < n; ++j) t[m][j] -= t[i][j];
    t[m][rhs] -= t[i][rhs];
  }

  while (true) {
    std::size_t entering = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t[m][j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering == n) break;

    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][entering] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][entering];
      if (leaving == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    // The phase-one objective is bounded below by zero.
    if (leaving == m) throw InternalError("phase-one simplex reported unbounded");

    const Rational pivot = t[leaving][entering];
    for (auto& x : t[leaving]) x /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leaving || t[i][entering] == 0) continue;
      const Rational factor = t[i][entering];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leaving][j] != 0) t[i][j] -= factor * t[leaving][j];
    }
    basis[leaving] = entering;
  }

  if (t[m][rhs] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][rhs];
  return x;
}

std::optional<std::vector<Rational>> find_feasible_point(
    const std::vector<std::vector<Rational>>& a_ge, const std::vector<Rational>& b_ge,
    const std::vector<std::vector<Rational>>& a_eq, const std::vector<Rational>& b_eq,
    std::size_t variables) {
  // x = u - v with u, v >= 0; one surplus s_i >= 0 per inequality row.
  const std::size_t n = variables;
  const std::size_t slack = a_ge.size();
  const std::size_t total = 2 * n + slack;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (std::size_t i = 0; i < a_ge.size(); ++i) {
    std::vector<Rational> row(total);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = a_ge[i][j];
      row[n + j] = -a_ge[i][j];
    }
    row[2 * n + i] = -1;
    a.push_back(std::move(row));
    b.push_back(b_ge[i]);
  }
  for (std::size_t i = 0; i < a_eq.size(); ++i) {
    std::vector<Rational> row(total);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = a_eq[i][j];
      row[n + j] = -a_eq[i][j];
    }
    a.push_back(std::move(row));
    b.push_back(b_eq[i]);
  }
  auto solution = find_nonnegative_solution(a, b, total);
  if (!solution) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (*solution)[j] - (*solution)[n + j];
  return x;
}

}  // namespace toriclg
