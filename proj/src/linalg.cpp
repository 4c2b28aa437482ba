#include "qes/linalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qes {

QMatrix zero_matrix(std::size_t rows, std::size_t cols) { return QMatrix(rows, QVector(cols, 0)); }

QMatrix identity_matrix(std::size_t n) {
  QMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  QMatrix c = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

QVector mat_vec(const QMatrix& a, const QVector& x) {
  QVector y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (a[i][j] != 0) y[i] += a[i][j] * x[j];
    }
  }
  return y;
}

Rational determinant(const QMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // clear denominators row by row, then Bareiss over Z
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    Integer l = 1;
    for (const auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j] * l).get_num();
  }
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1] * sign);
  return det / scale;
}

RowEchelon reduced_row_echelon(QMatrix m) {
  RowEchelon out;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rref = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return reduced_row_echelon(m).pivots.size(); }

std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols) {
  const RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> pivot(cols, false);
  for (auto c : e.pivots) pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot[f]) continue;
    QVector v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve(const QMatrix& a, const QVector& b, std::size_t cols) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: row count mismatch");
  QMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    aug[i].resize(cols, 0);
    aug[i].push_back(b[i]);
  }
  const RowEchelon e = reduced_row_echelon(aug);
  LinearSolution s;
  s.consistent = e.pivots.empty() || e.pivots.back() != cols;
  s.rank = s.consistent ? e.pivots.size() : e.pivots.size() - 1;
  s.kernel = nullspace(a, cols);
  if (!s.consistent) return s;
  s.particular.assign(cols, 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.rref[r][cols];
  return s;
}

UPoly characteristic_polynomial(const QMatrix& m0) {
  const std::size_t n = m0.size();
  QMatrix h = m0;
  // similarity reduction to upper Hessenberg form
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    std::size_t p = k + 1;
    while (p < n && h[p][k] == 0) ++p;
    if (p == n) continue;
    if (p != k + 1) {
      std::swap(h[p], h[k + 1]);
      for (auto& row : h) std::swap(row[p], row[k + 1]);
    }
    for (std::size_t i = k + 2; i < n; ++i) {
      if (h[i][k] == 0) continue;
      const Rational f = h[i][k] / h[k + 1][k];
      for (std::size_t j = 0; j < n; ++j) h[i][j] -= f * h[k + 1][j];
      for (std::size_t j = 0; j < n; ++j) h[j][k + 1] += f * h[j][i];
    }
  }
  // p_k = det(x I - H_k) by the Hessenberg recurrence
  std::vector<UPoly> p(n + 1);
  p[0] = UPoly::constant(1);
  const UPoly x({0, 1});
  for (std::size_t k = 1; k <= n; ++k) {
    UPoly pk = (x - UPoly::constant(h[k - 1][k - 1])) * p[k - 1];
    Rational prod = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod *= h[i][i - 1];
      if (prod == 0) break;
      pk = pk - p[i - 1] * (prod * h[i - 1][k - 1]);
    }
    p[k] = pk;
  }
  return p[n];
}

std::vector<std::vector<std::size_t>> strongly_connected_blocks(const QMatrix& m) {
  const std::size_t n = m.size();
  // Tarjan; edge j -> i when m[i][j] != 0
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m[i][j] != 0) adj[j].push_back(i);
    }
  }
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  long counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  // Tarjan emits sinks first
  std::reverse(comps.begin(), comps.end());
  return comps;
}

QMatrix principal_submatrix(const QMatrix& m, const std::vector<std::size_t>& idx) {
  QMatrix s = zero_matrix(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) s[a][b] = m[idx[a]][idx[b]];
  }
  return s;
}

}  // namespace qes
