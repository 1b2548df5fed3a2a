#include "asymvol/linalg.hpp"

#include <cstdlib>
#include <numeric>

#include "asymvol/error.hpp"

namespace asymvol {

RatMatrix identity_matrix(std::size_t n) {
  RatMatrix m(n, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix t(m[0].size(), RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

RatVec mat_vec(const RatMatrix& m, const RatVec& v) {
  RatVec out(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += Rat(static_cast<long>(a[i])) * b[i];
  }
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const Rat& s, const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t columns, RatVec* rhs = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    if (rhs) std::swap((*rhs)[sel], (*rhs)[row]);
    Rat inv = 1 / m[row][col];
    for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] *= inv;
    if (rhs) (*rhs)[row] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t j = col; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
      if (rhs) (*rhs)[r] -= f * (*rhs)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RatMatrix m) {
  if (m.empty()) return 0;
  return row_reduce(m, m[0].size()).size();
}

Rat determinant(RatMatrix m) {
  std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

std::optional<RatVec> solve(RatMatrix m, RatVec rhs) {
  std::size_t n = m.size();
  if (n == 0) return RatVec{};
  auto pivots = row_reduce(m, n, &rhs);
  if (pivots.size() != n) return std::nullopt;
  return rhs;
}

std::optional<RatVec> solve_any(RatMatrix m, RatVec rhs) {
  if (m.empty()) return RatVec{};
  std::size_t columns = m[0].size();
  auto pivots = row_reduce(m, columns, &rhs);
  for (std::size_t r = pivots.size(); r < m.size(); ++r) {
    if (rhs[r] != 0) return std::nullopt;
  }
  RatVec x(columns, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs[r];
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  std::size_t n = m.size();
  RatMatrix aug(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = row_reduce(aug, n);
  if (pivots.size() != n) return std::nullopt;
  RatMatrix out(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  }
  return out;
}

std::vector<RatVec> nullspace(RatMatrix m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  if (!m.empty()) pivots = row_reduce(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(columns, Rat(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> independent_rows(const RatMatrix& rows) {
  std::vector<std::size_t> chosen;
  RatMatrix acc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    acc.push_back(rows[i]);
    if (rank(acc) == acc.size()) {
      chosen.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

Inertia inertia(RatMatrix a) {
  std::size_t n = a.size();
  Inertia out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Prefer a nonzero diagonal pivot.
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && a[i][i] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      // All remaining diagonal entries vanish; look for an off-diagonal entry
      // and mix rows i, j to create a nonzero diagonal.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[j] && j != i && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == n) break;  // remaining block is zero
      // Replace basis vector e_i by e_i + e_j: row/col i += row/col j.
      for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      piv = pi;
    }
    done[piv] = true;
    const Rat p = a[piv][piv];
    if (p > 0) ++out.positive; else ++out.negative;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][piv] == 0) continue;
      Rat f = a[i][piv] / p;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[piv][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][piv];
    }
  }
  out.zero = static_cast<int>(n) - out.positive - out.negative;
  return out;
}

bool negative_definite(const RatMatrix& s) {
  std::size_t n = s.size();
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix minor(k, RatVec(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = s[i][j];
    }
    int expected = (k % 2 == 1) ? -1 : 1;
    if (sgn(determinant(minor)) != expected) return false;
  }
  return true;
}

long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

IntVec primitive_integer(const RatVec& v) {
  Int lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> ints;
  Int g = 0;
  for (const auto& x : v) {
    Int val = x.get_num() * (lcm / x.get_den());
    ints.push_back(val);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
  }
  IntVec out(v.size(), 0);
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int q = ints[i] / g;
    if (!q.fits_slong_p()) throw Error(ErrorKind::InvalidScalar, "integer vector entry overflow");
    out[i] = q.get_si();
  }
  return out;
}

}  // namespace asymvol
