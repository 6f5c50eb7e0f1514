#include "mel/zmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mel/util.hpp"

namespace mel {

namespace {
int nrows(const ZMat& a) { return static_cast<int>(a.size()); }
int ncols(const ZMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }
}  // namespace

ZMat zmat_identity(int n) {
  ZMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  int r = nrows(a), k = ncols(a), c = ncols(b);
  require(k == nrows(b), "zmat_mul: shape mismatch");
  ZMat out(r, std::vector<long long>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t) {
      long long v = a[i][t];
      if (v == 0) continue;
      for (int j = 0; j < c; ++j) out[i][j] += v * b[t][j];
    }
  return out;
}

std::vector<long long> zmat_apply(const ZMat& a, const std::vector<long long>& x) {
  int r = nrows(a), c = ncols(a);
  require(static_cast<int>(x.size()) == c, "zmat_apply: length mismatch");
  std::vector<long long> out(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out[i] += a[i][j] * x[j];
  return out;
}

Snf smith_normal_form(ZMat a) {
  int r = nrows(a), c = ncols(a);
  Snf res;
  res.u = zmat_identity(r);
  res.v = zmat_identity(c);

  auto swap_rows = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(res.u[i], res.u[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (int t = 0; t < r; ++t) std::swap(a[t][i], a[t][j]);
    for (int t = 0; t < c; ++t) std::swap(res.v[t][i], res.v[t][j]);
  };
  auto add_row = [&](int dst, int src, long long q) {  // row dst += q * row src
    for (int t = 0; t < c; ++t) a[dst][t] += q * a[src][t];
    for (int t = 0; t < r; ++t) res.u[dst][t] += q * res.u[src][t];
  };
  auto add_col = [&](int dst, int src, long long q) {
    for (int t = 0; t < r; ++t) a[t][dst] += q * a[t][src];
    for (int t = 0; t < c; ++t) res.v[t][dst] += q * res.v[t][src];
  };
  auto negate_row = [&](int i) {
    for (int t = 0; t < c; ++t) a[i][t] = -a[i][t];
    for (int t = 0; t < r; ++t) res.u[i][t] = -res.u[i][t];
  };

  int n = std::min(r, c);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block to (t, t)
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j)
          if (a[i][j] != 0 &&
              (pi < 0 || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;  // trailing block is zero
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      if (a[t][t] < 0) negate_row(t);

      bool clean = true;
      for (int i = t + 1; i < r; ++i)
        if (a[i][t] != 0) {
          add_row(i, t, -(a[i][t] / a[t][t]));
          if (a[i][t] != 0) clean = false;
        }
      for (int j = t + 1; j < c; ++j)
        if (a[t][j] != 0) {
          add_col(j, t, -(a[t][j] / a[t][t]));
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) continue;

      // divisibility: every trailing entry must be divisible by the pivot
      bool divisible = true;
      for (int i = t + 1; i < r && divisible; ++i)
        for (int j = t + 1; j < c && divisible; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_col(t, j, 1);
            divisible = false;
          }
      if (divisible) break;
    }
  }

  res.diag.resize(n);
  for (int i = 0; i < n; ++i) {
    res.diag[i] = a[i][i];
    if (res.diag[i] != 0) ++res.rank;
  }
  return res;
}

std::optional<std::vector<long long>> solve_z(const ZMat& a,
                                              const std::vector<long long>& b) {
  int r = nrows(a), c = ncols(a);
  require(static_cast<int>(b.size()) == r, "solve_z: length mismatch");
  Snf s = smith_normal_form(a);
  auto ub = zmat_apply(s.u, b);
  std::vector<long long> y(c, 0);
  for (int i = 0; i < r; ++i) {
    long long d = i < static_cast<int>(s.diag.size()) ? s.diag[i] : 0;
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  return zmat_apply(s.v, y);
}

long long mod_inverse(long long a, long long m) {
  require(m >= 1, "mod_inverse: modulus must be positive");
  long long r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  require(r0 == 1, "mod_inverse: not invertible");
  return ((s0 % m) + m) % m;
}

std::optional<std::vector<long long>> solve_mod(const ZMat& a,
                                                const std::vector<long long>& b,
                                                long long m) {
  require(m >= 1, "solve_mod: modulus must be positive");
  int r = nrows(a), c = ncols(a);
  require(static_cast<int>(b.size()) == r, "solve_mod: length mismatch");
  Snf s = smith_normal_form(a);
  auto ub = zmat_apply(s.u, b);
  std::vector<long long> y(c, 0);
  for (int i = 0; i < r; ++i) {
    long long d = i < static_cast<int>(s.diag.size()) ? s.diag[i] : 0;
    long long rhs = ((ub[i] % m) + m) % m;
    if (d == 0) {
      if (rhs != 0) return std::nullopt;
      continue;
    }
    long long g = static_cast<long long>(
        gcd_u64(static_cast<std::uint64_t>(d % m == 0 ? m : std::llabs(d % m)),
                static_cast<std::uint64_t>(m)));
    if (rhs % g != 0) return std::nullopt;
    long long m2 = m / g;
    if (i < c)
      y[i] = m2 == 1 ? 0 : rhs / g % m2 * mod_inverse(d / g, m2) % m2;
  }
  auto x = zmat_apply(s.v, y);
  for (auto& v : x) v = ((v % m) + m) % m;
  return x;
}

}  // namespace mel
