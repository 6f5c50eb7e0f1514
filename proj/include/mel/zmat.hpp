#pragma once

#include <optional>
#include <vector>

namespace mel {

/// Small integer matrices, row-major. Entries here are degree labels and
/// group presentations, so magnitudes stay tiny; int64 is plenty.
using ZMat = std::vector<std::vector<long long>>;

ZMat zmat_identity(int n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);
std::vector<long long> zmat_apply(const ZMat& a, const std::vector<long long>& x);

/// Smith normal form: unimodular u (rows x rows), v (cols x cols) with
/// u * a * v diagonal, diag[0] | diag[1] | ..., all entries nonnegative.
struct Snf {
  std::vector<long long> diag;  // length min(rows, cols)
  ZMat u, v;
  int rank = 0;  // nonzero diagonal entries
};
Snf smith_normal_form(ZMat a);

/// particular solution of a x = b over the integers, if any
std::optional<std::vector<long long>> solve_z(const ZMat& a,
                                              const std::vector<long long>& b);

/// particular solution of a x = b (mod m), entries in [0, m)
std::optional<std::vector<long long>> solve_mod(const ZMat& a,
                                                const std::vector<long long>& b,
                                                long long m);

long long mod_inverse(long long a, long long m);  // gcd(a, m) = 1

}  // namespace mel
