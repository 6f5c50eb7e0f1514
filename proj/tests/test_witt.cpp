#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "mel/witt.hpp"
#include "test_common.hpp"

using namespace mel;
using mel::test::throws_containing;

namespace {

struct Fixture {
  const Field& f = make_field(5, 1);
  ShapePtr s = Shape::make(2, {1, 1}, 5);

  Poly mono(std::vector<int> a, long long c = 1) const {
    return Poly::monomial(s, f, a, f.from_int(c));
  }
  VectorField vf(std::vector<int> a, int axis) const {
    return VectorField::monomial(s, f, a, axis);
  }
  // full monomial basis of W(2;(1,1)), dim 50, canonical order
  std::vector<VectorField> w_basis() const {
    std::vector<VectorField> out;
    for (int axis : {0, 1})
      for (const auto& a : s->basis()) out.push_back(vf(a, axis));
    return out;
  }
};

}  // namespace

TEST_CASE("apply") {
  Fixture x;
  CHECK(x.vf({0, 0}, 0).apply(x.mono({1, 0})) == Poly::one(x.s, x.f));
  CHECK(x.vf({1, 0}, 0).apply(x.mono({0, 1})).is_zero());
  // Euler field on x^(1,1)
  VectorField euler = x.vf({1, 0}, 0) + x.vf({0, 1}, 1);
  CHECK(euler.apply(x.mono({1, 1})) == x.mono({1, 1}, 2));
}

TEST_CASE("witt_bracket examples") {
  Fixture x;
  CHECK(witt_bracket(x.vf({0, 0}, 0), x.vf({1, 0}, 0)) == x.vf({0, 0}, 0));
  CHECK(witt_bracket(x.vf({1, 0}, 0), x.vf({1, 0}, 0)).is_zero());
  VectorField lhs = witt_bracket(x.vf({1, 0}, 1), x.vf({0, 1}, 0));
  CHECK(lhs == x.vf({1, 0}, 0) - x.vf({0, 1}, 1));
}

TEST_CASE("divergence") {
  Fixture x;
  CHECK(divergence(x.vf({1, 0}, 0)) == Poly::one(x.s, x.f));
  CHECK(divergence(x.vf({0, 0}, 0)).is_zero());
  VectorField d = x.vf({2, 0}, 0) + x.vf({1, 1}, 1);
  CHECK(divergence(d) == x.mono({1, 0}, 2));

  auto s3 = Shape::make(3, {1, 1, 1}, 5);
  VectorField d3(s3, x.f);
  CHECK(throws_containing([&] { (void)divergence(d3); }, "m = 2"));
}

TEST_CASE("tilde") {
  Fixture x;
  CHECK(tilde(x.vf({0, 0}, 0)) ==
        TildeField::monomial(x.s, x.f, std::vector<int>{0, 0}, 0));
  CHECK(tilde(VectorField(x.s, x.f)).is_zero());
  VectorField euler = x.vf({1, 0}, 0) + x.vf({0, 1}, 1);
  TildeField t = tilde(euler);
  CHECK(t.component(0) == x.mono({1, 0}));
  CHECK(t.component(1) == x.mono({0, 1}));
  CHECK(untilde(t) == euler);
}

TEST_CASE("witt degree") {
  CHECK(witt_degree(std::vector<int>{0, 0}) == -1);
  CHECK(witt_degree(std::vector<int>{1, 0}) == 0);
  CHECK(witt_degree(std::vector<int>{4, 4}) == 7);
}

TEST_CASE("antisymmetry and Jacobi on the full W(2;(1,1)) basis") {
  Fixture x;
  auto basis = x.w_basis();
  const std::size_t n = basis.size();
  REQUIRE(n == 50);

  // pairwise bracket table, memoized from the direct formula
  std::vector<std::vector<VectorField>> table(
      n, std::vector<VectorField>(n, VectorField(x.s, x.f)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = witt_bracket(basis[i], basis[j]);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      CHECK(table[i][j] == -table[j][i]);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        VectorField sum = witt_bracket(basis[i], table[j][k]) +
                          witt_bracket(basis[j], table[k][i]) +
                          witt_bracket(basis[k], table[i][j]);
        if (!sum.is_zero()) {
          CAPTURE(i);
          CAPTURE(j);
          CAPTURE(k);
          REQUIRE(false);
        }
      }
}

TEST_CASE("brackets act as commutators of derivations") {
  Fixture x;
  auto basis = x.w_basis();
  for (const auto& d : basis)
    for (const auto& e : basis) {
      VectorField de = witt_bracket(d, e);
      for (const auto& a : x.s->basis()) {
        Poly f = x.mono(a);
        CHECK(de.apply(f) == d.apply(e.apply(f)) - e.apply(d.apply(f)));
      }
    }
}

TEST_CASE("canonical Z-grading of W") {
  Fixture x;
  auto basis = x.s->basis();
  for (int ai = 0; ai < 2; ++ai)
    for (const auto& a : basis)
      for (int bi = 0; bi < 2; ++bi)
        for (const auto& b : basis) {
          VectorField br = witt_bracket(x.vf(a, ai), x.vf(b, bi));
          if (br.is_zero()) continue;
          int expected = witt_degree(a) + witt_degree(b);
          // every monomial of the bracket sits in the expected degree
          for (int axis : {0, 1})
            for (auto [r, c] : br.component(axis).terms()) {
              (void)c;
              CHECK(witt_degree(x.s->unrank(r)) == expected);
            }
        }
}

TEST_CASE("divergence interacts with brackets as a cocycle") {
  Fixture x;
  auto basis = x.w_basis();
  for (const auto& d : basis)
    for (const auto& e : basis)
      CHECK(divergence(witt_bracket(d, e)) ==
            d.apply(divergence(e)) - e.apply(divergence(d)));
}

TEST_CASE("witt algebra over a generic prime") {
  const Field& f7 = make_field(7, 1);
  auto s = Shape::make(2, {1, 1}, 7);
  auto vf = [&](std::vector<int> a, int axis) {
    return VectorField::monomial(s, f7, a, axis);
  };
  // [d1, x1 d1] = d1 holds in any characteristic
  CHECK(witt_bracket(vf({0, 0}, 0), vf({1, 0}, 0)) == vf({0, 0}, 0));
  // spot Jacobi
  VectorField a = vf({2, 0}, 0), b = vf({1, 1}, 1), c = vf({0, 3}, 0);
  VectorField sum = witt_bracket(a, witt_bracket(b, c)) +
                    witt_bracket(b, witt_bracket(c, a)) +
                    witt_bracket(c, witt_bracket(a, b));
  CHECK(sum.is_zero());
}
