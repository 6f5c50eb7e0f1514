#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mel/poly.hpp"
#include "test_common.hpp"

using namespace mel;
using mel::test::throws_containing;

namespace {
Poly mono(const ShapePtr& s, const Field& f, std::vector<int> a, long long c = 1) {
  return Poly::monomial(s, f, a, f.from_int(c));
}
}  // namespace

TEST_CASE("shape bookkeeping") {
  auto s = Shape::make(2, {1, 1}, 5);
  CHECK(s->tau() == std::vector<int>{4, 4});
  CHECK(s->dim() == 25);
  auto basis = s->basis();
  CHECK(basis.size() == 25);
  CHECK(basis.front() == std::vector<int>{0, 0});
  CHECK(basis.back() == std::vector<int>{4, 4});

  auto s1 = Shape::make(1, {1}, 5);
  CHECK(s1->basis() ==
        std::vector<std::vector<int>>{{0}, {1}, {2}, {3}, {4}});

  auto s21 = Shape::make(2, {2, 1}, 5);
  CHECK(s21->dim() == 125);
  CHECK(s21->tau() == std::vector<int>{24, 4});
  // lex order: leftmost entry most significant
  CHECK(s21->rank(std::vector<int>{0, 3}) == 3);
  CHECK(s21->rank(std::vector<int>{1, 0}) == 5);
  CHECK(s21->unrank(124) == std::vector<int>{24, 4});

  CHECK(throws_containing([&] { (void)s->rank(std::vector<int>{5, 0}); },
                          "out of bounds"));
  CHECK(throws_containing([] { Shape::make(2, {1}, 5); }, "m entries"));
}

TEST_CASE("divided power multiplication") {
  const Field& f = make_field(5, 1);

  auto s21 = Shape::make(2, {2, 1}, 5);
  CHECK(mono(s21, f, {1, 0}) * mono(s21, f, {1, 0}) == mono(s21, f, {2, 0}, 2));

  auto s11 = Shape::make(2, {1, 1}, 5);
  CHECK((mono(s11, f, {4, 0}) * mono(s11, f, {1, 0})).is_zero());
  CHECK(mono(s11, f, {1, 1}) * mono(s11, f, {2, 1}) == mono(s11, f, {3, 2}, 1));

  auto other = Shape::make(2, {1, 2}, 5);
  CHECK(throws_containing([&] { (void)(mono(s11, f, {1, 0}) * mono(other, f, {1, 0})); },
                          "shape mismatch"));
}

TEST_CASE("partial derivatives") {
  const Field& f = make_field(5, 1);
  auto s = Shape::make(2, {1, 1}, 5);

  CHECK(mono(s, f, {2, 1}).partial(0) == mono(s, f, {1, 1}));
  CHECK(mono(s, f, {1, 0}).partial(1).is_zero());

  // Leibniz expansion cross-check of d1(x1 * x1)
  Poly x1 = mono(s, f, {1, 0});
  Poly prod = x1 * x1;
  CHECK(prod == mono(s, f, {2, 0}, 2));
  CHECK(prod.partial(0) == mono(s, f, {1, 0}, 2));
  CHECK(prod.partial(0) == x1.partial(0) * x1 + x1 * x1.partial(0));

  CHECK(throws_containing([&] { (void)x1.partial(2); }, "axis"));
}

TEST_CASE("degree and basis facts") {
  auto s = Shape::make(2, {1, 1}, 5);
  CHECK(multi_degree(std::vector<int>{0, 0}) == 0);
  CHECK(multi_degree(std::vector<int>{1, 1}) == 2);
  // top canonical degree of O(2;(1,1)) via enumeration
  int top = 0;
  for (const auto& a : s->basis()) top = std::max(top, multi_degree(a));
  CHECK(top == 8);
}

TEST_CASE("ring axioms on the full basis") {
  const Field& f = make_field(5, 1);
  auto s = Shape::make(2, {1, 1}, 5);
  auto basis = s->basis();

  // commutativity on all pairs, unit law
  Poly unit = Poly::one(s, f);
  for (const auto& a : basis) {
    Poly pa = mono(s, f, a);
    CHECK(pa * unit == pa);
    CHECK(unit * pa == pa);
    for (const auto& b : basis) {
      Poly pb = mono(s, f, b);
      CHECK(pa * pb == pb * pa);
    }
  }

  // associativity on all monomial triples
  for (const auto& a : basis)
    for (const auto& b : basis) {
      Poly ab = mono(s, f, a) * mono(s, f, b);
      for (const auto& c : basis) {
        Poly pc = mono(s, f, c);
        CHECK(ab * pc == mono(s, f, a) * (mono(s, f, b) * pc));
      }
    }
}

TEST_CASE("truncation soundness: dropped products have vanishing Lucas coefficient") {
  for (auto n : std::vector<std::vector<int>>{{1, 1}, {2, 1}}) {
    auto s = Shape::make(2, n, 5);
    for (const auto& a : s->basis())
      for (const auto& b : s->basis()) {
        std::vector<int> ab{a[0] + b[0], a[1] + b[1]};
        if (!s->in_bounds(ab)) CHECK(multi_binom(a, b, 5) == 0);
      }
  }
}

TEST_CASE("Leibniz rule and commuting derivations on all basis pairs") {
  const Field& f = make_field(5, 1);
  auto s = Shape::make(2, {1, 1}, 5);
  auto basis = s->basis();
  for (const auto& a : basis)
    for (const auto& b : basis) {
      Poly pa = mono(s, f, a), pb = mono(s, f, b);
      for (int axis : {0, 1})
        CHECK((pa * pb).partial(axis) ==
              pa.partial(axis) * pb + pa * pb.partial(axis));
    }
  for (const auto& a : basis) {
    Poly pa = mono(s, f, a);
    CHECK(pa.partial(0).partial(1) == pa.partial(1).partial(0));
  }
}

TEST_CASE("polynomials over an extension stage") {
  const Field& f25 = make_field(5, 2);
  auto s = Shape::make(2, {1, 1}, 5);
  std::uint32_t beta = f25.root_of_unity(3);
  Poly p = Poly::monomial(s, f25, std::vector<int>{1, 0}, beta);
  CHECK((p * p) == Poly::monomial(s, f25, std::vector<int>{2, 0},
                                  f25.mul(2, f25.mul(beta, beta))));
  CHECK(throws_containing(
      [&] { (void)(p * Poly::one(s, make_field(5, 1))); }, "field mismatch"));
}

TEST_CASE("generic prime shapes") {
  const Field& f3 = make_field(3, 1);
  auto s = Shape::make(1, {2}, 3);
  CHECK(s->dim() == 9);
  CHECK(s->tau() == std::vector<int>{8});
  // x^(1) x^(2) = binom(3,1) x^(3) = 0 mod 3
  CHECK((mono(s, f3, {1}) * mono(s, f3, {2})).is_zero());
  // x^(1) x^(3) = binom(4,1) x^(4) = x^(4)
  CHECK(mono(s, f3, {1}) * mono(s, f3, {3}) == mono(s, f3, {4}, 1));
}
