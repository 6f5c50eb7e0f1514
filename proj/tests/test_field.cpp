#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "mel/field.hpp"
#include "test_common.hpp"

using namespace mel;
using mel::test::throws_containing;

TEST_CASE("make_field basics") {
  const Field& f5 = make_field(5, 1);
  CHECK(f5.order() == 5);
  CHECK(f5.characteristic() == 5);

  const Field& f25 = make_field(5, 2);
  CHECK(f25.order() == 25);
  CHECK(f25.group_order() == 24);

  // deterministic: same object and same modulus on repeated calls
  CHECK(&make_field(5, 2) == &f25);
  CHECK(make_field(5, 2).modulus() == f25.modulus());

  CHECK(throws_containing([] { make_field(6, 1); }, "prime"));
  CHECK(throws_containing([] { make_field(5, 0); }, ">= 1"));
}

TEST_CASE("GF(25) multiplicative structure, exhaustively") {
  const Field& f = make_field(5, 2);
  // x * x^-1 = 1 and x^24 = 1 for every nonzero x
  for (std::uint32_t x = 1; x < 25; ++x) {
    CHECK(f.mul(x, f.inv(x)) == 1);
    CHECK(f.pow(x, 24) == 1);
  }
  // exactly phi(24) = 8 generators
  int gens = 0;
  for (std::uint32_t x = 1; x < 25; ++x)
    if (f.element_order(x) == 24) ++gens;
  CHECK(gens == 8);
  CHECK(f.element_order(f.generator()) == 24);
}

TEST_CASE("field axioms on all GF(25) pairs") {
  const Field& f = make_field(5, 2);
  for (std::uint32_t a = 0; a < 25; ++a)
    for (std::uint32_t b = 0; b < 25; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(a, f.neg(a)) == 0);
      // distributivity against a fixed third element
      std::uint32_t c = (a * 7 + b * 3 + 1) % 25;
      CHECK(f.mul(c, f.add(a, b)) == f.add(f.mul(c, a), f.mul(c, b)));
    }
}

TEST_CASE("root_of_unity") {
  const Field& f5 = make_field(5, 1);
  CHECK(f5.root_of_unity(1) == 1);

  const Field& f25 = make_field(5, 2);
  std::uint32_t beta = f25.root_of_unity(3);

  // oracle: enumerate all order-3 elements of GF(25)
  std::set<std::uint32_t> order3;
  for (std::uint32_t x = 1; x < 25; ++x)
    if (f25.element_order(x) == 3) order3.insert(x);
  CHECK(order3.size() == 2);
  CHECK(order3.count(beta) == 1);

  FieldElement b(f25, beta);
  CHECK(b.pow(3).is_one());
  CHECK(!b.is_one());
  CHECK((b * b + b + FieldElement(f25, 1)).is_zero());

  CHECK(throws_containing([&] { f25.root_of_unity(5); }, "characteristic"));
  CHECK(throws_containing([&] { f5.root_of_unity(3); }, "extend_field"));

  // exact order: w^m = 1 and w^d != 1 for every proper divisor d of m
  for (std::uint64_t m : {1u, 2u, 3u, 4u, 6u, 8u, 12u, 24u}) {
    std::uint32_t w = f25.root_of_unity(m);
    CHECK(f25.pow(w, static_cast<long long>(m)) == 1);
    for (std::uint64_t d = 1; d < m; ++d)
      if (m % d == 0) CHECK(f25.pow(w, static_cast<long long>(d)) != 1);
  }
}

TEST_CASE("extend_field") {
  const Field& f5 = make_field(5, 1);
  const Field& f25 = make_field(5, 2);

  // 3 does not divide 5 - 1 = 4 but divides 25 - 1 = 24
  auto e1 = extend_field(f5, 3);
  CHECK(e1.dst->degree() == 2);
  // 2 divides 4 already
  auto e2 = extend_field(f5, 2);
  CHECK(e2.dst->degree() == 1);
  for (std::uint32_t a = 0; a < 5; ++a) CHECK(e2.map(a) == a);
  // smallest even j with 7 | 5^j - 1 is 6
  auto e3 = extend_field(f25, 7);
  CHECK(e3.dst->degree() == 6);

  CHECK(throws_containing([&] { extend_field(f5, 10); }, "characteristic"));

  // the embedding is a ring homomorphism on 100 random pairs
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(rng.below(25));
    std::uint32_t b = static_cast<std::uint32_t>(rng.below(25));
    CHECK(e3.map(f25.add(a, b)) == e3.dst->add(e3.map(a), e3.map(b)));
    CHECK(e3.map(f25.mul(a, b)) == e3.dst->mul(e3.map(a), e3.map(b)));
  }
  CHECK(e3.map(1) == 1);
  // injective on a sample
  CHECK(e3.map(7) != e3.map(12));
}

TEST_CASE("binom_mod_p") {
  CHECK(binom_mod_p(2, 1, 5) == 2);
  CHECK(binom_mod_p(5, 1, 5) == 0);
  CHECK(binom_mod_p(7, 3, 5) == 0);  // 35 = 0 mod 5
  CHECK(binom_mod_p(3, 7, 5) == 0);  // b > a

  // Pascal-triangle oracle, all a <= 2000 here; the acceptance battery
  // runs the full 10^4 sweep
  const int N = 2000;
  std::vector<std::uint8_t> row(1, 1);
  for (int a = 0; a <= N; ++a) {
    for (int b = 0; b <= a; ++b)
      if (binom_mod_p(a, b, 5) != row[b]) {
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(false);
      }
    std::vector<std::uint8_t> next(a + 2, 1);
    for (int b = 1; b <= a; ++b)
      next[b] = static_cast<std::uint8_t>((row[b - 1] + row[b]) % 5);
    row = std::move(next);
  }
}

TEST_CASE("multi_binom") {
  std::vector<int> a{1, 0}, b{1, 0};
  CHECK(multi_binom(a, b, 5) == 2);
  a = {4, 0};
  b = {4, 0};
  CHECK(multi_binom(a, b, 5) == 0);  // binom(8,4) = 70
  a = {1, 1};
  b = {2, 1};
  CHECK(multi_binom(a, b, 5) == 1);  // 3 * 2 = 6
  std::vector<int> c{1};
  CHECK(throws_containing([&] { multi_binom(a, c, 5); }, "length"));
}

TEST_CASE("cross-field operations are rejected") {
  FieldElement a(make_field(5, 1), 2);
  FieldElement b(make_field(5, 2), 2);
  CHECK(throws_containing([&] { (void)(a + b); }, "mismatch"));
  CHECK(throws_containing([&] { (void)(a * b); }, "mismatch"));
}

TEST_CASE("cube roots") {
  const Field& f25 = make_field(5, 2);
  // cube map on GF(25)^* is 3-to-1 onto the 8-element subgroup
  int cubes = 0;
  for (std::uint32_t x = 1; x < 25; ++x) {
    auto r = f25.cube_root(x);
    if (r) {
      ++cubes;
      CHECK(f25.pow(*r, 3) == x);
    }
  }
  CHECK(cubes == 8);
  // a 6th root of unity has no cube root in GF(25) but gets one in GF(5^6)
  std::uint32_t s = f25.root_of_unity(6);
  CHECK(!f25.cube_root(s));
  auto emb = extend_field(f25, 72);
  CHECK(emb.dst->degree() == 6);
  auto r6 = emb.dst->cube_root(emb.map(s));
  REQUIRE(r6.has_value());
  CHECK(emb.dst->pow(*r6, 3) == emb.map(s));
}

TEST_CASE("generic prime support") {
  const Field& f7 = make_field(7, 2);
  CHECK(f7.order() == 49);
  for (std::uint32_t x = 1; x < 49; ++x) CHECK(f7.mul(x, f7.inv(x)) == 1);
  CHECK(binom_mod_p(7, 1, 7) == 0);
  CHECK(binom_mod_p(8, 4, 2) == 0);
}
