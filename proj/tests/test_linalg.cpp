#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mel/linalg.hpp"
#include "test_common.hpp"

using namespace mel;
using mel::test::throws_containing;

namespace {
Mat from_rows(const Field& f, std::vector<std::vector<std::uint32_t>> rows) {
  Mat m(f, static_cast<std::uint32_t>(rows.size()),
        static_cast<std::uint32_t>(rows[0].size()));
  for (std::uint32_t r = 0; r < m.rows(); ++r)
    for (std::uint32_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  return m;
}
}  // namespace

TEST_CASE("matrix arithmetic over GF(5)") {
  const Field& f = make_field(5, 1);
  Mat a = from_rows(f, {{1, 2}, {3, 4}});
  Mat b = from_rows(f, {{0, 1}, {1, 0}});
  CHECK(a * b == from_rows(f, {{2, 1}, {4, 3}}));
  CHECK(a + b == from_rows(f, {{1, 3}, {4, 4}}));
  CHECK(a - a == Mat(f, 2, 2));
  CHECK(a.transpose() == from_rows(f, {{1, 3}, {2, 4}}));
  CHECK(Mat::identity(f, 2) * a == a);
  CHECK(a.pow(0).is_identity());
  CHECK(a.pow(3) == a * a * a);
}

TEST_CASE("inverse, rank, kernel") {
  const Field& f = make_field(5, 1);
  Mat a = from_rows(f, {{1, 2}, {3, 4}});
  Mat inv = a.inverse();
  CHECK((a * inv).is_identity());
  CHECK((inv * a).is_identity());
  CHECK(a.rank() == 2);

  Mat sing = from_rows(f, {{1, 2}, {2, 4}});
  CHECK(sing.rank() == 1);
  CHECK(!sing.inverse_opt().has_value());
  CHECK(throws_containing([&] { sing.inverse(); }, "singular"));

  Mat k = sing.kernel();
  CHECK(k.cols() == 1);
  CHECK((sing * k).is_zero());

  // random invertibility round trip over GF(25)
  const Field& f25 = make_field(5, 2);
  Rng rng(3);
  Mat r(f25, 6, 6);
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = 0; j < 6; ++j)
      r.at(i, j) = static_cast<std::uint32_t>(rng.below(25));
  auto ro = r.inverse_opt();
  if (ro) CHECK((r * *ro).is_identity());
  CHECK(r.rank() + r.kernel().cols() == 6);
}

TEST_CASE("row spaces and membership") {
  const Field& f = make_field(5, 1);
  RowSpace s(f, 3);
  CHECK(s.add(std::vector<std::uint32_t>{1, 2, 0}));
  CHECK(s.add(std::vector<std::uint32_t>{0, 0, 3}));
  CHECK(!s.add(std::vector<std::uint32_t>{2, 4, 3}));  // dependent
  CHECK(s.dim() == 2);
  CHECK(s.contains(std::vector<std::uint32_t>{3, 1, 1}));
  CHECK(!s.contains(std::vector<std::uint32_t>{1, 0, 0}));

  // canonical form: same space from different generators compares equal
  RowSpace t(f, 3);
  t.add(std::vector<std::uint32_t>{2, 4, 3});
  t.add(std::vector<std::uint32_t>{1, 2, 1});
  CHECK(s == t);
}

TEST_CASE("column spaces") {
  const Field& f = make_field(5, 1);
  Mat a = from_rows(f, {{1, 0}, {2, 0}, {0, 1}});
  Mat b = from_rows(f, {{2, 1}, {4, 2}, {3, 3}});
  CHECK(same_column_space(a, b));
  Mat c = from_rows(f, {{1, 0}, {0, 1}, {0, 0}});
  CHECK(!same_column_space(a, c));
}

TEST_CASE("sparse vectors") {
  std::vector<std::uint32_t> dense{0, 3, 0, 0, 2};
  SparseVec sv = to_sparse(dense);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == std::make_pair(1u, 3u));
  CHECK(sv[1] == std::make_pair(4u, 2u));
  CHECK(to_dense(sv, 5) == dense);
}

TEST_CASE("embedding matrices into a larger stage") {
  const Field& f = make_field(5, 2);
  auto emb = extend_field(f, 72);
  Mat a(f, 2, 2);
  a.at(0, 0) = f.root_of_unity(3);
  a.at(1, 1) = 4;
  Mat big = a.mapped(emb);
  CHECK(big.field().degree() == 6);
  CHECK(big.at(0, 0) == emb.map(f.root_of_unity(3)));
  CHECK(big.at(0, 1) == 0);
}
