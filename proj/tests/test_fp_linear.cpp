#include "cyclo/errors.hpp"
#include "cyclo/fp_linear.hpp"

#include <doctest.h>

#include <random>

using namespace cyclo;

TEST_SUITE("fp-linear") {

TEST_CASE("rank of small matrices") {
  CHECK(rank(FpMatrix::identity(2, 2)) == 2);
  CHECK(rank(FpMatrix(3, 3, 3)) == 0);
  CHECK(rank(FpMatrix::fromRows(2, {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(FpMatrix::fromRows(3, {{1, 2}, {2, 1}})) == 1);
  CHECK(rank(FpMatrix::fromRows(5, {{1, 2}, {2, 1}})) == 2);
}

TEST_CASE("solve") {
  const auto id = FpMatrix::identity(7, 3);
  const FpVec b{4, 0, 6};
  CHECK(solve(id, b) == b);

  const FpVec one{1, 0};
  CHECK_FALSE(solve(FpMatrix(2, 2, 2), one).has_value());

  const auto row = FpMatrix::fromRows(2, {{1, 1}});
  const FpVec rhs{1};
  const auto x = solve(row, rhs);
  REQUIRE(x.has_value());
  CHECK(row.apply(*x) == rhs);

  CHECK_THROWS_AS(solve(id, one), DimensionMismatch);
}

TEST_CASE("kernel basis") {
  CHECK(kernelBasis(FpMatrix::identity(3, 4)).empty());
  CHECK(kernelBasis(FpMatrix(2, 2, 3)).size() == 3);
  const auto m = FpMatrix::fromRows(2, {{1, 1, 0}});
  const auto k = kernelBasis(m);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(m.apply(v) == FpVec{0});
}

TEST_CASE("entries are reduced") {
  const auto m = FpMatrix::fromRows(3, {{-1, 4, 7}});
  CHECK(m(0, 0) == 2);
  CHECK(m(0, 1) == 1);
  CHECK(m(0, 2) == 1);
}

TEST_CASE("rank-nullity, solve soundness, determinism on random matrices") {
  std::mt19937 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t r = rng() % 6 + 1, c = rng() % 7 + 1;
      FpMatrix m(p, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<std::int64_t>(rng() % p));
      const auto k = kernelBasis(m);
      CHECK(rank(m) + k.size() == c);
      for (const auto& v : k) CHECK(m.apply(v) == FpVec(r, 0));
      CHECK(kernelBasis(m) == k);

      FpVec b(r);
      for (auto& x : b) x = rng() % p;
      if (auto x = solve(m, b)) CHECK(m.apply(*x) == b);

      FpVec x0(c);
      for (auto& x : x0) x = rng() % p;
      const auto b0 = m.apply(x0);
      const auto x1 = solve(m, b0);
      REQUIRE(x1.has_value());
      CHECK(m.apply(*x1) == b0);
    }
}

TEST_CASE("echelon basis tracks spans") {
  EchelonBasis e(3, 3);
  CHECK(e.insert({1, 2, 0}));
  CHECK(e.insert({0, 1, 1}));
  CHECK_FALSE(e.insert({2, 1, 0}));
  CHECK(e.contains({1, 0, 1}));
  CHECK_FALSE(e.contains({0, 0, 1}));
  CHECK(e.dim() == 2);
}

TEST_CASE("modular helpers") {
  CHECK(modInverse(3, 7) == 5);
  CHECK(isPrime(2));
  CHECK(isPrime(65537));
  CHECK_FALSE(isPrime(1));
  CHECK_FALSE(isPrime(91));
}

}
