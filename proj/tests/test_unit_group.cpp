#include "cyclo/errors.hpp"
#include "cyclo/unit_group.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace cyclo;

namespace {

// Square index of the subgroup of (Z/2^k)^x generated by gens, by enumeration.
unsigned enumeratedSquareIndex(const std::vector<std::uint64_t>& gens, unsigned k) {
  const std::uint64_t mod = 1ull << k;
  std::set<std::uint64_t> group{1};
  std::vector<std::uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto x : frontier)
      for (auto g : gens) {
        const auto y = x * (g % mod) % mod;
        if (group.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::set<std::uint64_t> squares;
  for (auto x : group) squares.insert(x * x % mod);
  return static_cast<unsigned>(group.size() / squares.size());
}

std::uint64_t residueOf(std::int64_t num, unsigned k) {
  const std::int64_t mod = std::int64_t{1} << k;
  return static_cast<std::uint64_t>(((num % mod) + mod) % mod);
}

} // namespace

TEST_SUITE("unit-group") {

TEST_CASE("makeUnit residues") {
  const auto u = makeUnit(2, 1, -3, 8);
  // -1/3 = sum of 4^k
  mpz_class series = 0;
  for (int k = 0; k < 4; ++k) series += mpz_class(1) << (2 * k);
  CHECK(u.residue() == series);
  CHECK(mpz_class(u.residue() * 3 + 1) % 256 == 0);

  CHECK(makeUnit(3, 4, 1, 8).residue() == 4);
  CHECK(makeUnit(2, 7, 1, 8).residue() == 7);
  CHECK(makeUnit(2, -1, 1, 8).residue() == 255);
}

TEST_CASE("makeUnit errors") {
  CHECK_THROWS_AS(makeUnit(3, 2, 1, 8), NotAUnit);
  CHECK_THROWS_AS(makeUnit(2, 4, 1, 8), NotAUnit);
  CHECK_THROWS_AS(makeUnit(3, 1, 3, 8), DenominatorNotInvertible);
  CHECK_THROWS_AS(makeUnit(2, 1, 0, 8), DenominatorNotInvertible);
}

TEST_CASE("epsilon") {
  CHECK(epsilonOf(makeUnit(2, -1)) == 1);
  CHECK(epsilonOf(makeUnit(2, 5)) == 0);
  CHECK(epsilonOf(makeUnit(3, 4)) == 0);
  CHECK(epsilonOf(makeUnit(2, 3)) == 1);
}

TEST_CASE("epsilon is a homomorphism") {
  for (std::int64_t a = -31; a < 32; a += 2)
    for (std::int64_t b = -31; b < 32; b += 2) {
      const auto u = makeUnit(2, a), v = makeUnit(2, b);
      CHECK(epsilonOf(u * v) == (epsilonOf(u) + epsilonOf(v)) % 2);
    }
}

TEST_CASE("subgroup invariants examples") {
  const std::vector<PAdicUnit> q2{makeUnit(2, -1), makeUnit(2, 1, -3)};
  const auto inv = subgroupInvariants(2, q2);
  CHECK(inv.q(2) == 2);
  CHECK(inv.epsNonzero);
  CHECK(inv.squareIndex == 4);
  const unsigned k = 16;
  CHECK(enumeratedSquareIndex({residueOf(-1, k), makeUnit(2, 1, -3, k).residue().get_ui()}, k) == 4);

  const std::vector<PAdicUnit> ten{makeUnit(3, 10)};
  CHECK(subgroupInvariants(3, ten).q(3) == 9);

  const auto none = subgroupInvariants(2, std::vector<PAdicUnit>{});
  CHECK(none.trivial);
  CHECK(none.q(2) == 0);
}

TEST_CASE("square index agrees with enumeration mod 2^k") {
  const unsigned k = 14;
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PAdicUnit> gens;
    std::vector<std::uint64_t> residues;
    const int count = static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) {
      const std::int64_t a = static_cast<std::int64_t>(rng() % 400) * 2 - 399;
      if (residueOf(a, k - 2) == 1 && a != 1) continue;
      gens.push_back(makeUnit(2, a, 1, k));
      residues.push_back(residueOf(a, k));
    }
    const auto inv = subgroupInvariants(2, gens, k);
    CHECK(inv.squareIndex == enumeratedSquareIndex(residues, k));
  }
}

TEST_CASE("presentation independence") {
  const std::vector<PAdicUnit> a{makeUnit(2, 3), makeUnit(2, 5)};
  const std::vector<PAdicUnit> b{makeUnit(2, 15), makeUnit(2, 5), makeUnit(2, 1)};
  const std::vector<PAdicUnit> c{makeUnit(2, 3), makeUnit(2, 5), makeUnit(2, 1)};
  CHECK(subgroupInvariants(2, a) == subgroupInvariants(2, b));
  CHECK(subgroupInvariants(2, a) == subgroupInvariants(2, c));
  const std::vector<PAdicUnit> d{makeUnit(3, 4)}, e{makeUnit(3, 4), makeUnit(3, 1)};
  CHECK(subgroupInvariants(3, d) == subgroupInvariants(3, e));
}

TEST_CASE("precision exhaustion") {
  const unsigned k = 8;
  const std::vector<PAdicUnit> deep{makeUnit(2, 1 + 64, 1, k)};
  CHECK_THROWS_AS(subgroupInvariants(2, deep, k), PrecisionExhausted);
  const std::vector<PAdicUnit> ok{makeUnit(2, 1 + 16, 1, k)};
  CHECK(subgroupInvariants(2, ok, k).q(2) == 16);
}

}
