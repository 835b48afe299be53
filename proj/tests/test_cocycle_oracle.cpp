#include "cyclo/cocycle_oracle.hpp"
#include "cyclo/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace cyclo;

namespace {

bool isZero(const FpVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

// |Hom(G, F_p)| by assigning values to a generating set and checking every product.
std::size_t countHomomorphisms(const FiniteGroup& g, std::uint32_t p) {
  // greedy generating set
  std::vector<std::uint32_t> gens;
  std::vector<bool> reached(g.order(), false);
  reached[0] = true;
  auto closure = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::uint32_t x = 0; x < g.order(); ++x)
        if (reached[x])
          for (auto s : gens)
            if (!reached[g.mul(x, s)]) reached[g.mul(x, s)] = grew = true;
    }
  };
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (!reached[x]) {
      gens.push_back(x);
      closure();
    }
  std::size_t count = 0;
  std::vector<std::uint32_t> values(gens.size(), 0);
  while (true) {
    // extend along words, reject on conflict
    std::vector<int> f(g.order(), -1);
    f[0] = 0;
    bool ok = true;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi)
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        const auto y = g.mul(queue[qi], gens[k]);
        const int v = static_cast<int>((f[queue[qi]] + values[k]) % p);
        if (f[y] < 0) {
          f[y] = v;
          queue.push_back(y);
        } else if (f[y] != v) {
          ok = false;
        }
      }
    if (ok)
      for (std::uint32_t a = 0; a < g.order() && ok; ++a)
        for (std::uint32_t b = 0; b < g.order() && ok; ++b)
          ok = static_cast<std::uint32_t>(f[g.mul(a, b)]) == (f[a] + f[b]) % p;
    count += ok;
    std::size_t k = 0;
    while (k < values.size() && ++values[k] == p) values[k++] = 0;
    if (k == values.size()) break;
  }
  return count;
}

std::size_t power(std::size_t p, std::size_t k) {
  std::size_t r = 1;
  while (k--) r *= p;
  return r;
}

std::vector<FiniteGroup> smallGroups() {
  return {FiniteGroup::cyclic(1), FiniteGroup::cyclic(2),   FiniteGroup::cyclic(3),  FiniteGroup::cyclic(4),
          FiniteGroup::cyclic(6), FiniteGroup::cyclic(8),   FiniteGroup::cyclic(9),  FiniteGroup::klein4(),
          FiniteGroup::dihedral(6), FiniteGroup::dihedral(8), FiniteGroup::dihedral(12),
          FiniteGroup::directProduct(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)),
          FiniteGroup::directProduct(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)),
          FiniteGroup::directProduct(FiniteGroup::klein4(), FiniteGroup::cyclic(2))};
}

} // namespace

TEST_SUITE("cocycle-oracle") {

TEST_CASE("builtins") {
  CHECK(FiniteGroup::cyclic(2).order() == 2);
  const auto d4 = FiniteGroup::dihedral(8);
  CHECK(d4.order() == 8);
  CHECK(d4.label(1) == "r");
  CHECK(d4.label(4) == "s");
  // r^4 = s^2 = (rs)^2 = 1
  const std::uint32_t r = 1, s = 4;
  CHECK(d4.mul(d4.mul(r, r), d4.mul(r, r)) == 0);
  CHECK(d4.mul(s, s) == 0);
  const auto rs = d4.mul(r, s);
  CHECK(d4.mul(rs, rs) == 0);
  const auto v = FiniteGroup::directProduct(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(v.table() == FiniteGroup::klein4().table());
  CHECK_THROWS_AS(FiniteGroup::cyclic(33), OrderBound);
  CHECK_THROWS_AS(FiniteGroup::fromTable({{0, 1}, {1, 1}}), ValidationError);
}

TEST_CASE("checkpoint dimensions") {
  CHECK(h2Dim(FiniteGroup::cyclic(2), 2) == 1);
  CHECK(h2Dim(FiniteGroup::cyclic(4), 2) == 1);
  CHECK(h2Dim(FiniteGroup::dihedral(8), 2) == 3);
  CHECK(h2Dim(FiniteGroup::klein4(), 2) == 3);
  CHECK(h2Dim(FiniteGroup::cyclic(3), 2) == 0);
  CHECK(h1Dim(FiniteGroup::dihedral(8), 2) == 2);
}

TEST_CASE("cup products") {
  const auto z2 = FiniteGroup::cyclic(2);
  CHECK_FALSE(isZero(cupH1H1(z2, 2, {0, 1}, {0, 1})));
  const auto z4 = FiniteGroup::cyclic(4);
  CHECK(isZero(cupH1H1(z4, 2, {0, 1, 0, 1}, {0, 1, 0, 1})));
  const auto d4 = FiniteGroup::dihedral(8);
  const auto beta = homomorphismFromImages(d4, 2, {1, 4}, {1, 0});
  const auto eps = homomorphismFromImages(d4, 2, {1, 4}, {0, 1});
  GroupFunction sum(beta.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (beta[i] + eps[i]) % 2;
  CHECK(isZero(cupH1H1(d4, 2, beta, sum)));
  CHECK_FALSE(isZero(cupH1H1(d4, 2, beta, beta)));
  CHECK_THROWS_AS(cupH1H1(z2, 2, {1, 1}, {0, 1}), NotAHomomorphism);
  CHECK(homomorphismFromImages(z4, 2, {1}, {1}) == GroupFunction{0, 1, 0, 1});
  CHECK_THROWS_AS(homomorphismFromImages(FiniteGroup::cyclic(3), 2, {1}, {1}), NotAHomomorphism);
}

TEST_CASE("extension classes") {
  const auto z4 = FiniteGroup::cyclic(4);
  const auto z2 = FiniteGroup::cyclic(2);
  const auto nonsplit = extensionClass(z4, 2, z2, {0, 1, 0, 1}, 2);
  CHECK(nonsplit == cupH1H1(z2, 2, {0, 1}, {0, 1}));
  CHECK_FALSE(isZero(nonsplit));

  const auto v = FiniteGroup::klein4();
  CHECK(isZero(extensionClass(v, 1, z2, {0, 0, 1, 1}, 2)));

  // D_4 over its center: compare with beta (eps + beta) on (Z/2)^2
  const auto d4 = FiniteGroup::dihedral(8);
  const std::uint32_t r = 1;
  const auto r2 = d4.mul(r, r);
  std::vector<std::uint32_t> map(8);
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t a = 0; a < 2; ++a) map[i + 4 * a] = (i % 2) + 2 * a;
  const auto cls = extensionClass(d4, r2, v, map, 2);
  const GroupFunction betaBar{0, 1, 0, 1}, epsBar{0, 0, 1, 1};
  GroupFunction sum(4);
  for (int i = 0; i < 4; ++i) sum[i] = (betaBar[i] + epsBar[i]) % 2;
  CHECK(cls == cupH1H1(v, 2, betaBar, sum));
  CHECK_FALSE(isZero(cls));

  const auto s3 = FiniteGroup::dihedral(6);
  CHECK_THROWS_AS(extensionClass(s3, 1, z2, {0, 0, 0, 1, 1, 1}, 3), KernelNotCentral);
  CHECK_THROWS_AS(extensionClass(z4, 2, z2, {0, 1, 1, 0}, 2), NotAHomomorphism);
}

TEST_CASE("section independence") {
  const auto d4 = FiniteGroup::dihedral(8);
  const auto v = FiniteGroup::klein4();
  std::vector<std::uint32_t> map(8);
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t a = 0; a < 2; ++a) map[i + 4 * a] = (i % 2) + 2 * a;
  const auto base = extensionClass(d4, 2, v, map, 2);
  std::mt19937 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<std::uint32_t>> fibers(4);
    for (std::uint32_t g = 0; g < 8; ++g) fibers[map[g]].push_back(g);
    std::vector<std::uint32_t> section(4);
    section[0] = 0;
    for (int q = 1; q < 4; ++q) section[q] = fibers[q][rng() % fibers[q].size()];
    CHECK(extensionClass(d4, 2, v, map, 2, section) == base);
  }
}

TEST_CASE("h1 matches a direct homomorphism count") {
  for (const auto& g : smallGroups())
    for (std::uint32_t p : {2u, 3u}) {
      CAPTURE(g.order());
      CAPTURE(p);
      CHECK(power(p, h1Dim(g, p)) == countHomomorphisms(g, p));
    }
}

TEST_CASE("Kunneth") {
  const std::vector<FiniteGroup> gs{FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::cyclic(3),
                                    FiniteGroup::klein4()};
  for (std::uint32_t p : {2u, 3u})
    for (const auto& g : gs)
      for (const auto& h : gs) {
        if (g.order() * h.order() > 32) continue;
        const auto gh = FiniteGroup::directProduct(g, h);
        CHECK(h2Dim(gh, p) == h2Dim(g, p) + h1Dim(g, p) * h1Dim(h, p) + h2Dim(h, p));
      }
}

TEST_CASE("cup is bilinear and graded commutative") {
  for (const auto& g : smallGroups())
    for (std::uint32_t p : {2u, 3u}) {
      const CocycleSolver s(g, p);
      const auto& basis = s.h1Basis();
      for (const auto& phi : basis)
        for (const auto& psi : basis) {
          const auto a = s.cup(phi, psi);
          auto b = s.cup(psi, phi);
          for (auto& x : b) x = (p - x) % p;
          CHECK(a == b);
          GroupFunction twice(phi.size());
          for (std::size_t i = 0; i < phi.size(); ++i) twice[i] = 2 * phi[i] % p;
          auto doubled = a;
          for (auto& x : doubled) x = 2 * x % p;
          CHECK(s.cup(twice, psi) == doubled);
          for (const auto& chi : basis) {
            GroupFunction sum(phi.size());
            for (std::size_t i = 0; i < phi.size(); ++i) sum[i] = (psi[i] + chi[i]) % p;
            auto expect = a;
            const auto c = s.cup(phi, chi);
            for (std::size_t i = 0; i < expect.size(); ++i) expect[i] = (expect[i] + c[i]) % p;
            CHECK(s.cup(phi, sum) == expect);
          }
        }
    }
}

TEST_CASE("class coordinates of coboundaries vanish") {
  const auto g = FiniteGroup::dihedral(8);
  const CocycleSolver s(g, 2);
  for (std::uint32_t x = 1; x < 8; ++x) {
    Cochain2 c(64, 0);
    // coboundary of the point mass at x
    for (std::uint32_t a = 0; a < 8; ++a)
      for (std::uint32_t b = 0; b < 8; ++b)
        c[a * 8 + b] = ((a == x) + (b == x) + (g.mul(a, b) == x)) % 2;
    CHECK(s.isCocycle(c));
    CHECK(isZero(s.classOf(c)));
  }
  for (const auto& rep : s.h2Representatives()) CHECK(s.isCocycle(rep));
}

TEST_CASE("group json") {
  const auto g = groupFromJson({{"builtin", "dihedral"}, {"order", 8}});
  CHECK(g.order() == 8);
  const auto t = groupFromJson({{"table", {{0, 1}, {1, 0}}}});
  CHECK(h2Dim(t, 2) == 1);
  const auto pr = groupFromJson({{"product", {{{"builtin", "cyclic"}, {"order", 2}}, {{"builtin", "klein4"}}}}});
  CHECK(pr.order() == 8);
}

}
