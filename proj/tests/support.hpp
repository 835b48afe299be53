#pragma once

#include "cyclo/field_model.hpp"
#include "cyclo/pair_expr.hpp"

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

namespace cyclo::testing {

// Random expressions in the text grammar, rank at most maxRank.
class ExprGen {
public:
  ExprGen(std::uint32_t p, std::uint64_t seed) : p_(p), rng_(seed) {}

  std::string text(unsigned maxRank, unsigned depth = 3) {
    if (maxRank == 0) return "triv";
    const int pick = uniform(0, depth == 0 ? 3 : 5);
    switch (pick) {
    case 0: return "triv";
    case 1: return zblock();
    case 2: return p_ == 2 ? "E" : zblock();
    case 3: {
      auto opts = padics(maxRank);
      if (opts.empty()) return zblock();
      return opts[uniform(0, static_cast<int>(opts.size()) - 1)].first;
    }
    case 4: {
      const int k = uniform(2, 3);
      std::string s = "(";
      unsigned left = maxRank;
      for (int i = 0; i < k; ++i) {
        const unsigned share = i + 1 == k ? left : static_cast<unsigned>(uniform(0, static_cast<int>(left)));
        if (i) s += " * ";
        s += text(share, depth - 1);
        left -= share;
      }
      return s + ")";
    }
    default: {
      const unsigned m = static_cast<unsigned>(uniform(1, static_cast<int>(std::min(3u, maxRank))));
      return "ext(" + std::to_string(m) + ", " + text(maxRank - m, depth - 1) + ")";
    }
    }
  }

  // Expression whose root is an extension.
  std::string extText(unsigned maxRank, unsigned depth = 3) {
    const unsigned m = static_cast<unsigned>(uniform(1, static_cast<int>(std::min(3u, maxRank))));
    return "ext(" + std::to_string(m) + ", " + text(maxRank - m, depth) + ")";
  }

  PairExpr expr(unsigned maxRank, unsigned depth = 3) { return parse(text(maxRank, depth), p_); }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  std::string zblock() {
    static const std::vector<std::string> two{"1", "3", "5", "7", "-1", "-3", "9", "17", "1/3", "-1/3", "33"};
    static const std::vector<std::string> three{"1", "4", "7", "10", "-2", "-5", "19", "28", "1/4", "1/7"};
    const auto& pool = p_ == 2 ? two : three;
    return "Z(" + pool[uniform(0, static_cast<int>(pool.size()) - 1)] + ")";
  }

  std::vector<std::pair<std::string, unsigned>> padics(unsigned maxRank) const {
    std::vector<std::pair<std::string, unsigned>> all;
    if (p_ == 2)
      all = {{"padic(n=3,q=2,case=II,f=2)", 3},  {"padic(n=3,q=2,case=II,f=inf)", 3},
             {"padic(n=4,q=4,case=I)", 4},        {"padic(n=4,q=2,case=III,f=2)", 4},
             {"padic(n=4,q=2,case=IV,f=3)", 4},   {"padic(n=5,q=2,case=II,f=3)", 5}};
    else
      all = {{"padic(n=4,q=3,case=I)", 4}, {"padic(n=4,q=9,case=I)", 4}, {"padic(n=6,q=3,case=I)", 6}};
    std::vector<std::pair<std::string, unsigned>> out;
    for (auto& a : all)
      if (a.second <= maxRank) out.push_back(a);
    return out;
  }

private:
  std::uint32_t p_;
  std::mt19937_64 rng_;
};

// Whether a nonzero rational is a square in Q_2: even valuation and odd part 1 mod 8.
inline bool isDyadicSquare(const mpq_class& r) {
  if (r == 0) return false;
  mpz_class num = r.get_num(), den = r.get_den();
  int v = 0;
  while (num % 2 == 0) num /= 2, ++v;
  while (den % 2 == 0) den /= 2, --v;
  if (v % 2 != 0) return false;
  mpz_class u = num * den % 8;
  if (u < 0) u += 8;
  return u == 1;
}

// Hilbert symbol (a,b)_2 read from the norm equation x^2 - a y^2 in b (Q_2^x)^2,
// searched over small integers x, y. Returns 0 for solvable, 1 otherwise.
inline unsigned normEquationSymbol(const mpq_class& a, const mpq_class& b, int range = 64) {
  for (int x = 0; x < range; ++x)
    for (int y = 0; y < range; ++y) {
      const mpq_class n = mpq_class(x * x) - a * y * y;
      if (n == 0) continue;
      if (isDyadicSquare(n / b)) return 0;
    }
  return 1;
}

inline FieldElement ffElem(FiniteField::Elem x) {
  FieldElement e;
  e.ff = x;
  return e;
}

// Exact Laurent polynomial over F_q with a nonzero leading coefficient.
inline FieldElement randomSeries(std::mt19937_64& rng, const FiniteField& f) {
  FieldElement s;
  s.val = static_cast<std::int64_t>(rng() % 7) - 3;
  const std::size_t len = rng() % 4 + 1;
  s.coeffs.push_back(ffElem(static_cast<FiniteField::Elem>(1 + rng() % (f.order() - 1))));
  for (std::size_t i = 1; i < len; ++i) s.coeffs.push_back(ffElem(static_cast<FiniteField::Elem>(rng() % f.order())));
  return s;
}

// Tame symbol of two Laurent series over F_q read off the leading terms:
// (-1)^{v(a)v(b)} a_0^{v(b)} b_0^{-v(a)}, then its class against u by discrete logs.
inline std::uint32_t tameSymbolOracle(const FiniteField& f, const FieldElement& a, const FieldElement& b,
                                      FiniteField::Elem u, std::uint32_t p) {
  const auto va = a.val, vb = b.val;
  auto tame = f.mul(f.pow(a.coeffs[0].ff, vb), f.pow(b.coeffs[0].ff, -va));
  if ((va * vb) % 2 != 0) tame = f.neg(tame);
  const auto lu = f.log(u) % p;
  return static_cast<std::uint32_t>(f.log(tame) % p * modInverse(lu, p) % p);
}

} // namespace cyclo::testing
