// One line per acceptance criterion; exit status is the number of failures.

#include "support.hpp"

#include "cyclo/cocycle_oracle.hpp"
#include "cyclo/cohomology.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/field_model.hpp"
#include "cyclo/rigidity.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace cyclo;

namespace {

// time limits in seconds
constexpr double kLimitQ2 = 1.0;
constexpr double kLimitSymbols = 10.0;
constexpr double kLimitDims = 30.0;
constexpr double kLimitRing = 30.0;
constexpr double kLimitOracle = 5.0;
constexpr double kLimitRigidity = 60.0;
constexpr double kLimitDemuskin = 30.0;
constexpr double kLimitLevel = 30.0;
constexpr double kLimitFields = 10.0;
constexpr double kLimitProbes = 30.0;

// sample sizes
constexpr int kDimsSamples = 500;
constexpr int kTriples = 10000;
constexpr int kRigiditySamples = 200;
constexpr int kDemuskinSamples = 500;
constexpr int kLevelSamples = 1000;
constexpr int kTamePairs = 500;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit) o.require(false, "time limit exceeded");
  std::printf("[%s] criterion %2d  %-44s %7.3f s (limit %.0f s)  %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, limit,
              o.note.str().c_str());
  std::fflush(stdout);
  failures += !o.ok;
}

bool isZero(const FpVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

FpVec unit(std::size_t n, std::size_t i) {
  FpVec v(n, 0);
  v[i] = 1;
  return v;
}

FpMatrix gramOf(const AugBilinearMap& m) {
  FpMatrix g(m.p, m.d, m.d);
  for (std::size_t i = 0; i < m.d; ++i)
    for (std::size_t j = 0; j < m.d; ++j) g.set(i, j, m.at(i, j, 0));
  return g;
}

// Counts invertible 3x3 matrices over F_2 and those carrying x onto y (eps and Gram).
std::pair<int, int> exhaustGL3(const AugBilinearMap& x, const AugBilinearMap& y) {
  int invertible = 0, matches = 0;
  const auto gx = gramOf(x), gy = gramOf(y);
  for (unsigned bits = 0; bits < 512; ++bits) {
    FpMatrix g(2, 3, 3);
    for (unsigned k = 0; k < 9; ++k) g.set(k / 3, k % 3, bits >> k & 1);
    if (rank(g) != 3) continue;
    ++invertible;
    if (g.apply(x.eps) != y.eps) continue;
    // g^T gy g == gx, columns of g are the images of the x basis
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i)
      for (std::size_t j = 0; j < 3 && ok; ++j) {
        std::uint32_t s = 0;
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b) s ^= g(a, i) & gy(a, b) & g(b, j);
        ok = s == gx(i, j);
      }
    matches += ok;
  }
  return {invertible, matches};
}

std::string padicText(const PAdicParams& b) {
  std::string s = "padic(n=" + std::to_string(b.n) + ",q=" + b.q.get_str() + ",case=" + std::string(caseName(b.caseTag));
  if (b.f) s += ",f=" + (*b.f == kInfiniteF ? std::string("inf") : std::to_string(*b.f));
  return s + ")";
}

std::size_t nontrivialFactors(const PairExpr& e) {
  const auto* fp = e.as<node::FreeProd>();
  if (!fp) return 0;
  return static_cast<std::size_t>(std::count_if(fp->factors.begin(), fp->factors.end(),
                                                [](const PairExpr& f) { return !f.is<node::Trivial>(); }));
}

// (1-u)^{1/2} by the binomial series over F_3, to T terms.
FieldElement henselRoot(const FieldModel& m, const FieldElement& u, unsigned terms) {
  auto acc = m.fromInteger(0);
  mpq_class binom = 1; // binom(1/2, k) (-1)^k
  auto power = m.fromInteger(1);
  for (unsigned k = 0; k < terms; ++k) {
    const mpz_class three = 3;
    mpz_class num = binom.get_num() % three, den = binom.get_den() % three;
    if (num < 0) num += 3;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), three.get_mpz_t());
    const mpz_class c = num * inv % 3;
    acc = m.add(acc, m.mul(m.fromInteger(c), power));
    power = m.mul(power, u);
    binom *= mpq_class(1, 2) - k;
    binom /= k + 1;
    binom = -binom;
  }
  return acc;
}

} // namespace

int main() {
  criterion(1, "Q_2 model vs Case II block", kLimitQ2, [](Outcome& o) {
    const auto model = FieldModel::dyadic();
    const auto field = fromFieldModel(model);
    o.require(field.d == 3 && field.e == 1, "d=3, e=1");
    o.require(rank(gramOf(field)) == 3, "nondegenerate Gram");
    const auto block = parse("padic(n=3,q=2,case=II,f=2,s=4)", 2);
    o.require(checkPairingMatch(model, block), "checkPairingMatch");
    const auto [invertible, matches] = exhaustGL3(field, fromCohomology(buildCohomology(block, 2)));
    o.require(invertible == 168, "|GL_3(F_2)| = 168");
    o.require(matches > 0, "an exhaustive GL_3 match exists");
    o.note << "GL3 candidates " << invertible << ", isometries " << matches;
  });

  criterion(2, "Hilbert and tame symbols vs oracles", kLimitSymbols, [](Outcome& o) {
    const auto dy = FieldModel::dyadic();
    int agree = 0;
    for (int a1 : {1, -1})
      for (int a2 : {1, 2})
        for (int a3 : {1, 5})
          for (int b1 : {1, -1})
            for (int b2 : {1, 2})
              for (int b3 : {1, 5}) {
                FieldElement x, y;
                x.q = a1 * a2 * a3;
                y.q = b1 * b2 * b3;
                agree += dy.symbol(x, y) == FpVec{testing::normEquationSymbol(x.q, y.q)};
              }
    o.require(agree == 64, "64 Hilbert pairs");
    std::mt19937_64 rng(20261016);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 3}, {2, 5}, {3, 7}, {2, 9}, {3, 13}};
    int tame = 0, tameAgree = 0;
    for (const auto& [p, q] : fields) {
      const auto model = FieldModel::laurent(FieldModel::finite(p, q), "t", 8);
      const FiniteField f(q);
      const auto u = model.base().classGroup().representatives.front().ff;
      for (int k = 0; k < kTamePairs / static_cast<int>(fields.size()) + 1; ++k) {
        const auto a = testing::randomSeries(rng, f), b = testing::randomSeries(rng, f);
        ++tame;
        tameAgree += model.symbol(a, b) == FpVec{testing::tameSymbolOracle(f, a, b, u, p)};
      }
    }
    o.require(tame >= kTamePairs && tameAgree == tame, "tame symbol agreement");
    o.note << "hilbert " << agree << "/64, tame " << tameAgree << "/" << tame;
  });

  criterion(3, "closed-form vs built dimensions", kLimitDims, [](Outcome& o) {
    int n = 0, ext = 0;
    for (std::uint32_t p : {2u, 3u}) {
      testing::ExprGen gen(p, 3000 + p);
      for (int k = 0; k < kDimsSamples / 2; ++k) {
        const auto e = normalize(gen.expr(8));
        o.require(rank(e) <= 8, "rank bound");
        o.require(buildCohomology(e, 5).dims() == dimsClosedForm(e, 5), "dims " + render(e));
        ++n;
        if (const auto* x = e.as<node::Ext>()) {
          PairExpr iterated = x->base.front();
          for (unsigned j = 0; j < x->m; ++j) iterated = PairExpr::ext(1, iterated);
          o.require(buildCohomology(iterated, 5).dims() == buildCohomology(e, 5).dims(), "iterated " + render(e));
          ++ext;
        }
      }
    }
    o.note << n << " expressions, " << ext << " extension roots";
  });

  criterion(4, "ring associativity and beta squares", kLimitRing, [](Outcome& o) {
    int triples = 0, betas = 0;
    for (std::uint32_t p : {2u, 3u}) {
      testing::ExprGen gen(p, 4000 + p);
      while (triples < (p == 2 ? kTriples / 2 : kTriples)) {
        const auto text = gen.uniform(0, 1) ? gen.extText(6) : gen.text(6);
        const auto a = buildCohomology(normalize(parse(text, p)), 4);
        for (int k = 0; k < 100; ++k) {
          static const unsigned shapes[4][3] = {{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}};
          const auto& sh = shapes[gen.uniform(0, 3)];
          const unsigned i = sh[0], j = sh[1], l = sh[2];
          if (a.dim(i) == 0 || a.dim(j) == 0 || a.dim(l) == 0) continue;
          const auto x = unit(a.dim(i), static_cast<std::size_t>(gen.uniform(0, static_cast<int>(a.dim(i)) - 1)));
          const auto y = unit(a.dim(j), static_cast<std::size_t>(gen.uniform(0, static_cast<int>(a.dim(j)) - 1)));
          const auto z = unit(a.dim(l), static_cast<std::size_t>(gen.uniform(0, static_cast<int>(a.dim(l)) - 1)));
          o.require(a.multiply(i + j, a.multiply(i, x, j, y), l, z) == a.multiply(i, x, j + l, a.multiply(j, y, l, z)),
                    "associativity in " + text);
          ++triples;
        }
        if (const auto& ext = a.extension())
          for (auto b : ext->betaIndex) {
            const auto beta = unit(a.dim(1), b);
            const auto sq = a.multiply(1, beta, 1, beta);
            o.require(p == 2 ? sq == a.multiply(1, a.eps(), 1, beta) : isZero(sq), "beta square in " + text);
            ++betas;
          }
      }
    }
    o.require(triples >= kTriples, "triple count");
    o.note << triples << " triples, " << betas << " beta classes";
  });

  criterion(5, "cocycle oracle checkpoints", kLimitOracle, [](Outcome& o) {
    const auto z2 = FiniteGroup::cyclic(2), z4 = FiniteGroup::cyclic(4), d4 = FiniteGroup::dihedral(8);
    o.require(h2Dim(z2, 2) == 1, "h2(Z/2)");
    o.require(!isZero(cupH1H1(z2, 2, {0, 1}, {0, 1})), "x^2 != 0 on Z/2");
    o.require(h2Dim(z4, 2) == 1, "h2(Z/4)");
    o.require(isZero(cupH1H1(z4, 2, {0, 1, 0, 1}, {0, 1, 0, 1})), "x^2 = 0 on Z/4");
    o.require(h2Dim(d4, 2) == 3, "h2(D_4)");
    const auto beta = homomorphismFromImages(d4, 2, {1, 4}, {1, 0});
    const auto eps = homomorphismFromImages(d4, 2, {1, 4}, {0, 1});
    GroupFunction sum(8);
    for (int i = 0; i < 8; ++i) sum[i] = (beta[i] + eps[i]) % 2;
    o.require(isZero(cupH1H1(d4, 2, beta, sum)), "beta (eps + beta) = 0 on D_4");
    // the same class is the extension class of D_4 over its center
    std::vector<std::uint32_t> map(8);
    for (std::uint32_t i = 0; i < 4; ++i)
      for (std::uint32_t a = 0; a < 2; ++a) map[i + 4 * a] = (i % 2) + 2 * a;
    const auto v = FiniteGroup::klein4();
    const GroupFunction bb{0, 1, 0, 1}, bs{0, 1, 1, 0};
    o.require(extensionClass(d4, 2, v, map, 2) == cupH1H1(v, 2, bb, bs), "D_4 extension class");
  });

  criterion(6, "rigidity criterion and N inside inflation", kLimitRigidity, [](Outcome& o) {
    int n = 0, checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
      testing::ExprGen gen(p, 6000 + p);
      while (n < (p == 2 ? kRigiditySamples / 2 : kRigiditySamples)) {
        const auto e = normalize(parse(gen.extText(6), p));
        if (!e.is<node::Ext>() || rank(e) > 6) continue;
        const auto r = checkRigidityCriterion(e);
        o.require(r.counterexamples.empty(), "classes outside inflation rigid: " + render(e));
        o.require(r.nInsideInflation, "N inside inflation: " + render(e));
        checked += static_cast<int>(r.checked);
        ++n;
      }
    }
    o.note << n << " extensions, " << checked << " classes checked";
  });

  criterion(7, "Demuskin classification", kLimitDemuskin, [](Outcome& o) {
    int n = 0, blocks = 0;
    for (std::uint32_t p : {2u, 3u}) {
      testing::ExprGen gen(p, 7000 + p);
      for (int k = 0; k < kDemuskinSamples / 2; ++k) {
        const auto e = normalize(gen.expr(8));
        const auto v = classifyDemuskin(e);
        ++n;
        if (e.is<node::E>()) {
          o.require(v.isDemuskin && v.n == 1, "E is Demuskin with n=1");
        } else if (e.is<node::Z>()) {
          o.require(!v.isDemuskin, "Z block is not Demuskin");
        } else if (const auto* b = e.as<node::PAdic>()) {
          o.require(v.isDemuskin && v.n == b->params.n && v.q == b->params.q && v.caseTag == b->params.caseTag,
                    "recovered " + render(e));
          ++blocks;
        } else if (nontrivialFactors(e) >= 2) {
          o.require(!v.isDemuskin, "free product " + render(e));
        } else if (e.is<node::Ext>() && rank(e) >= 3) {
          o.require(!v.isDemuskin, "extension " + render(e));
        }
      }
      for (const auto& [text, r] : gen.padics(8)) {
        const auto e = parse(text, p);
        const auto v = classifyDemuskin(e);
        const auto& b = e.as<node::PAdic>()->params;
        o.require(v.isDemuskin && v.n == b.n && v.q == b.q && v.caseTag == b.caseTag && v.f == b.f, "block " + text);
        o.require(parse(padicText(b), p) == e, "block text " + text);
        ++blocks;
      }
    }
    o.note << n << " random expressions, " << blocks << " p-adic blocks";
  });

  criterion(8, "logarithmic level in {1,2,3,inf}", kLimitLevel, [](Outcome& o) {
    testing::ExprGen gen(2, 8000);
    int counts[4] = {0, 0, 0, 0};
    for (int k = 0; k < kLevelSamples; ++k) {
      const auto e = gen.expr(6);
      const auto rec = logLevelRecursive(e, true);
      const auto direct = logLevelDirect(e, 6);
      if (rec.isInfinite()) {
        o.require(!direct.has_value(), "direct >6 for " + render(e));
        ++counts[3];
      } else {
        o.require(*rec.value >= 1 && *rec.value <= 3, "range for " + render(e));
        o.require(direct == rec.value, "direct agrees for " + render(e));
        if (*rec.value >= 1 && *rec.value <= 3) ++counts[*rec.value - 1];
      }
    }
    o.note << "levels 1/2/3/inf: " << counts[0] << "/" << counts[1] << "/" << counts[2] << "/" << counts[3];
  });

  criterion(9, "field models match predicted pairs", kLimitFields, [](Outcome& o) {
    std::vector<FieldModel> models{FieldModel::complex(2), FieldModel::complex(3), FieldModel::real(),
                                   FieldModel::finite(2, 5), FieldModel::finite(2, 9), FieldModel::finite(2, 13),
                                   FieldModel::finite(3, 13), FieldModel::localRational(2, 5),
                                   FieldModel::localRational(3, 7), FieldModel::dyadic()};
    for (std::uint32_t q : {3u, 5u}) {
      const auto one = FieldModel::laurent(FieldModel::finite(2, q), "t", 8);
      models.push_back(one);
      models.push_back(FieldModel::laurent(one, "u", 8));
    }
    int matched = 0;
    for (const auto& m : models) {
      const bool ok = checkPairingMatch(m, predictGaloisPair(m));
      o.require(ok, m.describe() + " (p=" + std::to_string(m.prime()) + ")");
      matched += ok;
    }
    o.note << matched << "/" << models.size() << " models";
  });

  criterion(10, "O(S,H) and total rigidity probes", kLimitProbes, [](Outcome& o) {
    const auto tower = FieldModel::laurent(FieldModel::laurent(FieldModel::finite(2, 3), "t", 8), "u", 8);
    const auto u = tower.parseElement("u");
    // Hensel: 1-u has the square root given by the binomial series
    const unsigned terms = 8;
    const auto root = henselRoot(tower, u, terms);
    const auto defect = tower.sub(tower.mul(root, root), tower.sub(tower.fromInteger(1), u));
    o.require(tower.valuation(defect) >= static_cast<std::int64_t>(terms), "Hensel square root of 1-u");
    o.require(oMembership(tower, u, std::nullopt, OTarget::OMinus, 500).verdict == Membership::Member, "u in O^-");
    const ClassSubgroup evenU = std::vector<FpVec>{{1, 0, 0}, {0, 1, 0}};
    o.require(oMembership(tower, tower.parseElement("t*u"), evenU, OTarget::OMinus, 500).verdict ==
                  Membership::NonMember,
              "t*u outside O^- for even-valuation H");
    const auto f3 = FieldModel::finite(2, 3);
    o.require(oMembership(f3, f3.fromInteger(2), std::vector<FpVec>{}, OTarget::OMinus, 10).verdict ==
                  Membership::NonMember,
              "2 outside O^- in F_3 with H = squares");

    const auto dy = isTotallyRigidBounded(FieldModel::dyadic(), 4096);
    o.require(dy.verdict == TotalRigidity::NotTotallyRigid, "Q_2 not totally rigid");
    const auto f5 = FieldModel::finite(2, 5);
    o.require(f5.samplesExhaustive(100), "F_5 search exhaustive");
    o.require(isTotallyRigidBounded(f5, 100).verdict == TotalRigidity::TotallyRigid, "F_5 totally rigid");
    o.note << "Q_2 witness " << (dy.witness ? FieldModel::dyadic().render(*dy.witness) : std::string("none"));
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
