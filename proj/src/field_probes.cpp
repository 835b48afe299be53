#include "cyclo/errors.hpp"
#include "cyclo/field_model.hpp"

#include <algorithm>
#include <map>

namespace cyclo {

AugBilinearMap fromFieldModel(const FieldModel& m) {
  const auto basis = m.classGroup();
  AugBilinearMap out(m.prime(), basis.representatives.size(), m.symbolDim());
  for (std::size_t i = 0; i < out.d; ++i)
    for (std::size_t j = 0; j < out.d; ++j) {
      const auto s = m.symbol(basis.representatives[i], basis.representatives[j]);
      for (std::size_t k = 0; k < out.e; ++k) out.set(i, j, k, s[k]);
    }
  out.eps = m.classOf(m.fromInteger(-1));
  out.labels = basis.labels;
  return out;
}

PairExpr predictGaloisPair(const FieldModel& m, unsigned precision) {
  const auto p = m.prime();
  switch (m.kind()) {
  case ModelKind::Complex: return PairExpr::trivial(p, precision);
  case ModelKind::Real: return PairExpr::eblock(p, precision);
  case ModelKind::Finite: return PairExpr::zblock(makeUnit(p, m.order(), 1, precision));
  case ModelKind::LocalRational: return PairExpr::ext(1, PairExpr::zblock(makeUnit(p, m.ell(), 1, precision)));
  case ModelKind::Dyadic: {
    PAdicParams b;
    b.n = 3;
    b.q = 2;
    b.caseTag = DemuskinCase::II;
    b.f = 2;
    b.level = 4;
    return PairExpr::padic(2, b, precision);
  }
  case ModelKind::Laurent: return PairExpr::ext(1, predictGaloisPair(m.base(), precision));
  }
  throw InvalidModel("unknown model");
}

bool checkPairingMatch(const FieldModel& m, const PairExpr& e) {
  if (e.prime() != m.prime()) throw ValidationError("model and expression use different primes");
  const auto field = fromFieldModel(m);
  const auto cup = fromCohomology(buildCohomology(e, 2));
  return isomorphic(field, cup, 4);
}

TrichotomicResult trichotomicSearch(const FieldModel& m, const FieldElement& a, std::size_t bound) {
  if (m.isPthPower(a)) throw ValidationError("a is a p-th power");
  TrichotomicResult r;
  r.exhaustive = m.samplesExhaustive(bound);
  const auto one = m.fromInteger(1);
  auto vanishes = [](const FpVec& v) { return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }); };
  for (const auto& b : m.sampleElements(bound)) {
    const auto oneMinusB = m.sub(one, b);
    if (m.isZero(oneMinusB)) continue;
    ++r.tried;
    if (!vanishes(m.symbol(a, b)) || !vanishes(m.symbol(a, oneMinusB))) continue;
    if (!vanishes(m.symbol(a, m.sub(one, m.inv(b))))) continue;
    r.witness = b;
    return r;
  }
  return r;
}

std::string_view targetName(OTarget t) {
  switch (t) {
  case OTarget::OMinus: return "OMinus";
  case OTarget::OPlus: return "OPlus";
  case OTarget::ORing: return "ORing";
  }
  return "?";
}

std::string_view membershipName(Membership v) {
  switch (v) {
  case Membership::Member: return "Member";
  case Membership::NonMember: return "NonMember";
  case Membership::UnknownWithinBound: return "UnknownWithinBound";
  }
  return "?";
}

std::string_view totalRigidityName(TotalRigidity v) {
  switch (v) {
  case TotalRigidity::TotallyRigid: return "TotallyRigid";
  case TotalRigidity::NotTotallyRigid: return "NotTotallyRigid";
  case TotalRigidity::UnknownWithinBound: return "UnknownWithinBound";
  }
  return "?";
}

namespace {

struct SubgroupTest {
  const FieldModel& m;
  std::optional<EchelonBasis> span;

  SubgroupTest(const FieldModel& model, const ClassSubgroup& h) : m(model) {
    if (!h) return;
    span.emplace(m.prime(), m.classDim());
    for (const auto& g : *h) {
      if (g.size() != m.classDim()) throw DimensionMismatch("class vector length differs from the class group dimension");
      FpVec v(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) v[i] = g[i] % m.prime();
      span->insert(v);
    }
  }

  bool inH(const FieldElement& x) const {
    if (m.isZero(x)) return false;
    return !span || span->contains(m.classOf(x));
  }

  // O^- = (1 - S) n H with S the nonzero p-th powers
  bool inOMinus(const FieldElement& x) const {
    if (!inH(x)) return false;
    const auto y = m.sub(m.fromInteger(1), x);
    return !m.isZero(y) && m.isPthPower(y);
  }
};

} // namespace

OVerdict oMembership(const FieldModel& m, const FieldElement& a, const ClassSubgroup& h, OTarget target,
                     std::size_t bound) {
  if (m.kind() != ModelKind::Finite && m.kind() != ModelKind::Laurent)
    throw ModelUnsupported("membership tests need a finite or Laurent model");
  if (m.isZero(a)) throw NotAUnit("0 has no class");
  const SubgroupTest t(m, h);
  OVerdict v;
  v.target = target;
  v.searchBound = bound;

  if (target == OTarget::OMinus || target == OTarget::ORing) {
    if (t.inOMinus(a)) {
      v.verdict = Membership::Member;
      v.reason = "1-a is a p-th power and a lies in H";
      return v;
    }
    if (target == OTarget::OMinus) {
      v.verdict = Membership::NonMember;
      if (!t.inH(a))
        v.reason = "not in H";
      else
        v.reason = "1-a is not a nonzero p-th power";
      return v;
    }
  }

  if (!t.inH(a)) {
    v.verdict = Membership::NonMember;
    v.reason = "not in H";
    return v;
  }
  // a lies in O^+ unless a c leaves O^- for some c in O^-; c runs over 1 - y^p
  const auto one = m.fromInteger(1);
  for (const auto& y : m.sampleElements(bound)) {
    const auto c = m.sub(one, m.pow(y, m.prime()));
    if (!t.inOMinus(c)) continue;
    if (!t.inOMinus(m.mul(a, c))) {
      v.verdict = Membership::NonMember;
      v.witness = c;
      v.reason = "a*c is not in O^-";
      return v;
    }
  }
  if (m.samplesExhaustive(bound)) {
    v.verdict = Membership::Member;
    v.reason = "a*O^- is contained in O^- (exhaustive)";
  } else {
    v.verdict = Membership::UnknownWithinBound;
    v.reason = "no refuting c within the search bound";
  }
  return v;
}

TotalRigidityVerdict isTotallyRigidBounded(const FieldModel& m, std::size_t bound) {
  TotalRigidityVerdict r;
  const auto p = m.prime();
  const auto d = m.classDim();
  if (d == 0) {
    r.verdict = TotalRigidity::TotallyRigid;
    return r;
  }
  std::vector<FpVec> classes;
  forEachVector(p, d, 256, [&](const FpVec& c) { classes.push_back(c); });

  auto tensor = [&](const FpVec& x, const FpVec& y) {
    FpVec t(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) t[i * d + j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x[i]) * y[j] % p);
    return t;
  };
  const auto eps = m.classOf(m.fromInteger(-1));
  EchelonBasis pure(p, d * d);
  for (const auto& c : classes) {
    FpVec minus(d);
    for (std::size_t i = 0; i < d; ++i) minus[i] = (c[i] + eps[i]) % p;
    pure.insert(tensor(c, minus));
  }
  r.pureRank = pure.dim();

  // Steinberg tensors class(x) (x) class(1-x) from sampled x
  EchelonBasis steinberg = pure;
  std::map<std::pair<FpVec, FpVec>, FieldElement> found;
  const auto one = m.fromInteger(1);
  for (const auto& x : m.sampleElements(bound)) {
    const auto y = m.sub(one, x);
    if (m.isZero(y)) continue;
    ++r.tried;
    auto key = std::make_pair(m.classOf(x), m.classOf(y));
    if (found.count(key)) continue;
    const auto t = tensor(key.first, key.second);
    if (!pure.contains(t) && !r.witness) {
      r.witness = x;
      r.witnessLeft = key.first;
      r.witnessRight = key.second;
    }
    steinberg.insert(t);
    found.emplace(std::move(key), x);
  }
  r.steinbergRank = steinberg.dim();
  if (r.witness) {
    r.verdict = TotalRigidity::NotTotallyRigid;
    return r;
  }

  // Remaining class pairs could still contribute unless their symbol is nonzero.
  const auto basis = m.classGroup();
  auto representative = [&](const FpVec& c) {
    auto e = m.fromInteger(1);
    for (std::size_t i = 0; i < d; ++i) e = m.mul(e, m.pow(basis.representatives[i], c[i]));
    return e;
  };
  for (const auto& c1 : classes)
    for (const auto& c2 : classes) {
      const auto t = tensor(c1, c2);
      if (pure.contains(t) || found.count({c1, c2})) continue;
      const auto s = m.symbol(representative(c1), representative(c2));
      if (std::any_of(s.begin(), s.end(), [](auto x) { return x != 0; })) continue;
      ++r.unresolvedPairs;
    }
  r.verdict = r.unresolvedPairs == 0 ? TotalRigidity::TotallyRigid : TotalRigidity::UnknownWithinBound;
  return r;
}

} // namespace cyclo
