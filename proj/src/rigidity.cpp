#include "cyclo/rigidity.hpp"

#include "cyclo/errors.hpp"

#include <algorithm>

namespace cyclo {

AugBilinearMap::AugBilinearMap(std::uint32_t p_, std::size_t d_, std::size_t e_)
    : p(p_), d(d_), e(e_), tensor(d_ * d_ * e_, 0), eps(d_, 0) {}

FpVec AugBilinearMap::pair(const FpVec& x, const FpVec& y) const {
  FpVec out(e, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      const std::uint64_t c = static_cast<std::uint64_t>(x[i]) * y[j] % p;
      for (std::size_t k = 0; k < e; ++k)
        out[k] = static_cast<std::uint32_t>((out[k] + c * at(i, j, k)) % p);
    }
  }
  return out;
}

FpMatrix AugBilinearMap::leftMultiplication(const FpVec& x) const {
  FpMatrix m(p, e, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::uint64_t> col(e, 0);
    for (std::size_t i = 0; i < d; ++i)
      if (x[i])
        for (std::size_t k = 0; k < e; ++k) col[k] += static_cast<std::uint64_t>(x[i]) * at(i, j, k);
    for (std::size_t k = 0; k < e; ++k) m.set(k, j, static_cast<std::int64_t>(col[k] % p));
  }
  return m;
}

AugBilinearMap AugBilinearMap::restrict(const std::vector<FpVec>& columns, const FpVec& epsPreimage) const {
  AugBilinearMap r(p, columns.size(), e);
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const auto v = pair(columns[i], columns[j]);
      for (std::size_t k = 0; k < e; ++k) r.set(i, j, k, v[k]);
    }
  r.eps = epsPreimage;
  return r;
}

AugBilinearMap fromCohomology(const GradedAlgebra& a) {
  if (a.maxDegree() < 2) throw DegreeTooSmall("need degrees up to 2");
  AugBilinearMap m(a.prime(), a.dim(1), a.dim(2));
  for (std::size_t i = 0; i < m.d; ++i)
    for (std::size_t j = 0; j < m.d; ++j) {
      const auto v = a.gram(i, j);
      for (std::size_t k = 0; k < m.e; ++k) m.set(i, j, k, v[k]);
    }
  m.eps = a.eps();
  m.labels = a.labels(1);
  return m;
}

void forEachVector(std::uint32_t p, std::size_t d, std::uint64_t bound,
                   const std::function<void(const FpVec&)>& visit) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    count *= p;
    if (count > bound)
      throw DimensionTooLarge("p^d = " + std::to_string(p) + "^" + std::to_string(d) +
                              " exceeds the enumeration bound " + std::to_string(bound));
  }
  FpVec v(d, 0);
  for (std::uint64_t n = 0; n < count; ++n) {
    visit(v);
    for (std::size_t i = 0; i < d; ++i) {
      if (++v[i] < p) break;
      v[i] = 0;
    }
  }
}

namespace {

void checkBound(const AugBilinearMap& m, std::uint64_t bound) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m.d; ++i) {
    count *= m.p;
    if (count > bound) throw DimensionTooLarge("p^d exceeds the enumeration bound " + std::to_string(bound));
  }
}

bool isZero(const FpVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

// The zero set {b : (a, b) = 0} is the kernel of left multiplication, so the
// quantifier over b reduces to comparing that kernel with the line through eps + a.
bool rigidUnchecked(const AugBilinearMap& m, const FpVec& a) {
  const auto kernel = kernelBasis(m.leftMultiplication(a));
  if (kernel.empty()) return true;
  if (kernel.size() > 1) return false;
  FpVec line(m.d);
  for (std::size_t i = 0; i < m.d; ++i) line[i] = (a[i] + m.eps[i]) % m.p;
  if (isZero(line)) return false;
  EchelonBasis span(m.p, m.d);
  span.insert(line);
  return span.contains(kernel.front());
}

} // namespace

bool isRigid(const AugBilinearMap& m, const FpVec& a, std::uint64_t bound) {
  if (a.size() != m.d) throw DimensionMismatch("vector length differs from dim A1");
  if (isZero(a)) throw ValidationError("rigidity is defined for nonzero elements");
  checkBound(m, bound);
  return rigidUnchecked(m, a);
}

RigidityScan scanRigidity(const AugBilinearMap& m, std::uint64_t bound) {
  RigidityScan scan;
  EchelonBasis n(m.p, m.d);
  if (m.d > 0) n.insert(m.eps);
  forEachVector(m.p, m.d, bound, [&](const FpVec& a) {
    if (isZero(a)) return;
    if (rigidUnchecked(m, a)) {
      scan.rigid.push_back(a);
    } else {
      scan.nonRigid.push_back(a);
      n.insert(a);
    }
  });
  scan.nBasis = n.vectors();
  return scan;
}

std::vector<FpVec> nSubspace(const AugBilinearMap& m, std::uint64_t bound) {
  return scanRigidity(m, bound).nBasis;
}

CriterionReport checkRigidityCriterion(const PairExpr& e, std::uint64_t bound) {
  if (!e.is<node::Ext>()) throw NotAnExtension("expression is not an extension at its root");
  const auto algebra = buildCohomology(e, 2);
  const auto m = fromCohomology(algebra);
  EchelonBasis inflation(m.p, m.d);
  for (auto idx : algebra.extension()->inflatedIndex) {
    FpVec v(m.d, 0);
    v[idx] = 1;
    inflation.insert(v);
  }
  CriterionReport r;
  r.inflationDim = inflation.dim();
  const auto scan = scanRigidity(m, bound);
  for (const auto& a : scan.nonRigid)
    if (!inflation.contains(a)) r.counterexamples.push_back(a);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m.d; ++i) total *= m.p;
  std::uint64_t inside = 1;
  for (std::size_t i = 0; i < inflation.dim(); ++i) inside *= m.p;
  r.checked = total - inside;
  r.nSubspaceDim = scan.nBasis.size();
  for (const auto& v : scan.nBasis)
    if (!inflation.contains(v)) r.nInsideInflation = false;
  return r;
}

namespace {

struct IsoSearch {
  const AugBilinearMap& x;
  const AugBilinearMap& y;
  std::size_t epsLast; // last nonzero index of x.eps, or d when eps = 0
  std::vector<FpVec> columns;

  // Pairing values on the assigned block must be related by a single
  // invertible map of A2: equal ranks of both sides and of their juxtaposition.
  bool consistent() const {
    const std::size_t k = columns.size();
    std::vector<FpVec> left, right, both;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        FpVec l(x.e);
        for (std::size_t c = 0; c < x.e; ++c) l[c] = x.at(i, j, c);
        FpVec r = y.pair(columns[i], columns[j]);
        FpVec lr = l;
        lr.insert(lr.end(), r.begin(), r.end());
        left.push_back(std::move(l));
        right.push_back(std::move(r));
        both.push_back(std::move(lr));
      }
    const auto rl = rank(FpMatrix::fromVectors(x.p, left, x.e));
    const auto rr = rank(FpMatrix::fromVectors(x.p, right, x.e));
    if (rl != rr) return false;
    return rank(FpMatrix::fromVectors(x.p, both, 2 * x.e)) == rl;
  }

  bool epsMatches() const {
    FpVec image(x.d, 0);
    for (std::size_t i = 0; i < columns.size(); ++i)
      for (std::size_t r = 0; r < x.d; ++r)
        image[r] = static_cast<std::uint32_t>((image[r] + static_cast<std::uint64_t>(x.eps[i]) * columns[i][r]) % x.p);
    return image == y.eps;
  }

  bool extend(const EchelonBasis& span) {
    const std::size_t k = columns.size();
    if (k == x.d) return epsMatches();
    bool found = false;
    forEachVector(x.p, x.d, ~std::uint64_t{0}, [&](const FpVec& v) {
      if (found || span.contains(v)) return;
      columns.push_back(v);
      if (consistent() && (k != epsLast || epsMatches())) {
        EchelonBasis next = span;
        next.insert(v);
        if (extend(next)) {
          found = true;
          return;
        }
      }
      columns.pop_back();
    });
    return found;
  }
};

} // namespace

std::optional<FpMatrix> findIsomorphism(const AugBilinearMap& x, const AugBilinearMap& y, std::size_t maxDim) {
  if (x.p != y.p || x.d != y.d || x.e != y.e) return std::nullopt;
  if (x.d > maxDim || x.e > maxDim)
    throw DimensionTooLarge("isomorphism search limited to dimension " + std::to_string(maxDim));
  if (isZero(x.eps) != isZero(y.eps)) return std::nullopt;
  auto flat = [](const AugBilinearMap& m) {
    std::vector<FpVec> rows;
    for (std::size_t i = 0; i < m.d * m.d; ++i)
      rows.emplace_back(m.tensor.begin() + static_cast<std::ptrdiff_t>(i * m.e),
                        m.tensor.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.e));
    return rank(FpMatrix::fromVectors(m.p, rows, m.e));
  };
  if (flat(x) != flat(y)) return std::nullopt;

  std::size_t epsLast = x.d;
  for (std::size_t i = 0; i < x.d; ++i)
    if (x.eps[i]) epsLast = i;
  // the eps check fires once its last coordinate is assigned; with eps = 0 it is automatic
  IsoSearch search{x, y, epsLast == x.d ? x.d + 1 : epsLast, {}};
  if (x.d == 0) return FpMatrix(x.p, 0, 0);
  if (!search.extend(EchelonBasis(x.p, x.d))) return std::nullopt;
  FpMatrix g(x.p, x.d, x.d);
  for (std::size_t c = 0; c < x.d; ++c)
    for (std::size_t r = 0; r < x.d; ++r) g.set(r, c, search.columns[c][r]);
  return g;
}

std::string renderVector(const AugBilinearMap& m, const FpVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (v[i] != 1) out += std::to_string(v[i]) + "*";
    out += i < m.labels.size() ? m.labels[i] : "e" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json toJson(const AugBilinearMap& m) {
  nlohmann::json j;
  j["p"] = m.p;
  j["d"] = m.d;
  j["e"] = m.e;
  auto t = nlohmann::json::array();
  for (std::size_t a = 0; a < m.d; ++a) {
    auto row = nlohmann::json::array();
    for (std::size_t b = 0; b < m.d; ++b) {
      std::vector<std::uint32_t> v(m.e);
      for (std::size_t k = 0; k < m.e; ++k) v[k] = m.at(a, b, k);
      row.push_back(v);
    }
    t.push_back(row);
  }
  j["pairing"] = t;
  j["eps"] = m.eps;
  if (!m.labels.empty()) j["basis"] = m.labels;
  return j;
}

nlohmann::json toJson(const AugBilinearMap& m, const RigidityScan& scan) {
  nlohmann::json j;
  auto names = [&](const std::vector<FpVec>& vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(renderVector(m, v));
    return out;
  };
  j["rigid"] = names(scan.rigid);
  j["nonRigid"] = names(scan.nonRigid);
  j["nSubspaceDim"] = scan.nBasis.size();
  j["nSubspace"] = names(scan.nBasis);
  return j;
}

nlohmann::json toJson(const CriterionReport& r) {
  return {{"holds", r.holds()},
          {"inflationDim", r.inflationDim},
          {"checked", r.checked},
          {"counterexamples", r.counterexamples},
          {"nSubspaceDim", r.nSubspaceDim},
          {"nInsideInflation", r.nInsideInflation}};
}

} // namespace cyclo
