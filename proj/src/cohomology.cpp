#include "cyclo/cohomology.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/json_util.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace cyclo {

GradedAlgebra::GradedAlgebra(std::uint32_t p, unsigned maxDegree)
    : p_(p), maxDegree_(maxDegree), labels_(maxDegree + 1),
      table_(maxDegree + 1, std::vector<std::vector<std::uint32_t>>(maxDegree + 1)) {
  labels_[0] = {"1"};
}

std::vector<std::size_t> GradedAlgebra::dims() const {
  std::vector<std::size_t> d;
  for (const auto& l : labels_) d.push_back(l.size());
  return d;
}

void GradedAlgebra::setBasis(unsigned degree, std::vector<std::string> labels) {
  labels_.at(degree) = std::move(labels);
}

void GradedAlgebra::allocateProducts() {
  for (unsigned i = 0; i <= maxDegree_; ++i)
    for (unsigned j = 0; i + j <= maxDegree_; ++j)
      table_[i][j].assign(dim(i) * dim(j) * dim(i + j), 0);
  for (unsigned i = 0; i <= maxDegree_; ++i)
    for (std::size_t a = 0; a < dim(i); ++a) {
      table_[0][i][offset(0, 0, i, a) + a] = 1;
      table_[i][0][offset(i, a, 0, 0) + a] = 1;
    }
  if (eps_.size() != dim(1)) eps_.assign(dim(1), 0);
}

std::size_t GradedAlgebra::offset(unsigned i, std::size_t a, unsigned j, std::size_t b) const {
  return (a * dim(j) + b) * dim(i + j);
}

std::span<const std::uint32_t> GradedAlgebra::product(unsigned i, std::size_t a, unsigned j,
                                                      std::size_t b) const {
  if (i + j > maxDegree_) throw DegreeTooSmall("product beyond the truncation degree");
  const auto& t = table_[i][j];
  return {t.data() + offset(i, a, j, b), dim(i + j)};
}

void GradedAlgebra::setProduct(unsigned i, std::size_t a, unsigned j, std::size_t b,
                               std::span<const std::uint32_t> value) {
  auto& t = table_[i][j];
  std::copy(value.begin(), value.end(), t.begin() + static_cast<std::ptrdiff_t>(offset(i, a, j, b)));
}

FpVec GradedAlgebra::multiply(unsigned i, const FpVec& x, unsigned j, const FpVec& y) const {
  if (i + j > maxDegree_) throw DegreeTooSmall("product beyond the truncation degree");
  FpVec out(dim(i + j), 0);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (y[b] == 0) continue;
      const std::uint64_t c = static_cast<std::uint64_t>(x[a]) * y[b] % p_;
      const auto prod = product(i, a, j, b);
      for (std::size_t k = 0; k < prod.size(); ++k)
        if (prod[k]) out[k] = static_cast<std::uint32_t>((out[k] + c * prod[k]) % p_);
    }
  }
  return out;
}

FpVec GradedAlgebra::epsPower(unsigned k) const {
  if (k == 0) return {1};
  FpVec acc = eps_;
  for (unsigned m = 2; m <= k; ++m) acc = multiply(m - 1, acc, 1, eps_);
  return acc;
}

namespace {

std::vector<std::string> oneLabel(std::string s) { return {std::move(s)}; }

GradedAlgebra trivialAlgebra(std::uint32_t p, unsigned D) {
  GradedAlgebra a(p, D);
  a.allocateProducts();
  return a;
}

GradedAlgebra zAlgebra(std::uint32_t p, unsigned D, std::uint32_t eps) {
  GradedAlgebra a(p, D);
  if (D >= 1) a.setBasis(1, oneLabel("z"));
  a.allocateProducts();
  if (D >= 1) a.setEps({eps});
  return a;
}

// Polynomial ring on eps truncated at degree D.
GradedAlgebra eAlgebra(unsigned D) {
  GradedAlgebra a(2, D);
  for (unsigned i = 1; i <= D; ++i) a.setBasis(i, oneLabel(i == 1 ? "e" : "e^" + std::to_string(i)));
  a.allocateProducts();
  const std::uint32_t one = 1;
  for (unsigned i = 1; i <= D; ++i)
    for (unsigned j = 1; i + j <= D; ++j) a.setProduct(i, 0, j, 0, {&one, 1});
  if (D >= 1) a.setEps({1});
  return a;
}

// Gram matrix of the one-relator presentation: bracketed pairs give the
// off-diagonal entries, squares x_i^2 (exponent 2 mod 4) the diagonal.
std::vector<std::vector<std::uint32_t>> padicGram(std::uint32_t p, const PAdicParams& b,
                                                  FpVec& eps) {
  const unsigned n = b.n;
  std::vector<std::vector<std::uint32_t>> g(n, std::vector<std::uint32_t>(n, 0));
  eps.assign(n, 0);
  auto pairUp = [&](unsigned first) {
    for (unsigned i = first; i + 1 < n; i += 2) {
      g[i][i + 1] = 1;
      g[i + 1][i] = p == 2 ? 1 : p - 1;
    }
  };
  switch (b.caseTag) {
  case DemuskinCase::I: // x1^q [x1,x2] ... [x_{n-1},x_n]
    pairUp(0);
    break;
  case DemuskinCase::II: // x1^2 x2^{2^f} [x2,x3] [x4,x5] ...
    g[0][0] = 1;
    pairUp(1);
    eps[0] = 1;
    break;
  case DemuskinCase::III: // x1^{2+2^f} [x1,x2] [x3,x4] ...
    g[0][0] = 1;
    pairUp(0);
    eps[1] = 1;
    break;
  case DemuskinCase::IV: // x1^2 [x1,x2] x3^{2^f} [x3,x4] ...
    g[0][0] = 1;
    pairUp(0);
    eps[1] = 1;
    break;
  }
  return g;
}

GradedAlgebra padicAlgebra(std::uint32_t p, unsigned D, const PAdicParams& b) {
  GradedAlgebra a(p, D);
  std::vector<std::string> xs;
  for (unsigned i = 1; i <= b.n; ++i) xs.push_back("x" + std::to_string(i));
  a.setBasis(1, std::move(xs));
  if (D >= 2) a.setBasis(2, oneLabel("w"));
  FpVec eps;
  const auto g = padicGram(p, b, eps);
  a.setEps(eps);
  a.allocateProducts();
  if (D >= 2)
    for (unsigned i = 0; i < b.n; ++i)
      for (unsigned j = 0; j < b.n; ++j) a.setProduct(1, i, 1, j, {&g[i][j], 1});
  return a;
}

GradedAlgebra freeProductAlgebra(std::uint32_t p, unsigned D, const std::vector<GradedAlgebra>& parts) {
  GradedAlgebra a(p, D);
  // offsets[k][i]: first index of part k in degree i
  std::vector<std::vector<std::size_t>> offsets(parts.size(), std::vector<std::size_t>(D + 1, 0));
  for (unsigned i = 1; i <= D; ++i) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      offsets[k][i] = labels.size();
      for (const auto& l : parts[k].labels(i)) labels.push_back("g" + std::to_string(k + 1) + ":" + l);
    }
    a.setBasis(i, std::move(labels));
  }
  FpVec eps;
  for (const auto& part : parts) eps.insert(eps.end(), part.eps().begin(), part.eps().end());
  a.setEps(std::move(eps));
  a.allocateProducts();
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& part = parts[k];
    for (unsigned i = 1; i <= D; ++i)
      for (unsigned j = 1; i + j <= D; ++j)
        for (std::size_t x = 0; x < part.dim(i); ++x)
          for (std::size_t y = 0; y < part.dim(j); ++y) {
            const auto src = part.product(i, x, j, y);
            FpVec value(a.dim(i + j), 0);
            std::copy(src.begin(), src.end(), value.begin() + static_cast<std::ptrdiff_t>(offsets[k][i + j]));
            a.setProduct(i, offsets[k][i] + x, j, offsets[k][j] + y, value);
          }
  }
  return a;
}

// Basis of Z_p^m x| G: inf(phi) * b_{l1} * ... * b_{lj} with l1 < ... < lj.
GradedAlgebra extensionAlgebra(unsigned m, const GradedAlgebra& base) {
  const std::uint32_t p = base.prime();
  const unsigned D = base.maxDegree();
  if (m > 63) throw DimensionTooLarge("extension rank above 63 is not supported");

  struct Entry {
    unsigned baseDegree;
    std::size_t baseIndex;
    std::uint64_t mask;
  };
  std::vector<std::vector<Entry>> entries(D + 1);
  std::vector<std::map<std::pair<std::uint64_t, std::size_t>, std::size_t>> index(D + 1);

  // Subsets of {0..m-1} grouped by size, each group in lexicographic order.
  std::vector<std::vector<std::uint64_t>> subsetsBySize(std::min(m, D) + 1);
  {
    std::vector<std::vector<unsigned>> lists;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned start) -> void {
      lists.push_back(cur);
      if (cur.size() == subsetsBySize.size() - 1) return;
      for (unsigned l = start; l < m; ++l) {
        cur.push_back(l);
        self(self, l + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    std::stable_sort(lists.begin(), lists.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& l : lists) {
      std::uint64_t mask = 0;
      for (auto v : l) mask |= std::uint64_t{1} << v;
      subsetsBySize[l.size()].push_back(mask);
    }
  }

  GradedAlgebra a(p, D);
  for (unsigned i = 0; i <= D; ++i) {
    std::vector<std::string> labels;
    for (unsigned s = 0; s <= i && s < subsetsBySize.size(); ++s)
      for (auto mask : subsetsBySize[s])
        for (std::size_t b = 0; b < base.dim(i - s); ++b) {
          std::string label;
          if (s == 0 || i - s > 0) label = base.labels(i - s)[b];
          for (unsigned l = 0; l < m; ++l)
            if (mask >> l & 1) label += (label.empty() ? "" : "*") + std::string("b") + std::to_string(l + 1);
          index[i][{mask, b}] = entries[i].size();
          entries[i].push_back({i - s, b, mask});
          labels.push_back(std::move(label));
        }
    a.setBasis(i, std::move(labels));
  }

  FpVec eps(a.dim(1), 0);
  GradedAlgebra::ExtensionData ext;
  ext.m = m;
  for (std::size_t k = 0; k < entries[1].size(); ++k) {
    const auto& en = entries[1][k];
    if (en.mask == 0) {
      eps[k] = base.eps()[en.baseIndex];
      ext.inflatedIndex.push_back(k);
    } else {
      ext.betaIndex.push_back(k);
    }
  }
  a.setEps(std::move(eps));
  a.setExtension(std::move(ext));
  a.allocateProducts();

  const auto& baseEps = base.eps();
  for (unsigned i = 1; i <= D; ++i)
    for (unsigned j = 1; i + j <= D; ++j)
      for (std::size_t x = 0; x < entries[i].size(); ++x)
        for (std::size_t y = 0; y < entries[j].size(); ++y) {
          const auto& e1 = entries[i][x];
          const auto& e2 = entries[j][y];
          const std::uint64_t both = e1.mask & e2.mask;
          if (p != 2 && both) continue; // b_l * b_l = 0 for odd p
          const unsigned s = static_cast<unsigned>(std::popcount(e1.mask));
          // inf(u) b_S inf(v) b_T = (-1)^{|S| deg v} inf(u v) b_S b_T
          bool negative = (s * e2.baseDegree) % 2 == 1;
          if (p != 2) {
            unsigned inversions = 0;
            for (unsigned l = 0; l < m; ++l)
              if (e2.mask >> l & 1) inversions += static_cast<unsigned>(std::popcount(e1.mask >> (l + 1)));
            negative ^= inversions % 2 == 1;
          }
          const auto raw = base.product(e1.baseDegree, e1.baseIndex, e2.baseDegree, e2.baseIndex);
          FpVec c(raw.begin(), raw.end());
          unsigned deg = e1.baseDegree + e2.baseDegree;
          // b_l * b_l = eps * b_l for p = 2
          for (int k = std::popcount(both); k > 0; --k) {
            c = base.multiply(deg, c, 1, baseEps);
            ++deg;
          }
          const std::uint64_t mask = e1.mask | e2.mask;
          FpVec value(a.dim(i + j), 0);
          for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            const auto target = index[i + j].at({mask, k});
            value[target] = negative ? (p - c[k]) % p : c[k];
          }
          a.setProduct(i, x, j, y, value);
        }
  return a;
}

GradedAlgebra build(const PairExpr& e, unsigned D) {
  const auto p = e.prime();
  return std::visit(
      [&](const auto& n) -> GradedAlgebra {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Trivial>) {
          return trivialAlgebra(p, D);
        } else if constexpr (std::is_same_v<T, node::Z>) {
          return zAlgebra(p, D, epsilonOf(n.alpha));
        } else if constexpr (std::is_same_v<T, node::E>) {
          return eAlgebra(D);
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          return padicAlgebra(p, D, n.params);
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          std::vector<GradedAlgebra> parts;
          for (const auto& f : n.factors) parts.push_back(build(f, D));
          return freeProductAlgebra(p, D, parts);
        } else {
          return extensionAlgebra(n.m, build(n.base.front(), D));
        }
      },
      e.node());
}

} // namespace

GradedAlgebra buildCohomology(const PairExpr& e, unsigned maxDegree) {
  if (maxDegree < 2) throw DegreeTooSmall("maximal degree must be at least 2");
  return build(e, maxDegree);
}

std::vector<std::size_t> dimsClosedForm(const PairExpr& e, unsigned maxDegree) {
  const unsigned D = maxDegree;
  std::vector<std::size_t> d(D + 1, 0);
  d[0] = 1;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Z>) {
          if (D >= 1) d[1] = 1;
        } else if constexpr (std::is_same_v<T, node::E>) {
          std::fill(d.begin(), d.end(), 1);
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          if (D >= 1) d[1] = n.params.n;
          if (D >= 2) d[2] = 1;
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          for (const auto& f : n.factors) {
            const auto sub = dimsClosedForm(f, D);
            for (unsigned i = 1; i <= D; ++i) d[i] += sub[i];
          }
        } else if constexpr (std::is_same_v<T, node::Ext>) {
          // dim H^i(G) = sum_j C(m, j) dim H^{i-j}(base)
          const auto sub = dimsClosedForm(n.base.front(), D);
          std::vector<std::size_t> binom(D + 1, 0);
          binom[0] = 1;
          for (unsigned j = 1; j <= D; ++j) binom[j] = j > n.m ? 0 : binom[j - 1] * (n.m - j + 1) / j;
          for (unsigned i = 0; i <= D; ++i) {
            std::size_t s = 0;
            for (unsigned j = 0; j <= i; ++j) s += binom[j] * sub[i - j];
            d[i] = s;
          }
        }
      },
      e.node());
  return d;
}

std::optional<FpMatrix> cupGramMatrix(const GradedAlgebra& a) {
  if (a.maxDegree() < 2 || a.dim(2) != 1) return std::nullopt;
  const auto n = a.dim(1);
  FpMatrix g(a.prime(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.set(i, j, a.gram(i, j)[0]);
  return g;
}

bool isDemuskin(const PairExpr& e) {
  const auto a = buildCohomology(e, 2);
  const auto g = cupGramMatrix(a);
  return g && rank(*g) == a.dim(1);
}

DemuskinVerdict classifyDemuskin(const PairExpr& e) {
  DemuskinVerdict v;
  if (!isDemuskin(e)) return v;
  v.isDemuskin = true;
  v.n = rank(e);
  const auto theta = thetaImage(e);
  v.q = theta.q(e.prime());
  if (v.q != 2)
    v.caseTag = DemuskinCase::I;
  else if (v.n % 2 == 1)
    v.caseTag = DemuskinCase::II;
  else
    v.caseTag = theta.squareIndex == 4 ? DemuskinCase::IV : DemuskinCase::III;
  const auto normal = normalize(e);
  if (const auto* b = normal.as<node::PAdic>()) v.f = b->params.f;
  return v;
}

LogLevel logLevelRecursive(const PairExpr& e, bool requireTwo) {
  if (e.prime() != 2) {
    if (requireTwo) throw WrongPrime("the logarithmic level is defined for p=2");
    return {1};
  }
  return std::visit(
      [&](const auto& n) -> LogLevel {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Trivial>) {
          return {1};
        } else if constexpr (std::is_same_v<T, node::Z>) {
          return {epsilonOf(n.alpha) == 0 ? 1u : 2u};
        } else if constexpr (std::is_same_v<T, node::E>) {
          return LogLevel::infinite();
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          const unsigned s = n.params.level.value_or(1);
          return {static_cast<unsigned>(std::bit_width(s))}; // log2(s) + 1
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          LogLevel best{1};
          for (const auto& f : n.factors) {
            const auto l = logLevelRecursive(f);
            if (l.isInfinite()) return l;
            best.value = std::max(*best.value, *l.value);
          }
          return best;
        } else {
          return logLevelRecursive(n.base.front());
        }
      },
      e.node());
}

std::optional<unsigned> logLevelDirect(const PairExpr& e, unsigned maxDegree) {
  const auto a = buildCohomology(e, maxDegree);
  FpVec power = a.eps();
  for (unsigned m = 1; m <= maxDegree; ++m) {
    if (std::all_of(power.begin(), power.end(), [](auto x) { return x == 0; })) return m;
    if (m < maxDegree) power = a.multiply(m, power, 1, a.eps());
  }
  return std::nullopt;
}

nlohmann::json toJson(const GradedAlgebra& a) {
  nlohmann::json j;
  j["p"] = a.prime();
  j["maxDegree"] = a.maxDegree();
  j["dims"] = a.dims();
  const auto d = a.dim(1);
  auto gram = nlohmann::json::array();
  for (std::size_t x = 0; x < d; ++x) {
    auto row = nlohmann::json::array();
    for (std::size_t y = 0; y < d; ++y) {
      const auto v = a.gram(x, y);
      if (v.size() == 1)
        row.push_back(v[0]);
      else
        row.push_back(std::vector<std::uint32_t>(v.begin(), v.end()));
    }
    gram.push_back(row);
  }
  j["gram"] = gram;
  j["eps"] = a.eps();
  auto basis = nlohmann::json::array();
  for (unsigned i = 0; i <= a.maxDegree(); ++i) basis.push_back(a.labels(i));
  j["basis"] = basis;
  if (const auto& ext = a.extension()) {
    j["extension"] = {{"m", ext->m}, {"beta", ext->betaIndex}, {"inflated", ext->inflatedIndex}};
  }
  return j;
}

} // namespace cyclo
