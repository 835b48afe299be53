#include "cyclo/cocycle_oracle.hpp"

#include "cyclo/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace cyclo {

FiniteGroup FiniteGroup::fromTable(std::vector<std::vector<std::uint32_t>> table, std::vector<std::string> labels,
                                   std::size_t orderBound) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("a group needs at least one element");
  if (n > orderBound)
    throw OrderBound("group order " + std::to_string(n) + " exceeds the bound " + std::to_string(orderBound));
  for (const auto& row : table) {
    if (row.size() != n) throw ValidationError("multiplication table is not square");
    for (auto x : row)
      if (x >= n) throw ValidationError("table entry out of range");
  }
  for (std::uint32_t x = 0; x < n; ++x)
    if (table[0][x] != x || table[x][0] != x) throw ValidationError("index 0 is not the identity");
  FiniteGroup g;
  g.inverse_.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::vector<bool> rowSeen(n, false), colSeen(n, false);
    for (std::uint32_t y = 0; y < n; ++y) {
      if (rowSeen[table[x][y]] || colSeen[table[y][x]]) throw ValidationError("table is not a Latin square");
      rowSeen[table[x][y]] = colSeen[table[y][x]] = true;
      if (table[x][y] == 0) g.inverse_[x] = y;
    }
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw ValidationError("multiplication is not associative");
  if (labels.empty())
    for (std::size_t x = 0; x < n; ++x) labels.push_back(std::to_string(x));
  if (labels.size() != n) throw ValidationError("label count differs from the group order");
  g.table_ = std::move(table);
  g.labels_ = std::move(labels);
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0) throw ValidationError("cyclic group order must be positive");
  if (n > kDefaultGroupOrderBound) throw OrderBound("group order exceeds the bound");
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  std::vector<std::string> labels;
  for (std::uint32_t a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "1" : a == 1 ? "x" : "x^" + std::to_string(a));
    for (std::uint32_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return fromTable(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(std::uint32_t order) {
  if (order < 2 || order % 2 != 0) throw ValidationError("dihedral order must be even and positive");
  if (order > kDefaultGroupOrderBound) throw OrderBound("group order exceeds the bound");
  const std::uint32_t n = order / 2;
  std::vector<std::vector<std::uint32_t>> t(order, std::vector<std::uint32_t>(order));
  std::vector<std::string> labels;
  for (std::uint32_t x = 0; x < order; ++x) {
    const std::uint32_t i = x % n, a = x / n;
    std::string l = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
    if (a) l += "s";
    labels.push_back(l.empty() ? "1" : l);
    for (std::uint32_t y = 0; y < order; ++y) {
      const std::uint32_t k = y % n, b = y / n;
      // r^i s^a r^k s^b = r^(i +- k) s^(a+b)
      const std::uint32_t rot = a ? (i + n - k) % n : (i + k) % n;
      t[x][y] = rot + n * ((a + b) % 2);
    }
  }
  return fromTable(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::klein4() { return directProduct(cyclic(2), cyclic(2)); }

FiniteGroup FiniteGroup::directProduct(const FiniteGroup& g, const FiniteGroup& h) {
  const auto ng = static_cast<std::uint32_t>(g.order()), nh = static_cast<std::uint32_t>(h.order());
  const std::uint32_t n = ng * nh;
  if (n > kDefaultGroupOrderBound) throw OrderBound("group order exceeds the bound");
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  std::vector<std::string> labels;
  for (std::uint32_t x = 0; x < n; ++x) {
    labels.push_back("(" + g.label(x % ng) + "," + h.label(x / ng) + ")");
    for (std::uint32_t y = 0; y < n; ++y) t[x][y] = g.mul(x % ng, y % ng) + ng * h.mul(x / ng, y / ng);
  }
  return fromTable(std::move(t), std::move(labels));
}

// ----------------------------------------------------------------------- solver

CocycleSolver::CocycleSolver(const FiniteGroup& g, std::uint32_t p)
    : group_(&g), p_(p), n_(g.order()), classSystem_(p, 0, 0) {
  if (!isPrime(p)) throw ValidationError(std::to_string(p) + " is not a prime");
  const std::size_t n = n_;
  if (n == 1) return;

  // H^1: f(g) + f(h) - f(gh) = 0 on unknowns f(1..n-1)
  {
    FpMatrix eq(p, (n - 1) * (n - 1), n - 1);
    std::size_t row = 0;
    for (std::uint32_t a = 1; a < n; ++a)
      for (std::uint32_t b = 1; b < n; ++b, ++row) {
        std::vector<std::int64_t> r(n - 1, 0);
        r[a - 1] += 1;
        r[b - 1] += 1;
        if (const auto ab = g.mul(a, b); ab != 0) r[ab - 1] -= 1;
        for (std::size_t c = 0; c < n - 1; ++c)
          if (r[c]) eq.set(row, c, r[c]);
      }
    for (const auto& v : kernelBasis(eq)) {
      GroupFunction f(n, 0);
      std::copy(v.begin(), v.end(), f.begin() + 1);
      h1_.push_back(std::move(f));
    }
  }

  // Z^2: c(h,k) - c(gh,k) + c(g,hk) - c(g,h) = 0 for g, h, k != 1
  const std::size_t m = (n - 1) * (n - 1);
  EchelonBasis equations(p, m);
  for (std::uint32_t a = 1; a < n; ++a)
    for (std::uint32_t b = 1; b < n; ++b)
      for (std::uint32_t c = 1; c < n; ++c) {
        std::vector<std::int64_t> r(m, 0);
        r[unknown(b, c)] += 1;
        if (const auto ab = g.mul(a, b); ab != 0) r[unknown(ab, c)] -= 1;
        if (const auto bc = g.mul(b, c); bc != 0) r[unknown(a, bc)] += 1;
        r[unknown(a, b)] -= 1;
        FpVec v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<std::uint32_t>(((r[i] % p) + p) % p);
        if (equations.dim() < m) equations.insert(v);
      }
  const auto cocycles = kernelBasis(FpMatrix::fromVectors(p, equations.vectors(), m));

  // B^2 spanned by the coboundaries of point masses
  std::vector<FpVec> boundaries;
  for (std::uint32_t x = 1; x < n; ++x) {
    FpVec v(m, 0);
    for (std::uint32_t a = 1; a < n; ++a)
      for (std::uint32_t b = 1; b < n; ++b) {
        std::int64_t val = (a == x) + (b == x) - (g.mul(a, b) == x);
        v[unknown(a, b)] = static_cast<std::uint32_t>(((val % p) + p) % p);
      }
    boundaries.push_back(std::move(v));
  }
  EchelonBasis span(p, m);
  for (const auto& b : boundaries) span.insert(b);
  std::vector<FpVec> reps;
  for (const auto& z : cocycles)
    if (span.insert(z)) reps.push_back(z);

  classSystem_ = FpMatrix(p, m, reps.size() + boundaries.size());
  std::size_t col = 0;
  for (const auto* list : {&reps, &boundaries})
    for (const auto& v : *list) {
      for (std::size_t i = 0; i < m; ++i) classSystem_.set(i, col, v[i]);
      ++col;
    }
  for (const auto& z : reps) {
    Cochain2 c(n * n, 0);
    for (std::uint32_t a = 1; a < n; ++a)
      for (std::uint32_t b = 1; b < n; ++b) c[a * n + b] = z[unknown(a, b)];
    h2Reps_.push_back(std::move(c));
  }
}

bool CocycleSolver::isHomomorphism(const GroupFunction& f) const {
  if (f.size() != n_) return false;
  for (std::uint32_t a = 0; a < n_; ++a)
    for (std::uint32_t b = 0; b < n_; ++b)
      if ((f[a] + f[b]) % p_ != f[group_->mul(a, b)] % p_) return false;
  return true;
}

bool CocycleSolver::isCocycle(const Cochain2& c) const {
  if (c.size() != n_ * n_) return false;
  for (std::uint32_t a = 0; a < n_; ++a)
    if (c[a] % p_ != 0 || c[a * n_] % p_ != 0) return false;
  const auto& g = *group_;
  for (std::uint32_t a = 1; a < n_; ++a)
    for (std::uint32_t b = 1; b < n_; ++b)
      for (std::uint32_t k = 1; k < n_; ++k) {
        const std::uint64_t lhs = c[b * n_ + k] + c[a * n_ + g.mul(b, k)];
        const std::uint64_t rhs = c[g.mul(a, b) * n_ + k] + c[a * n_ + b];
        if (lhs % p_ != rhs % p_) return false;
      }
  return true;
}

FpVec CocycleSolver::classOf(const Cochain2& c) const {
  if (!isCocycle(c)) throw ValidationError("cochain is not a normalized 2-cocycle");
  if (n_ == 1) return {};
  FpVec rhs((n_ - 1) * (n_ - 1));
  for (std::uint32_t a = 1; a < n_; ++a)
    for (std::uint32_t b = 1; b < n_; ++b) rhs[unknown(a, b)] = c[a * n_ + b] % p_;
  const auto x = solve(classSystem_, rhs);
  if (!x) throw ValidationError("cocycle outside the computed Z^2");
  return FpVec(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(h2Reps_.size()));
}

FpVec CocycleSolver::cup(const GroupFunction& phi, const GroupFunction& psi) const {
  if (!isHomomorphism(phi) || !isHomomorphism(psi)) throw NotAHomomorphism("cup product inputs must be homomorphisms to F_p");
  Cochain2 c(n_ * n_);
  for (std::uint32_t a = 0; a < n_; ++a)
    for (std::uint32_t b = 0; b < n_; ++b)
      c[a * n_ + b] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(phi[a]) * psi[b] % p_);
  return classOf(c);
}

std::size_t h1Dim(const FiniteGroup& g, std::uint32_t p) { return CocycleSolver(g, p).h1Dim(); }
std::size_t h2Dim(const FiniteGroup& g, std::uint32_t p) { return CocycleSolver(g, p).h2Dim(); }

FpVec cupH1H1(const FiniteGroup& g, std::uint32_t p, const GroupFunction& phi, const GroupFunction& psi) {
  return CocycleSolver(g, p).cup(phi, psi);
}

GroupFunction homomorphismFromImages(const FiniteGroup& g, std::uint32_t p,
                                     const std::vector<std::uint32_t>& generators,
                                     const std::vector<std::uint32_t>& images) {
  if (generators.size() != images.size()) throw DimensionMismatch("one image per generator");
  const std::size_t n = g.order();
  std::vector<std::optional<std::uint32_t>> f(n);
  f[0] = 0;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto s = generators[i];
      if (s >= n) throw ValidationError("generator index out of range");
      const auto y = g.mul(x, s);
      const auto value = (*f[x] + images[i]) % p;
      if (!f[y]) {
        f[y] = value;
        queue.push_back(y);
      } else if (*f[y] != value) {
        throw NotAHomomorphism("images are inconsistent with the group relations");
      }
    }
  }
  GroupFunction out(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!f[x]) throw ValidationError("the given elements do not generate the group");
    out[x] = *f[x];
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if ((out[a] + out[b]) % p != out[g.mul(a, b)]) throw NotAHomomorphism("images do not define a homomorphism");
  return out;
}

FpVec extensionClass(const FiniteGroup& total, std::uint32_t kernelGenerator, const FiniteGroup& quotient,
                     const std::vector<std::uint32_t>& quotientMap, std::uint32_t p,
                     std::optional<std::vector<std::uint32_t>> section) {
  const std::size_t n = total.order(), nq = quotient.order();
  if (quotientMap.size() != n) throw DimensionMismatch("quotient map needs one image per element");
  for (auto y : quotientMap)
    if (y >= nq) throw ValidationError("quotient map value out of range");
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (quotientMap[total.mul(a, b)] != quotient.mul(quotientMap[a], quotientMap[b]))
        throw NotAHomomorphism("quotient map is not a homomorphism");
  std::vector<bool> hit(nq, false);
  for (auto y : quotientMap) hit[y] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw ValidationError("quotient map is not onto");

  // kernel = <z> of order p; power[i] = z^i
  if (kernelGenerator >= n) throw ValidationError("kernel generator out of range");
  std::vector<std::uint32_t> power{0};
  for (std::uint32_t i = 1; i < p; ++i) power.push_back(total.mul(power.back(), kernelGenerator));
  const bool cyclicOfOrderP = total.mul(power.back(), kernelGenerator) == 0 &&
                              std::set<std::uint32_t>(power.begin(), power.end()).size() == p;
  std::size_t kernelSize = 0;
  for (auto y : quotientMap) kernelSize += y == 0;
  if (!cyclicOfOrderP || kernelSize != p ||
      std::any_of(power.begin(), power.end(), [&](auto x) { return quotientMap[x] != 0; }))
    throw ValidationError("the kernel must be generated by the given element of order p");
  for (std::uint32_t x = 0; x < n; ++x)
    if (total.mul(kernelGenerator, x) != total.mul(x, kernelGenerator)) throw KernelNotCentral("kernel is not central");

  std::vector<std::uint32_t> s(nq, 0);
  if (section) {
    if (section->size() != nq) throw DimensionMismatch("section needs one value per quotient element");
    s = *section;
    for (std::uint32_t q = 0; q < nq; ++q)
      if (s[q] >= n || quotientMap[s[q]] != q) throw ValidationError("section is not a section of the quotient map");
    if (s[0] != 0) throw ValidationError("section must send the identity to the identity");
  } else {
    std::vector<bool> set(nq, false);
    for (std::uint32_t x = 0; x < n; ++x)
      if (!set[quotientMap[x]]) {
        set[quotientMap[x]] = true;
        s[quotientMap[x]] = x;
      }
  }

  Cochain2 c(nq * nq, 0);
  for (std::uint32_t a = 0; a < nq; ++a)
    for (std::uint32_t b = 0; b < nq; ++b) {
      // s(a)s(b) s(ab)^-1 = z^c(a,b)
      const auto w = total.mul(total.mul(s[a], s[b]), total.inverse(s[quotient.mul(a, b)]));
      const auto it = std::find(power.begin(), power.end(), w);
      c[a * nq + b] = static_cast<std::uint32_t>(it - power.begin());
    }
  return CocycleSolver(quotient, p).classOf(c);
}

FiniteGroup groupFromJson(const nlohmann::json& j, std::size_t orderBound) {
  try {
    if (j.contains("table"))
      return FiniteGroup::fromTable(j.at("table").get<std::vector<std::vector<std::uint32_t>>>(),
                                    j.value("labels", std::vector<std::string>{}), orderBound);
    if (j.contains("product")) {
      const auto& parts = j.at("product");
      if (!parts.is_array() || parts.size() != 2) throw ValidationError("\"product\" takes two groups");
      return FiniteGroup::directProduct(groupFromJson(parts[0], orderBound), groupFromJson(parts[1], orderBound));
    }
    const auto name = j.at("builtin").get<std::string>();
    if (name == "klein4") return FiniteGroup::klein4();
    const auto order = j.at("order").get<std::uint32_t>();
    if (order > orderBound) throw OrderBound("group order exceeds the bound");
    if (name == "cyclic") return FiniteGroup::cyclic(order);
    if (name == "dihedral") return FiniteGroup::dihedral(order);
    throw ValidationError("unknown builtin group " + name);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed group: ") + e.what());
  }
}

} // namespace cyclo
