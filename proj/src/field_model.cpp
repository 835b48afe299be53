#include "cyclo/field_model.hpp"

#include "cyclo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>

namespace cyclo {

namespace {

constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

std::uint32_t positiveMod(std::int64_t v, std::uint32_t p) {
  auto m = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(m < 0 ? m + p : m);
}

// v_ell of a nonzero rational together with the unit part num/den.
std::int64_t rationalValuation(const mpq_class& x, std::uint32_t ell, mpz_class& num, mpz_class& den) {
  num = x.get_num();
  den = x.get_den();
  std::int64_t v = 0;
  while (mpz_divisible_ui_p(num.get_mpz_t(), ell)) {
    num /= ell;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), ell)) {
    den /= ell;
    --v;
  }
  return v;
}

bool plainToken(const std::string& s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (i == 0 && c == '-') continue;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '^' && c != '_') return false;
  }
  return true;
}

std::string monomial(const std::string& var, std::int64_t n) {
  if (n == 1) return var;
  return var + "^" + std::to_string(n);
}

} // namespace

// ---------------------------------------------------------------- construction

FieldModel FieldModel::finite(std::uint32_t p, std::uint32_t q) {
  if (!isPrime(p)) throw InvalidModel(std::to_string(p) + " is not a prime");
  FieldModel m;
  m.kind_ = ModelKind::Finite;
  m.p_ = p;
  m.field_ = std::make_shared<const FiniteField>(q);
  if ((q - 1) % p != 0)
    throw InvalidModel("F_" + std::to_string(q) + " does not contain the " + std::to_string(p) + "-th roots of unity");
  return m;
}

FieldModel FieldModel::localRational(std::uint32_t p, std::uint32_t ell) {
  if (!isPrime(p)) throw InvalidModel(std::to_string(p) + " is not a prime");
  if (!isPrime(ell) || ell == p) throw InvalidModel("Q_ell needs a prime ell different from p");
  if (p != 2 && ell % p != 1) throw InvalidModel("Q_" + std::to_string(ell) + " lacks the " + std::to_string(p) + "-th roots of unity");
  FieldModel m;
  m.kind_ = ModelKind::LocalRational;
  m.p_ = p;
  m.ell_ = ell;
  m.residue_ = std::make_shared<const FieldModel>(finite(p, ell));
  return m;
}

FieldModel FieldModel::dyadic() {
  FieldModel m;
  m.kind_ = ModelKind::Dyadic;
  m.p_ = 2;
  return m;
}

FieldModel FieldModel::real() {
  FieldModel m;
  m.kind_ = ModelKind::Real;
  m.p_ = 2;
  return m;
}

FieldModel FieldModel::complex(std::uint32_t p) {
  if (!isPrime(p)) throw InvalidModel(std::to_string(p) + " is not a prime");
  FieldModel m;
  m.kind_ = ModelKind::Complex;
  m.p_ = p;
  return m;
}

FieldModel FieldModel::laurent(const FieldModel& base, std::string var, unsigned precision) {
  if (precision < 2) throw InvalidModel("Laurent precision must be at least 2");
  if (var.empty() || !std::isalpha(static_cast<unsigned char>(var[0])))
    throw InvalidModel("variable name must start with a letter");
  for (const FieldModel* b = &base; b; b = b->kind_ == ModelKind::Laurent ? b->residue_.get() : nullptr)
    if (b->var_ == var) throw InvalidModel("variable " + var + " already used in the tower");
  if (base.kind_ == ModelKind::Finite && var == "g") throw InvalidModel("g names the finite field generator");
  if (base.kind_ == ModelKind::Finite && base.field_->characteristic() == base.p_)
    throw InvalidModel("wild residue characteristic");
  FieldModel m;
  m.kind_ = ModelKind::Laurent;
  m.p_ = base.p_;
  m.residue_ = std::make_shared<const FieldModel>(base);
  m.var_ = std::move(var);
  m.precision_ = precision;
  return m;
}

std::uint32_t FieldModel::order() const {
  if (kind_ != ModelKind::Finite) throw ModelUnsupported("not a finite field");
  return field_->order();
}

std::uint32_t FieldModel::ell() const {
  if (kind_ != ModelKind::LocalRational) throw ModelUnsupported("not an ell-adic field");
  return ell_;
}

const FieldModel& FieldModel::base() const {
  if (kind_ != ModelKind::Laurent) throw ModelUnsupported("not a Laurent series field");
  return *residue_;
}

const FieldModel& FieldModel::residueModel() const {
  if (!isValued()) throw ModelUnsupported(describe() + " has no discrete valuation here");
  return *residue_;
}

std::string FieldModel::describe() const {
  switch (kind_) {
  case ModelKind::Finite: return "F_" + std::to_string(field_->order());
  case ModelKind::LocalRational: return "Q_" + std::to_string(ell_);
  case ModelKind::Dyadic: return "Q_2";
  case ModelKind::Real: return "R";
  case ModelKind::Complex: return "C";
  case ModelKind::Laurent: return residue_->describe() + "((" + var_ + "))";
  }
  return "?";
}

// ------------------------------------------------------------------ arithmetic

FieldElement FieldModel::constant(const FieldElement& c) const {
  FieldElement s;
  if (!residue_->isZero(c)) s.coeffs.push_back(c);
  return s;
}

FieldElement FieldModel::fromInteger(const mpz_class& n) const {
  FieldElement e;
  switch (kind_) {
  case ModelKind::Finite: {
    const mpz_class r = n % field_->characteristic();
    e.ff = field_->fromInteger(r.get_si());
    break;
  }
  case ModelKind::Laurent: return constant(residue_->fromInteger(n));
  default: e.q = n; break;
  }
  return e;
}

bool FieldModel::isZero(const FieldElement& a) const {
  switch (kind_) {
  case ModelKind::Finite: return a.ff == 0;
  case ModelKind::Laurent: return !a.absPrec && a.coeffs.empty();
  default: return a.q == 0;
  }
}

bool FieldModel::isExact(const FieldElement& a) const {
  if (kind_ != ModelKind::Laurent) return true;
  if (a.absPrec) return false;
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [&](const auto& c) { return residue_->isExact(c); });
}

void FieldModel::seriesNormalize(FieldElement& s) const {
  std::size_t lead = 0;
  while (lead < s.coeffs.size() && residue_->isZero(s.coeffs[lead])) ++lead;
  s.coeffs.erase(s.coeffs.begin(), s.coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  s.val += static_cast<std::int64_t>(lead);
  if (s.absPrec) {
    if (s.coeffs.empty()) s.val = *s.absPrec;
    return;
  }
  while (!s.coeffs.empty() && residue_->isZero(s.coeffs.back())) s.coeffs.pop_back();
  if (s.coeffs.empty()) s.val = 0;
}

FieldElement FieldModel::seriesAdd(const FieldElement& a, const FieldElement& b) const {
  if (isZero(a)) return b;
  if (isZero(b)) return a;
  const auto end = [](const FieldElement& s) { return s.val + static_cast<std::int64_t>(s.coeffs.size()); };
  const std::int64_t absA = a.absPrec.value_or(kExact), absB = b.absPrec.value_or(kExact);
  const std::int64_t abs = std::min(absA, absB);
  const std::int64_t lo = std::min(a.val, b.val);
  std::int64_t hi = std::max(end(a), end(b));
  if (abs != kExact) hi = std::max(lo, abs);
  const auto zero = residue_->fromInteger(0);
  auto at = [&](const FieldElement& s, std::int64_t n) -> const FieldElement& {
    if (n < s.val || n >= end(s)) return zero;
    return s.coeffs[static_cast<std::size_t>(n - s.val)];
  };
  FieldElement r;
  r.val = lo;
  if (abs != kExact) r.absPrec = abs;
  for (std::int64_t n = lo; n < hi; ++n) r.coeffs.push_back(residue_->add(at(a, n), at(b, n)));
  seriesNormalize(r);
  return r;
}

FieldElement FieldModel::seriesMul(const FieldElement& a, const FieldElement& b) const {
  if (isZero(a) || isZero(b)) return fromInteger(0);
  const std::int64_t relA = a.absPrec ? *a.absPrec - a.val : kExact;
  const std::int64_t relB = b.absPrec ? *b.absPrec - b.val : kExact;
  const std::int64_t rel = std::min(relA, relB);
  const std::size_t n = rel == kExact ? a.coeffs.size() + b.coeffs.size() - 1 : static_cast<std::size_t>(rel);
  FieldElement r;
  r.val = a.val + b.val;
  if (rel != kExact) r.absPrec = r.val + rel;
  r.coeffs.assign(n, residue_->fromInteger(0));
  for (std::size_t i = 0; i < a.coeffs.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.coeffs.size() && i + j < n; ++j)
      r.coeffs[i + j] = residue_->add(r.coeffs[i + j], residue_->mul(a.coeffs[i], b.coeffs[j]));
  seriesNormalize(r);
  return r;
}

FieldElement FieldModel::seriesInv(const FieldElement& a) const {
  if (isZero(a)) throw NotAUnit("division by zero");
  if (a.coeffs.empty())
    throw PrecisionExhausted("leading coefficient of a series lies beyond its precision window");
  const auto& c = a.coeffs;
  const auto b0 = residue_->inv(c.front());
  FieldElement r;
  r.val = -a.val;
  if (!a.absPrec && c.size() == 1) {
    r.coeffs.push_back(b0);
    return r;
  }
  const std::int64_t relA = a.absPrec ? *a.absPrec - a.val : kExact;
  const auto rel = static_cast<std::size_t>(std::min<std::int64_t>(precision_, relA));
  r.absPrec = r.val + static_cast<std::int64_t>(rel);
  r.coeffs.push_back(b0);
  for (std::size_t n = 1; n < rel; ++n) {
    auto s = residue_->fromInteger(0);
    for (std::size_t i = 1; i <= n && i < c.size(); ++i) s = residue_->add(s, residue_->mul(c[i], r.coeffs[n - i]));
    r.coeffs.push_back(residue_->neg(residue_->mul(b0, s)));
  }
  seriesNormalize(r);
  return r;
}

FieldElement FieldModel::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement r;
  switch (kind_) {
  case ModelKind::Finite: r.ff = field_->add(a.ff, b.ff); return r;
  case ModelKind::Laurent: return seriesAdd(a, b);
  default: r.q = a.q + b.q; return r;
  }
}

FieldElement FieldModel::neg(const FieldElement& a) const {
  FieldElement r;
  switch (kind_) {
  case ModelKind::Finite: r.ff = field_->neg(a.ff); return r;
  case ModelKind::Laurent:
    r = a;
    for (auto& c : r.coeffs) c = residue_->neg(c);
    return r;
  default: r.q = -a.q; return r;
  }
}

FieldElement FieldModel::mul(const FieldElement& a, const FieldElement& b) const {
  FieldElement r;
  switch (kind_) {
  case ModelKind::Finite: r.ff = field_->mul(a.ff, b.ff); return r;
  case ModelKind::Laurent: return seriesMul(a, b);
  default: r.q = a.q * b.q; return r;
  }
}

FieldElement FieldModel::inv(const FieldElement& a) const {
  FieldElement r;
  switch (kind_) {
  case ModelKind::Finite: r.ff = field_->inv(a.ff); return r;
  case ModelKind::Laurent: return seriesInv(a);
  default:
    if (a.q == 0) throw NotAUnit("division by zero");
    r.q = 1 / a.q;
    return r;
  }
}

FieldElement FieldModel::pow(const FieldElement& a, std::int64_t e) const {
  if (kind_ == ModelKind::Finite) {
    FieldElement r;
    r.ff = field_->pow(a.ff, e);
    return r;
  }
  FieldElement base = e < 0 ? inv(a) : a;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  FieldElement acc = fromInteger(1);
  while (n) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

std::string FieldModel::render(const FieldElement& a) const {
  switch (kind_) {
  case ModelKind::Finite: return field_->render(a.ff);
  case ModelKind::Laurent: break;
  default: return a.q.get_str();
  }
  std::string out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const auto& c = a.coeffs[i];
    if (residue_->isZero(c)) continue;
    const std::int64_t n = a.val + static_cast<std::int64_t>(i);
    std::string cs = residue_->render(c);
    std::string term;
    if (n == 0)
      term = plainToken(cs) ? cs : "(" + cs + ")";
    else if (cs == "1")
      term = monomial(var_, n);
    else if (cs == "-1")
      term = "-" + monomial(var_, n);
    else
      term = (plainToken(cs) ? cs : "(" + cs + ")") + "*" + monomial(var_, n);
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  if (a.absPrec) out += (out.empty() ? "" : "+") + std::string("O(") + monomial(var_, *a.absPrec) + ")";
  return out.empty() ? "0" : out;
}

// --------------------------------------------------------------------- parsing

namespace {

std::optional<FieldElement> resolveIdentifier(const FieldModel& m, std::string_view name) {
  switch (m.kind()) {
  case ModelKind::Finite:
    if (name == "g") {
      return m.classGroup().representatives.front();
    }
    return std::nullopt;
  case ModelKind::Laurent: {
    FieldElement s;
    if (name == m.variable()) {
      s.val = 1;
      s.coeffs.push_back(m.base().fromInteger(1));
      return s;
    }
    auto inner = resolveIdentifier(m.base(), name);
    if (!inner) return std::nullopt;
    if (!m.base().isZero(*inner)) s.coeffs.push_back(*inner);
    return s;
  }
  default: return std::nullopt;
  }
}

class ElementParser {
public:
  ElementParser(const FieldModel& m, std::string_view text) : m_(m), s_(text) {}

  FieldElement run() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    auto acc = term();
    for (;;) {
      if (eat('+'))
        acc = m_.add(acc, term());
      else if (eat('-'))
        acc = m_.sub(acc, term());
      else
        return acc;
    }
  }

  FieldElement term() {
    auto acc = unary();
    for (;;) {
      if (eat('*'))
        acc = m_.mul(acc, unary());
      else if (eat('/'))
        acc = m_.div(acc, unary());
      else
        return acc;
    }
  }

  FieldElement unary() {
    if (eat('-')) return m_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  FieldElement power() {
    auto b = atom();
    if (!eat('^')) return b;
    skip();
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) negative = s_[pos_++] == '-';
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) throw SyntaxError("expected a small exponent", start);
    const auto e = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return m_.pow(b, negative ? -e : e);
  }

  FieldElement atom() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const auto start = pos_;
    if (eat('(')) {
      auto e = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return m_.fromInteger(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const auto name = s_.substr(start, pos_ - start);
      if (auto e = resolveIdentifier(m_, name)) return *e;
      throw SyntaxError("unknown identifier '" + std::string(name) + "' in " + m_.describe(), start);
    }
    throw SyntaxError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
  }

  const FieldModel& m_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

FieldElement FieldModel::parseElement(std::string_view text) const { return ElementParser(*this, text).run(); }

// ------------------------------------------------------------ classes, symbols

std::size_t FieldModel::classDim() const {
  switch (kind_) {
  case ModelKind::Finite: return 1;
  case ModelKind::LocalRational: return 2;
  case ModelKind::Dyadic: return 3;
  case ModelKind::Real: return 1;
  case ModelKind::Complex: return 0;
  case ModelKind::Laurent: return residue_->classDim() + 1;
  }
  return 0;
}

std::size_t FieldModel::symbolDim() const {
  switch (kind_) {
  case ModelKind::Finite:
  case ModelKind::Complex: return 0;
  case ModelKind::Dyadic:
  case ModelKind::Real: return 1;
  case ModelKind::LocalRational:
  case ModelKind::Laurent: return residue_->classDim() + residue_->symbolDim();
  }
  return 0;
}

FieldModel::ClassBasis FieldModel::classGroup() const {
  ClassBasis b;
  auto addRational = [&](std::int64_t v) {
    FieldElement e;
    e.q = v;
    b.labels.push_back(std::to_string(v));
    b.representatives.push_back(e);
  };
  switch (kind_) {
  case ModelKind::Finite: {
    FieldElement g;
    g.ff = field_->generator();
    b.labels.push_back(field_->render(g.ff));
    b.representatives.push_back(g);
    break;
  }
  case ModelKind::LocalRational:
    addRational(residue_->classGroup().representatives.front().ff);
    addRational(ell_);
    break;
  case ModelKind::Dyadic:
    addRational(-1);
    addRational(2);
    addRational(5);
    break;
  case ModelKind::Real: addRational(-1); break;
  case ModelKind::Complex: break;
  case ModelKind::Laurent: {
    const auto inner = residue_->classGroup();
    for (std::size_t i = 0; i < inner.labels.size(); ++i) {
      b.labels.push_back(inner.labels[i]);
      b.representatives.push_back(constant(inner.representatives[i]));
    }
    b.labels.push_back(var_);
    b.representatives.push_back(*resolveIdentifier(*this, var_));
    break;
  }
  }
  return b;
}

std::int64_t FieldModel::valuation(const FieldElement& a) const {
  if (isZero(a)) throw NotAUnit("zero has no valuation");
  if (kind_ == ModelKind::LocalRational) {
    mpz_class num, den;
    return rationalValuation(a.q, ell_, num, den);
  }
  if (kind_ == ModelKind::Laurent) {
    if (a.coeffs.empty()) throw PrecisionExhausted("valuation lies beyond the precision window");
    return a.val;
  }
  throw ModelUnsupported(describe() + " has no discrete valuation here");
}

FieldElement FieldModel::residue(const FieldElement& a) const {
  if (isZero(a)) throw NotAUnit("zero has no residue");
  if (kind_ == ModelKind::LocalRational) {
    mpz_class num, den;
    rationalValuation(a.q, ell_, num, den);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(ell_).get_mpz_t());
    mpz_class r = num * inv;
    mpz_mod_ui(r.get_mpz_t(), r.get_mpz_t(), ell_);
    return residue_->fromInteger(r);
  }
  if (kind_ == ModelKind::Laurent) {
    if (a.coeffs.empty()) throw PrecisionExhausted("leading coefficient lies beyond the precision window");
    return a.coeffs.front();
  }
  throw ModelUnsupported(describe() + " has no discrete valuation here");
}

FpVec FieldModel::classOf(const FieldElement& a) const {
  if (isZero(a)) throw NotAUnit("zero has no class");
  switch (kind_) {
  case ModelKind::Finite: return {field_->log(a.ff) % p_};
  case ModelKind::LocalRational:
  case ModelKind::Laurent: {
    auto c = residue_->classOf(residue(a));
    c.push_back(positiveMod(valuation(a), p_));
    return c;
  }
  case ModelKind::Dyadic: {
    mpz_class num, den;
    const auto v = rationalValuation(a.q, 2, num, den);
    mpz_class u = num * den; // den is odd, so den = 1/den mod 8
    const auto m = static_cast<std::uint32_t>(mpz_fdiv_ui(u.get_mpz_t(), 8));
    const std::uint32_t minus = m % 4 == 3 ? 1 : 0;
    const std::uint32_t unit = minus ? (8 - m) % 8 : m;
    return {minus, positiveMod(v, 2), unit == 5 ? 1u : 0u};
  }
  case ModelKind::Real: return {a.q < 0 ? 1u : 0u};
  case ModelKind::Complex: return {};
  }
  return {};
}

bool FieldModel::isPthPower(const FieldElement& a) const {
  const auto c = classOf(a);
  return std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; });
}

FpVec FieldModel::symbol(const FieldElement& a, const FieldElement& b) const {
  if (isZero(a) || isZero(b)) throw NotAUnit("symbols need nonzero entries");
  switch (kind_) {
  case ModelKind::Finite:
  case ModelKind::Complex: return {};
  case ModelKind::Real: return {a.q < 0 && b.q < 0 ? 1u : 0u};
  case ModelKind::Dyadic: {
    // (a, b)_2 = (-1)^(e(u)e(w) + alpha w(w) + beta w(u)) for a = 2^alpha u, b = 2^beta w
    mpz_class n1, d1, n2, d2;
    const auto alpha = rationalValuation(a.q, 2, n1, d1);
    const auto beta = rationalValuation(b.q, 2, n2, d2);
    const auto u = static_cast<std::uint32_t>(mpz_fdiv_ui(mpz_class(n1 * d1).get_mpz_t(), 8));
    const auto w = static_cast<std::uint32_t>(mpz_fdiv_ui(mpz_class(n2 * d2).get_mpz_t(), 8));
    auto eps = [](std::uint32_t x) { return ((x - 1) / 2) % 2; };
    auto omega = [](std::uint32_t x) { return ((x * x - 1) / 8) % 2; };
    const auto e = eps(u) * eps(w) + positiveMod(alpha, 2) * omega(w) + positiveMod(beta, 2) * omega(u);
    return {e % 2};
  }
  case ModelKind::LocalRational:
  case ModelKind::Laurent: {
    const auto& r = *residue_;
    const auto va = valuation(a), vb = valuation(b);
    const auto ra = residue(a), rb = residue(b);
    // tame part: residue of (-1)^(va vb) a^vb b^-va
    auto t = r.mul(r.pow(ra, vb), r.pow(rb, -va));
    if ((va * vb) % 2 != 0) t = r.neg(t);
    auto out = r.classOf(t);
    const auto inner = r.symbol(ra, rb);
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
  }
  }
  return {};
}

// --------------------------------------------------------------------- samples

std::vector<FieldElement> FieldModel::sampleElements(std::size_t bound) const {
  std::vector<FieldElement> out;
  switch (kind_) {
  case ModelKind::Finite:
    for (FiniteField::Elem x = 1; x < field_->order() && out.size() < bound; ++x) {
      FieldElement e;
      e.ff = x;
      out.push_back(e);
    }
    return out;
  case ModelKind::Laurent: break;
  default:
    // rationals by height max(|num|, den)
    for (std::int64_t h = 1; out.size() < bound; ++h) {
      std::vector<mpq_class> level;
      for (std::int64_t n = 1; n <= h; ++n)
        for (std::int64_t d = 1; d <= h; ++d) {
          if (std::max(n, d) != h || std::gcd(n, d) != 1) continue;
          level.emplace_back(n, d);
          level.emplace_back(-n, d);
        }
      for (auto& x : level) {
        if (out.size() >= bound) break;
        x.canonicalize();
        FieldElement e;
        e.q = x;
        out.push_back(e);
      }
    }
    return out;
  }

  std::set<std::string> seen;
  auto push = [&](FieldElement e) {
    if (out.size() >= bound || isZero(e)) return;
    if (seen.insert(render(e)).second) out.push_back(std::move(e));
  };
  const auto base = residue_->sampleElements(std::min<std::size_t>(bound, 8));
  const auto t = *resolveIdentifier(*this, var_);
  auto scaled = [&](const FieldElement& c, std::int64_t k) { return mul(constant(c), pow(t, k)); };
  for (std::int64_t k : {0, 1, -1, 2, -2})
    for (const auto& c : base) push(scaled(c, k));
  for (std::int64_t k : {1, 2})
    for (const auto& c : base)
      for (const auto& c2 : base) push(add(constant(c), scaled(c2, k)));
  for (const auto& c : base)
    for (const auto& c2 : base) push(add(scaled(c, -1), constant(c2)));
  for (const auto& c : base)
    for (const auto& c2 : base)
      for (const auto& c3 : base) push(add(add(constant(c), scaled(c2, 1)), scaled(c3, 2)));
  return out;
}

bool FieldModel::samplesExhaustive(std::size_t bound) const {
  return kind_ == ModelKind::Finite && bound + 1 >= field_->order();
}

// ------------------------------------------------------------------------ JSON

FieldModel modelFromJson(const nlohmann::json& j, std::uint32_t p) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidModel("model needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  const auto params = j.value("params", nlohmann::json::object());
  try {
    if (kind == "finite") return FieldModel::finite(p, params.at("q").get<std::uint32_t>());
    if (kind == "local") return FieldModel::localRational(p, params.at("ell").get<std::uint32_t>());
    if (kind == "dyadic") {
      if (p != 2) throw InvalidModel("Q_2 is modelled for p=2 only");
      return FieldModel::dyadic();
    }
    if (kind == "real") {
      if (p != 2) throw InvalidModel("R is modelled for p=2 only");
      return FieldModel::real();
    }
    if (kind == "complex") return FieldModel::complex(p);
    if (kind == "laurent")
      return FieldModel::laurent(modelFromJson(params.at("base"), p), params.value("var", std::string("t")),
                                 j.value("precision", 8u));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidModel(std::string("malformed model: ") + e.what());
  }
  throw InvalidModel("unknown model kind " + kind);
}

nlohmann::json toJson(const FieldModel& m) {
  switch (m.kind()) {
  case ModelKind::Finite: return {{"kind", "finite"}, {"params", {{"q", m.order()}}}};
  case ModelKind::LocalRational: return {{"kind", "local"}, {"params", {{"ell", m.ell()}}}};
  case ModelKind::Dyadic: return {{"kind", "dyadic"}, {"params", nlohmann::json::object()}};
  case ModelKind::Real: return {{"kind", "real"}, {"params", nlohmann::json::object()}};
  case ModelKind::Complex: return {{"kind", "complex"}, {"params", nlohmann::json::object()}};
  case ModelKind::Laurent:
    return {{"kind", "laurent"},
            {"params", {{"base", toJson(m.base())}, {"var", m.variable()}}},
            {"precision", m.precision()}};
  }
  return {};
}

} // namespace cyclo
