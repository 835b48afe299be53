#include "cyclo/pair_expr.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/fp_linear.hpp"
#include "cyclo/json_util.hpp"

#include <algorithm>
#include <cctype>

namespace cyclo {

std::string_view caseName(DemuskinCase c) {
  switch (c) {
  case DemuskinCase::I: return "I";
  case DemuskinCase::II: return "II";
  case DemuskinCase::III: return "III";
  case DemuskinCase::IV: return "IV";
  }
  return "?";
}

namespace {

std::optional<DemuskinCase> caseFromName(std::string_view s) {
  if (s == "I") return DemuskinCase::I;
  if (s == "II") return DemuskinCase::II;
  if (s == "III") return DemuskinCase::III;
  if (s == "IV") return DemuskinCase::IV;
  return std::nullopt;
}

// Exponent k with x = p^k, or nullopt.
std::optional<unsigned> primePowerExponent(const mpz_class& x, std::uint32_t p) {
  if (x < p) return std::nullopt;
  mpz_class y = x;
  unsigned k = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    y /= p;
    ++k;
  }
  if (y != 1) return std::nullopt;
  return k;
}

void checkPrime(std::uint32_t p) {
  if (!isPrime(p)) throw ValidationError(std::to_string(p) + " is not a prime");
}

std::string fText(unsigned f) { return f == kInfiniteF ? "inf" : std::to_string(f); }

void validatePAdic(std::uint32_t p, PAdicParams& b) {
  const std::string where = "padic block: ";
  if (b.q == 0 && b.caseTag != DemuskinCase::I) b.q = 2;
  if (!primePowerExponent(b.q, p))
    throw ValidationError(where + "q=" + b.q.get_str() + " is not a power of " + std::to_string(p) +
                          " greater than 1");
  if (p != 2) {
    if (b.caseTag != DemuskinCase::I) throw ValidationError(where + "cases II-IV require p=2");
    if (b.n % 2 != 0 || b.n < p + 1)
      throw ValidationError(where + "for odd p the rank n must be even and at least p+1");
    if (b.f) throw ValidationError(where + "f is only meaningful in cases II-IV");
    if (b.level) throw ValidationError(where + "the level s is only meaningful for p=2");
    return;
  }
  if (b.n < 3) throw ValidationError(where + "rank n must be at least 3");
  unsigned expectedLevel = 1;
  switch (b.caseTag) {
  case DemuskinCase::I:
    if (b.q == 2) throw ValidationError(where + "case I requires q != 2");
    if (b.n % 2 != 0) throw ValidationError(where + "case I requires even n");
    if (b.f) throw ValidationError(where + "f is only meaningful in cases II-IV");
    expectedLevel = 1;
    break;
  case DemuskinCase::II:
    if (b.q != 2) throw ValidationError(where + "case II requires q=2");
    if (b.n % 2 == 0) throw ValidationError(where + "case II requires odd n");
    if (!b.f || *b.f < 2) throw ValidationError(where + "case II requires f in {2,3,...,inf}");
    expectedLevel = 4;
    break;
  case DemuskinCase::III:
    if (b.q != 2) throw ValidationError(where + "case III requires q=2");
    if (b.n % 2 != 0) throw ValidationError(where + "case III requires even n");
    if (!b.f || *b.f < 2) throw ValidationError(where + "case III requires f in {2,3,...,inf}");
    expectedLevel = 2;
    break;
  case DemuskinCase::IV:
    if (b.q != 2) throw ValidationError(where + "case IV requires q=2");
    if (b.n % 2 != 0) throw ValidationError(where + "case IV requires even n");
    if (!b.f || *b.f < 2 || *b.f == kInfiniteF)
      throw ValidationError(where + "case IV requires a finite f >= 2");
    expectedLevel = 2;
    break;
  }
  // eps^2 is the diagonal Gram entry of the eps generator, which pins the level.
  if (b.level && *b.level != expectedLevel)
    throw ValidationError(where + "level s=" + std::to_string(*b.level) + " is inconsistent with case " +
                          std::string(caseName(b.caseTag)) + " (expected s=" +
                          std::to_string(expectedLevel) + ")");
  b.level = expectedLevel;
}

int tagIndex(const PairExpr::Node& n) { return static_cast<int>(n.index()); }

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int compareParams(const PAdicParams& a, const PAdicParams& b) {
  if (int c = cmp3(a.n, b.n)) return c;
  if (int c = cmp(a.q, b.q)) return c < 0 ? -1 : 1;
  if (int c = cmp3(static_cast<int>(a.caseTag), static_cast<int>(b.caseTag))) return c;
  if (int c = cmp3(a.f, b.f)) return c;
  return cmp3(a.level, b.level);
}

} // namespace

PairExpr PairExpr::trivial(std::uint32_t p, unsigned precision) {
  checkPrime(p);
  return PairExpr(p, precision, node::Trivial{});
}

PairExpr PairExpr::zblock(const PAdicUnit& alpha) {
  return PairExpr(alpha.prime(), alpha.precision(), node::Z{alpha});
}

PairExpr PairExpr::eblock(std::uint32_t p, unsigned precision) {
  if (p != 2) throw ValidationError("E requires p=2 (got p=" + std::to_string(p) + ")");
  return PairExpr(p, precision, node::E{});
}

PairExpr PairExpr::padic(std::uint32_t p, PAdicParams params, unsigned precision) {
  checkPrime(p);
  validatePAdic(p, params);
  return PairExpr(p, precision, node::PAdic{std::move(params)});
}

PairExpr PairExpr::freeProd(std::vector<PairExpr> factors) {
  if (factors.empty()) throw ValidationError("free product needs at least one factor");
  const auto p = factors.front().prime();
  const auto k = factors.front().precision();
  for (const auto& f : factors)
    if (f.prime() != p || f.precision() != k)
      throw ValidationError("free product factors have different primes or precisions");
  return PairExpr(p, k, node::FreeProd{std::move(factors)});
}

PairExpr PairExpr::ext(unsigned m, PairExpr base) {
  if (m < 1) throw ValidationError("extension rank m must be at least 1");
  const auto p = base.prime();
  const auto k = base.precision();
  return PairExpr(p, k, node::Ext{m, {std::move(base)}});
}

int PairExpr::compare(const PairExpr& o) const {
  if (int c = cmp3(p_, o.p_)) return c;
  if (int c = cmp3(k_, o.k_)) return c;
  if (int c = cmp3(tagIndex(*node_), tagIndex(*o.node_))) return c;
  return std::visit(
      [&](const auto& a) -> int {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(*o.node_);
        if constexpr (std::is_same_v<T, node::Z>) {
          return a.alpha.compare(b.alpha);
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          return compareParams(a.params, b.params);
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          const auto n = std::min(a.factors.size(), b.factors.size());
          for (std::size_t i = 0; i < n; ++i)
            if (int c = a.factors[i].compare(b.factors[i])) return c;
          return cmp3(a.factors.size(), b.factors.size());
        } else if constexpr (std::is_same_v<T, node::Ext>) {
          if (int c = cmp3(a.m, b.m)) return c;
          return a.base.front().compare(b.base.front());
        } else {
          return 0;
        }
      },
      *node_);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  Parser(std::string_view text, std::uint32_t p, unsigned k) : text_(text), p_(p), k_(k) {}

  PairExpr parseAll() {
    auto e = expr();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skipSpace();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  mpz_class integer() {
    skipSpace();
    const auto start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const auto digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string s(text_.substr(start, pos_ - start));
    if (s.front() == '+') s.erase(0, 1);
    return mpz_class(s);
  }

  unsigned natural() {
    const auto at = pos_;
    const auto v = integer();
    if (v < 0 || !mpz_fits_uint_p(v.get_mpz_t())) {
      pos_ = at;
      fail("expected a natural number");
    }
    return static_cast<unsigned>(v.get_ui());
  }

  template <class F>
  PairExpr validated(std::size_t at, F&& build) {
    try {
      return build();
    } catch (const SyntaxError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " at offset " + std::to_string(at));
    } catch (const Error& e) {
      throw ValidationError(std::string(e.what()) + " at offset " + std::to_string(at));
    }
  }

  PairExpr expr() {
    std::vector<PairExpr> terms;
    terms.push_back(term());
    while (accept('*')) terms.push_back(term());
    if (terms.size() == 1) return std::move(terms.front());
    return PairExpr::freeProd(std::move(terms));
  }

  PairExpr term() {
    skipSpace();
    const auto at = pos_;
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    const auto word = identifier();
    if (word == "triv") return validated(at, [&] { return PairExpr::trivial(p_, k_); });
    if (word == "E") return validated(at, [&] { return PairExpr::eblock(p_, k_); });
    if (word == "Z") {
      expect('(');
      const auto num = integer();
      mpz_class den = 1;
      if (accept('/')) den = integer();
      expect(')');
      return validated(at, [&] { return PairExpr::zblock(makeUnit(p_, num, den, k_)); });
    }
    if (word == "padic") return padicTerm(at);
    if (word == "ext") {
      expect('(');
      const auto m = natural();
      expect(',');
      auto base = expr();
      expect(')');
      return validated(at, [&] { return PairExpr::ext(m, std::move(base)); });
    }
    pos_ = at;
    if (word.empty()) fail("expected a term");
    fail("unknown constructor '" + word + "'");
  }

  PairExpr padicTerm(std::size_t at) {
    expect('(');
    PAdicParams b;
    b.q = 0;
    bool haveN = false, haveCase = false;
    do {
      const auto keyAt = pos_;
      const auto key = identifier();
      expect('=');
      if (key == "n") {
        b.n = natural();
        haveN = true;
      } else if (key == "q") {
        b.q = integer();
      } else if (key == "case") {
        const auto valueAt = pos_;
        const auto name = identifier();
        const auto c = caseFromName(name);
        if (!c) {
          pos_ = valueAt;
          fail("case must be one of I, II, III, IV");
        }
        b.caseTag = *c;
        haveCase = true;
      } else if (key == "f") {
        skipSpace();
        if (text_.substr(pos_, 3) == "inf") {
          pos_ += 3;
          b.f = kInfiniteF;
        } else {
          b.f = natural();
        }
      } else if (key == "s") {
        b.level = natural();
      } else {
        pos_ = keyAt;
        fail("unknown padic parameter '" + key + "'");
      }
    } while (accept(','));
    expect(')');
    if (!haveN) {
      pos_ = at;
      fail("padic block needs n");
    }
    (void)haveCase;
    return validated(at, [&] { return PairExpr::padic(p_, b, k_); });
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::uint32_t p_;
  unsigned k_;
};

} // namespace

PairExpr parse(std::string_view text, std::uint32_t p, unsigned precision) {
  checkPrime(p);
  return Parser(text, p, precision).parseAll();
}

std::string render(const PairExpr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Trivial>) {
          return "triv";
        } else if constexpr (std::is_same_v<T, node::E>) {
          return "E";
        } else if constexpr (std::is_same_v<T, node::Z>) {
          return "Z(" + n.alpha.render() + ")";
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          const auto& b = n.params;
          std::string s = "padic(n=" + std::to_string(b.n) + ",q=" + b.q.get_str() +
                          ",case=" + std::string(caseName(b.caseTag));
          if (b.f) s += ",f=" + fText(*b.f);
          if (b.level) s += ",s=" + std::to_string(*b.level);
          return s + ")";
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          std::string s;
          for (std::size_t i = 0; i < n.factors.size(); ++i) {
            if (i) s += " * ";
            const bool wrap = n.factors[i].template is<node::FreeProd>();
            s += wrap ? "(" + render(n.factors[i]) + ")" : render(n.factors[i]);
          }
          return s;
        } else {
          return "ext(" + std::to_string(n.m) + ", " + render(n.base.front()) + ")";
        }
      },
      e.node());
}

// ---------------------------------------------------------------------------
// Normalization

PairExpr normalize(const PairExpr& e) {
  const auto p = e.prime();
  const auto k = e.precision();
  if (const auto* fp = e.as<node::FreeProd>()) {
    std::vector<PairExpr> flat;
    for (const auto& f : fp->factors) {
      auto nf = normalize(f);
      if (nf.is<node::Trivial>()) continue;
      if (const auto* inner = nf.as<node::FreeProd>())
        flat.insert(flat.end(), inner->factors.begin(), inner->factors.end());
      else
        flat.push_back(std::move(nf));
    }
    if (flat.empty()) return PairExpr::trivial(p, k);
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end(),
              [](const PairExpr& a, const PairExpr& b) { return a.compare(b) < 0; });
    return PairExpr::freeProd(std::move(flat));
  }
  if (const auto* x = e.as<node::Ext>()) {
    unsigned m = x->m;
    auto base = normalize(x->base.front());
    if (const auto* inner = base.as<node::Ext>()) {
      m += inner->m;
      base = inner->base.front();
    }
    if (base.is<node::Trivial>()) {
      // Z_p^m x| 1 = Z_p^{m-1} x| Z^1
      const auto z1 = PairExpr::zblock(makeUnit(p, 1, 1, k));
      return m == 1 ? z1 : PairExpr::ext(m - 1, z1);
    }
    if (p == 2 && base.is<node::E>()) {
      // Z_2 x| E = E * E
      const auto ee = PairExpr::freeProd({PairExpr::eblock(p, k), PairExpr::eblock(p, k)});
      return m == 1 ? ee : PairExpr::ext(m - 1, ee);
    }
    return PairExpr::ext(m, std::move(base));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Structural invariants

unsigned rank(const PairExpr& e) {
  return std::visit(
      [](const auto& n) -> unsigned {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Trivial>) {
          return 0;
        } else if constexpr (std::is_same_v<T, node::Z> || std::is_same_v<T, node::E>) {
          return 1;
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          return n.params.n;
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          unsigned r = 0;
          for (const auto& f : n.factors) r += rank(f);
          return r;
        } else {
          return n.m + rank(n.base.front());
        }
      },
      e.node());
}

std::vector<PAdicUnit> thetaGenerators(const PairExpr& e) {
  const auto p = e.prime();
  const auto k = e.precision();
  std::vector<PAdicUnit> gens;
  auto add = [&](PAdicUnit u) {
    if (!u.isOne()) gens.push_back(std::move(u));
  };
  auto twoPow = [](unsigned f) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, f);
    return r;
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Z>) {
          add(n.alpha);
        } else if constexpr (std::is_same_v<T, node::E>) {
          add(makeUnit(2, -1, 1, k));
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          const auto& b = n.params;
          switch (b.caseTag) {
          case DemuskinCase::I: // theta(x2) = 1/(1-q)
            add(makeUnit(p, mpz_class(1), mpz_class(1 - b.q), k));
            break;
          case DemuskinCase::II: // theta(x1) = -1, theta(x3) = 1/(1-2^f)
          case DemuskinCase::IV: // theta(x2) = -1, theta(x4) = 1/(1-2^f)
            add(makeUnit(2, -1, 1, k));
            if (*b.f != kInfiniteF) add(makeUnit(2, mpz_class(1), mpz_class(1 - twoPow(*b.f)), k));
            break;
          case DemuskinCase::III: // theta(x2) = -1/(1+2^f)
            if (*b.f == kInfiniteF)
              add(makeUnit(2, -1, 1, k));
            else
              add(makeUnit(2, mpz_class(-1), mpz_class(1 + twoPow(*b.f)), k));
            break;
          }
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          for (const auto& f : n.factors)
            for (auto& g : thetaGenerators(f)) gens.push_back(std::move(g));
        } else if constexpr (std::is_same_v<T, node::Ext>) {
          gens = thetaGenerators(n.base.front());
        }
      },
      e.node());
  return gens;
}

UnitSubgroupInvariants thetaImage(const PairExpr& e) {
  const auto gens = thetaGenerators(e);
  return subgroupInvariants(e.prime(), gens, e.precision());
}

AbelianizationDivisors abelianization(const PairExpr& e) {
  AbelianizationDivisors out;
  auto& d = out.divisors;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Z>) {
          d.push_back(0);
        } else if constexpr (std::is_same_v<T, node::E>) {
          d.push_back(2);
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          d.assign(n.params.n - 1, mpz_class(0));
          d.push_back(n.params.q);
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          for (const auto& f : n.factors) {
            const auto sub = abelianization(f);
            d.insert(d.end(), sub.divisors.begin(), sub.divisors.end());
          }
        } else if constexpr (std::is_same_v<T, node::Ext>) {
          // A/[A,G] = A/(1 - theta(g))A
          const auto q = thetaImage(n.base.front()).q(e.prime());
          d.assign(n.m, q);
          const auto sub = abelianization(n.base.front());
          d.insert(d.end(), sub.divisors.begin(), sub.divisors.end());
        }
      },
      e.node());
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json unitJson(const PAdicUnit& u) {
  if (const auto& r = u.rational()) {
    mpz_class n = r->first, dd = r->second, g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
    n /= g;
    dd /= g;
    if (dd < 0) {
      n = -n;
      dd = -dd;
    }
    return {{"num", jsonInteger(n)}, {"den", jsonInteger(dd)}};
  }
  return {{"residue", u.residue().get_str()}, {"precision", u.precision()}};
}

} // namespace

nlohmann::json toJson(const PairExpr& e) {
  return std::visit(
      [&](const auto& n) -> nlohmann::json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Trivial>) {
          return {{"type", "triv"}};
        } else if constexpr (std::is_same_v<T, node::E>) {
          return {{"type", "E"}};
        } else if constexpr (std::is_same_v<T, node::Z>) {
          return {{"type", "Z"}, {"alpha", unitJson(n.alpha)}};
        } else if constexpr (std::is_same_v<T, node::PAdic>) {
          const auto& b = n.params;
          nlohmann::json j = {{"type", "padic"},
                              {"n", b.n},
                              {"q", jsonInteger(b.q)},
                              {"case", std::string(caseName(b.caseTag))}};
          if (b.f) j["f"] = *b.f == kInfiniteF ? nlohmann::json("inf") : nlohmann::json(*b.f);
          if (b.level) j["s"] = *b.level;
          return j;
        } else if constexpr (std::is_same_v<T, node::FreeProd>) {
          auto arr = nlohmann::json::array();
          for (const auto& f : n.factors) arr.push_back(toJson(f));
          return {{"type", "freeprod"}, {"factors", arr}};
        } else {
          return {{"type", "ext"}, {"m", n.m}, {"base", toJson(n.base.front())}};
        }
      },
      e.node());
}

PairExpr fromJson(const nlohmann::json& j, std::uint32_t p, unsigned precision) {
  if (!j.is_object() || !j.contains("type")) throw ValidationError("pair JSON needs a \"type\" field");
  const auto type = j.at("type").get<std::string>();
  if (type == "triv") return PairExpr::trivial(p, precision);
  if (type == "E") return PairExpr::eblock(p, precision);
  if (type == "Z") {
    const auto& a = j.at("alpha");
    if (a.contains("residue")) return PairExpr::zblock(unitFromResidue(p, integerFromJson(a.at("residue")), precision));
    return PairExpr::zblock(makeUnit(p, integerFromJson(a.at("num")), integerFromJson(a.at("den")), precision));
  }
  if (type == "padic") {
    PAdicParams b;
    b.n = j.at("n").get<unsigned>();
    b.q = j.contains("q") ? integerFromJson(j.at("q")) : mpz_class(0);
    const auto c = caseFromName(j.value("case", std::string("I")));
    if (!c) throw ValidationError("unknown Demuskin case in pair JSON");
    b.caseTag = *c;
    if (j.contains("f")) {
      const auto& f = j.at("f");
      b.f = f.is_string() ? kInfiniteF : f.get<unsigned>();
    }
    if (j.contains("s")) b.level = j.at("s").get<unsigned>();
    return PairExpr::padic(p, b, precision);
  }
  if (type == "freeprod") {
    std::vector<PairExpr> fs;
    for (const auto& f : j.at("factors")) fs.push_back(fromJson(f, p, precision));
    return PairExpr::freeProd(std::move(fs));
  }
  if (type == "ext") return PairExpr::ext(j.at("m").get<unsigned>(), fromJson(j.at("base"), p, precision));
  throw ValidationError("unknown pair type \"" + type + "\"");
}

} // namespace cyclo
