#include "cyclo/unit_group.hpp"

#include "cyclo/errors.hpp"

namespace cyclo {

mpz_class primePower(std::uint32_t p, unsigned k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

unsigned valuation(const mpz_class& x, std::uint32_t p, unsigned cap) {
  if (x == 0) return cap;
  mpz_class y = abs(x);
  unsigned v = 0;
  while (v < cap && mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    y /= p;
    ++v;
  }
  return v;
}

namespace {

mpz_class reduce(const mpz_class& x, const mpz_class& mod) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  return r;
}

void checkPrecision(unsigned k) {
  if (k < 3) throw ValidationError("p-adic precision must be at least 3 digits");
}

} // namespace

PAdicUnit PAdicUnit::operator*(const PAdicUnit& other) const {
  if (p_ != other.p_ || k_ != other.k_)
    throw ValidationError("PAdicUnit: mixed primes or precisions");
  PAdicUnit out(p_, k_, reduce(residue_ * other.residue_, primePower(p_, k_)));
  if (rational_ && other.rational_)
    out.rational_ = std::pair{rational_->first * other.rational_->first,
                              rational_->second * other.rational_->second};
  return out;
}

PAdicUnit PAdicUnit::inverse() const {
  const mpz_class mod = primePower(p_, k_);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), mod.get_mpz_t());
  PAdicUnit out(p_, k_, inv);
  if (rational_) out.rational_ = std::pair{rational_->second, rational_->first};
  return out;
}

PAdicUnit PAdicUnit::pow(unsigned e) const {
  const mpz_class mod = primePower(p_, k_);
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), residue_.get_mpz_t(), e, mod.get_mpz_t());
  return PAdicUnit(p_, k_, r);
}

int PAdicUnit::compare(const PAdicUnit& o) const {
  if (p_ != o.p_) return p_ < o.p_ ? -1 : 1;
  if (k_ != o.k_) return k_ < o.k_ ? -1 : 1;
  return cmp(residue_, o.residue_) < 0 ? -1 : (residue_ == o.residue_ ? 0 : 1);
}

std::string PAdicUnit::render() const {
  if (rational_) {
    auto [n, d] = *rational_;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    n /= g;
    d /= g;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return d == 1 ? n.get_str() : n.get_str() + "/" + d.get_str();
  }
  return residue_.get_str();
}

PAdicUnit makeUnit(std::uint32_t p, const mpz_class& numerator, const mpz_class& denominator,
                   unsigned precision) {
  checkPrecision(precision);
  if (denominator == 0 || mpz_divisible_ui_p(denominator.get_mpz_t(), p))
    throw DenominatorNotInvertible("denominator " + denominator.get_str() +
                                   " is not invertible mod " + std::to_string(p));
  const mpz_class mod = primePower(p, precision);
  mpz_class inv;
  const mpz_class den = reduce(denominator, mod);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  const mpz_class residue = reduce(numerator * inv, mod);
  if (reduce(residue, mpz_class(p)) != 1)
    throw NotAUnit(numerator.get_str() + "/" + denominator.get_str() + " is not 1 mod " +
                   std::to_string(p));
  if (residue == 1 && numerator != denominator)
    throw PrecisionExhausted(numerator.get_str() + "/" + denominator.get_str() +
                             " is indistinguishable from 1 at precision " +
                             std::to_string(precision));
  PAdicUnit u(p, precision, residue);
  u.rational_ = std::pair{numerator, denominator};
  return u;
}

PAdicUnit makeUnit(std::uint32_t p, std::int64_t numerator, std::int64_t denominator,
                   unsigned precision) {
  return makeUnit(p, mpz_class(static_cast<long>(numerator)),
                  mpz_class(static_cast<long>(denominator)), precision);
}

PAdicUnit unitFromResidue(std::uint32_t p, const mpz_class& residue, unsigned precision) {
  checkPrecision(precision);
  const mpz_class r = reduce(residue, primePower(p, precision));
  if (reduce(r, mpz_class(p)) != 1)
    throw NotAUnit(residue.get_str() + " is not 1 mod " + std::to_string(p));
  return PAdicUnit(p, precision, r);
}

std::uint32_t epsilonOf(const PAdicUnit& u) {
  if (u.prime() != 2) return 0;
  return mpz_tstbit(u.residue().get_mpz_t(), 1) ? 1 : 0;
}

UnitSubgroupInvariants subgroupInvariants(std::uint32_t p, std::span<const PAdicUnit> generators,
                                          unsigned precision) {
  checkPrecision(precision);
  const mpz_class mod = primePower(p, precision);

  // Each nontrivial generator u is written (-1)^s * w with w = 1 mod 4 (p = 2)
  // or w = u (p odd); v = v_p(w - 1) locates w in the filtration 1 + p^v Z_p.
  struct Coord {
    bool sign;
    unsigned v; // == precision when w is exactly 1
  };
  std::vector<Coord> coords;
  for (const auto& g : generators) {
    if (g.prime() != p || g.precision() != precision)
      throw ValidationError("subgroupInvariants: generator has different prime or precision");
    if (g.isOne()) continue;
    bool sign = false;
    mpz_class w = g.residue();
    if (p == 2 && epsilonOf(g) == 1) {
      sign = true;
      w = reduce(-w, mod);
    }
    const unsigned v = valuation(w - 1, p, precision);
    if (v < precision && v + 2 >= precision)
      throw PrecisionExhausted("unit " + g.render() + " lies in 1 + " + std::to_string(p) + "^" +
                               std::to_string(v) + " Z_p; invariants undecidable at precision " +
                               std::to_string(precision));
    coords.push_back({sign, v});
  }

  UnitSubgroupInvariants inv;
  if (coords.empty()) return inv;
  inv.trivial = false;

  unsigned minV = precision;
  for (const auto& c : coords) {
    if (c.sign) inv.epsNonzero = true;
    minV = std::min(minV, c.v);
  }
  if (inv.epsNonzero) {
    inv.qExponent = 1;
  } else {
    inv.qExponent = minV;
  }

  if (p != 2) return inv;

  // The closure is a Z_2-submodule of {+-1} x (1+4Z_2) ~ Z/2 x Z_2. It needs two
  // generators exactly when it contains -1 alongside a nontrivial 1+4Z_2 part.
  if (minV == precision) {
    inv.squareIndex = 2; // only -1
    return inv;
  }
  const Coord* lead = nullptr;
  for (const auto& c : coords)
    if (c.v == minV) {
      lead = &c;
      break;
    }
  bool torsion = false;
  for (const auto& c : coords) {
    // Subtract the Z_2-multiple of the lead generator that kills the Z_2 part;
    // the multiplier is odd exactly when the valuations agree.
    const bool t = c.sign != (c.v == minV && lead->sign);
    if (t) torsion = true;
  }
  inv.squareIndex = torsion ? 4 : 2;
  return inv;
}

} // namespace cyclo
