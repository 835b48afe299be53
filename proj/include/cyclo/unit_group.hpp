#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyclo {

inline constexpr unsigned kDefaultPrecision = 64;

mpz_class primePower(std::uint32_t p, unsigned k);
/// p-adic valuation of a nonzero integer; `cap` is returned for zero.
unsigned valuation(const mpz_class& x, std::uint32_t p, unsigned cap);

/// An element of 1 + pZ_p known modulo p^K.
///
/// The optional rational keeps the user's input for rendering; identity and
/// ordering are decided by the residue alone.
class PAdicUnit {
public:
  std::uint32_t prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return k_; }
  const mpz_class& residue() const noexcept { return residue_; }
  const std::optional<std::pair<mpz_class, mpz_class>>& rational() const noexcept {
    return rational_;
  }

  bool isOne() const { return residue_ == 1; }
  PAdicUnit operator*(const PAdicUnit& other) const;
  PAdicUnit inverse() const;
  PAdicUnit pow(unsigned e) const;

  bool operator==(const PAdicUnit& o) const {
    return p_ == o.p_ && k_ == o.k_ && residue_ == o.residue_;
  }
  /// Total order by (p, K, residue).
  int compare(const PAdicUnit& o) const;

  /// "num/den" when the rational is known, otherwise the residue in decimal.
  std::string render() const;

  friend PAdicUnit makeUnit(std::uint32_t, const mpz_class&, const mpz_class&, unsigned);
  friend PAdicUnit unitFromResidue(std::uint32_t, const mpz_class&, unsigned);

private:
  PAdicUnit(std::uint32_t p, unsigned k, mpz_class residue)
      : p_(p), k_(k), residue_(std::move(residue)) {}

  std::uint32_t p_;
  unsigned k_;
  mpz_class residue_;
  std::optional<std::pair<mpz_class, mpz_class>> rational_;
};

/// The residue of numerator/denominator mod p^K.
/// Throws DenominatorNotInvertible, NotAUnit (value not 1 mod p), and
/// PrecisionExhausted when a rational different from 1 is congruent to 1 mod p^K.
PAdicUnit makeUnit(std::uint32_t p, const mpz_class& numerator, const mpz_class& denominator,
                   unsigned precision = kDefaultPrecision);
PAdicUnit makeUnit(std::uint32_t p, std::int64_t numerator, std::int64_t denominator = 1,
                   unsigned precision = kDefaultPrecision);
PAdicUnit unitFromResidue(std::uint32_t p, const mpz_class& residue,
                          unsigned precision = kDefaultPrecision);

/// Image under Z_p^{x,1} -> Z/p given by the sign for p = 2, zero for odd p.
std::uint32_t epsilonOf(const PAdicUnit& u);

struct UnitSubgroupInvariants {
  bool trivial = true;
  /// q = p^qExponent, or q = 0 when qExponent == 0 (trivial subgroup).
  unsigned qExponent = 0;
  bool epsNonzero = false;
  /// (H : H^2) for p = 2; 1 for odd p.
  unsigned squareIndex = 1;

  mpz_class q(std::uint32_t p) const { return qExponent == 0 ? mpz_class(0) : primePower(p, qExponent); }
  bool operator==(const UnitSubgroupInvariants&) const = default;
};

/// Invariants of the closed subgroup of Z_p^{x,1} generated by `generators`.
/// Generators whose residue is 1 are the identity. Throws PrecisionExhausted
/// when some generator is != 1 yet lies in 1 + p^{K-2} Z_p.
UnitSubgroupInvariants subgroupInvariants(std::uint32_t p, std::span<const PAdicUnit> generators,
                                          unsigned precision = kDefaultPrecision);

} // namespace cyclo
