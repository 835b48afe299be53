#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclo {

/// The field with q = r^k elements, r prime, q <= 2^16.
///
/// Elements are indices 0..q-1 read as base-r digit vectors of a polynomial
/// in the generator g modulo a fixed irreducible polynomial; g is chosen
/// primitive, so multiplication runs through discrete log tables.
class FiniteField {
public:
  using Elem = std::uint32_t;

  explicit FiniteField(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return r_; }
  unsigned degree() const noexcept { return k_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem fromInteger(std::int64_t n) const;
  /// The primitive element; equals a generator of the prime field when k = 1.
  Elem generator() const noexcept { return exp_[1 % (q_ - 1)]; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const; // NotAUnit on zero
  Elem pow(Elem a, std::int64_t e) const;

  /// Discrete logarithm to the base generator(); NotAUnit on zero.
  std::uint32_t log(Elem a) const;
  Elem exp(std::int64_t n) const;

  /// Decimal for prime fields; "g^i" otherwise.
  std::string render(Elem a) const;

private:
  std::uint32_t q_;
  std::uint32_t r_;
  unsigned k_;
  std::vector<Elem> exp_;          // exp_[i] = g^i, i < q-1
  std::vector<std::uint32_t> log_; // log_[exp_[i]] = i
};

} // namespace cyclo
