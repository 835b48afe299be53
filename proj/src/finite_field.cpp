#include "cyclo/finite_field.hpp"

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

using Poly = std::vector<std::uint32_t>; // low degree first

Poly digits(std::uint32_t x, std::uint32_t r, unsigned k) {
  Poly d(k, 0);
  for (unsigned i = 0; i < k; ++i, x /= r) d[i] = x % r;
  return d;
}

std::uint32_t fromDigits(const Poly& d, std::uint32_t r) {
  std::uint32_t x = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) x = x * r + *it;
  return x;
}

// a * b mod the monic polynomial `modulus` of degree k.
Poly mulMod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t r) {
  const unsigned k = static_cast<unsigned>(modulus.size()) - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  for (auto& c : prod) c %= r;
  for (unsigned deg = 2 * k - 1; deg >= k; --deg) {
    const auto c = prod[deg];
    if (c == 0) continue;
    for (unsigned i = 0; i <= k; ++i) prod[deg - k + i] = (prod[deg - k + i] + (r - c) * modulus[i]) % r;
  }
  return Poly(prod.begin(), prod.begin() + k);
}

} // namespace

FiniteField::FiniteField(std::uint32_t q) : q_(q) {
  if (q < 2 || q > (1u << 16)) throw InvalidModel("finite field order must lie in [2, 65536]");
  r_ = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      r_ = d;
      break;
    }
  k_ = 0;
  for (std::uint32_t x = q; x > 1; x /= r_) {
    if (x % r_ != 0) throw InvalidModel(std::to_string(q) + " is not a prime power");
    ++k_;
  }

  // For k > 1 search a monic modulus for which x is primitive; for k = 1 search a primitive constant.
  const std::uint32_t n = q - 1;
  exp_.assign(n, 0);
  log_.assign(q, 0);
  auto tryGenerator = [&](const Poly& modulus, std::uint32_t base) {
    const Poly g = digits(base, r_, k_);
    Poly cur = digits(1, r_, k_);
    std::vector<bool> seen(q, false);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto idx = fromDigits(cur, r_);
      if (idx == 0 || seen[idx]) return false;
      seen[idx] = true;
      exp_[i] = idx;
      log_[idx] = i;
      cur = mulMod(cur, g, modulus, r_);
    }
    return fromDigits(cur, r_) == 1;
  };
  if (k_ == 1) {
    const Poly modulus{0, 1};
    for (std::uint32_t cand = 1; cand < q; ++cand)
      if (tryGenerator(modulus, cand)) return;
  } else {
    std::uint32_t modulusCount = q; // monic polynomials of degree k
    for (std::uint32_t m = 0; m < modulusCount; ++m) {
      Poly modulus = digits(m, r_, k_);
      modulus.push_back(1);
      if (tryGenerator(modulus, r_)) return;
    }
  }
  throw InvalidModel("no primitive element found for order " + std::to_string(q));
}

FiniteField::Elem FiniteField::fromInteger(std::int64_t n) const {
  auto m = n % static_cast<std::int64_t>(r_);
  if (m < 0) m += r_;
  return static_cast<Elem>(m);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  Elem out = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i, place *= r_) {
    out += ((a % r_ + b % r_) % r_) * place;
    a /= r_;
    b /= r_;
  }
  return out;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  Elem out = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i, place *= r_) {
    out += ((r_ - a % r_) % r_) * place;
    a /= r_;
  }
  return out;
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw NotAUnit("zero has no inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw NotAUnit("zero has no inverse");
    return e == 0 ? 1 : 0;
  }
  return exp(static_cast<std::int64_t>(log_[a]) * (e % static_cast<std::int64_t>(q_ - 1)));
}

std::uint32_t FiniteField::log(Elem a) const {
  if (a == 0) throw NotAUnit("zero has no logarithm");
  return log_[a];
}

FiniteField::Elem FiniteField::exp(std::int64_t n) const {
  const auto m = static_cast<std::int64_t>(q_ - 1);
  auto i = n % m;
  if (i < 0) i += m;
  return exp_[static_cast<std::size_t>(i)];
}

std::string FiniteField::render(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto l = log(a);
  if (l == 0) return "1";
  return l == 1 ? "g" : "g^" + std::to_string(l);
}

} // namespace cyclo
