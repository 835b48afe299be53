#pragma once

#include <gmpxx.h>
#include <json.hpp>

namespace cyclo {

/// JSON number when the value fits in 64 bits, decimal string otherwise.
inline nlohmann::json jsonInteger(const mpz_class& x) {
  if (mpz_fits_slong_p(x.get_mpz_t())) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

inline mpz_class integerFromJson(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  return mpz_class(std::to_string(j.get<std::int64_t>()));
}

} // namespace cyclo
