#pragma once

#include "cyclo/fp_linear.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

inline constexpr std::size_t kDefaultGroupOrderBound = 32;

/// A finite group given by its multiplication table, identity at index 0.
class FiniteGroup {
public:
  /// Checks closure, identity, inverses and associativity (ValidationError)
  /// and the order bound (OrderBound).
  static FiniteGroup fromTable(std::vector<std::vector<std::uint32_t>> table,
                               std::vector<std::string> labels = {},
                               std::size_t orderBound = kDefaultGroupOrderBound);

  static FiniteGroup cyclic(std::uint32_t n);
  /// Symmetries of the regular (order/2)-gon; r^i s^j sits at index i + (order/2) j.
  static FiniteGroup dihedral(std::uint32_t order);
  static FiniteGroup klein4();
  /// (g, h) sits at index g + |G| h.
  static FiniteGroup directProduct(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const noexcept { return table_.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  const std::string& label(std::uint32_t a) const { return labels_[a]; }
  const std::vector<std::vector<std::uint32_t>>& table() const noexcept { return table_; }

private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::string> labels_;
};

/// A map G -> F_p as its values on every element.
using GroupFunction = std::vector<std::uint32_t>;
/// A normalized 2-cochain, value of (g, h) at index g * |G| + h.
using Cochain2 = std::vector<std::uint32_t>;

/// Solves the cocycle equations for trivial F_p coefficients with normalized cochains.
class CocycleSolver {
public:
  CocycleSolver(const FiniteGroup& g, std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t h1Dim() const noexcept { return h1_.size(); }
  std::size_t h2Dim() const noexcept { return h2Reps_.size(); }
  /// Homomorphisms G -> F_p forming a basis of H^1.
  const std::vector<GroupFunction>& h1Basis() const noexcept { return h1_; }
  /// Cocycles whose classes form the H^2 basis used for coordinates.
  const std::vector<Cochain2>& h2Representatives() const noexcept { return h2Reps_; }

  bool isHomomorphism(const GroupFunction& f) const;
  bool isCocycle(const Cochain2& c) const;
  /// Coordinates of the class of c; ValidationError when c is not a normalized cocycle.
  FpVec classOf(const Cochain2& c) const;
  /// Class of (g, h) -> phi(g) psi(h); NotAHomomorphism on bad input.
  FpVec cup(const GroupFunction& phi, const GroupFunction& psi) const;

private:
  std::size_t unknown(std::uint32_t g, std::uint32_t h) const { return (g - 1) * (n_ - 1) + (h - 1); }

  const FiniteGroup* group_;
  std::uint32_t p_;
  std::size_t n_;
  std::vector<GroupFunction> h1_;
  std::vector<Cochain2> h2Reps_;
  FpMatrix classSystem_; // columns: H^2 representatives, then a spanning set of B^2
};

std::size_t h1Dim(const FiniteGroup& g, std::uint32_t p);
std::size_t h2Dim(const FiniteGroup& g, std::uint32_t p);
FpVec cupH1H1(const FiniteGroup& g, std::uint32_t p, const GroupFunction& phi, const GroupFunction& psi);

/// Homomorphism G -> F_p determined by values on generators; NotAHomomorphism
/// when no such homomorphism exists.
GroupFunction homomorphismFromImages(const FiniteGroup& g, std::uint32_t p,
                                     const std::vector<std::uint32_t>& generators,
                                     const std::vector<std::uint32_t>& images);

/// Class in H^2(Q, F_p) of the central extension 1 -> <z> -> E -> Q -> 1,
/// read from the factor set s(g)s(h) = z^c(g,h) s(gh). The section defaults to
/// the smallest preimage of each element and must send 1 to 1.
FpVec extensionClass(const FiniteGroup& total, std::uint32_t kernelGenerator, const FiniteGroup& quotient,
                     const std::vector<std::uint32_t>& quotientMap, std::uint32_t p,
                     std::optional<std::vector<std::uint32_t>> section = std::nullopt);

/// {"table": [[...]]} or {"builtin": "cyclic"|"dihedral"|"klein4", "order": n}
/// or {"product": [group, group]}.
FiniteGroup groupFromJson(const nlohmann::json& j, std::size_t orderBound = kDefaultGroupOrderBound);

} // namespace cyclo
