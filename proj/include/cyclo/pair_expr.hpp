#pragma once

#include "cyclo/unit_group.hpp"

#include <json.hpp>

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cyclo {

enum class DemuskinCase { I, II, III, IV };

std::string_view caseName(DemuskinCase c);

/// Encodes f = infinity (2^f = 0).
inline constexpr unsigned kInfiniteF = std::numeric_limits<unsigned>::max();

struct PAdicParams {
  unsigned n = 0;
  mpz_class q;
  DemuskinCase caseTag = DemuskinCase::I;
  std::optional<unsigned> f;     // absent for Case I
  std::optional<unsigned> level; // p = 2 only: 1, 2 or 4

  bool operator==(const PAdicParams&) const = default;
};

class PairExpr;

namespace node {
struct Trivial {};
struct Z {
  PAdicUnit alpha;
};
struct E {};
struct PAdic {
  PAdicParams params;
};
struct FreeProd {
  std::vector<PairExpr> factors;
};
struct Ext {
  unsigned m;
  std::vector<PairExpr> base; // exactly one element
};
} // namespace node

/// An elementary-type cyclotomic pro-p pair, as an immutable expression tree.
///
/// Every node carries the ambient prime and p-adic precision; the factories
/// validate the block constraints and throw ValidationError.
class PairExpr {
public:
  using Node = std::variant<node::Trivial, node::Z, node::E, node::PAdic, node::FreeProd, node::Ext>;

  static PairExpr trivial(std::uint32_t p, unsigned precision = kDefaultPrecision);
  static PairExpr zblock(const PAdicUnit& alpha);
  static PairExpr eblock(std::uint32_t p, unsigned precision = kDefaultPrecision);
  static PairExpr padic(std::uint32_t p, PAdicParams params, unsigned precision = kDefaultPrecision);
  static PairExpr freeProd(std::vector<PairExpr> factors);
  static PairExpr ext(unsigned m, PairExpr base);

  std::uint32_t prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return k_; }
  const Node& node() const noexcept { return *node_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(node_.get());
  }
  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(*node_);
  }
  const PairExpr& extBase() const { return std::get<node::Ext>(*node_).base.front(); }

  /// Structural equality (units compared by residue).
  bool operator==(const PairExpr& other) const { return compare(other) == 0; }
  /// Canonical total order: constructor tag, numeric parameters, then children.
  int compare(const PairExpr& other) const;

private:
  PairExpr(std::uint32_t p, unsigned k, Node n)
      : p_(p), k_(k), node_(std::make_shared<const Node>(std::move(n))) {}

  std::uint32_t p_;
  unsigned k_;
  std::shared_ptr<const Node> node_;
};

/// Parses the textual grammar
///   expr := term ("*" term)*
///   term := "triv" | "E" | "Z" "(" rational ")" | "padic" "(" keyvals ")"
///         | "ext" "(" nat "," expr ")" | "(" expr ")"
/// Throws SyntaxError, or ValidationError with the offending offset.
PairExpr parse(std::string_view text, std::uint32_t p, unsigned precision = kDefaultPrecision);

/// Inverse of parse on every expression it produced.
std::string render(const PairExpr& e);

/// Flattens and sorts free products, drops trivial factors, merges nested
/// extensions, rewrites ext(m, triv) and (p = 2) ext(m, E) into smaller forms.
PairExpr normalize(const PairExpr& e);

unsigned rank(const PairExpr& e);

/// Torsion exponents of G/[G,G]: 0 for a Z_p factor, a p-power for Z_p/q.
struct AbelianizationDivisors {
  std::vector<mpz_class> divisors;
  bool operator==(const AbelianizationDivisors&) const = default;
};

AbelianizationDivisors abelianization(const PairExpr& e);

/// Values of theta on a generating set of G (identity values omitted).
std::vector<PAdicUnit> thetaGenerators(const PairExpr& e);
UnitSubgroupInvariants thetaImage(const PairExpr& e);

nlohmann::json toJson(const PairExpr& e);
PairExpr fromJson(const nlohmann::json& j, std::uint32_t p, unsigned precision = kDefaultPrecision);

} // namespace cyclo
