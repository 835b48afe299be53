#pragma once

#include "cyclo/finite_field.hpp"
#include "cyclo/fp_linear.hpp"
#include "cyclo/pair_expr.hpp"
#include "cyclo/rigidity.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclo {

enum class ModelKind { Finite, LocalRational, Dyadic, Real, Complex, Laurent };

/// A field element; which members are meaningful depends on the model.
///
/// Finite fields use `ff`. The rational models (local, dyadic, real, complex)
/// use `q`. Laurent series use val/coeffs/absPrec: coeffs[i] is the
/// coefficient of t^(val+i) in the base field. Without absPrec the series is
/// the exact finite sum; with it, coefficients from t^absPrec on are unknown.
struct FieldElement {
  FiniteField::Elem ff = 0;
  mpq_class q;
  std::int64_t val = 0;
  std::vector<FieldElement> coeffs;
  std::optional<std::int64_t> absPrec;
};

/// A concrete field containing the p-th roots of unity, with its group of
/// p-th-power classes and the mod-p symbol K_2(F)/p in explicit coordinates.
class FieldModel {
public:
  static FieldModel finite(std::uint32_t p, std::uint32_t q);
  /// Q_ell for a prime ell != p with ell = 1 mod p (any odd ell for p = 2).
  static FieldModel localRational(std::uint32_t p, std::uint32_t ell);
  static FieldModel dyadic();
  static FieldModel real();
  static FieldModel complex(std::uint32_t p);
  /// base((var)) with inverses computed to `precision` terms.
  static FieldModel laurent(const FieldModel& base, std::string var, unsigned precision);

  ModelKind kind() const noexcept { return kind_; }
  std::uint32_t prime() const noexcept { return p_; }
  std::uint32_t order() const; // finite fields
  std::uint32_t ell() const;   // local fields
  const FieldModel& base() const; // Laurent base
  const std::string& variable() const noexcept { return var_; }
  unsigned precision() const noexcept { return precision_; }
  std::string describe() const;

  // Arithmetic. Division by zero raises NotAUnit; undecidable leading terms of
  // truncated series raise PrecisionExhausted.
  FieldElement fromInteger(const mpz_class& n) const;
  FieldElement parseElement(std::string_view text) const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const { return mul(a, inv(b)); }
  FieldElement pow(const FieldElement& a, std::int64_t e) const;
  bool isZero(const FieldElement& a) const;
  bool isExact(const FieldElement& a) const;
  std::string render(const FieldElement& a) const;

  struct ClassBasis {
    std::vector<std::string> labels;
    std::vector<FieldElement> representatives;
  };
  /// Representatives whose classes are the unit vectors of F^x/(F^x)^p.
  ClassBasis classGroup() const;
  std::size_t classDim() const;
  std::size_t symbolDim() const;
  /// Coordinates of a (F^x)^p in the classGroup basis. NotAUnit for 0.
  FpVec classOf(const FieldElement& a) const;
  bool isPthPower(const FieldElement& a) const;
  /// Coordinates of the mod-p symbol {a, b}.
  FpVec symbol(const FieldElement& a, const FieldElement& b) const;

  /// Discretely valued models (local and Laurent): valuation and residue in residueModel().
  bool isValued() const noexcept { return kind_ == ModelKind::LocalRational || kind_ == ModelKind::Laurent; }
  std::int64_t valuation(const FieldElement& a) const;
  FieldElement residue(const FieldElement& a) const;
  const FieldModel& residueModel() const;

  /// Deterministic list of distinct nonzero elements, at most `bound` long.
  std::vector<FieldElement> sampleElements(std::size_t bound) const;
  /// True when sampleElements(bound) lists every nonzero element.
  bool samplesExhaustive(std::size_t bound) const;

private:
  FieldModel() = default;

  FieldElement seriesAdd(const FieldElement& a, const FieldElement& b) const;
  FieldElement seriesMul(const FieldElement& a, const FieldElement& b) const;
  FieldElement seriesInv(const FieldElement& a) const;
  void seriesNormalize(FieldElement& s) const;
  FieldElement constant(const FieldElement& c) const;

  ModelKind kind_ = ModelKind::Complex;
  std::uint32_t p_ = 2;
  std::uint32_t ell_ = 0;
  std::shared_ptr<const FiniteField> field_;   // finite models
  std::shared_ptr<const FieldModel> residue_;  // F_ell for local models, the base for Laurent
  std::string var_;
  unsigned precision_ = 0;
};

FieldModel modelFromJson(const nlohmann::json& j, std::uint32_t p);
nlohmann::json toJson(const FieldModel& m);

/// Class group with the symbol pairing and eps = class of -1.
AugBilinearMap fromFieldModel(const FieldModel& m);

/// Expected Galois cyclotomic pair of the model's maximal pro-p Galois group.
PairExpr predictGaloisPair(const FieldModel& m, unsigned precision = kDefaultPrecision);

/// Whether the model's symbol map and the cup product of e agree as augmented
/// bilinear maps. Dimensions above 4 raise DimensionTooLarge.
bool checkPairingMatch(const FieldModel& m, const PairExpr& e);

struct TrichotomicResult {
  std::optional<FieldElement> witness; // all three symbols vanish
  std::size_t tried = 0;
  bool exhaustive = false;
};
/// Looks for b with {a,b} = {a,1-b} = {a,1-1/b} = 0. a must not be a p-th power.
TrichotomicResult trichotomicSearch(const FieldModel& m, const FieldElement& a, std::size_t bound);

enum class OTarget { OMinus, OPlus, ORing };
enum class Membership { Member, NonMember, UnknownWithinBound };
std::string_view targetName(OTarget t);
std::string_view membershipName(Membership v);

/// H is the subgroup of F^x containing the p-th powers whose classes span
/// `generators`; nullopt means H = F^x.
using ClassSubgroup = std::optional<std::vector<FpVec>>;

struct OVerdict {
  OTarget target = OTarget::OMinus;
  Membership verdict = Membership::UnknownWithinBound;
  std::size_t searchBound = 0;
  std::optional<FieldElement> witness; // refuting c in O^- for O^+ and O
  std::string reason;
};
OVerdict oMembership(const FieldModel& m, const FieldElement& a, const ClassSubgroup& h, OTarget target,
                     std::size_t bound);

enum class TotalRigidity { TotallyRigid, NotTotallyRigid, UnknownWithinBound };
std::string_view totalRigidityName(TotalRigidity v);

struct TotalRigidityVerdict {
  TotalRigidity verdict = TotalRigidity::UnknownWithinBound;
  // For NotTotallyRigid: x with class(x) (x) class(1-x) outside span{a (x) -a}.
  std::optional<FieldElement> witness;
  FpVec witnessLeft, witnessRight;
  std::size_t steinbergRank = 0;   // rank of the Steinberg tensors found
  std::size_t pureRank = 0;        // rank of span{a (x) -a}
  std::size_t unresolvedPairs = 0; // class pairs with zero symbol and no witness
  std::size_t tried = 0;
};
TotalRigidityVerdict isTotallyRigidBounded(const FieldModel& m, std::size_t bound);

} // namespace cyclo
