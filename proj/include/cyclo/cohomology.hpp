#pragma once

#include "cyclo/fp_linear.hpp"
#include "cyclo/pair_expr.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyclo {

/// Truncated graded F_p-algebra H^{<=D}(G) with labeled monomial bases.
///
/// Degree 0 is spanned by the unit. Products of basis elements whose degrees
/// sum to at most D are stored densely; products landing above D are not
/// represented.
class GradedAlgebra {
public:
  GradedAlgebra(std::uint32_t p, unsigned maxDegree);

  std::uint32_t prime() const noexcept { return p_; }
  unsigned maxDegree() const noexcept { return maxDegree_; }
  std::size_t dim(unsigned degree) const { return labels_.at(degree).size(); }
  std::vector<std::size_t> dims() const;
  const std::vector<std::string>& labels(unsigned degree) const { return labels_.at(degree); }

  /// Coordinates of basis(i)[a] * basis(j)[b] in degree i + j.
  std::span<const std::uint32_t> product(unsigned i, std::size_t a, unsigned j, std::size_t b) const;
  FpVec multiply(unsigned i, const FpVec& x, unsigned j, const FpVec& y) const;

  /// Degree-1 coordinates of the distinguished class eps.
  const FpVec& eps() const noexcept { return eps_; }
  /// eps^k in degree k (k <= D).
  FpVec epsPower(unsigned k) const;

  /// Cup product Gram tensor H^1 x H^1 -> H^2: gram(a, b) is a coordinate vector.
  std::span<const std::uint32_t> gram(std::size_t a, std::size_t b) const { return product(1, a, 1, b); }

  /// For algebras of an extension Z_p^m x| G: degree-1 indices of the beta
  /// classes and of the inflated classes from the base.
  struct ExtensionData {
    unsigned m = 0;
    std::vector<std::size_t> betaIndex;
    std::vector<std::size_t> inflatedIndex;
  };
  const std::optional<ExtensionData>& extension() const noexcept { return extension_; }

  // Construction interface used by the block and operation builders.
  void setBasis(unsigned degree, std::vector<std::string> labels);
  void allocateProducts();
  void setProduct(unsigned i, std::size_t a, unsigned j, std::size_t b, std::span<const std::uint32_t> value);
  void setEps(FpVec eps) { eps_ = std::move(eps); }
  void setExtension(ExtensionData d) { extension_ = std::move(d); }

private:
  std::size_t offset(unsigned i, std::size_t a, unsigned j, std::size_t b) const;

  std::uint32_t p_;
  unsigned maxDegree_;
  std::vector<std::vector<std::string>> labels_;
  // table_[i][j] holds dim(i) * dim(j) * dim(i+j) entries, for i + j <= D.
  std::vector<std::vector<std::vector<std::uint32_t>>> table_;
  FpVec eps_;
  std::optional<ExtensionData> extension_;
};

/// H^{<=D}(G) for an elementary-type pair; D >= 2 (DegreeTooSmall otherwise).
GradedAlgebra buildCohomology(const PairExpr& e, unsigned maxDegree);

/// dim H^i for i = 0..D from the block dimensions alone: free products add
/// positive degrees, extensions convolve with binomial coefficients.
std::vector<std::size_t> dimsClosedForm(const PairExpr& e, unsigned maxDegree);

/// The degree-2 part of the algebra as a d x d matrix when dim H^2 == 1.
std::optional<FpMatrix> cupGramMatrix(const GradedAlgebra& a);

struct DemuskinVerdict {
  bool isDemuskin = false;
  unsigned n = 0;
  mpz_class q;
  DemuskinCase caseTag = DemuskinCase::I;
  std::optional<unsigned> f;
};

bool isDemuskin(const PairExpr& e);
DemuskinVerdict classifyDemuskin(const PairExpr& e);

/// Logarithmic level: a positive integer, or infinity (nullopt value).
struct LogLevel {
  std::optional<unsigned> value;
  static LogLevel infinite() { return {}; }
  bool isInfinite() const { return !value.has_value(); }
  bool operator==(const LogLevel&) const = default;
  std::string str() const { return value ? std::to_string(*value) : "inf"; }
};

/// Block-wise recursion for the logarithmic level. For odd p the answer is 1;
/// with requireTwo set, odd p raises WrongPrime instead.
LogLevel logLevelRecursive(const PairExpr& e, bool requireTwo = false);

/// Smallest m <= D with eps^m = 0 in the truncated ring, or nullopt for ">D".
std::optional<unsigned> logLevelDirect(const PairExpr& e, unsigned maxDegree);

nlohmann::json toJson(const GradedAlgebra& a);

} // namespace cyclo
