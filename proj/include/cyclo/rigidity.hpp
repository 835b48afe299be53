#pragma once

#include "cyclo/cohomology.hpp"
#include "cyclo/fp_linear.hpp"
#include "cyclo/pair_expr.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

/// A bilinear map A1 x A1 -> A2 of F_p-spaces with a distinguished eps in A1.
struct AugBilinearMap {
  std::uint32_t p = 2;
  std::size_t d = 0; // dim A1
  std::size_t e = 0; // dim A2
  // tensor[(i * d + j) * e + k]: k-th coordinate of (x_i, x_j)
  std::vector<std::uint32_t> tensor;
  FpVec eps;
  std::vector<std::string> labels; // names of the A1 basis, optional

  AugBilinearMap() = default;
  AugBilinearMap(std::uint32_t p, std::size_t d, std::size_t e);

  std::uint32_t at(std::size_t i, std::size_t j, std::size_t k) const { return tensor[(i * d + j) * e + k]; }
  void set(std::size_t i, std::size_t j, std::size_t k, std::uint32_t v) { tensor[(i * d + j) * e + k] = v % p; }
  FpVec pair(const FpVec& x, const FpVec& y) const;
  /// The e x d matrix of y -> (x, y).
  FpMatrix leftMultiplication(const FpVec& x) const;
  /// Restriction along an injective linear map F_p^k -> A1 given by its columns.
  AugBilinearMap restrict(const std::vector<FpVec>& columns, const FpVec& epsPreimage) const;
};

/// Largest p^d for which the exhaustive scans run.
inline constexpr std::uint64_t kDefaultRigidityBound = 4096;

AugBilinearMap fromCohomology(const GradedAlgebra& a);

/// Calls visit on every vector of F_p^d (including 0). Throws DimensionTooLarge when p^d > bound.
void forEachVector(std::uint32_t p, std::size_t d, std::uint64_t bound,
                   const std::function<void(const FpVec&)>& visit);

/// a is rigid when every b with (a, b) = 0 is linearly dependent with eps + a.
bool isRigid(const AugBilinearMap& m, const FpVec& a, std::uint64_t bound = kDefaultRigidityBound);

/// Basis of the span of eps and all non-rigid nonzero vectors.
std::vector<FpVec> nSubspace(const AugBilinearMap& m, std::uint64_t bound = kDefaultRigidityBound);

struct RigidityScan {
  std::vector<FpVec> rigid;
  std::vector<FpVec> nonRigid;
  std::vector<FpVec> nBasis;
};
RigidityScan scanRigidity(const AugBilinearMap& m, std::uint64_t bound = kDefaultRigidityBound);

struct CriterionReport {
  std::size_t inflationDim = 0;
  std::size_t checked = 0;                // classes outside the inflation subspace
  std::vector<FpVec> counterexamples;     // non-rigid classes outside it
  std::size_t nSubspaceDim = 0;
  bool nInsideInflation = true;
  bool holds() const { return counterexamples.empty() && nInsideInflation; }
};

/// Checks that classes outside the inflation image are rigid and that the
/// N-subspace stays inside it. e must have an extension at its root.
CriterionReport checkRigidityCriterion(const PairExpr& e, std::uint64_t bound = kDefaultRigidityBound);

/// Searches for g in GL(A1), h in GL(A2) with g(eps) = eps' and
/// (g x, g y)' = h (x, y). Returns the columns of g when found.
std::optional<FpMatrix> findIsomorphism(const AugBilinearMap& x, const AugBilinearMap& y,
                                        std::size_t maxDim = 4);
inline bool isomorphic(const AugBilinearMap& x, const AugBilinearMap& y, std::size_t maxDim = 4) {
  return findIsomorphism(x, y, maxDim).has_value();
}

/// "x1+2*x3" style rendering against the labels (or e1, e2, ...).
std::string renderVector(const AugBilinearMap& m, const FpVec& v);

nlohmann::json toJson(const AugBilinearMap& m);
nlohmann::json toJson(const AugBilinearMap& m, const RigidityScan& scan);
nlohmann::json toJson(const CriterionReport& r);

} // namespace cyclo
