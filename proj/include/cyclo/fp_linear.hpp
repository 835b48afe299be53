#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cyclo {

using FpVec = std::vector<std::uint32_t>;

std::uint32_t modInverse(std::uint32_t a, std::uint32_t p);
bool isPrime(std::uint64_t n);

/// Dense matrix over the prime field F_p, row-major, entries kept in [0, p).
class FpMatrix {
public:
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  static FpMatrix identity(std::uint32_t p, std::size_t n);
  /// Rows must all have the same length; entries are reduced mod p.
  static FpMatrix fromRows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows,
                           std::size_t cols = 0);
  static FpMatrix fromVectors(std::uint32_t p, const std::vector<FpVec>& rows, std::size_t cols);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  FpVec apply(std::span<const std::uint32_t> x) const;
  FpMatrix transposed() const;

  bool operator==(const FpMatrix&) const = default;

private:
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

/// Reduced row echelon form in place with left-to-right pivot order.
/// Returns the pivot column of each nonzero row.
std::vector<std::size_t> rowReduce(FpMatrix& m);

std::size_t rank(const FpMatrix& m);

/// Some x with m x = b, or nullopt. Throws DimensionMismatch when b.size() != rows.
std::optional<FpVec> solve(const FpMatrix& m, std::span<const std::uint32_t> b);

/// Basis of the null space, one vector per free column in increasing order.
std::vector<FpVec> kernelBasis(const FpMatrix& m);

/// Incrementally maintained row-echelon basis of a subspace of F_p^n.
class EchelonBasis {
public:
  EchelonBasis(std::uint32_t p, std::size_t n) : p_(p), n_(n) {}

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient() const noexcept { return n_; }
  std::uint32_t prime() const noexcept { return p_; }

  /// Reduces v against the basis; the result is zero iff v lies in the span.
  FpVec reduce(FpVec v) const;
  bool contains(const FpVec& v) const;
  /// Adds v to the span. Returns false when v was already in it.
  bool insert(const FpVec& v);
  /// Basis vectors in insertion-reduced form.
  const std::vector<FpVec>& vectors() const noexcept { return rows_; }

private:
  std::uint32_t p_;
  std::size_t n_;
  std::vector<FpVec> rows_;
  std::vector<std::size_t> pivots_;
};

} // namespace cyclo
