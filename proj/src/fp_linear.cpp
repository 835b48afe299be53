#include "cyclo/fp_linear.hpp"

#include "cyclo/errors.hpp"

#include <string>
#include <utility>

namespace cyclo {

std::uint32_t modInverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, newt = 1;
  std::int64_t r = p, newr = a % p;
  while (newr != 0) {
    const std::int64_t q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw std::domain_error("modInverse: element not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (p < 2) throw std::invalid_argument("FpMatrix: modulus must be a prime >= 2");
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::fromRows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("FpMatrix::fromRows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FpMatrix FpMatrix::fromVectors(std::uint32_t p, const std::vector<FpVec>& rows, std::size_t cols) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("FpMatrix::fromVectors: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = rows[r][c] % p;
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  std::int64_t x = v % static_cast<std::int64_t>(p_);
  if (x < 0) x += p_;
  data_[r * cols_ + c] = static_cast<std::uint32_t>(x);
}

FpVec FpMatrix::apply(std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) throw DimensionMismatch("FpMatrix::apply: vector length mismatch");
  FpVec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>(data_[r * cols_ + c]) * x[c];
      if ((c & 1023) == 1023) acc %= p_;
    }
    out[r] = static_cast<std::uint32_t>(acc % p_);
  }
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

namespace {

// row[dst] -= factor * row[src], starting at column `from`.
void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
          std::uint32_t p, std::size_t from) {
  const std::uint64_t neg = p - factor;
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (src[c] == 0) continue;
    dst[c] = static_cast<std::uint32_t>((dst[c] + neg * src[c]) % p);
  }
}

void scale(std::span<std::uint32_t> row, std::uint32_t factor, std::uint32_t p) {
  for (auto& x : row) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * factor % p);
}

} // namespace

std::vector<std::size_t> rowReduce(FpMatrix& m) {
  const std::uint32_t p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t pivotRow = 0;
  for (std::size_t c = 0; c < m.cols() && pivotRow < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t r = pivotRow; r < m.rows(); ++r)
      if (m(r, c) != 0) {
        found = r;
        break;
      }
    if (found == m.rows()) continue;
    if (found != pivotRow) {
      auto a = m.row(found);
      auto b = m.row(pivotRow);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    scale(m.row(pivotRow), modInverse(m(pivotRow, c), p), p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivotRow || m(r, c) == 0) continue;
      axpy(m.row(r), m.row(pivotRow), m(r, c), p, c);
    }
    pivots.push_back(c);
    ++pivotRow;
  }
  return pivots;
}

std::size_t rank(const FpMatrix& m) {
  FpMatrix copy = m;
  return rowReduce(copy).size();
}

std::optional<FpVec> solve(const FpMatrix& m, std::span<const std::uint32_t> b) {
  if (b.size() != m.rows())
    throw DimensionMismatch("solve: right-hand side has length " + std::to_string(b.size()) +
                            ", expected " + std::to_string(m.rows()));
  FpMatrix aug(m.prime(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m(r, c));
    aug.set(r, m.cols(), b[r]);
  }
  const auto pivots = rowReduce(aug);
  FpVec x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    x[pivots[i]] = aug(i, m.cols());
  }
  return x;
}

std::vector<FpVec> kernelBasis(const FpMatrix& m) {
  FpMatrix red = m;
  const auto pivots = rowReduce(red);
  const std::uint32_t p = m.prime();
  std::vector<bool> isPivot(m.cols(), false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<FpVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (isPivot[free]) continue;
    FpVec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const auto coeff = red(i, free);
      v[pivots[i]] = coeff == 0 ? 0 : p - coeff;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FpVec EchelonBasis::reduce(FpVec v) const {
  if (v.size() != n_) throw DimensionMismatch("EchelonBasis: vector length mismatch");
  for (auto& x : v) x %= p_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto c = pivots_[i];
    if (v[c] != 0) axpy(v, rows_[i], v[c], p_, 0);
  }
  return v;
}

bool EchelonBasis::contains(const FpVec& v) const {
  const auto r = reduce(v);
  for (auto x : r)
    if (x != 0) return false;
  return true;
}

bool EchelonBasis::insert(const FpVec& v) {
  auto r = reduce(v);
  std::size_t c = 0;
  while (c < n_ && r[c] == 0) ++c;
  if (c == n_) return false;
  scale(r, modInverse(r[c], p_), p_);
  // Keep rows fully reduced so that reduce() is a single pass.
  for (auto& row : rows_)
    if (row[c] != 0) axpy(row, r, row[c], p_, 0);
  rows_.push_back(std::move(r));
  pivots_.push_back(c);
  return true;
}

} // namespace cyclo
