#pragma once

// Dense linear algebra over a prime field F_p with p < 2^31.
//
// Entries are stored as uint32 residues. Row updates use Shoup's precomputed
// quotient trick so the inner loop is branch-free 32-bit arithmetic that the
// compiler vectorises.

#include <chopshop/errors.hpp>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chopshop {

#ifdef CHOPSHOP_CHECKS
inline constexpr bool kChecksEnabled = true;
#else
inline constexpr bool kChecksEnabled = false;
#endif

using residue_t = std::uint32_t;

inline constexpr std::uint32_t kDefaultPrime = 2147483647u; // 2^31 - 1

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin; bases {2, 7, 61} are exact below 2^32.
inline bool is_prime_u32(std::uint32_t p) {
  if (p < 2)
    return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 61u})
    if (p % q == 0)
      return p == q;
  std::uint32_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {
    std::uint64_t x = powmod64(a, d, p);
    if (x == 1 || x == p - 1)
      continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, p);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

} // namespace detail

/// The field F_p for an odd prime 2 < p < 2^31.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (p <= 2 || p >= (1u << 31))
      throw std::invalid_argument("PrimeField: need 2 < p < 2^31, got " + std::to_string(p));
    if (!detail::is_prime_u32(p))
      throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  }

  std::uint32_t p() const { return p_; }

  residue_t reduce(std::int64_t v) const {
    const std::int64_t m = v % static_cast<std::int64_t>(p_);
    return static_cast<residue_t>(m < 0 ? m + p_ : m);
  }
  residue_t add(residue_t a, residue_t b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  residue_t sub(residue_t a, residue_t b) const { return a >= b ? a - b : a + p_ - b; }
  residue_t neg(residue_t a) const { return a == 0 ? 0 : p_ - a; }
  residue_t mul(residue_t a, residue_t b) const {
    return static_cast<residue_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  residue_t pow(residue_t a, std::uint64_t e) const {
    return static_cast<residue_t>(detail::powmod64(a, e, p_));
  }
  residue_t inv(residue_t a) const {
    if (a == 0)
      throw std::domain_error("PrimeField: inverse of zero");
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
  std::uint32_t p_;
};

namespace detail {

/// dst[j] += w * src[j] (mod p) for j in [from, len).
inline void axpy_mod(residue_t* __restrict dst, const residue_t* __restrict src, residue_t w,
                     std::uint32_t p, std::size_t from, std::size_t len) {
  const std::uint32_t wp =
      static_cast<std::uint32_t>((static_cast<std::uint64_t>(w) << 32) / p);
  for (std::size_t j = from; j < len; ++j) {
    const std::uint32_t s = src[j];
    const std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(s) * wp) >> 32);
    std::uint32_t r = s * w - q * p; // in [0, 2p)
    r = r >= p ? r - p : r;
    std::uint32_t x = dst[j] + r;
    x = x >= p ? x - p : x;
    dst[j] = x;
  }
}

/// v[j] *= w (mod p) for j in [from, len).
inline void scale_mod(residue_t* v, residue_t w, std::uint32_t p, std::size_t from,
                      std::size_t len) {
  for (std::size_t j = from; j < len; ++j)
    v[j] = static_cast<residue_t>(static_cast<std::uint64_t>(v[j]) * w % p);
}

} // namespace detail

/// Dense row-major matrix over F_p.
class ModMatrix {
public:
  ModMatrix() : field_(kDefaultPrime) {}
  ModMatrix(std::size_t rows, std::size_t cols, PrimeField field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

  static ModMatrix identity(std::size_t k, PrimeField field) {
    ModMatrix m(k, k, field);
    for (std::size_t i = 0; i < k; ++i)
      m(i, i) = 1;
    return m;
  }

  /// From signed integers, reduced mod p.
  static ModMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                             PrimeField field) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    ModMatrix m(rows.size(), c, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c)
        throw std::invalid_argument("ModMatrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = field.reduce(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  residue_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  residue_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<residue_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const residue_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<residue_t> column(std::size_t j) const {
    std::vector<residue_t> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      out[i] = (*this)(i, j);
    return out;
  }

  void set_column(std::size_t j, std::span<const residue_t> v) {
    if (v.size() != rows_)
      throw std::invalid_argument("ModMatrix::set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, j) = v[i];
  }

  const std::vector<residue_t>& data() const { return data_; }

  ModMatrix transpose() const {
    ModMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](residue_t v) { return v == 0; });
  }

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
      throw std::invalid_argument("ModMatrix product: shape or field mismatch");
    ModMatrix c(a.rows_, b.cols_, a.field_);
    const std::uint32_t p = a.field_.p();
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (const residue_t v = a(i, k))
          detail::axpy_mod(c.row(i).data(), b.row(k).data(), v, p, 0, b.cols_);
    return c;
  }

  std::vector<residue_t> apply(std::span<const residue_t> v) const {
    if (v.size() != cols_)
      throw std::invalid_argument("ModMatrix::apply: length mismatch");
    std::vector<residue_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        acc = (acc + static_cast<std::uint64_t>((*this)(i, j)) * v[j]) % field_.p();
      out[i] = static_cast<residue_t>(acc);
    }
    return out;
  }

  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  PrimeField field_;
  std::vector<residue_t> data_;
};

/// Incremental row echelon form of a set of vectors of fixed length.
///
/// Pivot rows are kept in insertion order; row j is monic at pivot_cols()[j],
/// zero before it, and zero at the pivot columns of rows inserted before it.
/// Reducing a vector against the rows in order therefore clears every pivot
/// column. The result depends only on the input order.
class Echelonizer {
public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Echelonizer(PrimeField field, std::size_t length) : field_(field), len_(length) {}

  std::size_t length() const { return len_; }
  std::size_t rank() const { return pivot_cols_.size(); }
  const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }
  std::span<const residue_t> pivot_row(std::size_t j) const {
    return {rows_.data() + j * len_, len_};
  }

  /// Reduce v in place against all pivots. Returns the first nonzero index of
  /// the result, or npos if v reduced to zero.
  std::size_t reduce(std::span<residue_t> v) const {
    check_length(v.size());
    reduce_range(v.data(), 0, rank());
    return first_nonzero(v.data());
  }

  bool contains(std::span<const residue_t> v) const {
    std::vector<residue_t> w(v.begin(), v.end());
    return reduce(w) == npos;
  }

  /// Insert one vector; returns true if the rank grew.
  bool insert(std::span<const residue_t> v) {
    check_length(v.size());
    std::vector<residue_t> w(v.begin(), v.end());
    reduce_range(w.data(), 0, rank());
    return push_reduced(w.data());
  }

  /// Insert `count` vectors produced by fill(k, out) for k = 0..count-1,
  /// stopping once the rank reaches stop_at. Vectors are processed in blocks
  /// so each pivot row is streamed once per block. Returns the number of
  /// vectors consumed.
  std::size_t insert_stream(std::size_t count,
                            const std::function<void(std::size_t, std::span<residue_t>)>& fill,
                            std::size_t stop_at = npos, std::size_t block = 16) {
    std::vector<residue_t> buf(block * len_);
    std::size_t k = 0;
    while (k < count && rank() < stop_at) {
      const std::size_t b = std::min(block, count - k);
      std::fill(buf.begin(), buf.begin() + b * len_, 0);
      for (std::size_t i = 0; i < b; ++i)
        fill(k + i, std::span<residue_t>(buf.data() + i * len_, len_));
      const std::size_t before = rank();
      // Pivot-major pass over the existing echelon rows.
      const std::uint32_t p = field_.p();
      for (std::size_t j = 0; j < before; ++j) {
        const std::size_t c = pivot_cols_[j];
        const residue_t* prow = rows_.data() + j * len_;
        for (std::size_t i = 0; i < b; ++i) {
          residue_t* v = buf.data() + i * len_;
          if (const residue_t a = v[c])
            detail::axpy_mod(v, prow, p - a, p, c, len_);
        }
      }
      for (std::size_t i = 0; i < b && rank() < stop_at; ++i) {
        residue_t* v = buf.data() + i * len_;
        reduce_range(v, before, rank());
        push_reduced(v);
        ++k;
      }
      if (rank() >= stop_at)
        break;
    }
    return k;
  }

private:
  void check_length(std::size_t n) const {
    if (n != len_)
      throw std::invalid_argument("Echelonizer: vector length mismatch");
  }

  void reduce_range(residue_t* v, std::size_t from, std::size_t to) const {
    const std::uint32_t p = field_.p();
    for (std::size_t j = from; j < to; ++j) {
      const std::size_t c = pivot_cols_[j];
      if (const residue_t a = v[c])
        detail::axpy_mod(v, rows_.data() + j * len_, p - a, p, c, len_);
    }
  }

  std::size_t first_nonzero(const residue_t* v) const {
    for (std::size_t i = 0; i < len_; ++i)
      if (v[i])
        return i;
    return npos;
  }

  bool push_reduced(residue_t* v) {
    const std::size_t c = first_nonzero(v);
    if (c == npos)
      return false;
    detail::scale_mod(v, field_.inv(v[c]), field_.p(), c, len_);
    rows_.insert(rows_.end(), v, v + len_);
    pivot_cols_.push_back(c);
    return true;
  }

  PrimeField field_;
  std::size_t len_;
  std::vector<residue_t> rows_;
  std::vector<std::size_t> pivot_cols_;
};

/// Reduced row echelon form of M.
struct RrefResult {
  ModMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination; the pivot of each column is the first nonzero
/// entry at or below the current rank.
inline RrefResult rref(const ModMatrix& m) {
  RrefResult out{m, {}};
  ModMatrix& a = out.reduced;
  const std::uint32_t p = m.field().p();
  const PrimeField& F = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0)
      ++piv;
    if (piv == a.rows())
      continue;
    if (piv != r)
      std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
    detail::scale_mod(a.row(r).data(), F.inv(a(r, c)), p, c, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r)
        continue;
      if (const residue_t v = a(i, c))
        detail::axpy_mod(a.row(i).data(), a.row(r).data(), p - v, p, c, a.cols());
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

inline std::size_t rank(const ModMatrix& m) {
  Echelonizer ech(m.field(), m.cols());
  ech.insert_stream(
      m.rows(),
      [&](std::size_t i, std::span<residue_t> out) {
        std::copy(m.row(i).begin(), m.row(i).end(), out.begin());
      });
  return ech.rank();
}

/// Rank of the column span, stopping early once `stop_at` is reached.
inline std::size_t column_rank(const ModMatrix& m, std::size_t stop_at = Echelonizer::npos) {
  Echelonizer ech(m.field(), m.rows());
  ech.insert_stream(
      m.cols(),
      [&](std::size_t j, std::span<residue_t> out) {
        for (std::size_t i = 0; i < m.rows(); ++i)
          out[i] = m(i, j);
      },
      stop_at);
  return ech.rank();
}

/// Basis of the right kernel {v : Mv = 0}, one vector per column of the result.
/// The vector for free column f has a 1 at f, zeros at the other free columns,
/// and minus the reduced entries at the pivot columns.
inline ModMatrix kernel_basis(const ModMatrix& m) {
  const RrefResult rr = rref(m);
  const PrimeField& F = m.field();
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : rr.pivot_cols)
    is_pivot[c] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c])
      free_cols.push_back(c);
  ModMatrix k(m.cols(), free_cols.size(), F);
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t f = free_cols[j];
    k(f, j) = 1;
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
      k(rr.pivot_cols[i], j) = F.neg(rr.reduced(i, f));
  }
  if constexpr (kChecksEnabled) {
    if (rr.pivot_cols.size() + free_cols.size() != m.cols())
      throw std::logic_error("kernel_basis: rank-nullity violated");
    if (!(m * k).is_zero())
      throw std::logic_error("kernel_basis: basis vector not in kernel");
  }
  return k;
}

/// True iff v lies in the column span of M.
inline bool in_span(const ModMatrix& m, std::span<const residue_t> v) {
  if (v.size() != m.rows())
    throw std::invalid_argument("in_span: vector length " + std::to_string(v.size()) +
                                " does not match " + std::to_string(m.rows()) + " rows");
  Echelonizer ech(m.field(), m.rows());
  ech.insert_stream(m.cols(), [&](std::size_t j, std::span<residue_t> out) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      out[i] = m(i, j);
  });
  return ech.contains(v);
}

} // namespace chopshop
