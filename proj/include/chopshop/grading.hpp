#pragma once

// Graded monomial bookkeeping for S = k[x_0, ..., x_n].
//
// Monomials of a fixed degree are ordered by graded reverse lexicographic
// order, largest first: x_0^t comes first and x_n^t last. Every matrix in the
// library indexes rows and columns through this order.

#include <chopshop/errors.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chopshop {

using count_t = std::int64_t;

/// Dimension of the degree-t part of a polynomial ring in n+1 variables,
/// binom(n+t, n). Zero for negative t.
inline count_t hs(int n, long long t) {
  if (n < 0)
    throw std::invalid_argument("hs: negative dimension");
  if (t < 0)
    return 0;
  const long long k = std::min<long long>(n, t);
  unsigned __int128 acc = 1;
  constexpr auto cap = static_cast<unsigned __int128>(std::numeric_limits<count_t>::max());
  for (long long i = 1; i <= k; ++i) {
    // acc * (n + t - k + i) / i stays integral: it is binom(n+t-k+i, i).
    acc = acc * static_cast<unsigned __int128>(n + t - k + i);
    acc /= static_cast<unsigned __int128>(i);
    if (acc > cap)
      throw capacity_error("hs(" + std::to_string(n) + ", " + std::to_string(t) +
                           ") exceeds 64-bit range");
  }
  return static_cast<count_t>(acc);
}

/// Ordinary binomial coefficient with the same overflow policy as hs.
inline count_t binomial(long long top, long long k) {
  if (k < 0 || top < 0 || k > top)
    return 0;
  return hs(static_cast<int>(std::min(k, top - k)), top - std::min(k, top - k));
}

/// Exponent vector of a monomial in n+1 variables.
struct Exponent {
  std::vector<int> entries;

  Exponent() = default;
  explicit Exponent(std::vector<int> e) : entries(std::move(e)) {
    for (int v : entries)
      if (v < 0)
        throw std::invalid_argument("Exponent: negative entry");
  }
  Exponent(std::initializer_list<int> e) : Exponent(std::vector<int>(e)) {}

  int degree() const { return std::accumulate(entries.begin(), entries.end(), 0); }
  /// Ambient dimension n (number of variables minus one).
  int dim() const { return static_cast<int>(entries.size()) - 1; }
  int operator[](std::size_t i) const { return entries[i]; }

  bool divides(const Exponent& other) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i] > other.entries[i])
        return false;
    return true;
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Exponent& e) {
  os << '(';
  for (std::size_t i = 0; i < e.entries.size(); ++i)
    os << (i ? "," : "") << e.entries[i];
  return os << ')';
}

inline Exponent mono_mul(const Exponent& a, const Exponent& b) {
  if (a.entries.size() != b.entries.size())
    throw std::invalid_argument("mono_mul: exponent lengths differ");
  Exponent out;
  out.entries.resize(a.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    out.entries[i] = a.entries[i] + b.entries[i];
  return out;
}

/// All exponents of degree t in n+1 variables, grevlex descending.
inline std::vector<Exponent> monomials(int n, int t) {
  if (n < 0 || t < 0)
    throw std::invalid_argument("monomials: need n >= 0 and t >= 0");
  std::vector<Exponent> out;
  out.reserve(static_cast<std::size_t>(hs(n, t)));
  std::vector<int> e(n + 1, 0);
  // Iterate (e_n, e_{n-1}, ..., e_1) lexicographically ascending; e_0 absorbs
  // the remaining degree. This is exactly grevlex descending.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == 0) {
      e[0] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      e[var] = a;
      self(self, var - 1, remaining - a);
    }
    e[var] = 0;
  };
  rec(rec, n, t);
  return out;
}

/// Position of m in monomials(n, t).
inline count_t mono_index(int n, int t, const Exponent& m) {
  if (m.dim() != n)
    throw std::invalid_argument("mono_index: exponent has wrong number of variables");
  if (m.degree() != t)
    throw std::invalid_argument("mono_index: exponent degree " + std::to_string(m.degree()) +
                                " does not match " + std::to_string(t));
  count_t idx = 0;
  int deg = t;
  for (int k = n; k >= 1; --k) {
    idx += hs(k, deg) - hs(k, deg - m.entries[k]);
    deg -= m.entries[k];
  }
  return idx;
}

/// Precomputed ranking tables for hot loops that index many monomials.
class MonomialIndexer {
public:
  MonomialIndexer(int n, int max_degree) : n_(n), max_degree_(max_degree) {
    table_.resize(static_cast<std::size_t>(n + 1) * (max_degree + 1));
    for (int k = 0; k <= n; ++k)
      for (int t = 0; t <= max_degree; ++t)
        table_[k * (max_degree + 1) + t] = hs(k, t);
  }

  int n() const { return n_; }
  int max_degree() const { return max_degree_; }

  count_t hs_at(int k, int t) const {
    return t < 0 ? 0 : table_[k * (max_degree_ + 1) + t];
  }

  /// Index of the monomial with exponent vector e (length n+1) and degree t.
  count_t index(std::span<const int> e, int t) const {
    count_t idx = 0;
    int deg = t;
    for (int k = n_; k >= 1; --k) {
      idx += hs_at(k, deg) - hs_at(k, deg - e[k]);
      deg -= e[k];
    }
    return idx;
  }

  /// Index of a*b in degree deg(a)+deg(b), without materialising the product.
  count_t product_index(std::span<const int> a, std::span<const int> b, int t) const {
    count_t idx = 0;
    int deg = t;
    for (int k = n_; k >= 1; --k) {
      const int ek = a[k] + b[k];
      idx += hs_at(k, deg) - hs_at(k, deg - ek);
      deg -= ek;
    }
    return idx;
  }

private:
  int n_;
  int max_degree_;
  std::vector<count_t> table_;
};

/// Table of product positions: entry [i * |S_b| + j] is the index in degree a+b
/// of monomials(n,a)[i] * monomials(n,b)[j].
inline std::vector<std::uint32_t> product_index_table(int n, int a, int b) {
  const auto ma = monomials(n, a);
  const auto mb = monomials(n, b);
  MonomialIndexer idx(n, a + b);
  std::vector<std::uint32_t> out(ma.size() * mb.size());
  for (std::size_t i = 0; i < ma.size(); ++i)
    for (std::size_t j = 0; j < mb.size(); ++j)
      out[i * mb.size() + j] =
          static_cast<std::uint32_t>(idx.product_index(ma[i].entries, mb[j].entries, a + b));
  return out;
}

/// A Hilbert-type function t -> value for t = 0, 1, ..., with a description of
/// what happens past the stored range. tail_value == nullopt means the table
/// keeps growing (no stabilisation known).
struct HilbertTable {
  int n = 0;
  std::vector<count_t> values;
  std::optional<count_t> tail_value;

  HilbertTable() = default;
  HilbertTable(int n_, std::vector<count_t> v, std::optional<count_t> tail = std::nullopt)
      : n(n_), values(std::move(v)), tail_value(tail) {
    validate();
  }

  void validate() const {
    for (count_t v : values)
      if (v < 0)
        throw std::invalid_argument("HilbertTable: negative value");
    if (tail_value && !values.empty() && values.back() != *tail_value)
      throw std::invalid_argument("HilbertTable: last value differs from tail value");
  }

  std::size_t size() const { return values.size(); }

  /// Value at t, extending by the tail past the stored range.
  count_t at(long long t) const {
    if (t < 0)
      return 0;
    if (static_cast<std::size_t>(t) < values.size())
      return values[static_cast<std::size_t>(t)];
    if (tail_value)
      return *tail_value;
    throw std::out_of_range("HilbertTable: degree beyond stored range of a non-stabilised table");
  }

  bool stabilized() const { return tail_value.has_value(); }

  /// Stored values with the repeated tail entries dropped (h-vectors are usually
  /// quoted this way).
  std::vector<count_t> trimmed() const {
    std::vector<count_t> v = values;
    if (tail_value)
      while (!v.empty() && v.back() == *tail_value)
        v.pop_back();
    return v;
  }

  friend bool operator==(const HilbertTable&, const HilbertTable&) = default;
};

enum class LexOrder { less, equal, greater, incomparable };

inline const char* to_string(LexOrder o) {
  switch (o) {
  case LexOrder::less: return "<lex";
  case LexOrder::equal: return "=";
  case LexOrder::greater: return ">lex";
  case LexOrder::incomparable: return "incomparable";
  }
  return "?";
}

/// h <=lex h' iff the first degree where h < h' comes no later than the first
/// degree where h > h'. Tables with integer tails are compared past their
/// stored range; otherwise only the common stored range counts.
inline LexOrder lex_compare_hf(const HilbertTable& h, const HilbertTable& g) {
  if (h.n != g.n)
    throw std::invalid_argument("lex_compare_hf: tables live over different rings");
  const std::size_t common = std::min(h.size(), g.size());
  std::size_t horizon = common;
  if (h.size() != g.size()) {
    const bool extend = h.size() < g.size() ? h.stabilized() : g.stabilized();
    if (extend)
      horizon = std::max(h.size(), g.size());
  }
  if (horizon == 0)
    return LexOrder::incomparable;
  for (std::size_t t = 0; t < horizon; ++t) {
    const count_t a = h.at(static_cast<long long>(t));
    const count_t b = g.at(static_cast<long long>(t));
    if (a < b)
      return LexOrder::less;
    if (a > b)
      return LexOrder::greater;
  }
  if (h.size() == g.size() || horizon > common) {
    if (h.tail_value == g.tail_value)
      return LexOrder::equal;
    if (h.tail_value && g.tail_value)
      return *h.tail_value < *g.tail_value ? LexOrder::less : LexOrder::greater;
    // Same stored values, tails unknown on at least one side.
    return h.size() == g.size() && !h.tail_value && !g.tail_value ? LexOrder::equal
                                                                  : LexOrder::incomparable;
  }
  return LexOrder::incomparable;
}

/// Delta h(t) = h(t) - h(t-1) with h(-1) = 0. The result has tail value 0 and
/// always ends with a stored 0.
inline HilbertTable first_difference(const HilbertTable& h) {
  if (!h.stabilized())
    throw std::invalid_argument("first_difference: table has no stabilised tail");
  std::vector<count_t> d;
  d.reserve(h.size() + 1);
  count_t prev = 0;
  for (count_t v : h.values) {
    d.push_back(v - prev);
    prev = v;
  }
  if (d.empty() || d.back() != 0)
    d.push_back(0);
  HilbertTable out;
  out.n = h.n;
  out.values = std::move(d);
  out.tail_value = 0;
  return out; // entries may be negative for non-O-sequences; no validation here
}

/// Inverse of first_difference: running sums, tail = total mass.
inline HilbertTable prefix_sum(const HilbertTable& dh) {
  std::vector<count_t> v;
  v.reserve(dh.size());
  count_t acc = 0;
  for (count_t x : dh.values) {
    acc += x;
    v.push_back(acc);
  }
  std::optional<count_t> tail;
  if (dh.tail_value) {
    if (*dh.tail_value != 0)
      throw std::invalid_argument("prefix_sum: difference table must vanish eventually");
    tail = acc;
  }
  return HilbertTable(dh.n, std::move(v), tail);
}

/// Least t from which h equals its tail value.
inline int hilbert_regularity(const HilbertTable& h) {
  if (!h.stabilized())
    throw std::invalid_argument("hilbert_regularity: table has no stabilised tail");
  int t = static_cast<int>(h.size());
  while (t > 0 && h.values[t - 1] == *h.tail_value)
    --t;
  return t;
}

} // namespace chopshop
