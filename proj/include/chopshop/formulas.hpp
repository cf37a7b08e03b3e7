#pragma once

// Closed-form and conjectural Hilbert-function data for chopped ideals of
// general points, plus the complete-intersection and liaison bookkeeping used
// to cross-check them.

#include <chopshop/errors.hpp>
#include <chopshop/grading.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace chopshop {

namespace detail {

using wide_t = __int128;

inline count_t narrow(wide_t v, const char* what) {
  if (v > std::numeric_limits<count_t>::max() || v < std::numeric_limits<count_t>::min())
    throw capacity_error(std::string(what) + ": value exceeds 64-bit range");
  return static_cast<count_t>(v);
}

inline wide_t wide_binomial(count_t top, count_t k) {
  if (k < 0 || top < 0 || k > top)
    return 0;
  k = std::min(k, top - k);
  wide_t acc = 1;
  for (count_t i = 1; i <= k; ++i) {
    acc = acc * (top - k + i) / i;
    if (acc > (wide_t(1) << 100))
      throw capacity_error("binomial coefficient too large");
  }
  return acc;
}

} // namespace detail

/// Smallest t with hs(n, t) >= r.
inline int min_degree(int n, count_t r) {
  if (n < 1 || r < 1)
    throw std::invalid_argument("min_degree: need n >= 1 and r >= 1");
  int t = 0;
  while (hs(n, t) < r)
    ++t;
  return t;
}

/// (n, r) together with the Hilbert regularity d of r general points.
struct CaseParams {
  int n = 0;
  count_t r = 0;
  int d = 0;

  static CaseParams make(int n, count_t r) { return CaseParams{n, r, min_degree(n, r)}; }

  /// Number of degree-d equations, hs(n,d) - r.
  count_t num_generators() const { return hs(n, d) - r; }
  /// r < hs(n,d) - n: the chopped ideal cuts out the points.
  bool cuts_out_points() const { return r < hs(n, d) - n; }

  friend bool operator==(const CaseParams&, const CaseParams&) = default;
};

/// Hilbert function of r general points: min(hs(n,t), r).
inline count_t generic_hf(const CaseParams& p, int t) {
  if (t < 0)
    throw std::invalid_argument("generic_hf: negative degree");
  return std::min(hs(p.n, t), p.r);
}

inline HilbertTable generic_table(const CaseParams& p, int t_max) {
  std::vector<count_t> v;
  for (int t = 0; t <= std::max(t_max, p.d); ++t)
    v.push_back(generic_hf(p, t));
  return HilbertTable(p.n, std::move(v), p.r);
}

/// Alternating Koszul sum sum_{k>=1} (-1)^{k+1} hs(n, d+e-kd) binom(s, k),
/// over every k whose hs argument is nonnegative.
struct KoszulSum {
  count_t value = 0;
  int nonzero_terms = 0;
};

inline KoszulSum koszul_ideal_sum(int n, int d, count_t s, int e) {
  detail::wide_t acc = 0;
  int terms = 0;
  for (int k = 1; d + e - static_cast<long long>(k) * d >= 0; ++k) {
    const detail::wide_t term =
        detail::wide_binomial(s, k) * static_cast<detail::wide_t>(hs(n, d + e - k * d));
    if (term != 0)
      ++terms;
    acc += (k % 2 == 1) ? term : -term;
    if (d == 0)
      break;
  }
  return KoszulSum{detail::narrow(acc, "koszul_ideal_sum"), terms};
}

enum class ChopStatus {
  /// r <= lower end of the interesting range: I(Z) is generated in degree d.
  trivial,
  /// lower < r < hs(n,d) - n: generators in degree d+1 exist.
  interesting,
};

inline const char* to_string(ChopStatus s) {
  return s == ChopStatus::trivial ? "trivial" : "interesting";
}

/// Exact rational number num/den with den > 0, in lowest terms.
struct Rational {
  count_t num = 0;
  count_t den = 1;

  static Rational make(count_t num, count_t den) {
    if (den == 0)
      throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const count_t g = std::gcd(num < 0 ? -num : num, den);
    return Rational{num / (g ? g : 1), den / (g ? g : 1)};
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool less_than(count_t v) const { return num < static_cast<detail::wide_t>(v) * den; }
  bool greater_than(count_t v) const { return num > static_cast<detail::wide_t>(v) * den; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Open interval ((n+1)hs(d) - hs(d+1))/n < r < hs(d) - n.
struct InterestingRange {
  Rational lower;
  count_t upper = 0;

  bool contains(count_t r) const { return lower.less_than(r) && r < upper; }
  std::vector<count_t> integers() const {
    std::vector<count_t> out;
    for (count_t r = std::max<count_t>(1, lower.num / lower.den); r < upper; ++r)
      if (contains(r))
        out.push_back(r);
    return out;
  }
};

inline InterestingRange interesting_range(int n, int d) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("interesting_range: need n >= 1 and d >= 1");
  const count_t num = static_cast<count_t>(n + 1) * hs(n, d) - hs(n, d + 1);
  return InterestingRange{Rational::make(num, n), hs(n, d) - n};
}

inline ChopStatus chop_status(const CaseParams& p) {
  return interesting_range(p.n, std::max(p.d, 1)).contains(p.r) ? ChopStatus::interesting
                                                                : ChopStatus::trivial;
}

inline void require_cuts_out(const CaseParams& p, const char* who) {
  if (p.d < 1 || !p.cuts_out_points())
    throw range_error(std::string(who) + ": (n, r) = (" + std::to_string(p.n) + ", " +
                      std::to_string(p.r) + ") needs r < hs(n,d) - n with d = " +
                      std::to_string(p.d));
}

/// First e > 0 where the Koszul sum reaches hs(n,d+e) - r.
inline int expected_gap_degree(const CaseParams& p) {
  require_cuts_out(p, "expected gap");
  const count_t s = p.num_generators();
  // The gap bound (n-1)d-(n+1) caps the search; the margin only guards
  // against malformed input.
  const int cap = std::max(1, (p.n - 1) * p.d - (p.n + 1)) + 4 * p.d + 8;
  for (int e = 1; e <= cap; ++e)
    if (koszul_ideal_sum(p.n, p.d, s, e).value >= hs(p.n, p.d + e) - p.r)
      return e;
  throw capacity_error("expected gap search did not terminate");
}

struct ChoppedValue {
  count_t ideal_dim = 0;
  count_t quotient_dim = 0;
  friend bool operator==(const ChoppedValue&, const ChoppedValue&) = default;
};

/// Conjectured Hilbert function of the chopped ideal in degree t >= d.
inline ChoppedValue expected_chopped_hf(const CaseParams& p, int t) {
  require_cuts_out(p, "expected_chopped_hf");
  if (t < p.d)
    throw std::invalid_argument("expected_chopped_hf: degree below d");
  const int e = t - p.d;
  const int e0 = expected_gap_degree(p);
  const count_t total = hs(p.n, t);
  const count_t ideal = e < e0 ? koszul_ideal_sum(p.n, p.d, p.num_generators(), e).value
                               : total - p.r;
  return ChoppedValue{ideal, total - ideal};
}

/// Expected quotient table for degrees 0..t_max (generic below d).
inline HilbertTable expected_quotient_table(const CaseParams& p, int t_max) {
  std::vector<count_t> v;
  for (int t = 0; t <= t_max; ++t)
    v.push_back(t < p.d ? hs(p.n, t) : expected_chopped_hf(p, t).quotient_dim);
  std::optional<count_t> tail;
  if (t_max >= p.d + expected_gap_degree(p))
    tail = p.r;
  return HilbertTable(p.n, std::move(v), tail);
}

inline count_t gap_upper_bound(int n, int d) {
  if (n < 2 || d < 1)
    throw std::invalid_argument("gap_upper_bound: need n >= 2 and d >= 1");
  return static_cast<count_t>(n - 1) * d - (n + 1);
}

struct GapPrediction {
  int gap = 0;
  /// Expected quotient for degrees 0..d+gap; ends at r.
  HilbertTable overshoot_table;
  /// (n-1)d - (n+1); meaningful for n >= 2.
  count_t bound = 0;
  ChopStatus status = ChopStatus::trivial;
};

inline GapPrediction predicted_gap(const CaseParams& p) {
  require_cuts_out(p, "predicted_gap");
  GapPrediction g;
  g.gap = expected_gap_degree(p);
  g.overshoot_table = expected_quotient_table(p, p.d + g.gap);
  g.bound = p.n >= 2 ? gap_upper_bound(p.n, p.d) : 0;
  g.status = chop_status(p);
  return g;
}

struct FrobergValue {
  count_t value = 0;
  /// Froberg's lex bound is a theorem only for s >= n+1 generators.
  bool hypothesis_holds = false;
};

/// Truncated alternating sum sum_k (-1)^k hs(n, t-kd) binom(s, k); zero from
/// the first degree where the sum is nonpositive.
inline FrobergValue froberg(int n, int d, count_t s, int t) {
  if (d < 1 || s < 1 || t < 0)
    throw std::invalid_argument("froberg: need d >= 1, s >= 1, t >= 0");
  FrobergValue out;
  out.hypothesis_holds = s >= n + 1;
  for (int u = 0; u <= t; ++u) {
    detail::wide_t acc = 0;
    for (int k = 0; u - k * d >= 0; ++k) {
      const detail::wide_t term = detail::wide_binomial(s, k) * hs(n, u - k * d);
      acc += (k % 2 == 0) ? term : -term;
    }
    if (acc <= 0)
      return out;
    if (u == t)
      out.value = detail::narrow(acc, "froberg");
  }
  return out;
}

/// Lex lower bound for the chopped quotient of r points: Froberg values with
/// s = hs(n,d) - r generators until the first t > d where they drop to r or
/// below, then r.
inline HilbertTable froberg_capped_table(const CaseParams& p, int t_max) {
  const count_t s = p.num_generators();
  if (s < 1)
    throw range_error("froberg_capped_table: no degree-d generators");
  std::vector<count_t> v;
  bool capped = false;
  for (int t = 0; t <= t_max; ++t) {
    if (!capped) {
      const count_t f = froberg(p.n, p.d, s, t).value;
      if (t > p.d && f <= p.r)
        capped = true;
      else {
        v.push_back(f);
        continue;
      }
    }
    v.push_back(p.r);
  }
  return HilbertTable(p.n, std::move(v), capped ? std::optional<count_t>(p.r) : std::nullopt);
}

/// Extremal point counts of the plane interesting range for d >= 5.
struct PlaneExtremes {
  count_t r_min = 0;
  count_t r_max = 0;
};

inline PlaneExtremes r_extremes_plane(int d) {
  if (d < 5)
    throw range_error("r_extremes_plane: the plane interesting range is empty for d < 5");
  const count_t dd = d;
  return PlaneExtremes{(dd * dd + 2 * dd + 2) / 2, (dd + 2) * (dd + 1) / 2 - 3};
}

/// Expected number of minimal generators of I(Z) in degree d+1.
inline count_t igc_gens_d1(const CaseParams& p) {
  if (hs(p.n, p.d) < p.r)
    throw std::invalid_argument("igc_gens_d1: hs(n,d) < r");
  return std::max<count_t>(
      0, hs(p.n, p.d + 1) - p.r - static_cast<count_t>(p.n + 1) * (hs(p.n, p.d) - p.r));
}

/// Graded Betti numbers of S/I(Z) for r general points in the plane:
/// beta_{1,d}, beta_{1,d+1}, beta_{2,d+1}, beta_{2,d+2}.
struct BettiP2 {
  int d = 0;
  count_t b1d = 0;
  count_t b1d1 = 0;
  count_t b2d1 = 0;
  count_t b2d2 = 0;
  friend bool operator==(const BettiP2&, const BettiP2&) = default;
};

inline BettiP2 betti_p2(count_t r) {
  const auto p = CaseParams::make(2, r);
  BettiP2 b;
  b.d = p.d;
  b.b1d = hs(2, p.d) - r;
  b.b1d1 = std::max<count_t>(0, hs(2, p.d + 1) - 3 * b.b1d - r);
  // The Hilbert function in degree d+1 forces beta_{2,d+1} - beta_{1,d+1}.
  b.b2d1 = std::max<count_t>(0, 3 * b.b1d + r - hs(2, p.d + 1));
  b.b2d2 = b.b1d + b.b1d1 - 1 - b.b2d1;
  return b;
}

/// Coefficients of prod_i (1 - T^{d_i}).
inline std::vector<count_t> ci_numerator(const std::vector<int>& degrees) {
  std::vector<count_t> poly{1};
  for (int di : degrees) {
    if (di < 1)
      throw std::invalid_argument("complete intersection degrees must be positive");
    std::vector<count_t> next(poly.size() + di, 0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j];
      next[j + di] -= poly[j];
    }
    poly = std::move(next);
  }
  return poly;
}

/// Hilbert function of a complete intersection of n forms of the given degrees
/// in P^n: series prod(1 - T^{d_i}) / (1 - T)^{n+1}.
inline count_t ci_hf(int n, const std::vector<int>& degrees, int t) {
  if (static_cast<int>(degrees.size()) != n)
    throw std::invalid_argument("ci_hf: need exactly n degrees");
  const auto num = ci_numerator(degrees);
  detail::wide_t acc = 0;
  for (std::size_t j = 0; j < num.size() && static_cast<int>(j) <= t; ++j)
    acc += static_cast<detail::wide_t>(num[j]) * hs(n, t - static_cast<int>(j));
  return detail::narrow(acc, "ci_hf");
}

inline int ci_regularity(const std::vector<int>& degrees) {
  return std::accumulate(degrees.begin(), degrees.end(), 0) - static_cast<int>(degrees.size());
}

inline HilbertTable ci_table(int n, const std::vector<int>& degrees, int t_max) {
  count_t total = 1;
  for (int di : degrees)
    total *= di;
  const int rho = ci_regularity(degrees);
  std::vector<count_t> v;
  for (int t = 0; t <= std::max(t_max, rho); ++t)
    v.push_back(ci_hf(n, degrees, t));
  return HilbertTable(n, std::move(v), total);
}

/// h-vector table: the given values with trailing zeros removed, then one 0.
inline HilbertTable make_hvector(int n, std::vector<count_t> v) {
  while (!v.empty() && v.back() == 0)
    v.pop_back();
  v.push_back(0);
  return HilbertTable(n, std::move(v), 0);
}

/// First difference of the complete-intersection Hilbert function.
inline HilbertTable ci_delta(int n, const std::vector<int>& degrees) {
  return make_hvector(n, first_difference(ci_table(n, degrees, 0)).values);
}

/// Delta h of the residual set Z' = K \ Z inside the complete intersection K:
/// Delta h_{Z'}(t) = Delta h_K(rho - t) - Delta h_Z(rho - t).
inline HilbertTable liaison_delta(int n, const std::vector<int>& degrees,
                                  const HilbertTable& delta_z) {
  const HilbertTable dk = ci_delta(n, degrees);
  const int rho = ci_regularity(degrees);
  for (std::size_t t = static_cast<std::size_t>(rho) + 1; t < delta_z.size(); ++t)
    if (delta_z.values[t] != 0)
      throw std::invalid_argument("liaison_delta: Delta h_Z is nonzero past the CI regularity");
  if (delta_z.tail_value && *delta_z.tail_value != 0)
    throw std::invalid_argument("liaison_delta: Delta h_Z must vanish eventually");
  std::vector<count_t> out(static_cast<std::size_t>(rho) + 1);
  for (int t = 0; t <= rho; ++t) {
    const count_t z = static_cast<std::size_t>(rho - t) < delta_z.size()
                          ? delta_z.values[static_cast<std::size_t>(rho - t)]
                          : 0;
    const count_t v = dk.at(rho - t) - z;
    if (v < 0)
      throw std::invalid_argument("liaison_delta: Delta h_Z exceeds Delta h_K at degree " +
                                  std::to_string(rho - t));
    out[static_cast<std::size_t>(t)] = v;
  }
  return make_hvector(n, std::move(out));
}

enum class TheoremFamily { rmax_p2, rmin_p2_odd, rmax_general };

/// One of the proven extremal families, with its closed-form chopped Hilbert
/// function.
struct TheoremCase {
  TheoremFamily family = TheoremFamily::rmax_general;
  int n = 2;
  int d = 0;

  static TheoremCase rmax_p2(int d) { return validated({TheoremFamily::rmax_p2, 2, d}); }
  static TheoremCase rmin_p2_odd(int d) { return validated({TheoremFamily::rmin_p2_odd, 2, d}); }
  static TheoremCase rmax_general(int n, int d) {
    return validated({TheoremFamily::rmax_general, n, d});
  }

  count_t r() const {
    switch (family) {
    case TheoremFamily::rmax_p2: return r_extremes_plane(d).r_max;
    case TheoremFamily::rmin_p2_odd: return static_cast<count_t>(d + 1) * (d + 1) / 2;
    case TheoremFamily::rmax_general: return hs(n, d) - (n + 1);
    }
    return 0;
  }

  /// The gap the theorem proves.
  int gap() const {
    switch (family) {
    case TheoremFamily::rmax_p2: return d - 3;
    case TheoremFamily::rmin_p2_odd: return 2;
    case TheoremFamily::rmax_general: return std::max(1, (n - 1) * d - (n + 1));
    }
    return 0;
  }

private:
  static TheoremCase validated(TheoremCase c) {
    switch (c.family) {
    case TheoremFamily::rmax_p2:
      if (c.d < 5)
        throw std::invalid_argument("rmax_p2 needs d >= 5");
      break;
    case TheoremFamily::rmin_p2_odd:
      if (c.d < 5 || c.d % 2 == 0)
        throw std::invalid_argument("rmin_p2_odd needs odd d >= 5");
      break;
    case TheoremFamily::rmax_general:
      if (c.n < 1 || c.d < 1)
        throw std::invalid_argument("rmax_general needs n >= 1 and d >= 1");
      if (c.r() < 1 || hs(c.n, c.d - 1) >= c.r())
        throw std::invalid_argument("rmax_general: d is not the regularity of hs(n,d)-(n+1) points");
      break;
    }
    return c;
  }
};

/// Closed-form chopped Hilbert function of a theorem family at degree t.
inline ChoppedValue theorem_oracle(const TheoremCase& c, int t) {
  if (t < 0)
    throw std::invalid_argument("theorem_oracle: negative degree");
  const count_t total = hs(c.n, t);
  const count_t r = c.r();
  if (t < c.d)
    return ChoppedValue{0, total};
  count_t ideal = 0;
  switch (c.family) {
  case TheoremFamily::rmax_p2:
    ideal = t <= 2 * c.d - 3 ? 3 * hs(2, t - c.d) : total - r;
    break;
  case TheoremFamily::rmin_p2_odd:
    ideal = total - (t == c.d + 1 ? r + 1 : r);
    break;
  case TheoremFamily::rmax_general: {
    const int e = t - c.d;
    if (e <= (c.n - 1) * c.d - (c.n + 1)) {
      detail::wide_t q = 0;
      for (int k = 0; t - k * c.d >= 0; ++k) {
        const detail::wide_t term = detail::wide_binomial(c.n + 1, k) * hs(c.n, t - k * c.d);
        q += (k % 2 == 0) ? term : -term;
      }
      ideal = total - detail::narrow(q, "theorem_oracle");
    } else {
      ideal = total - r;
    }
    break;
  }
  }
  return ChoppedValue{ideal, total - ideal};
}

} // namespace chopshop
