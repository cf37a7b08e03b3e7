#pragma once

// Ideals of finite point configurations over F_p, handled entirely through
// graded linear algebra: I(Z)_t is the kernel of the degree-t evaluation
// matrix, and the chopped ideal in degree d+e is the column span of the
// Macaulay matrix built from a basis of I(Z)_d.

#include <chopshop/errors.hpp>
#include <chopshop/formulas.hpp>
#include <chopshop/grading.hpp>
#include <chopshop/modlinalg.hpp>

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace chopshop {

/// Uniform integer in [0, bound) from a 64-bit engine, by rejection. Spelled
/// out so that sampled coordinates do not depend on the standard library's
/// distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// r points of P^n(F_p) as rows of homogeneous coordinates.
class PointConfig {
public:
  PointConfig(int n, std::vector<std::vector<residue_t>> points, PrimeField field,
              std::uint64_t seed = 0, int retries = 0)
      : n_(n), field_(field), seed_(seed), retries_(retries) {
    if (n < 1)
      throw std::invalid_argument("PointConfig: need n >= 1");
    if (points.empty())
      throw std::invalid_argument("PointConfig: need at least one point");
    for (const auto& row : points) {
      if (static_cast<int>(row.size()) != n + 1)
        throw std::invalid_argument("PointConfig: point with wrong number of coordinates");
      for (residue_t c : row)
        if (c >= field.p())
          throw std::invalid_argument("PointConfig: coordinate not reduced mod p");
      coords_.insert(coords_.end(), row.begin(), row.end());
    }
    r_ = static_cast<count_t>(points.size());
    check_points();
  }

  int n() const { return n_; }
  count_t r() const { return r_; }
  const PrimeField& field() const { return field_; }
  std::uint64_t seed() const { return seed_; }
  int retries() const { return retries_; }

  std::span<const residue_t> point(std::size_t i) const {
    return {coords_.data() + i * (n_ + 1), static_cast<std::size_t>(n_ + 1)};
  }

  std::vector<std::vector<residue_t>> rows() const {
    std::vector<std::vector<residue_t>> out;
    for (std::size_t i = 0; i < static_cast<std::size_t>(r_); ++i)
      out.emplace_back(point(i).begin(), point(i).end());
    return out;
  }

  /// Sub-configuration of the points with indices in [from, to).
  PointConfig slice(std::size_t from, std::size_t to) const {
    auto all = rows();
    return PointConfig(n_, {all.begin() + from, all.begin() + to}, field_, seed_, retries_);
  }

  /// Point scaled so that its first nonzero coordinate is 1.
  std::vector<residue_t> normalized(std::size_t i) const {
    auto pt = point(i);
    std::vector<residue_t> out(pt.begin(), pt.end());
    std::size_t lead = 0;
    while (lead < out.size() && out[lead] == 0)
      ++lead;
    const residue_t s = field_.inv(out[lead]);
    for (auto& c : out)
      c = field_.mul(c, s);
    return out;
  }

private:
  void check_points() const {
    std::set<std::vector<residue_t>> seen;
    for (std::size_t i = 0; i < static_cast<std::size_t>(r_); ++i) {
      auto pt = point(i);
      if (std::all_of(pt.begin(), pt.end(), [](residue_t c) { return c == 0; }))
        throw std::invalid_argument("PointConfig: zero coordinate vector");
      if (!seen.insert(normalized(i)).second)
        throw std::invalid_argument("PointConfig: repeated projective point");
    }
  }

  int n_;
  count_t r_ = 0;
  PrimeField field_;
  std::uint64_t seed_;
  int retries_;
  std::vector<residue_t> coords_;
};

/// Matrix with entry (i, alpha) = z_i^alpha over monomials(n, t).
inline ModMatrix evaluation_matrix(const PointConfig& z, int t) {
  if (t < 0)
    throw std::invalid_argument("evaluation_matrix: negative degree");
  const int n = z.n();
  const auto monos = monomials(n, t);
  const PrimeField& F = z.field();
  ModMatrix m(static_cast<std::size_t>(z.r()), monos.size(), F);
  std::vector<residue_t> powers(static_cast<std::size_t>(n + 1) * (t + 1));
  for (std::size_t i = 0; i < static_cast<std::size_t>(z.r()); ++i) {
    auto pt = z.point(i);
    for (int k = 0; k <= n; ++k) {
      residue_t acc = 1;
      for (int e = 0; e <= t; ++e) {
        powers[k * (t + 1) + e] = acc;
        acc = F.mul(acc, pt[k]);
      }
    }
    for (std::size_t a = 0; a < monos.size(); ++a) {
      residue_t v = 1;
      for (int k = 0; k <= n; ++k)
        v = F.mul(v, powers[k * (t + 1) + monos[a].entries[k]]);
      m(i, a) = v;
    }
  }
  return m;
}

/// Observed Hilbert function value h_{S/I(Z)}(t) = rank of evaluation.
inline count_t points_hf(const PointConfig& z, int t) {
  return static_cast<count_t>(rank(evaluation_matrix(z, t)));
}

/// True iff the Hilbert function of Z is min(hs(n,t), r) in degrees d-1, d, d+1.
inline bool has_generic_hf(const PointConfig& z) {
  const auto p = CaseParams::make(z.n(), z.r());
  for (int t = std::max(0, p.d - 1); t <= p.d + 1; ++t)
    if (points_hf(z, t) != generic_hf(p, t))
      return false;
  return true;
}

inline constexpr int kDefaultRetryBudget = 16;

/// Draw r points with coordinates uniform in F_p from a generator seeded by
/// `seed`, redrawing (from the same stream) until the configuration has the
/// generic Hilbert function.
inline PointConfig sample_points(int n, count_t r, PrimeField field, std::uint64_t seed,
                                 int retry_budget = kDefaultRetryBudget) {
  if (r < 1)
    throw std::invalid_argument("sample_points: need r >= 1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt <= retry_budget; ++attempt) {
    std::vector<std::vector<residue_t>> pts(static_cast<std::size_t>(r),
                                            std::vector<residue_t>(n + 1));
    for (auto& row : pts)
      for (auto& c : row)
        c = static_cast<residue_t>(uniform_below(rng, field.p()));
    try {
      PointConfig z(n, std::move(pts), field, seed, attempt);
      if (has_generic_hf(z))
        return z;
    } catch (const std::invalid_argument&) {
      // zero row or repeated point: redraw
    }
  }
  throw genericity_error("sample_points: no generic configuration of " + std::to_string(r) +
                             " points in P^" + std::to_string(n) + " after " +
                             std::to_string(retry_budget) + " retries",
                         retry_budget);
}

/// Basis of a graded piece: the columns of `vectors` are coefficient vectors
/// in the monomials(n, degree) order.
struct GradedBasis {
  int n = 0;
  int degree = 0;
  ModMatrix vectors;

  std::size_t size() const { return vectors.cols(); }
};

inline GradedBasis ideal_component(const PointConfig& z, int t) {
  return GradedBasis{z.n(), t, kernel_basis(evaluation_matrix(z, t))};
}

/// Streams the columns of the Macaulay matrix of B in degree deg(B)+e without
/// materialising it. Column (j, m) sits at index j * hs(n, e) + index(m):
/// basis-form-major, monomial-minor.
class MacaulayColumns {
public:
  MacaulayColumns(const GradedBasis& b, int e)
      : n_(b.n), d_(b.degree), e_(e), shifts_(static_cast<std::size_t>(hs(b.n, e))),
        rows_(static_cast<std::size_t>(hs(b.n, b.degree + e))),
        products_(product_index_table(b.n, b.degree, e)) {
    if (e < 0)
      throw std::invalid_argument("MacaulayColumns: negative shift degree");
    support_.resize(b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t beta = 0; beta < b.vectors.rows(); ++beta)
        if (const residue_t v = b.vectors(beta, j))
          support_[j].emplace_back(static_cast<std::uint32_t>(beta), v);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return support_.size() * shifts_; }
  int degree() const { return d_ + e_; }

  /// Writes column k into out (which must be zero-filled, length rows()).
  void fill(std::size_t k, std::span<residue_t> out) const {
    const std::size_t j = k / shifts_;
    const std::size_t alpha = k % shifts_;
    for (const auto& [beta, v] : support_[j])
      out[products_[beta * shifts_ + alpha]] = v;
  }

private:
  int n_, d_, e_;
  std::size_t shifts_;
  std::size_t rows_;
  std::vector<std::uint32_t> products_;
  std::vector<std::vector<std::pair<std::uint32_t, residue_t>>> support_;
};

/// hs(n, d+e) x (|B| * hs(n, e)) matrix whose column span is the degree-(d+e)
/// part of the ideal generated by B.
inline ModMatrix macaulay_matrix(const GradedBasis& b, int e) {
  MacaulayColumns cols(b, e);
  ModMatrix m(cols.rows(), cols.cols(), b.vectors.field());
  std::vector<residue_t> col(cols.rows());
  for (std::size_t k = 0; k < cols.cols(); ++k) {
    std::fill(col.begin(), col.end(), 0);
    cols.fill(k, col);
    m.set_column(k, col);
  }
  return m;
}

/// Dimension of the degree-(deg B + e) part of <B>. If `cap` is given it must
/// be an upper bound for that dimension; elimination stops once it is hit.
inline count_t chopped_ideal_dim(const GradedBasis& b, int e,
                                 std::optional<count_t> cap = std::nullopt) {
  if (b.size() == 0)
    return 0;
  MacaulayColumns cols(b, e);
  Echelonizer ech(b.vectors.field(), cols.rows());
  const std::size_t stop = cap ? static_cast<std::size_t>(*cap) : Echelonizer::npos;
  ech.insert_stream(
      cols.cols(), [&](std::size_t k, std::span<residue_t> out) { cols.fill(k, out); }, stop);
  return static_cast<count_t>(ech.rank());
}

/// h_{S/<B>}(t) for t >= deg B, where B spans I(Z)_d of a configuration with
/// r points; hs(n,t) - r caps the ideal dimension because <B> lies in I(Z)
/// and I(Z)_t has codimension r for every t >= d.
inline count_t chopped_quotient(const GradedBasis& b, count_t r, int t) {
  if (t < b.degree)
    return hs(b.n, t);
  const count_t total = hs(b.n, t);
  return total - chopped_ideal_dim(b, t - b.degree, total - r);
}

/// Quotient dimension of S by the chopped ideal <I(Z)_d> in degree t.
inline count_t chopped_hf(const PointConfig& z, int d, int t) {
  if (t < d)
    throw std::invalid_argument("chopped_hf: need t >= d");
  return chopped_quotient(ideal_component(z, d), z.r(), t);
}

/// Inverse system of the chopped ideal J = <I(Z)_d>. (S/J)_t is dual to
/// J_t^perp = {phi in S_t^* : phi(J_t) = 0}, and since J_{t+1} = S_1 J_t,
/// J_{t+1}^perp is the set of phi whose contractions x_k o phi lie in J_t^perp.
/// J_d^perp is spanned by the point evaluations. Each step solves for
/// families (w_0..w_n) in J_t^perp that glue to one functional.
class InverseSystem {
public:
  InverseSystem(const PointConfig& z, int d)
      : n_(z.n()), t_(d), r_(z.r()), field_(z.field()) {
    const ModMatrix ev = evaluation_matrix(z, d);
    Echelonizer ech(field_, ev.cols());
    for (std::size_t i = 0; i < ev.rows(); ++i)
      ech.insert(ev.row(i));
    basis_ = ModMatrix(ev.cols(), ech.rank(), field_);
    for (std::size_t j = 0; j < ech.rank(); ++j)
      basis_.set_column(j, ech.pivot_row(j));
  }

  int degree() const { return t_; }
  /// h_{S/J}(degree()).
  count_t dim() const { return static_cast<count_t>(basis_.cols()); }
  /// Columns are functionals, rows indexed by monomials(n, degree()).
  const ModMatrix& basis() const { return basis_; }

  void step() {
    const std::size_t N = static_cast<std::size_t>(n_) + 1;
    const std::size_t q = basis_.cols();
    const std::size_t H = static_cast<std::size_t>(hs(n_, t_));
    const std::size_t H1 = static_cast<std::size_t>(hs(n_, t_ + 1));
    const auto up = product_index_table(n_, 1, t_);
    // down[g * N + k] = index of x^g / x_k in degree t, or -1.
    std::vector<std::int64_t> down(H1 * N, -1);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t b = 0; b < H; ++b)
        down[up[k * H + b] * N + k] = static_cast<std::int64_t>(b);

    struct Glue {
      std::uint32_t k0, b0, j, bj;
    };
    std::vector<Glue> rows;
    std::vector<std::uint32_t> lead(H1);
    for (std::size_t g = 0; g < H1; ++g) {
      std::size_t k0 = 0;
      while (down[g * N + k0] < 0)
        ++k0;
      lead[g] = static_cast<std::uint32_t>(k0);
      for (std::size_t j = k0 + 1; j < N; ++j)
        if (down[g * N + j] >= 0)
          rows.push_back({static_cast<std::uint32_t>(k0),
                          static_cast<std::uint32_t>(down[g * N + k0]),
                          static_cast<std::uint32_t>(j),
                          static_cast<std::uint32_t>(down[g * N + j])});
    }

    const std::size_t unknowns = N * q;
    Echelonizer ech(field_, unknowns);
    // The evaluations at the points always glue, so the solution space has
    // dimension at least r.
    const std::size_t max_rank = unknowns - std::min<std::size_t>(unknowns, r_);
    const residue_t* B = basis_.data().data();
    ech.insert_stream(
        rows.size(),
        [&](std::size_t i, std::span<residue_t> out) {
          const Glue& gl = rows[i];
          const residue_t* b0 = B + static_cast<std::size_t>(gl.b0) * q;
          const residue_t* bj = B + static_cast<std::size_t>(gl.bj) * q;
          for (std::size_t c = 0; c < q; ++c) {
            out[gl.k0 * q + c] = b0[c];
            out[gl.j * q + c] = field_.neg(bj[c]);
          }
        },
        max_rank);

    ModMatrix echelon(ech.rank(), unknowns, field_);
    for (std::size_t i = 0; i < ech.rank(); ++i)
      std::copy(ech.pivot_row(i).begin(), ech.pivot_row(i).end(), echelon.row(i).begin());
    ModMatrix sol = ech.rank() ? kernel_basis(echelon) : ModMatrix::identity(unknowns, field_);

    // phi(x^g) = w_{k0}(x^g / x_{k0}) for the first variable k0 dividing x^g.
    const std::size_t q1 = sol.cols();
    const std::uint32_t p = field_.p();
    ModMatrix next(H1, q1, field_);
    ModMatrix solT = sol.transpose(); // q1 x unknowns
    for (std::size_t g = 0; g < H1; ++g) {
      const std::size_t k0 = lead[g];
      const residue_t* brow = B + static_cast<std::size_t>(down[g * N + k0]) * q;
      for (std::size_t c = 0; c < q1; ++c) {
        const residue_t* w = solT.row(c).data() + k0 * q;
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < q; ++i)
          acc = (acc + static_cast<std::uint64_t>(w[i]) * brow[i]) % p;
        next(g, c) = static_cast<residue_t>(acc);
      }
    }
    basis_ = std::move(next);
    ++t_;
  }

private:
  int n_;
  int t_;
  count_t r_;
  PrimeField field_;
  ModMatrix basis_;
};

enum class RankMethod {
  /// Eliminate the Macaulay matrix of I(Z)_d in each degree.
  macaulay,
  /// Propagate the inverse system degree by degree. Exact but slower at
  /// every scale measured; kept as an independent cross-check.
  inverse_system,
};

inline const char* to_string(RankMethod m) {
  return m == RankMethod::macaulay ? "macaulay" : "inverse_system";
}

/// Chopped quotient values h_{S/J}(t) for increasing t >= d, by either method.
class ChoppedSequence {
public:
  ChoppedSequence(const PointConfig& z, int d, RankMethod method)
      : r_(z.r()), d_(d), method_(method) {
    if (method_ == RankMethod::macaulay)
      basis_ = ideal_component(z, d);
    else
      inverse_.emplace(z, d);
  }

  RankMethod method() const { return method_; }

  /// Degrees must be requested in increasing order for the inverse system.
  count_t at(int t) {
    if (t < d_)
      throw std::invalid_argument("ChoppedSequence: degree below d");
    if (method_ == RankMethod::macaulay)
      return chopped_quotient(basis_, r_, t);
    if (t < inverse_->degree())
      throw std::logic_error("ChoppedSequence: inverse system cannot go back in degree");
    while (inverse_->degree() < t)
      inverse_->step();
    return inverse_->dim();
  }

private:
  count_t r_;
  int d_;
  RankMethod method_;
  GradedBasis basis_;
  std::optional<InverseSystem> inverse_;
};

struct GapScanOptions {
  /// Largest shift e to try; defaults to gap_upper_bound(n, d) + 2.
  std::optional<int> e_max;
  /// Also compute one degree past the gap and require the quotient to stay r.
  bool check_stability = kChecksEnabled;
  RankMethod method = RankMethod::macaulay;
};

inline int default_e_max(int n, int d) {
  return static_cast<int>(std::max<count_t>(1, n >= 2 ? gap_upper_bound(n, d) : 1)) + 2;
}

/// First e in 1..e_max with chopped quotient r in degree d+e.
inline std::optional<int> observed_gap(const GradedBasis& b, count_t r,
                                       const GapScanOptions& opts = {}) {
  const int e_max = opts.e_max.value_or(default_e_max(b.n, b.degree));
  for (int e = 1; e <= e_max; ++e) {
    if (chopped_quotient(b, r, b.degree + e) == r) {
      if (opts.check_stability && chopped_quotient(b, r, b.degree + e + 1) != r)
        throw std::logic_error("observed_gap: quotient left r after reaching it");
      return e;
    }
  }
  return std::nullopt;
}

inline std::optional<int> observed_gap(const PointConfig& z, int d,
                                       const GapScanOptions& opts = {}) {
  const int e_max = opts.e_max.value_or(default_e_max(z.n(), d));
  ChoppedSequence seq(z, d, opts.method);
  for (int e = 1; e <= e_max; ++e) {
    if (seq.at(d + e) == z.r()) {
      if (opts.check_stability && seq.at(d + e + 1) != z.r())
        throw std::logic_error("observed_gap: quotient left r after reaching it");
      return e;
    }
  }
  return std::nullopt;
}

enum class ProfileVerdict { match, mismatch };

/// Observed chopped Hilbert function against the conjectured one.
struct ChoppedProfile {
  CaseParams params;
  /// Quotient values for t = 0 .. d + max(observed, expected) gap; below d
  /// they are hs(n, t).
  HilbertTable observed;
  std::optional<int> observed_gap;
  HilbertTable expected;
  int expected_gap = 0;
  ProfileVerdict verdict = ProfileVerdict::match;
  /// Set when verdict is mismatch.
  std::optional<int> first_mismatch_degree;
  RankMethod method = RankMethod::macaulay;
};

/// Computes the chopped quotient degree by degree up to d + expected gap and
/// keeps scanning to e_max if r has not been reached.
inline ChoppedProfile chopped_profile(const PointConfig& z, const GapScanOptions& opts = {}) {
  ChoppedProfile prof;
  prof.params = CaseParams::make(z.n(), z.r());
  const auto& p = prof.params;
  require_cuts_out(p, "chopped_profile");
  prof.expected_gap = expected_gap_degree(p);
  const int e_max = std::max(opts.e_max.value_or(default_e_max(p.n, p.d)), prof.expected_gap);
  prof.method = opts.method;
  ChoppedSequence seq(z, p.d, prof.method);

  std::vector<count_t> obs;
  for (int t = 0; t < p.d; ++t)
    obs.push_back(hs(p.n, t));
  obs.push_back(seq.at(p.d));
  for (int e = 1; e <= e_max; ++e) {
    const count_t q = seq.at(p.d + e);
    obs.push_back(q);
    if (q == p.r && !prof.observed_gap)
      prof.observed_gap = e;
    if (e >= prof.expected_gap && prof.observed_gap)
      break;
  }
  if (opts.check_stability && prof.observed_gap) {
    if (seq.at(static_cast<int>(obs.size())) != p.r)
      throw std::logic_error("chopped_profile: quotient left r after reaching it");
  }

  const int t_last = static_cast<int>(obs.size()) - 1;
  const bool ends_at_r = obs.back() == p.r;
  prof.observed = HilbertTable(p.n, obs, ends_at_r ? std::optional<count_t>(p.r) : std::nullopt);
  prof.expected = expected_quotient_table(p, std::max(t_last, p.d + prof.expected_gap));
  for (int t = 0; t <= t_last; ++t) {
    if (prof.observed.values[t] != prof.expected.values[t]) {
      prof.verdict = ProfileVerdict::mismatch;
      prof.first_mismatch_degree = t;
      break;
    }
  }
  if (prof.verdict == ProfileVerdict::match && prof.observed_gap != prof.expected_gap) {
    prof.verdict = ProfileVerdict::mismatch;
    prof.first_mismatch_degree =
        p.d + std::min(prof.observed_gap.value_or(e_max + 1), prof.expected_gap);
  }
  return prof;
}

/// First difference of the observed Hilbert function of Z for t = 0..t_max.
inline HilbertTable h_vector(const PointConfig& z, int t_max) {
  std::vector<count_t> h;
  for (int t = 0; t <= t_max; ++t)
    h.push_back(points_hf(z, t));
  if (h.back() != z.r())
    throw std::invalid_argument("h_vector: t_max is below the Hilbert regularity of Z");
  return make_hvector(z.n(), first_difference(HilbertTable(z.n(), h, z.r())).values);
}

/// Coefficient vector (degree a+b) of the product of two forms of degrees a, b.
inline std::vector<residue_t> multiply_forms(int n, int a, std::span<const residue_t> f, int b,
                                             std::span<const residue_t> g,
                                             const PrimeField& field) {
  const auto table = product_index_table(n, a, b);
  std::vector<residue_t> out(static_cast<std::size_t>(hs(n, a + b)), 0);
  const std::size_t nb = g.size();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i])
      continue;
    for (std::size_t j = 0; j < nb; ++j) {
      if (!g[j])
        continue;
      auto& slot = out[table[i * nb + j]];
      slot = field.add(slot, field.mul(f[i], g[j]));
    }
  }
  return out;
}

} // namespace chopshop
