#pragma once

// Verification harness: single cases and (n, r) grids checked against the
// conjectured chopped Hilbert function, JSON witness certificates, the
// monomial-ideal search in the plane, and the missing-sextic check for 18
// plane points.

#include <chopshop/errors.hpp>
#include <chopshop/formulas.hpp>
#include <chopshop/grading.hpp>
#include <chopshop/modlinalg.hpp>
#include <chopshop/pointideals.hpp>
#include <chopshop/version.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace chopshop {

using json = nlohmann::ordered_json;

inline constexpr int kCertificateSchema = 1;

/// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Per-case seed for grid runs; depends only on its arguments.
inline std::uint64_t derive_seed(std::uint64_t base, int n, count_t r, int trial) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ static_cast<std::uint64_t>(r));
  return mix64(h ^ static_cast<std::uint64_t>(trial));
}

enum class Verdict { pass, fail, genericity_fail };

inline const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "PASS";
  case Verdict::fail: return "FAIL";
  case Verdict::genericity_fail: return "GENERICITY_FAIL";
  }
  return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "PASS")
    return Verdict::pass;
  if (s == "FAIL")
    return Verdict::fail;
  if (s == "GENERICITY_FAIL")
    return Verdict::genericity_fail;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

/// Witness for one (n, r) instance. Quotient arrays are indexed by degree
/// from 0 and cover [0, d + gap].
struct Certificate {
  int schema_version = kCertificateSchema;
  int n = 0;
  count_t r = 0;
  int d = 0;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int retries = 0;
  std::vector<std::vector<residue_t>> points;
  std::vector<count_t> observed_quotient;
  std::vector<count_t> expected_quotient;
  std::optional<int> observed_gap;
  int expected_gap = 0;
  Verdict verdict = Verdict::fail;
  std::optional<int> first_mismatch_degree;
  std::string tool_version = kToolVersion;
  std::optional<double> wall_ms;
};

inline json to_json(const Certificate& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["n"] = c.n;
  j["r"] = c.r;
  j["d"] = c.d;
  j["prime"] = c.prime;
  j["seed"] = c.seed;
  j["retries"] = c.retries;
  j["points"] = c.points;
  j["observed_quotient"] = c.observed_quotient;
  j["expected_quotient"] = c.expected_quotient;
  j["observed_gap"] = c.observed_gap ? json(*c.observed_gap) : json(nullptr);
  j["expected_gap"] = c.expected_gap;
  j["verdict"] = to_string(c.verdict);
  j["first_mismatch_degree"] =
      c.first_mismatch_degree ? json(*c.first_mismatch_degree) : json(nullptr);
  j["tool_version"] = c.tool_version;
  j["wall_ms"] = c.wall_ms ? json(*c.wall_ms) : json(nullptr);
  return j;
}

inline Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.schema_version = j.at("schema_version").get<int>();
  if (c.schema_version != kCertificateSchema)
    throw std::invalid_argument("certificate: unsupported schema_version " +
                                std::to_string(c.schema_version));
  c.n = j.at("n").get<int>();
  c.r = j.at("r").get<count_t>();
  c.d = j.at("d").get<int>();
  c.prime = j.at("prime").get<std::uint32_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.retries = j.at("retries").get<int>();
  c.points = j.at("points").get<std::vector<std::vector<residue_t>>>();
  c.observed_quotient = j.at("observed_quotient").get<std::vector<count_t>>();
  c.expected_quotient = j.at("expected_quotient").get<std::vector<count_t>>();
  if (!j.at("observed_gap").is_null())
    c.observed_gap = j.at("observed_gap").get<int>();
  c.expected_gap = j.at("expected_gap").get<int>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (!j.at("first_mismatch_degree").is_null())
    c.first_mismatch_degree = j.at("first_mismatch_degree").get<int>();
  c.tool_version = j.at("tool_version").get<std::string>();
  if (!j.at("wall_ms").is_null())
    c.wall_ms = j.at("wall_ms").get<double>();
  return c;
}

struct VerifyOptions {
  std::optional<int> e_max;
  bool timing = true;
  int retry_budget = kDefaultRetryBudget;
  RankMethod method = RankMethod::macaulay;
  bool check_stability = kChecksEnabled;
};

namespace detail {

inline Certificate certificate_from_profile(const PointConfig& z, const ChoppedProfile& prof) {
  Certificate c;
  c.n = z.n();
  c.r = z.r();
  c.d = prof.params.d;
  c.prime = z.field().p();
  c.seed = z.seed();
  c.retries = z.retries();
  c.points = z.rows();
  c.observed_quotient = prof.observed.values;
  c.expected_quotient.assign(prof.expected.values.begin(),
                             prof.expected.values.begin() +
                                 static_cast<std::ptrdiff_t>(prof.observed.size()));
  c.observed_gap = prof.observed_gap;
  c.expected_gap = prof.expected_gap;
  c.verdict = prof.verdict == ProfileVerdict::match ? Verdict::pass : Verdict::fail;
  c.first_mismatch_degree = prof.first_mismatch_degree;
  return c;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

} // namespace detail

/// Sample, compute the chopped quotient up to d + expected gap, and compare
/// with the conjectured values. Throws range_error outside r < hs(n,d) - n;
/// sampling failures come back as a GENERICITY_FAIL certificate.
inline Certificate verify_case(int n, count_t r, PrimeField field, std::uint64_t seed,
                               const VerifyOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto params = CaseParams::make(n, r);
  require_cuts_out(params, "verify_case");
  Certificate c;
  try {
    const PointConfig z = sample_points(n, r, field, seed, opts.retry_budget);
    GapScanOptions scan;
    scan.e_max = opts.e_max;
    scan.method = opts.method;
    scan.check_stability = opts.check_stability;
    c = detail::certificate_from_profile(z, chopped_profile(z, scan));
  } catch (const genericity_error& e) {
    c.n = n;
    c.r = r;
    c.d = params.d;
    c.prime = field.p();
    c.seed = seed;
    c.retries = e.retries();
    c.expected_gap = expected_gap_degree(params);
    c.expected_quotient = expected_quotient_table(params, params.d + c.expected_gap).values;
    c.verdict = Verdict::genericity_fail;
  }
  if (opts.timing)
    c.wall_ms = detail::elapsed_ms(start);
  return c;
}

/// Recompute the chopped quotient from the stored points and compare with the
/// stored observation and verdict. Does not trust anything but the points.
inline bool replay(const Certificate& c, RankMethod method = RankMethod::macaulay) {
  if (c.verdict == Verdict::genericity_fail)
    return c.points.empty();
  const PointConfig z(c.n, c.points, PrimeField(c.prime), c.seed, c.retries);
  if (z.r() != c.r || !has_generic_hf(z))
    return false;
  GapScanOptions scan;
  scan.method = method;
  scan.check_stability = false;
  // The stored table length pins the scan range.
  scan.e_max = static_cast<int>(c.observed_quotient.size()) - 1 - c.d;
  const Certificate again = detail::certificate_from_profile(z, chopped_profile(z, scan));
  return again.observed_quotient == c.observed_quotient &&
         again.expected_quotient == c.expected_quotient && again.observed_gap == c.observed_gap &&
         again.expected_gap == c.expected_gap && again.verdict == c.verdict &&
         again.first_mismatch_degree == c.first_mismatch_degree;
}

struct GridOptions {
  int n = 2;
  count_t r_from = 1;
  count_t r_to = 1;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t base_seed = 0;
  int trials = 1;
  /// 0 means hardware concurrency.
  unsigned workers = 0;
  /// Also skip cases outside the interesting range (chopped ideal expected to
  /// equal I(Z)).
  bool skip_trivial = false;
  std::optional<int> e_max;
  bool timing = true;
  /// If set, every non-PASS certificate is written here.
  std::optional<std::filesystem::path> fail_dir;
};

struct SkippedCase {
  int n = 0;
  count_t r = 0;
  std::string reason;
};

struct GridSummary {
  int pass = 0;
  int fail = 0;
  int skip = 0;
  std::optional<double> total_wall_ms;
};

struct GridReport {
  std::vector<Certificate> certificates;
  std::vector<SkippedCase> skipped;
  GridSummary summary;
};

inline constexpr const char* kCharZeroNote =
    "A PASS over F_p certifies the instance for general points over Q by semicontinuity; "
    "only the F_p computation is asserted here.";

inline json to_json(const GridReport& rep) {
  json j;
  j["certificates"] = json::array();
  for (const auto& c : rep.certificates)
    j["certificates"].push_back(to_json(c));
  j["skipped"] = json::array();
  for (const auto& s : rep.skipped)
    j["skipped"].push_back(json{{"n", s.n}, {"r", s.r}, {"reason", s.reason}});
  j["summary"] = json{{"pass", rep.summary.pass},
                      {"fail", rep.summary.fail},
                      {"skip", rep.summary.skip},
                      {"total_wall_ms", rep.summary.total_wall_ms
                                            ? json(*rep.summary.total_wall_ms)
                                            : json(nullptr)}};
  j["note"] = kCharZeroNote;
  return j;
}

inline std::optional<std::string> skip_reason(int n, count_t r, bool skip_trivial) {
  const auto p = CaseParams::make(n, r);
  if (p.d < 1 || !p.cuts_out_points())
    return "r >= hs(n,d) - n: the chopped ideal does not cut out the points";
  if (skip_trivial && chop_status(p) == ChopStatus::trivial)
    return "trivial chop: no generators of degree d+1 expected";
  return std::nullopt;
}

inline void write_certificate(const Certificate& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write certificate to " + path.string());
  out << to_json(c).dump(2) << '\n';
}

/// Runs every admissible r in [r_from, r_to] `trials` times on a worker pool.
/// Certificates are ordered by (r, trial) regardless of scheduling.
inline GridReport verify_grid(const GridOptions& g) {
  if (g.trials < 1)
    throw std::invalid_argument("verify_grid: trials must be positive");
  if (g.r_from < 1 || g.r_to < g.r_from)
    throw std::invalid_argument("verify_grid: empty or invalid r range");
  const auto start = std::chrono::steady_clock::now();
  const PrimeField field(g.prime);
  GridReport rep;
  struct Job {
    count_t r;
    int trial;
  };
  std::vector<Job> jobs;
  for (count_t r = g.r_from; r <= g.r_to; ++r) {
    if (auto why = skip_reason(g.n, r, g.skip_trivial)) {
      rep.skipped.push_back({g.n, r, *why});
      continue;
    }
    for (int t = 0; t < g.trials; ++t)
      jobs.push_back({r, t});
  }

  rep.certificates.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  VerifyOptions vo;
  vo.e_max = g.e_max;
  vo.timing = g.timing;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size())
        return;
      try {
        const std::uint64_t seed = derive_seed(g.base_seed, g.n, jobs[i].r, jobs[i].trial);
        rep.certificates[i] = verify_case(g.n, jobs[i].r, field, seed, vo);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error)
          first_error = std::current_exception();
      }
    }
  };
  unsigned workers = g.workers ? g.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(work);
  work();
  for (auto& t : pool)
    t.join();
  if (first_error)
    std::rethrow_exception(first_error);

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& c = rep.certificates[i];
    if (c.verdict == Verdict::pass) {
      ++rep.summary.pass;
      continue;
    }
    ++rep.summary.fail;
    if (g.fail_dir) {
      std::filesystem::create_directories(*g.fail_dir);
      write_certificate(c, *g.fail_dir / ("fail_n" + std::to_string(g.n) + "_r" +
                                          std::to_string(c.r) + "_trial" +
                                          std::to_string(jobs[i].trial) + ".json"));
    }
  }
  rep.summary.skip = static_cast<int>(rep.skipped.size());
  if (g.timing)
    rep.summary.total_wall_ms = detail::elapsed_ms(start);
  return rep;
}

/// Monomial ideal given by its minimal generators.
class MonomialIdeal {
public:
  explicit MonomialIdeal(int n, std::vector<Exponent> generators = {}) : n_(n) {
    for (const auto& g : generators)
      if (g.dim() != n)
        throw std::invalid_argument("MonomialIdeal: generator with wrong number of variables");
    std::sort(generators.begin(), generators.end(), order);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::size_t j = 0; j < generators.size(); ++j)
        if (i != j && generators[i].divides(generators[j]))
          throw std::invalid_argument("MonomialIdeal: generators are not minimal");
    gens_ = std::move(generators);
  }

  /// Drops every generator divisible by another one.
  static MonomialIdeal minimalized(int n, std::vector<Exponent> generators) {
    std::sort(generators.begin(), generators.end(), order);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    std::vector<Exponent> keep;
    for (const auto& g : generators) {
      bool redundant = false;
      for (const auto& h : generators)
        if (!(h == g) && h.divides(g))
          redundant = true;
      if (!redundant)
        keep.push_back(g);
    }
    return MonomialIdeal(n, std::move(keep));
  }

  int n() const { return n_; }
  const std::vector<Exponent>& generators() const { return gens_; }

  /// Least generator degree, or -1 for the zero ideal.
  int initial_degree() const {
    int d = -1;
    for (const auto& g : gens_)
      d = d < 0 ? g.degree() : std::min(d, g.degree());
    return d;
  }

  /// Image under x_i -> x_{perm[i]}.
  MonomialIdeal permuted(const std::vector<int>& perm) const {
    std::vector<Exponent> out;
    for (const auto& g : gens_) {
      Exponent e;
      e.entries.assign(g.entries.size(), 0);
      for (std::size_t i = 0; i < perm.size(); ++i)
        e.entries[perm[i]] = g.entries[i];
      out.push_back(e);
    }
    return MonomialIdeal(n_, std::move(out));
  }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;
  friend bool operator<(const MonomialIdeal& a, const MonomialIdeal& b) { return a.gens_ < b.gens_; }

private:
  // Degree first, then exponent order: generators print in the usual way.
  static bool order(const Exponent& a, const Exponent& b) {
    if (a.degree() != b.degree())
      return a.degree() < b.degree();
    return b < a;
  }

  int n_;
  std::vector<Exponent> gens_;
};

inline std::ostream& operator<<(std::ostream& os, const MonomialIdeal& I) {
  static const char* names[] = {"x", "y", "z", "w"};
  os << '<';
  for (std::size_t i = 0; i < I.generators().size(); ++i) {
    os << (i ? ", " : "");
    const auto& e = I.generators()[i];
    bool any = false;
    for (int k = 0; k <= I.n(); ++k) {
      if (!e[k])
        continue;
      if (I.n() < 4)
        os << names[k];
      else
        os << "x" << k;
      if (e[k] > 1)
        os << '^' << e[k];
      any = true;
    }
    if (!any)
      os << '1';
  }
  return os << '>';
}

namespace detail {

inline count_t count_multiples(const std::vector<Exponent>& gens, const std::vector<Exponent>& monos) {
  count_t c = 0;
  for (const auto& m : monos)
    for (const auto& g : gens)
      if (g.divides(m)) {
        ++c;
        break;
      }
  return c;
}

} // namespace detail

/// dim I_t: monomials of degree t divisible by some generator.
inline count_t monomial_ideal_dim(const MonomialIdeal& I, int t) {
  if (t < 0)
    return 0;
  return detail::count_multiples(I.generators(), monomials(I.n(), t));
}

/// dim of the degree-t part of the chopped ideal <I_d>, d the initial degree:
/// multiples of the generators of least degree.
inline count_t monomial_chopped_hf(const MonomialIdeal& I, int t) {
  const int d = I.initial_degree();
  if (d < 0 || t < d)
    return 0;
  std::vector<Exponent> low;
  for (const auto& g : I.generators())
    if (g.degree() == d)
      low.push_back(g);
  return detail::count_multiples(low, monomials(I.n(), t));
}

struct MonomialSearchOptions {
  /// h_{S/I}(t) = r is required on [d+1, horizon_factor * d].
  int horizon_factor = 3;
};

struct MonomialSearchResult {
  count_t r = 0;
  int d = 0;
  int horizon = 0;
  /// Every satisfying ideal; the list is closed under permuting x, y, z.
  std::vector<MonomialIdeal> ideals;
  /// Degree-d generator sets enumerated up to permutation.
  count_t canonical_sets = 0;
  /// Of those, how many give a chopped ideal with the conjectured values.
  count_t chopped_matches = 0;
};

namespace detail {

inline const std::array<std::vector<int>, 6>& plane_permutations() {
  static const std::array<std::vector<int>, 6> perms{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return perms;
}

inline std::vector<Exponent> permute_sorted(const std::vector<Exponent>& set,
                                            const std::vector<int>& perm) {
  std::vector<Exponent> out;
  for (const auto& g : set) {
    Exponent e;
    e.entries.assign(3, 0);
    for (int i = 0; i < 3; ++i)
      e.entries[perm[i]] = g.entries[i];
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff `set` (sorted) is the least element of its permutation orbit.
inline bool is_canonical(const std::vector<Exponent>& set) {
  for (const auto& perm : plane_permutations())
    if (permute_sorted(set, perm) < set)
      return false;
  return true;
}

/// Calls visit(indices) for every k-subset of {0..m-1}.
template <class F>
void for_each_combination(std::size_t m, std::size_t k, F&& visit) {
  if (k > m)
    return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1)
      --i;
    if (i == 0)
      return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

/// All ways to add degree-(d+1) generators to `gens` so that dim I_{d+1} is
/// hs(2,d+1) - r, kept if dim I_t = hs(2,t) - r for every t up to the horizon.
/// Ideals of general points are generated in degrees d and d+1, so nothing
/// is added above d+1.
inline void extend_generic(std::vector<Exponent>& gens, int d, int horizon, count_t r,
                           std::vector<MonomialIdeal>& out) {
  const auto monos = monomials(2, d + 1);
  std::vector<Exponent> free;
  for (const auto& m : monos) {
    bool in = false;
    for (const auto& g : gens)
      if (g.divides(m)) {
        in = true;
        break;
      }
    if (!in)
      free.push_back(m);
  }
  const count_t have = static_cast<count_t>(monos.size() - free.size());
  const count_t target = hs(2, d + 1) - r;
  if (have > target)
    return;
  for_each_combination(free.size(), static_cast<std::size_t>(target - have),
                       [&](const std::vector<std::size_t>& pick) {
                         std::vector<Exponent> all = gens;
                         for (std::size_t i : pick)
                           all.push_back(free[i]);
                         for (int t = d + 2; t <= horizon; ++t)
                           if (count_multiples(all, monomials(2, t)) != hs(2, t) - r)
                             return;
                         out.push_back(MonomialIdeal::minimalized(2, std::move(all)));
                       });
}

} // namespace detail

/// Monomial ideals in k[x,y,z] with the Hilbert function min(hs(2,t), r) whose
/// chopped ideal has the conjectured Hilbert function. Degree-d generator
/// sets are filtered by the chopped condition first (it depends on them
/// alone), up to permutation, and only survivors are extended.
inline MonomialSearchResult search_monomial_ideals(count_t r,
                                                   const MonomialSearchOptions& opts = {}) {
  const auto p = CaseParams::make(2, r);
  if (p.d < 1 || !interesting_range(2, p.d).contains(r))
    throw std::invalid_argument("search_monomial_ideals: r = " + std::to_string(r) +
                                " is not in the interesting range of the plane");
  MonomialSearchResult res;
  res.r = r;
  res.d = p.d;
  res.horizon = opts.horizon_factor * p.d;
  const int gap = expected_gap_degree(p);
  const int t_check = std::max(p.d + gap, res.horizon);
  std::vector<count_t> expected_ideal;
  for (int t = p.d; t <= t_check; ++t)
    expected_ideal.push_back(expected_chopped_hf(p, t).ideal_dim);
  std::vector<std::vector<Exponent>> degree_monos;
  for (int t = p.d; t <= t_check; ++t)
    degree_monos.push_back(monomials(2, t));

  const auto base = monomials(2, p.d);
  std::set<MonomialIdeal> found;
  detail::for_each_combination(
      base.size(), static_cast<std::size_t>(p.num_generators()),
      [&](const std::vector<std::size_t>& pick) {
        std::vector<Exponent> gd;
        for (std::size_t i : pick)
          gd.push_back(base[i]);
        std::sort(gd.begin(), gd.end());
        if (!detail::is_canonical(gd))
          return;
        ++res.canonical_sets;
        for (int t = p.d; t <= t_check; ++t)
          if (detail::count_multiples(gd, degree_monos[t - p.d]) != expected_ideal[t - p.d])
            return;
        ++res.chopped_matches;
        std::vector<MonomialIdeal> ext;
        detail::extend_generic(gd, p.d, res.horizon, r, ext);
        for (const auto& I : ext)
          for (const auto& perm : detail::plane_permutations())
            found.insert(I.permuted(perm));
      });
  res.ideals.assign(found.begin(), found.end());
  return res;
}

/// One representative (the least) per permutation orbit.
inline std::vector<MonomialIdeal> orbit_representatives(const std::vector<MonomialIdeal>& ideals) {
  std::set<MonomialIdeal> reps;
  for (const auto& I : ideals) {
    MonomialIdeal best = I;
    for (const auto& perm : detail::plane_permutations())
      best = std::min(best, I.permuted(perm));
    reps.insert(best);
  }
  return {reps.begin(), reps.end()};
}

struct SexticRecord {
  bool g_in_I6 = false;
  bool g_in_chopped6 = false;
  count_t chopped6_dim = 0;
  count_t I6_dim = 0;
  std::uint64_t seed = 0;
  int retries = 0;

  friend bool operator==(const SexticRecord&, const SexticRecord&) = default;
};

/// For 18 plane points: g = g1 g2, with g_i the cubic through the first and
/// last nine points, lies in I(Z)_6 but not in the degree-6 part of <I(Z)_5>.
inline SexticRecord missing_sextic_demo(const PointConfig& z) {
  if (z.n() != 2 || z.r() != 18)
    throw std::invalid_argument("missing_sextic_demo: needs 18 points in the plane");
  const PrimeField& F = z.field();
  std::vector<residue_t> cubics[2];
  for (int half = 0; half < 2; ++half) {
    const auto part = z.slice(9 * half, 9 * half + 9);
    const auto c = ideal_component(part, 3);
    if (c.size() != 1)
      throw genericity_error("missing_sextic_demo: cubics through half " + std::to_string(half) +
                                 " form a space of dimension " + std::to_string(c.size()),
                             z.retries());
    cubics[half] = c.vectors.column(0);
  }
  const auto g = multiply_forms(2, 3, cubics[0], 3, cubics[1], F);
  const GradedBasis i6 = ideal_component(z, 6);
  const ModMatrix chopped = macaulay_matrix(ideal_component(z, 5), 1);
  SexticRecord rec;
  rec.g_in_I6 = in_span(i6.vectors, g);
  rec.g_in_chopped6 = in_span(chopped, g);
  rec.chopped6_dim = static_cast<count_t>(column_rank(chopped));
  rec.I6_dim = static_cast<count_t>(i6.size());
  rec.seed = z.seed();
  rec.retries = z.retries();
  return rec;
}

inline SexticRecord missing_sextic_demo(PrimeField field, std::uint64_t seed) {
  return missing_sextic_demo(sample_points(2, 18, field, seed));
}

inline json to_json(const SexticRecord& s) {
  return json{{"g_in_I6", s.g_in_I6},         {"g_in_chopped6", s.g_in_chopped6},
              {"chopped6_dim", s.chopped6_dim}, {"I6_dim", s.I6_dim},
              {"seed", s.seed},               {"retries", s.retries}};
}

} // namespace chopshop
