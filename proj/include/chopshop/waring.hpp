#pragma once

// Numerical Waring decomposition over C: catalecticant kernel, Macaulay
// matrix at the predicted gap degree, cokernel multiplication matrices and
// eigenvalue point recovery.

#include <chopshop/formulas.hpp>
#include <chopshop/grading.hpp>

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace chopshop {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kFormSchema = 1;
inline constexpr double kDefaultWaringTol = 1e-8;
inline constexpr double kAmbiguousGap = 10.0;
inline constexpr double kResidualLimit = 1e-6;

enum class WaringErrorKind {
  ambiguous_rank,
  unsupported_rank,
  cokernel_dimension,
  ill_conditioned,
  failed_residual,
};

inline const char* to_string(WaringErrorKind k) {
  switch (k) {
  case WaringErrorKind::ambiguous_rank: return "AMBIGUOUS_RANK";
  case WaringErrorKind::unsupported_rank: return "UNSUPPORTED_RANK";
  case WaringErrorKind::cokernel_dimension: return "COKERNEL_DIMENSION";
  case WaringErrorKind::ill_conditioned: return "ILL_CONDITIONED";
  case WaringErrorKind::failed_residual: return "FAILED_RESIDUAL";
  }
  return "?";
}

struct WaringDiagnostics {
  /// Numerical rank of the catalecticant at the relative tolerance.
  std::size_t catalecticant_rank = 0;
  std::size_t kernel_dim = 0;
  int macaulay_degree = 0;
  /// 2-norm condition number of N_l, the basis block of the cokernel.
  double cokernel_condition = 0;
  /// max_k of the largest off-diagonal modulus of W^-1 N_l^-1 N_{x_k} W,
  /// relative to the norm of its diagonal.
  double eigen_offdiag_max = 0;
};

struct DecompositionResult {
  /// r x (n+1); unit rows, first nonzero entry real positive.
  CMatrix points;
  CVector coefficients;
  double residual = 0;
  WaringDiagnostics diagnostics;
};

class waring_error : public std::runtime_error {
public:
  waring_error(WaringErrorKind kind, const std::string& what,
               std::optional<DecompositionResult> partial = std::nullopt)
      : std::runtime_error(what), kind_(kind), partial_(std::move(partial)) {}
  WaringErrorKind kind() const { return kind_; }
  /// Whatever was computed before the failure (always set for residual and
  /// cokernel failures).
  const std::optional<DecompositionResult>& partial() const { return partial_; }

private:
  WaringErrorKind kind_;
  std::optional<DecompositionResult> partial_;
};

/// F = sum_beta coeffs[index(beta)] y^beta, beta over monomials(n, D).
struct SymmetricForm {
  int n = 0;
  int D = 0;
  CVector coeffs;

  SymmetricForm() = default;
  SymmetricForm(int n_, int D_, CVector c) : n(n_), D(D_), coeffs(std::move(c)) {
    if (n < 1 || D < 0)
      throw std::invalid_argument("SymmetricForm: need n >= 1 and D >= 0");
    if (static_cast<count_t>(coeffs.size()) != hs(n, D))
      throw std::invalid_argument("SymmetricForm: coefficient vector has length " +
                                  std::to_string(coeffs.size()) + ", expected hs(n, D) = " +
                                  std::to_string(hs(n, D)));
  }
};

namespace detail {

/// D! / prod beta_k!.
inline double multinomial(const Exponent& beta) {
  double m = 1;
  int acc = 0;
  for (int b : beta.entries)
    for (int j = 1; j <= b; ++j) {
      ++acc;
      m = m * acc / j;
    }
  return m;
}

/// prod_k (a_k + b_k)! / b_k!, as a product of integer ranges.
inline double falling_ratio(const Exponent& alpha, const Exponent& beta) {
  double v = 1;
  for (std::size_t k = 0; k < alpha.entries.size(); ++k)
    for (int j = beta.entries[k] + 1; j <= beta.entries[k] + alpha.entries[k]; ++j)
      v *= j;
  return v;
}

/// Values z^m for every m in `monos`, z a single row.
inline CVector monomial_values(const CVector& z, const std::vector<Exponent>& monos) {
  CVector out(static_cast<Eigen::Index>(monos.size()));
  for (std::size_t i = 0; i < monos.size(); ++i) {
    cplx v = 1;
    for (Eigen::Index k = 0; k < z.size(); ++k)
      for (int j = 0; j < monos[i][static_cast<std::size_t>(k)]; ++j)
        v *= z[k];
    out[static_cast<Eigen::Index>(i)] = v;
  }
  return out;
}

/// Coefficient vectors of (z_i . y)^D as columns.
inline CMatrix power_columns(const CMatrix& Z, int D) {
  const int n = static_cast<int>(Z.cols()) - 1;
  const auto monos = monomials(n, D);
  CMatrix A(static_cast<Eigen::Index>(monos.size()), Z.rows());
  std::vector<double> mult(monos.size());
  for (std::size_t b = 0; b < monos.size(); ++b)
    mult[b] = multinomial(monos[b]);
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    const CVector vals = monomial_values(Z.row(i).transpose(), monos);
    for (std::size_t b = 0; b < monos.size(); ++b)
      A(static_cast<Eigen::Index>(b), i) = mult[b] * vals[static_cast<Eigen::Index>(b)];
  }
  return A;
}

} // namespace detail

/// F = sum_i c_i (z_i . y)^D with Z given as r rows of length n+1.
inline SymmetricForm form_from_points(const CMatrix& Z, const CVector& c, int D) {
  if (Z.rows() != c.size())
    throw std::invalid_argument("form_from_points: need one coefficient per point");
  if (Z.cols() < 2)
    throw std::invalid_argument("form_from_points: points need n+1 >= 2 coordinates");
  for (Eigen::Index i = 0; i < Z.rows(); ++i)
    if (Z.row(i).norm() == 0)
      throw std::invalid_argument("form_from_points: zero point");
  const int n = static_cast<int>(Z.cols()) - 1;
  if (Z.rows() == 0)
    return SymmetricForm(n, D, CVector::Zero(static_cast<Eigen::Index>(hs(n, D))));
  return SymmetricForm(n, D, detail::power_columns(Z, D) * c);
}

/// Matrix of g -> g(d/dy) F from S_a (columns, monomials(n,a)) to T_{D-a}
/// (rows, monomials(n,D-a)); entry a_{alpha+beta} (alpha+beta)!/beta!.
inline CMatrix catalecticant(const SymmetricForm& F, int a) {
  if (a < 0 || a > F.D)
    throw std::invalid_argument("catalecticant: need 0 <= a <= D");
  const int b = F.D - a;
  const auto ma = monomials(F.n, a), mb = monomials(F.n, b);
  const auto prod = product_index_table(F.n, a, b);
  CMatrix C(static_cast<Eigen::Index>(mb.size()), static_cast<Eigen::Index>(ma.size()));
  for (std::size_t i = 0; i < ma.size(); ++i)
    for (std::size_t j = 0; j < mb.size(); ++j)
      C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          F.coeffs[static_cast<Eigen::Index>(prod[i * mb.size() + j])] *
          detail::falling_ratio(ma[i], mb[j]);
  return C;
}

struct NumericalKernel {
  /// Orthonormal columns spanning the right null space.
  CMatrix basis;
  std::size_t rank = 0;
  /// sigma_rank / sigma_{rank+1}; infinite when nothing follows or it is 0.
  double spectral_gap = std::numeric_limits<double>::infinity();
  Eigen::VectorXd singular_values;
};

/// Right null space by SVD. Without a rank hint the rank is the number of
/// singular values above tol * sigma_1 and must be separated by a gap >= 10.
inline NumericalKernel numerical_kernel(const CMatrix& M, std::optional<std::size_t> rank_hint = {},
                                        double tol = kDefaultWaringTol) {
  if (!(tol > 0 && tol < 1))
    throw std::invalid_argument("numerical_kernel: tol must lie in (0,1)");
  NumericalKernel out;
  const auto cols = static_cast<std::size_t>(M.cols());
  if (M.rows() == 0 || cols == 0) {
    out.basis = CMatrix::Identity(M.cols(), M.cols());
    out.singular_values = Eigen::VectorXd();
    return out;
  }
  Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  out.singular_values = s;
  std::size_t rank = 0;
  if (rank_hint) {
    if (*rank_hint > static_cast<std::size_t>(s.size()))
      throw std::invalid_argument("numerical_kernel: rank hint exceeds matrix size");
    rank = *rank_hint;
  } else {
    while (rank < static_cast<std::size_t>(s.size()) && s[static_cast<Eigen::Index>(rank)] > tol * s[0])
      ++rank;
  }
  out.rank = rank;
  if (rank > 0 && rank < static_cast<std::size_t>(s.size()) && s[static_cast<Eigen::Index>(rank)] > 0)
    out.spectral_gap = s[static_cast<Eigen::Index>(rank) - 1] / s[static_cast<Eigen::Index>(rank)];
  else if (rank == 0)
    out.spectral_gap = s.size() && s[0] > 0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (!rank_hint && out.spectral_gap < kAmbiguousGap)
    throw waring_error(WaringErrorKind::ambiguous_rank,
                       "numerical_kernel: ill-separated spectrum (gap " +
                           std::to_string(out.spectral_gap) + ") at rank " + std::to_string(rank));
  out.basis = svd.matrixV().rightCols(static_cast<Eigen::Index>(cols - rank));
  return out;
}

/// True iff |C_F(d) f| <= tol |F| |f|.
inline bool apolarity_check(const CVector& f, const SymmetricForm& F, double tol = 1e-8) {
  int d = -1;
  for (int t = 0; t <= F.D; ++t)
    if (static_cast<count_t>(f.size()) == hs(F.n, t)) {
      d = t;
      break;
    }
  if (d < 0)
    throw std::invalid_argument("apolarity_check: f has no degree <= D in this ring");
  return (catalecticant(F, d) * f).norm() <= tol * F.coeffs.norm() * f.norm();
}

/// Unit row, first entry with modulus above 1e-8 made real positive.
inline CVector normalize_point(const CVector& z) {
  const double nz = z.norm();
  if (nz == 0)
    throw std::invalid_argument("normalize_point: zero vector");
  CVector u = z / nz;
  for (Eigen::Index k = 0; k < u.size(); ++k)
    if (std::abs(u[k]) > 1e-8) {
      u *= std::conj(u[k]) / std::abs(u[k]);
      u[k] = std::abs(u[k]);
      break;
    }
  return u;
}

/// Points with coordinates uniform on the unit circle.
inline CMatrix unit_circle_points(int n, std::size_t r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  CMatrix Z(static_cast<Eigen::Index>(r), n + 1);
  for (Eigen::Index i = 0; i < Z.rows(); ++i)
    for (Eigen::Index k = 0; k < Z.cols(); ++k)
      Z(i, k) = std::polar(1.0, angle(rng));
  return Z;
}

struct DecomposeOptions {
  double tol = kDefaultWaringTol;
  std::uint64_t seed = 0;
  /// Fresh (l, l') draws after the first one.
  int retries = 3;
  double condition_limit = 1e10;
  double residual_limit = kResidualLimit;
};

/// Degrees (d, e) used by decompose: the least d with r < hs(n,d) - n and the
/// predicted gap there. d = e = 1 for a single point. nullopt when d > D/2.
inline std::optional<std::pair<int, int>> waring_degrees(int n, count_t r, int D) {
  if (r < 1)
    throw std::invalid_argument("waring_degrees: need r >= 1");
  if (r == 1)
    return D >= 2 ? std::optional(std::pair{1, 1}) : std::nullopt;
  const auto p = CaseParams::make(n, r);
  int d = p.d, e = 0;
  if (p.cuts_out_points()) {
    e = expected_gap_degree(p);
  } else {
    // Above the regularity I(Z)_d already generates I(Z) in degrees >= d.
    while (r >= hs(n, d) - n)
      ++d;
    e = 1;
  }
  if (2 * d > D)
    return std::nullopt;
  return std::pair{d, e};
}

namespace detail {

/// Complex Macaulay matrix: column j * hs(n,e) + gamma holds x^gamma f_j.
inline CMatrix complex_macaulay(int n, int d, const CMatrix& forms, int e) {
  const auto prod = product_index_table(n, e, d);
  const auto se = static_cast<std::size_t>(hs(n, e));
  const auto sd = static_cast<std::size_t>(hs(n, d));
  CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(hs(n, d + e)),
                            static_cast<Eigen::Index>(se) * forms.cols());
  for (Eigen::Index j = 0; j < forms.cols(); ++j)
    for (std::size_t g = 0; g < se; ++g)
      for (std::size_t a = 0; a < sd; ++a)
        M(prod[g * sd + a], j * static_cast<Eigen::Index>(se) + static_cast<Eigen::Index>(g)) =
            forms(static_cast<Eigen::Index>(a), j);
  return M;
}

inline CVector unit_form(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  CVector u(n + 1);
  for (auto& x : u)
    x = std::polar(1.0, angle(rng));
  return u;
}

} // namespace detail

/// Rank-r Waring decomposition of F. Throws waring_error.
inline DecompositionResult decompose(const SymmetricForm& F, count_t r,
                                     const DecomposeOptions& opts = {}) {
  const int n = F.n;
  const auto degs = waring_degrees(n, r, F.D);
  if (!degs)
    throw waring_error(WaringErrorKind::unsupported_rank,
                       "decompose: rank " + std::to_string(r) + " needs a degree d <= D/2 = " +
                           std::to_string(F.D / 2) + " with r < hs(n,d) - n");
  const auto [d, e] = *degs;
  DecompositionResult res;
  auto& diag = res.diagnostics;
  diag.macaulay_degree = d + e;

  // Kernel of the catalecticant is I(Z)_d. Rows are equilibrated first.
  CMatrix C = catalecticant(F, d);
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    if (const double nr = C.row(i).norm(); nr > 0)
      C.row(i) /= nr;
  const auto ker = numerical_kernel(C, static_cast<std::size_t>(r), opts.tol);
  {
    std::size_t observed = 0;
    while (observed < static_cast<std::size_t>(ker.singular_values.size()) &&
           ker.singular_values[static_cast<Eigen::Index>(observed)] > opts.tol * ker.singular_values[0])
      ++observed;
    diag.catalecticant_rank = observed;
  }
  diag.kernel_dim = static_cast<std::size_t>(ker.basis.cols());
  if (ker.spectral_gap < kAmbiguousGap)
    throw waring_error(WaringErrorKind::ambiguous_rank,
                       "decompose: catalecticant spectrum not separated at rank " +
                           std::to_string(r) + " (gap " + std::to_string(ker.spectral_gap) + ")");

  // Cokernel of the Macaulay matrix at d+e: functionals vanishing on <I_d>.
  const CMatrix M = detail::complex_macaulay(n, d, ker.basis, e);
  const auto rows = static_cast<std::size_t>(M.rows());
  Eigen::BDCSVD<CMatrix> msvd(M, Eigen::ComputeFullU);
  const Eigen::VectorXd ms = msvd.singularValues();
  std::size_t mrank = 0;
  while (mrank < static_cast<std::size_t>(ms.size()) &&
         ms[static_cast<Eigen::Index>(mrank)] > opts.tol * ms[0])
    ++mrank;
  const std::size_t codim = rows - mrank;
  if (codim != static_cast<std::size_t>(r))
    throw waring_error(WaringErrorKind::cokernel_dimension,
                       "decompose: cokernel of the degree-" + std::to_string(d + e) +
                           " Macaulay matrix has dimension " + std::to_string(codim) +
                           ", expected " + std::to_string(r),
                       res);
  // v^T M = 0 for v = conj of the trailing left singular vectors.
  const CMatrix V = msvd.matrixU().rightCols(static_cast<Eigen::Index>(r)).conjugate();

  const int top = d + e;
  const auto shift = product_index_table(n, 1, top - 1);
  const auto below = static_cast<std::size_t>(hs(n, top - 1));
  auto shifted = [&](int k) {
    CMatrix out(static_cast<Eigen::Index>(below), static_cast<Eigen::Index>(r));
    for (std::size_t b = 0; b < below; ++b)
      out.row(static_cast<Eigen::Index>(b)) =
          V.row(shift[static_cast<std::size_t>(k) * below + b]);
    return out;
  };
  std::vector<CMatrix> Vx;
  for (int k = 0; k <= n; ++k)
    Vx.push_back(shifted(k));
  auto combine = [&](const CVector& u) {
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(below), static_cast<Eigen::Index>(r));
    for (int k = 0; k <= n; ++k)
      out += u[k] * Vx[static_cast<std::size_t>(k)];
    return out;
  };

  std::mt19937_64 rng(opts.seed);
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    const CVector l = detail::unit_form(n, rng), l2 = detail::unit_form(n, rng);
    const CMatrix Rl = combine(l);
    // Pivoted QR on the transpose picks the r best-conditioned rows.
    Eigen::ColPivHouseholderQR<CMatrix> qr(Rl.transpose());
    std::vector<Eigen::Index> B(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(r); ++i)
      B[static_cast<std::size_t>(i)] = qr.colsPermutation().indices()[i];
    auto select = [&](const CMatrix& m) {
      CMatrix out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
      for (std::size_t i = 0; i < B.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = m.row(B[i]);
      return out;
    };
    const CMatrix Nl = select(Rl);
    const Eigen::JacobiSVD<CMatrix> nsvd(Nl);
    const auto sv = nsvd.singularValues();
    const double cond = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1]
                                              : std::numeric_limits<double>::infinity();
    diag.cokernel_condition = cond;
    if (!(cond <= opts.condition_limit))
      continue;
    const Eigen::PartialPivLU<CMatrix> lu(Nl);
    const CMatrix pencil = lu.solve(select(combine(l2)));
    const Eigen::ComplexEigenSolver<CMatrix> es(pencil);
    if (es.info() != Eigen::Success)
      continue;
    const CMatrix W = es.eigenvectors();
    const Eigen::PartialPivLU<CMatrix> wlu(W);
    CMatrix Z(static_cast<Eigen::Index>(r), n + 1);
    double offdiag = 0;
    for (int k = 0; k <= n; ++k) {
      const CMatrix T = wlu.solve(lu.solve(select(Vx[static_cast<std::size_t>(k)])) * W);
      const CVector dg = T.diagonal();
      Z.col(k) = dg;
      CMatrix off = T;
      off.diagonal().setZero();
      const double dn = dg.norm();
      offdiag = std::max(offdiag, dn > 0 ? off.cwiseAbs().maxCoeff() / dn : 0.0);
    }
    diag.eigen_offdiag_max = offdiag;
    for (Eigen::Index i = 0; i < Z.rows(); ++i)
      Z.row(i) = normalize_point(Z.row(i).transpose()).transpose();
    res.points = Z;

    const CMatrix A = detail::power_columns(Z, F.D);
    res.coefficients = A.colPivHouseholderQr().solve(F.coeffs);
    const double fn = F.coeffs.norm();
    res.residual = (F.coeffs - A * res.coefficients).norm() / (fn > 0 ? fn : 1.0);
    if (!(res.residual <= opts.residual_limit))
      throw waring_error(WaringErrorKind::failed_residual,
                         "decompose: residual " + std::to_string(res.residual) + " exceeds " +
                             std::to_string(opts.residual_limit),
                         res);
    return res;
  }
  throw waring_error(WaringErrorKind::ill_conditioned,
                     "decompose: N_l condition " + std::to_string(diag.cokernel_condition) +
                         " above limit after " + std::to_string(opts.retries + 1) + " draws",
                     res);
}

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// method, O(n^3)). Returns assignment[row] = column.
inline std::vector<std::size_t> hungarian(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols())
    throw std::invalid_argument("hungarian: cost matrix must be square");
  const std::size_t m = static_cast<std::size_t>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; p[j] is the row matched to column j.
  std::vector<double> u(m + 1, 0), v(m + 1, 0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j])
          continue;
        const double cur = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<std::size_t> assign(m);
  for (std::size_t j = 1; j <= m; ++j)
    assign[p[j] - 1] = j - 1;
  return assign;
}

/// Distance between points of P^n: min over phases of |a/|a| - e^{i phi} b/|b|| .
inline double projective_distance(const CVector& a, const CVector& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::min(1.0, c)));
}

struct Recovery {
  /// matching[i] = index of the recovered point paired with true point i.
  std::vector<std::size_t> matching;
  double max_point_error = 0;
  /// Max relative error of coefficients, true points normalized like the
  /// recovered ones with c_i rescaled accordingly.
  double max_coefficient_error = 0;
};

/// Optimal matching between true and recovered points by projective distance.
inline Recovery recovery_error(const CMatrix& Z, const CVector& c, const DecompositionResult& res,
                               int D) {
  if (Z.rows() != res.points.rows())
    throw std::invalid_argument("recovery_error: point counts differ");
  const Eigen::Index r = Z.rows();
  Eigen::MatrixXd cost(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      cost(i, j) = projective_distance(Z.row(i).transpose(), res.points.row(j).transpose());
  Recovery out;
  out.matching = hungarian(cost);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto j = static_cast<Eigen::Index>(out.matching[static_cast<std::size_t>(i)]);
    const CVector zi = Z.row(i).transpose();
    const CVector u = normalize_point(zi);
    out.max_point_error = std::max(out.max_point_error, (u - res.points.row(j).transpose()).norm());
    // z = lambda u with lambda = <u, z>, so c (z.y)^D = c lambda^D (u.y)^D.
    const cplx lambda = u.dot(zi);
    const cplx expect = c[i] * std::pow(lambda, D);
    out.max_coefficient_error =
        std::max(out.max_coefficient_error, std::abs(expect - res.coefficients[j]) / std::abs(expect));
  }
  return out;
}

using json = nlohmann::ordered_json;

inline json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline cplx complex_from_json(const json& j) {
  return {j.at("re").get<double>(), j.value("im", 0.0)};
}

inline json to_json(const SymmetricForm& F) {
  json terms = json::array();
  const auto monos = monomials(F.n, F.D);
  for (std::size_t b = 0; b < monos.size(); ++b) {
    const cplx v = F.coeffs[static_cast<Eigen::Index>(b)];
    if (v == cplx(0))
      continue;
    terms.push_back(json{{"exponent", monos[b].entries}, {"re", v.real()}, {"im", v.imag()}});
  }
  return json{{"schema_version", kFormSchema}, {"n", F.n}, {"D", F.D}, {"terms", terms}};
}

inline SymmetricForm form_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kFormSchema)
    throw std::invalid_argument("form: unsupported schema_version");
  const int n = j.at("n").get<int>(), D = j.at("D").get<int>();
  if (n < 1 || D < 0)
    throw std::invalid_argument("form: need n >= 1 and D >= 0");
  CVector c = CVector::Zero(static_cast<Eigen::Index>(hs(n, D)));
  for (const auto& t : j.at("terms")) {
    const Exponent e(t.at("exponent").get<std::vector<int>>());
    if (e.dim() != n || e.degree() != D)
      throw std::invalid_argument("form: exponent of wrong length or degree");
    for (int x : e.entries)
      if (x < 0)
        throw std::invalid_argument("form: negative exponent");
    c[static_cast<Eigen::Index>(mono_index(n, D, e))] += complex_from_json(t);
  }
  return SymmetricForm(n, D, std::move(c));
}

inline json to_json(const WaringDiagnostics& d) {
  return json{{"catalecticant_rank", d.catalecticant_rank},
              {"kernel_dim", d.kernel_dim},
              {"macaulay_degree", d.macaulay_degree},
              {"cokernel_condition", d.cokernel_condition},
              {"eigen_offdiag_max", d.eigen_offdiag_max}};
}

inline json to_json(const DecompositionResult& r) {
  json pts = json::array();
  for (Eigen::Index i = 0; i < r.points.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.points.cols(); ++k)
      row.push_back(complex_to_json(r.points(i, k)));
    pts.push_back(row);
  }
  json cs = json::array();
  for (const auto& c : r.coefficients)
    cs.push_back(complex_to_json(c));
  return json{{"points", pts},
              {"coefficients", cs},
              {"residual", r.residual},
              {"diagnostics", to_json(r.diagnostics)}};
}

inline DecompositionResult decomposition_from_json(const json& j) {
  DecompositionResult r;
  const auto& pts = j.at("points");
  const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(pts[0].size()) : 0;
  r.points.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(pts[static_cast<std::size_t>(i)].size()) != cols)
      throw std::invalid_argument("result: ragged point rows");
    for (Eigen::Index k = 0; k < cols; ++k)
      r.points(i, k) = complex_from_json(pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  }
  const auto& cs = j.at("coefficients");
  r.coefficients.resize(static_cast<Eigen::Index>(cs.size()));
  for (std::size_t i = 0; i < cs.size(); ++i)
    r.coefficients[static_cast<Eigen::Index>(i)] = complex_from_json(cs[i]);
  r.residual = j.at("residual").get<double>();
  const auto& d = j.at("diagnostics");
  r.diagnostics.catalecticant_rank = d.at("catalecticant_rank").get<std::size_t>();
  r.diagnostics.kernel_dim = d.at("kernel_dim").get<std::size_t>();
  r.diagnostics.macaulay_degree = d.at("macaulay_degree").get<int>();
  r.diagnostics.cokernel_condition = d.at("cokernel_condition").get<double>();
  r.diagnostics.eigen_offdiag_max = d.at("eigen_offdiag_max").get<double>();
  return r;
}

} // namespace chopshop
