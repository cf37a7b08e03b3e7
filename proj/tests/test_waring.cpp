#include <chopshop/waring.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace chopshop;

namespace {

/// Independent expansion of prod_i (z . y)^D by repeated polynomial
/// multiplication on exponent maps.
std::map<std::vector<int>, cplx> expand_power(const CVector& z, int D) {
  std::map<std::vector<int>, cplx> acc{{std::vector<int>(z.size(), 0), 1.0}};
  for (int step = 0; step < D; ++step) {
    std::map<std::vector<int>, cplx> next;
    for (const auto& [e, v] : acc)
      for (Eigen::Index k = 0; k < z.size(); ++k) {
        auto f = e;
        ++f[static_cast<std::size_t>(k)];
        next[f] += v * z[k];
      }
    acc = std::move(next);
  }
  return acc;
}

/// Applies x^alpha as d^alpha/dy^alpha to a polynomial map, directly.
std::map<std::vector<int>, cplx> differentiate(const std::map<std::vector<int>, cplx>& F,
                                               const std::vector<int>& alpha) {
  std::map<std::vector<int>, cplx> out;
  for (const auto& [e, v] : F) {
    cplx c = v;
    auto f = e;
    bool zero = false;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      for (int j = 0; j < alpha[k]; ++j) {
        if (f[k] == 0) {
          zero = true;
          break;
        }
        c *= f[k];
        --f[k];
      }
    if (!zero)
      out[f] += c;
  }
  return out;
}

CMatrix sample(int n, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return unit_circle_points(n, r, rng);
}

} // namespace

TEST(FormFromPoints, SinglePoint) {
  CMatrix Z(1, 3);
  Z << 1, 0, 0;
  const auto F = form_from_points(Z, CVector::Ones(1), 4);
  ASSERT_EQ(F.coeffs.size(), 15);
  EXPECT_EQ(F.coeffs[0], cplx(1));
  EXPECT_EQ(F.coeffs.tail(14).norm(), 0.0);
}

TEST(FormFromPoints, AntipodalCancel) {
  CMatrix Z(2, 3);
  Z << 1, 2, 3, -1, -2, -3;
  CVector c(2);
  c << 1, -1;
  EXPECT_LT(form_from_points(Z, c, 6).coeffs.norm(), 1e-12);
}

TEST(FormFromPoints, MatchesDirectExpansion) {
  const CMatrix Z = sample(2, 3, 1);
  CVector c(3);
  c << cplx(1, 2), cplx(-0.5, 0), cplx(0, 3);
  const int D = 5;
  const auto F = form_from_points(Z, c, D);
  std::map<std::vector<int>, cplx> expect;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (const auto& [e, v] : expand_power(Z.row(i).transpose(), D))
      expect[e] += c[i] * v;
  const auto monos = monomials(2, D);
  for (std::size_t b = 0; b < monos.size(); ++b)
    EXPECT_LT(std::abs(F.coeffs[static_cast<Eigen::Index>(b)] - expect[monos[b].entries]), 1e-10);
}

TEST(FormFromPoints, RejectsBadInput) {
  CMatrix Z = CMatrix::Zero(1, 3);
  EXPECT_THROW(form_from_points(Z, CVector::Ones(1), 3), std::invalid_argument);
  EXPECT_THROW(form_from_points(sample(2, 2, 0), CVector::Ones(3), 3), std::invalid_argument);
  EXPECT_THROW(SymmetricForm(2, 3, CVector::Ones(5)), std::invalid_argument);
}

TEST(Catalecticant, EntriesAreDerivatives) {
  const CMatrix Z = sample(2, 4, 2);
  const int D = 6, a = 2;
  const auto F = form_from_points(Z, CVector::Ones(4), D);
  std::map<std::vector<int>, cplx> poly;
  const auto top = monomials(2, D);
  for (std::size_t b = 0; b < top.size(); ++b)
    poly[top[b].entries] = F.coeffs[static_cast<Eigen::Index>(b)];
  const CMatrix C = catalecticant(F, a);
  const auto ma = monomials(2, a), mb = monomials(2, D - a);
  ASSERT_EQ(C.rows(), static_cast<Eigen::Index>(mb.size()));
  ASSERT_EQ(C.cols(), static_cast<Eigen::Index>(ma.size()));
  for (std::size_t i = 0; i < ma.size(); ++i) {
    auto dF = differentiate(poly, ma[i].entries);
    for (std::size_t j = 0; j < mb.size(); ++j)
      EXPECT_LT(std::abs(C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) -
                         dF[mb[j].entries]),
                1e-9 * (1 + std::abs(dF[mb[j].entries])));
  }
}

TEST(Catalecticant, PurePowerHasRankOne) {
  CMatrix Z(1, 3);
  Z << 1, 0, 0;
  const auto F = form_from_points(Z, CVector::Ones(1), 8);
  for (int a = 0; a <= 8; ++a) {
    const auto k = numerical_kernel(catalecticant(F, a));
    EXPECT_EQ(k.rank, 1u) << a;
  }
  EXPECT_THROW(catalecticant(F, 9), std::invalid_argument);
}

TEST(Catalecticant, AdjointUnderFactorialWeights) {
  // With W_a = diag(alpha!), W_{D-a} C(a) = (W_a C(D-a))^T.
  const auto F = form_from_points(sample(2, 5, 3), CVector::Ones(5), 7);
  const int a = 3;
  const CMatrix A = catalecticant(F, a), B = catalecticant(F, F.D - a);
  auto weights = [](int n, int t) {
    const auto m = monomials(n, t);
    Eigen::VectorXd w(static_cast<Eigen::Index>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
      double f = 1;
      for (int e : m[i].entries)
        for (int j = 2; j <= e; ++j)
          f *= j;
      w[static_cast<Eigen::Index>(i)] = f;
    }
    return w;
  };
  const CMatrix lhs = weights(2, F.D - a).asDiagonal() * A;
  const CMatrix rhs = (weights(2, a).asDiagonal() * B).transpose();
  EXPECT_LT((lhs - rhs).norm(), 1e-10 * lhs.norm());
  const Eigen::BDCSVD<CMatrix> s1(lhs), s2(rhs);
  EXPECT_LT((s1.singularValues() - s2.singularValues()).norm(),
            1e-10 * s1.singularValues()[0]);
}

TEST(NumericalKernel, Basics) {
  EXPECT_EQ(numerical_kernel(CMatrix::Identity(5, 5)).basis.cols(), 0);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int k : {1, 4, 9}) {
    CMatrix A(20, k), B(k, 15);
    for (auto& x : A.reshaped())
      x = cplx(g(rng), g(rng));
    for (auto& x : B.reshaped())
      x = cplx(g(rng), g(rng));
    const CMatrix M = A * B;
    const auto ker = numerical_kernel(M);
    EXPECT_EQ(ker.rank, static_cast<std::size_t>(k));
    EXPECT_EQ(ker.basis.cols(), 15 - k);
    EXPECT_LT((M * ker.basis).norm(), 1e-10 * M.norm());
    EXPECT_LT((ker.basis.adjoint() * ker.basis - CMatrix::Identity(15 - k, 15 - k)).norm(), 1e-10);
    EXPECT_GT(ker.spectral_gap, 1e6);
  }
  EXPECT_THROW(numerical_kernel(CMatrix::Identity(3, 3), {}, 0.0), std::invalid_argument);
}

TEST(NumericalKernel, AmbiguousSpectrum) {
  Eigen::VectorXd s(4);
  s << 1.0, 0.5, 1e-7, 0.3e-7;
  const CMatrix M = s.cast<cplx>().asDiagonal();
  // Threshold 1e-7 falls between two values only a factor ~3 apart.
  EXPECT_THROW(numerical_kernel(M, {}, 0.5e-7), waring_error);
  EXPECT_EQ(numerical_kernel(M, std::size_t{2}).basis.cols(), 2);
}

TEST(WaringDegrees, Cases) {
  EXPECT_EQ(waring_degrees(2, 18, 10), (std::pair{5, 2}));
  EXPECT_EQ(waring_degrees(2, 7, 6), (std::pair{3, 1}));
  EXPECT_EQ(waring_degrees(2, 1, 2), (std::pair{1, 1}));
  // r = 19 is not cut out by quintics; sextics generate from degree 6 on.
  EXPECT_EQ(waring_degrees(2, 19, 12), (std::pair{6, 1}));
  EXPECT_FALSE(waring_degrees(2, 18, 9));
}

TEST(Decompose, EighteenPlanePoints) {
  const CMatrix Z = sample(2, 18, 7);
  const CVector c = CVector::Ones(18);
  const auto F = form_from_points(Z, c, 10);
  const CMatrix C = catalecticant(F, 5);
  ASSERT_EQ(C.rows(), 21);
  ASSERT_EQ(C.cols(), 21);
  const auto ker = numerical_kernel(C, std::size_t{18});
  EXPECT_EQ(ker.basis.cols(), 3);
  EXPECT_GE(ker.spectral_gap, 1e6);
  for (Eigen::Index j = 0; j < 3; ++j)
    EXPECT_TRUE(apolarity_check(ker.basis.col(j), F));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CVector f(21);
  for (auto& x : f)
    x = cplx(g(rng), g(rng));
  EXPECT_FALSE(apolarity_check(f, F));

  const auto res = decompose(F, 18, {.seed = 7});
  EXPECT_EQ(res.diagnostics.macaulay_degree, 7);
  EXPECT_EQ(res.diagnostics.catalecticant_rank, 18u);
  EXPECT_EQ(res.diagnostics.kernel_dim, 3u);
  EXPECT_LE(res.residual, 1e-8);
  const auto rec = recovery_error(Z, c, res, 10);
  EXPECT_LE(rec.max_point_error, 1e-6);
  EXPECT_LE(rec.max_coefficient_error, 1e-6);
}

TEST(Decompose, SinglePoint) {
  CMatrix Z(1, 4);
  Z << cplx(0.3, 1), 2, cplx(0, -1), 0.5;
  CVector c(1);
  c << cplx(2, -1);
  for (int D : {2, 3, 6}) {
    const auto res = decompose(form_from_points(Z, c, D), 1);
    const auto rec = recovery_error(Z, c, res, D);
    EXPECT_LT(rec.max_point_error, 1e-12) << D;
    EXPECT_LT(rec.max_coefficient_error, 1e-12) << D;
  }
}

TEST(Decompose, SevenPointsSextic) {
  const CMatrix Z = sample(2, 7, 3);
  const CVector c = CVector::Ones(7);
  const auto res = decompose(form_from_points(Z, c, 6), 7);
  EXPECT_EQ(res.diagnostics.macaulay_degree, 4);
  EXPECT_LE(res.residual, 1e-8);
  EXPECT_LE(recovery_error(Z, c, res, 6).max_point_error, 1e-6);
}

TEST(Decompose, RoundTripProperty) {
  struct Case {
    int n, D;
    std::size_t r;
  };
  std::mt19937_64 crng(99);
  std::uniform_real_distribution<double> unif(0.5, 2.0);
  for (const Case k : {Case{2, 8, 12}, Case{2, 10, 16}, Case{3, 6, 12}, Case{3, 8, 30},
                       Case{4, 6, 18}, Case{2, 12, 25}, Case{5, 6, 20}, Case{3, 10, 50}}) {
    const CMatrix Z = sample(k.n, k.r, 1000 + k.r);
    CVector c(static_cast<Eigen::Index>(k.r));
    for (auto& x : c)
      x = std::polar(unif(crng), unif(crng));
    const auto res = decompose(form_from_points(Z, c, k.D), static_cast<count_t>(k.r));
    const auto rec = recovery_error(Z, c, res, k.D);
    EXPECT_LE(res.residual, 1e-8) << k.n << "," << k.D << "," << k.r;
    EXPECT_LE(rec.max_point_error, 1e-6) << k.n << "," << k.D << "," << k.r;
    EXPECT_LE(rec.max_coefficient_error, 1e-6) << k.n << "," << k.D << "," << k.r;
    EXPECT_LE(res.diagnostics.eigen_offdiag_max, 1e-6);
  }
}

TEST(Decompose, PermutationAndScaleInvariance) {
  const int D = 8;
  const CMatrix Z = sample(2, 12, 5);
  const CVector c = CVector::Ones(12);
  const auto base = decompose(form_from_points(Z, c, D), 12, {.seed = 3});
  std::vector<Eigen::Index> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  CMatrix Zp(12, 3);
  CVector cp(12);
  for (Eigen::Index i = 0; i < 12; ++i) {
    const cplx lambda = std::polar(1.0 + 0.1 * static_cast<double>(i), 0.3 * static_cast<double>(i));
    Zp.row(i) = lambda * Z.row(perm[static_cast<std::size_t>(i)]);
    cp[i] = c[perm[static_cast<std::size_t>(i)]] * std::pow(lambda, -D);
  }
  const auto other = decompose(form_from_points(Zp, cp, D), 12, {.seed = 3});
  // Same set of normalized points and coefficients.
  const auto rec = recovery_error(base.points, base.coefficients, other, D);
  EXPECT_LT(rec.max_point_error, 1e-8);
  EXPECT_LT(rec.max_coefficient_error, 1e-8);
}

TEST(Decompose, Errors) {
  const auto F = form_from_points(sample(2, 18, 1), CVector::Ones(18), 9);
  try {
    decompose(F, 18);
    FAIL() << "expected unsupported rank";
  } catch (const waring_error& e) {
    EXPECT_EQ(e.kind(), WaringErrorKind::unsupported_rank);
  }
  // True rank 12, claimed rank 10: the catalecticant spectrum does not break
  // at 10.
  const auto G = form_from_points(sample(2, 12, 2), CVector::Ones(12), 10);
  try {
    decompose(G, 10);
    FAIL() << "expected ambiguous rank";
  } catch (const waring_error& e) {
    EXPECT_EQ(e.kind(), WaringErrorKind::ambiguous_rank);
  }
}

TEST(Hungarian, MatchesBruteForce) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 7;
    Eigen::MatrixXd cost(m, m);
    for (auto& x : cost.reshaped())
      x = u(rng);
    const auto a = hungarian(cost);
    double got = 0;
    for (int i = 0; i < m; ++i)
      got += cost(i, static_cast<Eigen::Index>(a[static_cast<std::size_t>(i)]));
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    double best = 1e300;
    do {
      double s = 0;
      for (int i = 0; i < m; ++i)
        s += cost(i, p[static_cast<std::size_t>(i)]);
      best = std::min(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_NEAR(got, best, 1e-12);
  }
}

TEST(NormalizePoint, Convention) {
  CVector z(3);
  z << 0, cplx(0, 2), 1;
  const auto u = normalize_point(z);
  EXPECT_NEAR(u.norm(), 1.0, 1e-15);
  EXPECT_EQ(u[0], cplx(0));
  EXPECT_NEAR(u[1].imag(), 0.0, 1e-15);
  EXPECT_GT(u[1].real(), 0.0);
  EXPECT_LT(projective_distance(z, u), 1e-12);
}

TEST(WaringJson, FormAndResultRoundTrip) {
  const CMatrix Z = sample(2, 7, 11);
  const auto F = form_from_points(Z, CVector::Ones(7), 6);
  const auto back = form_from_json(json::parse(to_json(F).dump()));
  EXPECT_EQ(back.n, 2);
  EXPECT_EQ(back.D, 6);
  EXPECT_LT((back.coeffs - F.coeffs).norm(), 1e-12 * F.coeffs.norm());

  const auto res = decompose(F, 7);
  const json j = to_json(res);
  std::vector<std::string> keys;
  for (auto it = j["diagnostics"].begin(); it != j["diagnostics"].end(); ++it)
    keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"catalecticant_rank", "kernel_dim", "macaulay_degree",
                                            "cokernel_condition", "eigen_offdiag_max"}));
  const auto r2 = decomposition_from_json(json::parse(j.dump()));
  EXPECT_EQ(to_json(r2), j);

  json bad = to_json(F);
  bad["terms"][0]["exponent"] = {1, 1};
  EXPECT_THROW(form_from_json(bad), std::invalid_argument);
  json sparse = {{"schema_version", 1}, {"n", 1}, {"D", 2},
                 {"terms", {{{"exponent", {1, 1}}, {"re", 2.0}, {"im", 0.0}}}}};
  const auto s = form_from_json(sparse);
  EXPECT_EQ(s.coeffs[1], cplx(2));
  EXPECT_EQ(s.coeffs[0], cplx(0));
}
