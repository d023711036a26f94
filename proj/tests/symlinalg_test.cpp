#include <gtest/gtest.h>

#include <cmath>

#include "hypercone/sampling.hpp"
#include "hypercone/symlinalg.hpp"
#include "test_support.hpp"

namespace hypercone {
namespace {

using testing::diag3;

TEST(SymMatrix, RejectsAsymmetricInputUnlessAsked) {
  MatrixX<double> m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_THROW(SymMatrixd{m}, ArgumentError);
  const SymMatrixd s(m, Symmetry::symmetrize);
  EXPECT_EQ(s(0, 1), 2.5);
  EXPECT_EQ(s(1, 0), 2.5);
}

TEST(SymMatrix, RejectsEmptyAndNonSquare) {
  EXPECT_THROW(SymMatrixd{MatrixX<double>(0, 0)}, ArgumentError);
  EXPECT_THROW(SymMatrixd{MatrixX<double>::Zero(2, 3)}, ArgumentError);
}

TEST(Eigh, Identity) {
  const auto s = eigh(SymMatrixd::identity(3));
  EXPECT_EQ(s.eigenvalues, VectorX<double>::Ones(3));
}

TEST(Eigh, DiagonalIsSortedAscending) {
  const auto s = eigh(SymMatrixd(diag3(3, -1, 2)));
  EXPECT_EQ(s.eigenvalues(0), -1.0);
  EXPECT_EQ(s.eigenvalues(1), 2.0);
  EXPECT_EQ(s.eigenvalues(2), 3.0);
  EXPECT_EQ(s.reconstruct(), diag3(3, -1, 2));
}

TEST(Eigh, SwapMatrix) {
  MatrixX<double> m(2, 2);
  m << 0, 1, 1, 0;
  const auto s = eigh(SymMatrixd(m));
  EXPECT_NEAR(s.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-15);
}

TEST(Eigh, SpectrumInvariantsOnRandomMatrices) {
  const Tolerances tol;
  for (Index n = 1; n <= 12; ++n) {
    for (int t = 0; t < 20; ++t) {
      auto rng = trial_rng(7, static_cast<std::uint64_t>(100 * n + t));
      const SymMatrixd x = random_symmetric_stratified(n, rng);
      const auto s = eigh(x);
      const MatrixX<double> qtq = s.diagonalizer.transpose() * s.diagonalizer;
      EXPECT_LE((qtq - MatrixX<double>::Identity(n, n)).cwiseAbs().maxCoeff(), tol.orthTol);
      EXPECT_LE((s.reconstruct() - x.matrix()).cwiseAbs().maxCoeff(),
                tol.reconTol * (1 + x.max_abs()));
      EXPECT_TRUE(std::is_sorted(s.eigenvalues.data(), s.eigenvalues.data() + n));
      const VectorX<double> ref = testing::reference_eigenvalues(x.matrix());
      EXPECT_LE((s.eigenvalues - ref).cwiseAbs().maxCoeff(), 1e-12 * (1 + x.max_abs()));
    }
  }
}

TEST(Eigh, ReportsNonConvergence) {
  Tolerances tol;
  tol.jacobiSweeps = 0;
  MatrixX<double> m(2, 2);
  m << 1, 1, 1, 2;
  try {
    eigh(SymMatrixd(m), tol);
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    EXPECT_NE(std::string(e.what()).find("0 sweeps"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("||X||_F"), std::string::npos);
  }
}

TEST(Eigh, ZeroMatrix) {
  EXPECT_EQ(eigh(SymMatrixd::zero(4)).eigenvalues, VectorX<double>::Zero(4));
}

TEST(Eigh, WorksInLongDouble) {
  MatrixX<long double> m(2, 2);
  m << 2, 1, 1, 2;
  const auto s = eigh(SymMatrix<long double>(m));
  EXPECT_NEAR(static_cast<double>(s.eigenvalues(0)), 1.0, 1e-18);
  EXPECT_NEAR(static_cast<double>(s.eigenvalues(1)), 3.0, 1e-18);
}

TEST(Spectrum, AbsDescendingSquaresMatch) {
  const auto s = eigh(SymMatrixd(diag3(-3, 1, 2)));
  const VectorX<double> v = s.abs_descending();
  EXPECT_EQ(v, (VectorX<double>{{-3, 2, 1}}));
  const auto s2 = eigh(SymMatrixd(MatrixX<double>(diag3(-3, 1, 2) * diag3(-3, 1, 2))));
  EXPECT_EQ(s2.abs_descending(), v.cwiseAbs2());
}

TEST(ElemSym, Examples) {
  EXPECT_EQ(elem_sym(VectorX<double>{{1, 1, 1}}, 2), 3.0);
  EXPECT_EQ(elem_sym(VectorX<double>{{1, 1, -1}}, 2), -1.0);
  EXPECT_EQ(elem_sym(VectorX<double>{{4, 5}}, 0), 1.0);
  EXPECT_EQ(elem_sym(VectorX<double>(0), 0), 1.0);
}

TEST(ElemSym, OutOfRange) {
  EXPECT_THROW(elem_sym(VectorX<double>{{1, 2}}, 3), ArgumentError);
  EXPECT_THROW(elem_sym(VectorX<double>{{1, 2}}, -1), ArgumentError);
}

TEST(ElemSym, AgreesWithSubsetEnumeration) {
  for (Index n = 1; n <= 8; ++n) {
    for (int t = 0; t < 25; ++t) {
      auto rng = trial_rng(11, static_cast<std::uint64_t>(n * 100 + t));
      const VectorX<double> x = random_vector_stratified(n, rng);
      const VectorX<double> all = elem_sym_all(x);
      for (Index k = 0; k <= n; ++k) {
        const double ref = testing::elem_sym_bruteforce(x, k);
        EXPECT_NEAR(elem_sym(x, k), ref, 1e-12 * (1 + std::abs(ref)));
        EXPECT_EQ(all(k), elem_sym(x, k));
      }
    }
  }
}

TEST(BigE, Examples) {
  for (Index n = 1; n <= 6; ++n)
    for (Index k = 0; k <= n; ++k)
      EXPECT_EQ(big_E(SymMatrixd::identity(n), k), testing::binomial(n, k));
  EXPECT_EQ(big_E(SymMatrixd(diag3(1, 1, -1)), 2), -1.0);
  auto rng = trial_rng(3, 0);
  const SymMatrixd x = random_symmetric(5, rng);
  EXPECT_NEAR(big_E(x, 5), x.matrix().determinant(), 1e-10 * (1 + std::abs(x.matrix().determinant())));
  EXPECT_THROW(big_E(x, 6), ArgumentError);
}

TEST(CharPoly, Examples) {
  auto poly = [](std::initializer_list<double> mu) {
    Spectrum<double> s{VectorX<double>(static_cast<Index>(mu.size())), {}};
    Index i = 0;
    for (double m : mu) s.eigenvalues(i++) = m;
    return char_poly(s).coeffs();
  };
  EXPECT_EQ(poly({1, 1}), (VectorX<double>{{1, -2, 1}}));
  EXPECT_EQ(poly({-1, 1, 1}), (VectorX<double>{{1, -1, -1, 1}}));
  EXPECT_EQ(poly({0, 0, 0, 0}), (VectorX<double>{{0, 0, 0, 0, 1}}));
}

TEST(CharPoly, SignRuleAgainstExpansion) {
  for (Index n = 1; n <= 8; ++n) {
    auto rng = trial_rng(5, static_cast<std::uint64_t>(n));
    const auto spec = eigh(random_symmetric_stratified(n, rng));
    const VectorX<double> c = char_poly(spec).coeffs();
    const VectorX<double> ref = testing::expand_roots(
        std::vector<double>(spec.eigenvalues.data(), spec.eigenvalues.data() + n));
    for (Index k = 0; k <= n; ++k) {
      const double ek = elem_sym(spec.eigenvalues, k);
      EXPECT_NEAR(c(n - k), (k % 2 ? -ek : ek), 1e-10 * (1 + std::abs(ek)));
      EXPECT_NEAR(c(n - k), ref(n - k), 1e-10 * (1 + std::abs(ref(n - k))));
    }
  }
}

TEST(PolyDerivative, Examples) {
  const MonicPoly<double> p(VectorX<double>{{-1, 0, 1}});
  EXPECT_EQ(poly_derivative(p, 1).coeffs(), (VectorX<double>{{0, 1}}));

  const MonicPoly<double> cubic(VectorX<double>{{1, -1, -1, 1}});
  const auto d = poly_derivative(cubic, 1);
  EXPECT_NEAR(d.coeff(0), -1.0 / 3.0, 1e-16);
  EXPECT_NEAR(d.coeff(1), -2.0 / 3.0, 1e-16);
  EXPECT_EQ(d.coeff(2), 1.0);
  EXPECT_NEAR(d(1.0), 0.0, 1e-15);
  EXPECT_NEAR(d(-1.0 / 3.0), 0.0, 1e-15);

  EXPECT_EQ(poly_derivative(cubic, 3).coeffs(), (VectorX<double>{{1}}));
  EXPECT_EQ(poly_derivative(cubic, 0).coeffs(), cubic.coeffs());
  EXPECT_THROW(poly_derivative(cubic, 4), ArgumentError);
}

TEST(MonicPoly, RequiresUnitLeadingCoefficient) {
  EXPECT_THROW(MonicPoly<double>(VectorX<double>{{1, 2}}), ArgumentError);
  EXPECT_THROW(MonicPoly<double>(VectorX<double>(0)), ArgumentError);
}

TEST(RealRootsInterlaced, Examples) {
  const MonicPoly<double> t(VectorX<double>{{0, 1}});
  const auto r1 = real_roots_interlaced(t, {-1.0, 1.0});
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1[0], 0.0, 1e-11);

  const MonicPoly<double> q(VectorX<double>{{-1.0 / 3.0, -2.0 / 3.0, 1}});
  const auto r2 = real_roots_interlaced(q, {-1.0, 1.0, 1.0});
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0], -1.0 / 3.0, 1e-11);
  EXPECT_EQ(r2[1], 1.0);

  const MonicPoly<double> t2(VectorX<double>{{0, 0, 1}});
  const auto r3 = real_roots_interlaced(t2, {0.0, 0.0, 0.0});
  EXPECT_EQ(r3, (std::vector<double>{0.0, 0.0}));
}

TEST(RealRootsInterlaced, InconsistentParentRoots) {
  const MonicPoly<double> t(VectorX<double>{{0, 1}});
  EXPECT_THROW(real_roots_interlaced(t, {1.0, 2.0}), NumericalFailure);
  EXPECT_THROW(real_roots_interlaced(t, {1.0, 2.0, 3.0}), ArgumentError);
  EXPECT_THROW(real_roots_interlaced(t, {2.0, 1.0}), ArgumentError);
}

TEST(RealRootsInterlaced, ResidualAndInterlacingOnRandomSpectra) {
  const Tolerances tol;
  for (Index n = 2; n <= 9; ++n) {
    for (int t = 0; t < 30; ++t) {
      auto rng = trial_rng(13, static_cast<std::uint64_t>(n * 1000 + t));
      const auto spec = eigh(random_symmetric_stratified(n, rng));
      std::vector<double> parent(spec.eigenvalues.data(), spec.eigenvalues.data() + n);
      MonicPoly<double> p = char_poly(spec);
      for (Index k = 1; k < n; ++k) {
        p = poly_derivative(p, 1);
        const auto roots = real_roots_interlaced(p, parent);
        ASSERT_EQ(static_cast<Index>(roots.size()), n - k);
        const double cmax = p.coeffs().cwiseAbs().maxCoeff();
        for (std::size_t i = 0; i < roots.size(); ++i) {
          EXPECT_LE(std::abs(p(roots[i])), 1e-8 * (1 + cmax));
          const double slack = tol.rootTol * (1 + std::abs(parent[i]) + std::abs(parent[i + 1]));
          EXPECT_GE(roots[i], parent[i] - slack);
          EXPECT_LE(roots[i], parent[i + 1] + slack);
        }
        // independent route: companion matrix eigenvalues
        const auto ref = testing::companion_roots(p.coeffs());
        for (std::size_t i = 0; i < roots.size(); ++i)
          EXPECT_NEAR(roots[i], ref[i], 1e-6 * (1 + std::abs(ref[i])));
        parent = roots;
      }
    }
  }
}

TEST(RealRootsInterlaced, RepeatedRootsThroughAllStages) {
  // diag(1,1,1,-1): the triple eigenvalue survives as a root of every derivative
  // up to order 2.
  const auto roots1 = derivative_roots(VectorX<double>{{1, 1, 1, -1}}, 1);
  ASSERT_EQ(roots1.size(), 3u);
  EXPECT_NEAR(roots1[0], -0.5, 1e-11);  // (t-1)^2 (4t+2) / 4
  EXPECT_EQ(roots1[1], 1.0);
  EXPECT_EQ(roots1[2], 1.0);
  const auto roots2 = derivative_roots(VectorX<double>{{1, 1, 1, -1}}, 2);
  ASSERT_EQ(roots2.size(), 2u);
  EXPECT_NEAR(roots2[0], 0.0, 1e-11);  // (t-1)(12t)/12
  EXPECT_NEAR(roots2[1], 1.0, 1e-11);
}

TEST(InvSqrt, Examples) {
  for (Index n = 1; n <= 4; ++n)
    EXPECT_EQ(inv_sqrt(SymMatrixd::identity(n)).matrix(), MatrixX<double>::Identity(n, n));
  const auto d = inv_sqrt(SymMatrixd::diagonal(VectorX<double>{{4, 9}}));
  EXPECT_NEAR(d(0, 0), 0.5, 1e-16);
  EXPECT_NEAR(d(1, 1), 1.0 / 3.0, 1e-16);
  EXPECT_EQ(d(0, 1), 0.0);
}

TEST(InvSqrt, DefiningPropertyOnRandomPd) {
  for (Index n = 1; n <= 7; ++n) {
    auto rng = trial_rng(17, static_cast<std::uint64_t>(n));
    const MatrixX<double> g = gaussian_matrix(n, n, rng);
    const SymMatrixd x(MatrixX<double>(g * g.transpose() + MatrixX<double>::Identity(n, n)),
                       Symmetry::symmetrize);
    const auto w = inv_sqrt(x);
    EXPECT_LE((w.matrix() * x.matrix() * w.matrix() - MatrixX<double>::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
  }
}

TEST(InvSqrt, RejectsIndefinite) {
  try {
    inv_sqrt(SymMatrixd(diag3(1, -2, 3)));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.min_eigenvalue(), -2.0);
  }
  EXPECT_THROW(inv_sqrt(SymMatrixd(diag3(1, 0, 3))), NotPositiveDefinite);
}

}  // namespace
}  // namespace hypercone
