#include <gtest/gtest.h>

#include <deque>
#include <set>
#include <unordered_set>

#include "gelfand/errors.hpp"
#include "gelfand/shalika.hpp"
#include "test_util.hpp"

using namespace gelfand::shalika;
using gelfand::BudgetExceeded;
using gelfand::ConfigError;
using gelfand::DimensionError;
using gelfand::MembershipError;
using gelfand::Rng;
using gelfand::matrix::IndexSet;
using gelfand::matrix::MatHash;
using gelfand::testing::from_rows;
namespace mx = gelfand::matrix;

namespace {

std::vector<std::pair<int, int>> small_shapes() {
  return {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {1, 3}, {2, 2}};
}

template <class E, class H, class Mul>
std::size_t closure_size(const std::vector<E>& gens, E identity, Mul mul) {
  std::unordered_set<E, H> seen{identity};
  std::deque<E> queue{identity};
  while (!queue.empty()) {
    const E x = queue.front();
    queue.pop_front();
    for (const E& g : gens) {
      E y = mul(x, g);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen.size();
}

}  // namespace

TEST(HMembership, Examples) {
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 2);
  const auto d = ctx.h_decompose(Mat::identity(3));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->g, Mat::identity(1));
  EXPECT_TRUE(mx::is_zero(d->u) && mx::is_zero(d->a) && mx::is_zero(d->b));
  EXPECT_EQ(d->k, Mat::identity(1));
  const ShalikaContext c11(F, 1, 1);
  for (int u = 0; u < 3; ++u) EXPECT_TRUE(c11.h_contains(from_rows(F, {{1, u}, {0, 1}})));
  EXPECT_FALSE(c11.h_contains(from_rows(F, {{1, 0}, {0, 2}})));
  EXPECT_FALSE(c11.h_contains(from_rows(F, {{1, 0}, {1, 1}})));
  EXPECT_THROW(c11.h_decompose(Mat::identity(3)), DimensionError);
}

TEST(HMembership, ContextValidation) {
  const Field F = Field::make(2, 1);
  EXPECT_THROW(ShalikaContext(F, 2, 1), ConfigError);
  EXPECT_THROW(ShalikaContext(F, 1, 1, Twist{0, 0, 0}), ConfigError);
  EXPECT_THROW(ShalikaContext(F, 4, 5), ConfigError);
}

TEST(HEnumeration, OrderMatchesBruteForceFilterOfG) {
  for (int q : {2, 3}) {
    const Field F = Field::make(q, 1);
    for (auto [n, m] : small_shapes()) {
      if (mx::gl_order(q, n + m) > 30000) continue;
      const ShalikaContext ctx(F, n, m);
      std::uint64_t count = 0;
      for (const Mat& g : mx::gl_elements(F, n + m, 100000)) count += ctx.h_contains(g);
      EXPECT_EQ(count, ctx.h_order()) << n << "," << m << " q=" << q;
      const auto hs = ctx.h_elements(1000000);
      EXPECT_EQ(hs.size(), count);
      EXPECT_EQ(std::set<Mat>(hs.begin(), hs.end()).size(), hs.size());
      for (const Mat& h : hs) {
        EXPECT_TRUE(ctx.h_contains(h));
        EXPECT_TRUE(ctx.hprime_contains(ctx.tau(h)));
      }
    }
  }
  const Field F2 = Field::make(2, 1);
  EXPECT_EQ(ShalikaContext(F2, 1, 2).h_order(), 8u);
}

TEST(HEnumeration, SmallestCase) {
  const Field F = Field::make(2, 1);
  const ShalikaContext ctx(F, 1, 1);
  const auto hs = ctx.h_elements(10);
  ASSERT_EQ(hs.size(), 2u);
  EXPECT_EQ(hs[0], Mat::identity(2));
  EXPECT_EQ(hs[1], from_rows(F, {{1, 1}, {0, 1}}));
  EXPECT_THROW(ctx.h_elements(1), BudgetExceeded);
}

TEST(HEnumeration, OrderIsLexicographicInBlocks) {
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 2);
  const auto hs = ctx.h_elements(100000);
  for (std::size_t i = 1; i < hs.size(); ++i) {
    const auto a = *ctx.h_decompose(hs[i - 1]), b = *ctx.h_decompose(hs[i]);
    const auto ka = std::tie(a.g, a.k, a.u, a.a, a.b);
    const auto kb = std::tie(b.g, b.k, b.u, b.a, b.b);
    EXPECT_LT(ka, kb);
  }
}

TEST(HGenerators, GenerateHAndHPrime) {
  for (int q : {2, 3, 4}) {
    const Field F = Field::parse(std::to_string(q));
    for (auto [n, m] : small_shapes()) {
      const ShalikaContext ctx(F, n, m);
      if (ctx.h_order() > 50000) continue;
      auto mul = [&](const Mat& x, const Mat& y) { return mx::mul(F, x, y); };
      for (const Mat& g : ctx.h_generators()) EXPECT_TRUE(ctx.h_contains(g));
      for (const Mat& g : ctx.hprime_generators()) EXPECT_TRUE(ctx.hprime_contains(g));
      EXPECT_EQ((closure_size<Mat, MatHash>(ctx.h_generators(), Mat::identity(n + m), mul)),
                ctx.h_order());
      EXPECT_EQ(
          (closure_size<Mat, MatHash>(ctx.hprime_generators(), Mat::identity(n + m), mul)),
          ctx.h_order());
    }
  }
}

TEST(HGenerators, GLGeneratorsGenerate) {
  for (int q : {2, 3, 4, 5}) {
    const Field F = Field::parse(std::to_string(q));
    for (int k = 0; k <= 3; ++k) {
      if (mx::gl_order(q, k) > 200000) continue;
      auto mul = [&](const Mat& x, const Mat& y) { return mx::mul(F, x, y); };
      EXPECT_EQ((closure_size<Mat, MatHash>(gl_generators(F, k), Mat::identity(k), mul)),
                mx::gl_order(q, k));
    }
  }
}

TEST(HGroup, ClosedUnderProductAndInverse) {
  for (int q : {2, 3}) {
    const Field F = Field::make(q, 1);
    Rng rng(q);
    for (auto [n, m] : small_shapes()) {
      const ShalikaContext ctx(F, n, m);
      for (int it = 0; it < 200; ++it) {
        const Mat x = ctx.random_h(rng), y = ctx.random_h(rng);
        EXPECT_TRUE(ctx.h_contains(mx::mul(F, x, y)));
        EXPECT_TRUE(ctx.h_contains(mx::inverse(F, x)));
      }
    }
  }
}

TEST(Psi, Examples) {
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 1);
  EXPECT_TRUE(ctx.psi(Mat::identity(2)).is_one());
  EXPECT_EQ(ctx.psi(from_rows(F, {{1, 2}, {0, 1}})).to_string(), "2/3");
  const ShalikaContext tw(F, 1, 1, Twist{1, 0, 1});
  EXPECT_EQ(tw.psi(from_rows(F, {{2, 0}, {0, 2}})).to_string(), "1/2");
  EXPECT_TRUE(tw.psi_u(from_rows(F, {{2, 0}, {0, 2}})).is_one());
  EXPECT_THROW(ctx.psi(from_rows(F, {{1, 0}, {1, 1}})), MembershipError);
}

TEST(Psi, UsesInverseOfLeviBlockInTrace) {
  // h = diag(g, g) [[1, u'], [0, 1]] has u-block g u'; psi sees tr(u').
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 1);
  const Mat h = from_rows(F, {{2, 2}, {0, 2}});  // g = 2, u' = 1
  EXPECT_EQ(ctx.psi_u(h).to_string(), "1/3");
}

TEST(Psi, HomomorphismOnAllPairsOfTinyGroups) {
  for (int q : {2, 3}) {
    const Field F = Field::make(q, 1);
    for (auto [n, m] : small_shapes()) {
      const ShalikaContext base(F, n, m);
      if (base.h_order() > 400) continue;
      const auto hs = base.h_elements(400);
      for (const Twist& t : base.effective_twists()) {
        const ShalikaContext ctx = base.with_twist(t);
        for (const Mat& x : hs)
          for (const Mat& y : hs) {
            const Mat xy = mx::mul(F, x, y);
            ASSERT_EQ(ctx.psi(xy), ctx.psi(x) * ctx.psi(y));
            ASSERT_EQ(ctx.psi_u(xy), ctx.psi_u(x) * ctx.psi_u(y));
            const Mat px = ctx.tau(x), py = ctx.tau(y);
            ASSERT_EQ(ctx.psi_tau(mx::mul(F, px, py)), ctx.psi_tau(px) * ctx.psi_tau(py));
          }
      }
    }
  }
}

TEST(Psi, HomomorphismOnRandomPairsOverExtensionFields) {
  for (int q : {4, 8, 9}) {
    const Field F = Field::parse(std::to_string(q));
    Rng rng(40 + q);
    for (auto [n, m] : small_shapes()) {
      const ShalikaContext ctx(F, n, m, Twist{1, q - 2, q - 1});
      for (int it = 0; it < 100; ++it) {
        const Mat x = ctx.random_h(rng), y = ctx.random_h(rng);
        EXPECT_EQ(ctx.psi(mx::mul(F, x, y)), ctx.psi(x) * ctx.psi(y));
      }
    }
  }
}

TEST(Psi, PsiUAgreesWithPsiWhenUntwisted) {
  const Field F = Field::make(3, 1);
  Rng rng(5);
  for (auto [n, m] : small_shapes()) {
    for (int c = 1; c < 3; ++c) {
      const ShalikaContext ctx(F, n, m, Twist{0, 0, c});
      for (int it = 0; it < 100; ++it) {
        const Mat h = ctx.random_h(rng);
        EXPECT_EQ(ctx.psi(h), ctx.psi_u(h));
      }
    }
  }
}

TEST(Psi, CharDataIsAdditive) {
  const Field F = Field::make(3, 1);
  Rng rng(6);
  const ShalikaContext ctx(F, 1, 3);
  for (int it = 0; it < 300; ++it) {
    const Mat x = ctx.random_h(rng), y = ctx.random_h(rng);
    EXPECT_EQ(ctx.char_data(mx::mul(F, x, y)),
              ctx.combine(ctx.char_data(x), ctx.char_data(y)));
    EXPECT_EQ(ctx.char_data(mx::inverse(F, x)), ctx.invert(ctx.char_data(x)));
  }
}

TEST(PsiTau, Examples) {
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 2, Twist{1, 1, 2});
  Rng rng(7);
  EXPECT_TRUE(ctx.psi_tau(Mat::identity(3)).is_one());
  for (int it = 0; it < 100; ++it) {
    const Mat h = ctx.random_h(rng);
    EXPECT_EQ(ctx.psi_tau(ctx.tau(h)), ctx.psi(h));
  }
  EXPECT_THROW(ctx.psi_tau(from_rows(F, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})),
               MembershipError);
}

TEST(ActionCharacter, Examples) {
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 2, Twist{1, 0, 1});
  Rng rng(8);
  EXPECT_TRUE(ctx.action_character(Mat::identity(3), Mat::identity(3), Flavor::kPsi).is_one());
  for (int it = 0; it < 200; ++it) {
    const Mat h = ctx.random_h(rng);
    EXPECT_TRUE(ctx.action_character(ctx.tau(h), h, Flavor::kPsi).is_one());
    const Mat h1 = ctx.random_hprime(rng), h2 = ctx.random_h(rng);
    for (Flavor f : {Flavor::kPsi, Flavor::kPsiU})
      EXPECT_EQ(ctx.action_character(h1, h2, f),
                ctx.character(ctx.tau(h1), f) * ctx.character(h2, f).inverse());
  }
  EXPECT_THROW(ctx.action_character(Mat::identity(3), ctx.tau(from_rows(F, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})), Flavor::kPsi),
               MembershipError);
}

TEST(EffectiveTwists, Counts) {
  const Field F = Field::make(3, 1);
  EXPECT_EQ(ShalikaContext(F, 0, 2).effective_twists().size(), 2u);  // a2 only
  EXPECT_EQ(ShalikaContext(F, 1, 1).effective_twists().size(), 4u);  // a1, c
  EXPECT_EQ(ShalikaContext(F, 1, 2).effective_twists().size(), 8u);
  EXPECT_EQ(ShalikaContext(Field::make(2, 1), 1, 2).effective_twists().size(), 1u);
}

TEST(WeldCharacter, ShalikaBlocksWeldIntoShalika) {
  // S = S0 u (S0 + n) u (Sbar + 2n), h = h1 (+)_{S,S} h2.
  for (int q : {2, 3}) {
    const Field F = Field::make(q, 1);
    Rng rng(50 + q);
    int checked = 0;
    for (int it = 0; it < 1500; ++it) {
      const int n = 1 + rng.uniform_int(2);
      const int m = n + rng.uniform_int(3);
      std::vector<int> s0, sbar;
      for (int i = 1; i <= n; ++i)
        if (rng.coin()) s0.push_back(i);
      for (int i = 1; i <= m - n; ++i)
        if (rng.coin()) sbar.push_back(i);
      std::vector<int> s;
      for (int x : s0) s.push_back(x);
      for (int x : s0) s.push_back(x + n);
      for (int x : sbar) s.push_back(x + 2 * n);
      const IndexSet S(n + m, s);
      // Reversal on [2n] gives the index set for the H' version.
      std::vector<int> sp;
      for (int x : s) sp.push_back(x <= 2 * n ? 2 * n + 1 - x : x);
      const IndexSet Sp(n + m, sp);
      const int n1 = static_cast<int>(s0.size()), m1 = n1 + static_cast<int>(sbar.size());
      const Twist t{rng.uniform_int(q - 1), rng.uniform_int(q - 1), 1 + rng.uniform_int(q - 1)};
      const ShalikaContext big(F, n, m, t), c1(F, n1, m1, t), c2(F, n - n1, m - m1, t);
      const Mat h1 = c1.random_h(rng), h2 = c2.random_h(rng);
      const Mat h = mx::weld(S, S, h1, h2);
      ASSERT_TRUE(big.h_contains(h));
      EXPECT_EQ(big.psi(h), c1.psi(h1) * c2.psi(h2));
      EXPECT_EQ(big.psi_u(h), c1.psi_u(h1) * c2.psi_u(h2));
      const Mat p1 = c1.tau(h1), p2 = c2.tau(h2);
      const Mat hp = mx::weld(Sp, Sp, p1, p2);
      ASSERT_TRUE(big.hprime_contains(hp));
      EXPECT_EQ(big.psi_tau(hp), c1.psi_tau(p1) * c2.psi_tau(p2));
      ++checked;
    }
    EXPECT_GE(checked, 1000);
  }
}

TEST(GkConditions, ConjugatorsAtIdentity) {
  const Field F = Field::make(3, 1);
  const ShalikaContext ctx(F, 1, 2);
  const auto [a, b] = gk_conjugators(ctx);
  EXPECT_EQ(mx::mul(F, mx::mul(F, a, Mat::identity(3)), mx::inverse(F, a)), Mat::identity(3));
  EXPECT_EQ(a, mx::block_diag({mx::w(2), Mat::identity(1)}));
  EXPECT_EQ(b, from_rows(F, {{1, 0, 0}, {0, 2, 0}, {0, 0, 1}}));
}

TEST(GkConditions, ExhaustiveSmallCases) {
  const Field F = Field::make(2, 1);
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}}) {
    const ShalikaContext ctx(F, n, m);
    std::vector<Mat> hps;
    for (const Mat& h : ctx.h_elements(1000)) hps.push_back(ctx.tau(h));
    const auto gs = mx::gl_elements(F, n + m, 1000);
    const GkReport r = verify_gk_conditions(ctx, gs, hps);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked_g, n + m == 2 ? 6u : 168u);
  }
}

TEST(GkConditions, AllTwistsOverF3) {
  const Field F = Field::make(3, 1);
  Rng rng(9);
  for (auto [n, m] : small_shapes()) {
    const ShalikaContext base(F, n, m);
    for (const Twist& t : base.effective_twists()) {
      const ShalikaContext ctx = base.with_twist(t);
      std::vector<Mat> gs, hps;
      for (int it = 0; it < 200; ++it) {
        gs.push_back(mx::random_gl(F, n + m, rng));
        hps.push_back(ctx.random_hprime(rng));
      }
      EXPECT_TRUE(verify_gk_conditions(ctx, gs, hps).ok()) << to_string(t);
    }
  }
}

TEST(GkConditions, CharacterConditionNeedsQuadraticLeviTwist) {
  // b tau(h'^{-1}) b^{-1} = b h^{-1} b^{-1} with h = tau(h'), so the Levi
  // factor of psi is inverted: equality needs psi_1^2 = psi_2^2 = 1. Over F_4
  // with a1 = 1 the condition fails while the psi_0 part still matches.
  const Field F = Field::make(2, 2);
  const ShalikaContext ctx(F, 1, 1, Twist{1, 0, 1});
  const Mat g = mx::scalar(1, F.generator());
  const Mat h = mx::block_diag({g, g});
  const GkReport r = verify_gk_conditions(ctx, {}, {ctx.tau(h)});
  EXPECT_EQ(r.membership_failures, 0u);
  EXPECT_EQ(r.character_failures, 1u);
  const ShalikaContext untwisted(F, 1, 1, Twist{0, 0, 1});
  Rng rng(10);
  std::vector<Mat> hps;
  for (int it = 0; it < 200; ++it) hps.push_back(untwisted.random_hprime(rng));
  EXPECT_TRUE(verify_gk_conditions(untwisted, {}, hps).ok());
}

TEST(DeltaP, Examples) {
  const Field F = Field::make(3, 1);
  const DeltaPContext ctx(F, 1, 1);
  EXPECT_TRUE(ctx.contains(ctx.identity()));
  EXPECT_TRUE(ctx.chi(ctx.identity()).is_one());
  EXPECT_EQ(ctx.order(), 12u);
  const auto els = ctx.elements(100);
  EXPECT_EQ(els.size(), 12u);
  for (const auto& x : els) EXPECT_TRUE(ctx.chi(x).is_one());
  EXPECT_FALSE(ctx.contains(MatPair{Mat::identity(1), from_rows(F, {{2, 0}, {0, 1}})}));
  EXPECT_FALSE(ctx.contains(MatPair{Mat::identity(1), from_rows(F, {{1, 0}, {1, 1}})}));
  EXPECT_THROW(ctx.contains(MatPair{Mat::identity(2), Mat::identity(2)}), DimensionError);
  EXPECT_THROW(ctx.chi(MatPair{Mat::identity(1), from_rows(F, {{2, 0}, {0, 1}})}),
               MembershipError);
}

TEST(DeltaP, OrderMatchesBruteForceFilter) {
  for (int q : {2, 3}) {
    const Field F = Field::make(q, 1);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
      const DeltaPContext ctx(F, n, m);
      if (ctx.ambient_order() > 600000) continue;
      std::uint64_t count = 0;
      for (const auto& x : ctx.ambient_elements(600000)) count += ctx.contains(x);
      EXPECT_EQ(count, ctx.order());
      const auto els = ctx.elements(100000);
      EXPECT_EQ(els.size(), count);
      auto mul = [&](const MatPair& x, const MatPair& y) { return ctx.mul(x, y); };
      EXPECT_EQ((closure_size<MatPair, MatPairHash>(ctx.generators(), ctx.identity(), mul)),
                ctx.order());
    }
  }
}

TEST(DeltaP, ChiHomomorphismAndUnipotentTriviality) {
  const Field F = Field::make(3, 1);
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) {
        const DeltaPContext ctx(F, n, m, Chi{x1, x2});
        Rng rng(100 * n + 10 * m + 2 * x1 + x2);
        for (int it = 0; it < 200; ++it) {
          const MatPair x = ctx.random_element(rng), y = ctx.random_element(rng);
          EXPECT_EQ(ctx.chi(ctx.mul(x, y)), ctx.chi(x) * ctx.chi(y));
        }
        for (const auto& u : ctx.elements(100000)) {
          if (u.first != Mat::identity(n)) continue;
          if (mx::extract(u.second, n, n, m, m) != Mat::identity(m)) continue;
          EXPECT_TRUE(ctx.chi(u).is_one());
        }
      }
  }
}

TEST(DeltaP, DeterminantFamilyCoverage) {
  // GL_2(F_2) = S_3 has the sign character, which no determinant sees.
  const Field F2 = Field::make(2, 1), F3 = Field::make(3, 1);
  EXPECT_EQ(gl_abelianization_order(F2, 2, 1000), 2u);
  EXPECT_EQ(gl_abelianization_order(F2, 3, 1000), 1u);
  EXPECT_EQ(gl_abelianization_order(F3, 2, 1000), 2u);
  EXPECT_EQ(gl_abelianization_order(F3, 1, 1000), 2u);
  EXPECT_TRUE(deltap_det_family_exhaustive(DeltaPContext(F2, 1, 1), 1000));
  EXPECT_FALSE(deltap_det_family_exhaustive(DeltaPContext(F2, 1, 2), 1000));
  EXPECT_TRUE(deltap_det_family_exhaustive(DeltaPContext(F3, 1, 2), 1000));
}
