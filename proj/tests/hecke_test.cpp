#include <gtest/gtest.h>

#include <map>

#include "gelfand/errors.hpp"
#include "gelfand/hecke_impl.hpp"

using namespace gelfand::hecke;
using gelfand::BudgetExceeded;
using gelfand::ConfigError;
using gelfand::DomainError;
using gelfand::shalika::Chi;
using gelfand::shalika::Twist;
namespace mx = gelfand::matrix;

namespace {

Field fq(int q) { return Field::parse(std::to_string(q)); }

ShalikaModel shalika(int q, int n, int m, Twist t = {}) {
  return ShalikaModel(ShalikaContext(fq(q), n, m, t));
}

DeltaPModel deltap(int q, int n, int m, Chi chi = {}) {
  return DeltaPModel(DeltaPContext(fq(q), n, m, chi));
}

// GL_k(F_q) with the trivial subgroup: the Hecke algebra is the group algebra.
class GroupAlgebraModel {
 public:
  using Elem = Mat;
  using Hash = mx::MatHash;
  GroupAlgebraModel(Field F, int k) : F_(std::move(F)), k_(k) {}
  const Field& field() const { return F_; }
  std::uint64_t group_order() const { return mx::gl_order(F_.q(), k_); }
  std::vector<Mat> group_elements(std::uint64_t budget) const { return mx::gl_elements(F_, k_, budget); }
  std::vector<Mat> subgroup_elements(std::uint64_t) const { return {Mat::identity(k_)}; }
  std::vector<Mat> generators() const { return {}; }
  Mat mul(const Mat& a, const Mat& b) const { return mx::mul(F_, a, b); }
  Mat inverse(const Mat& a) const { return mx::inverse(F_, a); }
  int character_exponent(const Mat&, int) const { return 0; }
  std::string format(const Mat& x) const { return mx::format(F_, x); }

 private:
  Field F_;
  int k_;
};

// Bi-equivariant basis functions straight from the definition: f_g(h g h')
// = psi(h) psi(h') over all pairs, or nullopt when two pairs disagree.
template <class Model>
struct BruteBasis {
  std::vector<typename Model::Elem> reps;
  std::vector<std::map<typename Model::Elem, int>> values;  // exponent of zeta_N
};

template <class Model>
BruteBasis<Model> brute_basis(const Model& model, int N) {
  using Elem = typename Model::Elem;
  auto gs = model.group_elements(1 << 20);
  std::sort(gs.begin(), gs.end());
  const auto hs = model.subgroup_elements(1 << 20);
  std::vector<int> he;
  for (const Elem& h : hs) he.push_back(model.character_exponent(h, N));
  std::map<Elem, bool> seen;
  BruteBasis<Model> out;
  for (const Elem& g : gs) {
    if (seen.count(g)) continue;
    std::map<Elem, int> f;
    bool ok = true;
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = 0; j < hs.size(); ++j) {
        const Elem x = model.mul(model.mul(hs[i], g), hs[j]);
        seen[x] = true;
        const int e = (he[i] + he[j]) % N;
        const auto [it, fresh] = f.emplace(x, e);
        if (!fresh && it->second != e) ok = false;
      }
    if (!ok) continue;
    out.reps.push_back(g);
    out.values.push_back(std::move(f));
  }
  return out;
}

// (f_i * f_j)(g_k) = sum_x f_i(x) f_j(x^{-1} g_k) in Z[zeta_N].
template <class Model>
Cyclotomic brute_convolution(const Model& model, const BruteBasis<Model>& b, int N, std::size_t i,
                             std::size_t j, std::size_t k) {
  Cyclotomic sum = Cyclotomic::zero(N);
  for (const auto& [x, ex] : b.values[i]) {
    const auto it = b.values[j].find(model.mul(model.inverse(x), b.reps[k]));
    if (it != b.values[j].end()) sum += Cyclotomic::root(N, ex + it->second);
  }
  return sum;
}

template <class Model>
void expect_matches_brute_force(const Model& model) {
  const int N = conductor(model.field());
  const HeckeGeometry<Model> geo(model, 100000);
  const Compatibility comp = compatibility(geo, model, N);
  const HeckeAlgebra alg = build_algebra(geo, comp, N);
  const BruteBasis<Model> b = brute_basis(model, N);
  ASSERT_EQ(alg.dim, b.reps.size());
  for (std::size_t i = 0; i < alg.dim; ++i) ASSERT_EQ(geo.element(alg.reps[i]), b.reps[i]);
  for (std::size_t i = 0; i < alg.dim; ++i)
    for (std::size_t j = 0; j < alg.dim; ++j)
      for (std::size_t k = 0; k < alg.dim; ++k)
        EXPECT_EQ(alg.at(i, j, k), brute_convolution(model, b, N, i, j, k))
            << i << "," << j << "," << k;
}

// dim of the bi-equivariant functions as the trace of the averaging
// projector: |H|^{-2} sum_{h1,h2} psi(h1) psi(h2) #{x : h1 x h2 = x}.
template <class Model>
Cyclotomic projector_trace_times_h2(const Model& model, int N) {
  const auto gs = model.group_elements(1 << 20);
  const auto hs = model.subgroup_elements(1 << 20);
  std::vector<std::int64_t> counts(N, 0);
  for (const auto& h1 : hs)
    for (const auto& h2 : hs) {
      const int e = (model.character_exponent(h1, N) + model.character_exponent(h2, N)) % N;
      for (const auto& x : gs)
        if (model.mul(model.mul(h1, x), h2) == x) ++counts[e];
    }
  return Cyclotomic::from_exponent_counts(N, counts);
}

}  // namespace

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(2), (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
  EXPECT_THROW(cyclotomic_polynomial(0), ConfigError);
  EXPECT_THROW(cyclotomic_polynomial(65), ConfigError);
}

TEST(Cyclotomic, Degrees) {
  // deg Phi_N = phi(N), by counting units.
  for (int N = 1; N <= kMaxConductor; ++N) {
    int phi = 0;
    for (int a = 1; a <= N; ++a) phi += std::gcd(a, N) == 1;
    EXPECT_EQ(static_cast<int>(cyclotomic_polynomial(N).size()) - 1, phi) << N;
  }
}

TEST(Cyclotomic, Embedding) {
  const auto half = gelfand::ff::UnityRoot::from_fraction(1, 2);
  EXPECT_EQ(Cyclotomic::embed(half, 6).coeffs(), (std::vector<std::int64_t>{-1, 0}));
  EXPECT_EQ(Cyclotomic::embed(half, 6), Cyclotomic::root(6, 3));
  EXPECT_THROW(Cyclotomic::embed(gelfand::ff::UnityRoot::from_fraction(1, 4), 6), DomainError);
}

TEST(Cyclotomic, Arithmetic) {
  // 1 + zeta_3 + zeta_3^2 = 0 and zeta_6^2 - zeta_6 + 1 = 0.
  EXPECT_TRUE((Cyclotomic::one(3) + Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2)).is_zero());
  EXPECT_TRUE((Cyclotomic::root(6, 2) - Cyclotomic::root(6, 1) + Cyclotomic::one(6)).is_zero());
  for (int N : {1, 2, 6, 14, 24})
    for (int a = -N; a < 2 * N; ++a)
      for (int b = 0; b < N; ++b)
        EXPECT_EQ(Cyclotomic::root(N, a) * Cyclotomic::root(N, b), Cyclotomic::root(N, a + b));
  EXPECT_THROW(Cyclotomic::one(2) + Cyclotomic::one(3), DomainError);
  EXPECT_EQ(Cyclotomic::zero(6).to_string(), "0");
  EXPECT_EQ((Cyclotomic::root(6, 1) * Cyclotomic::root(6, 0) + Cyclotomic::root(6, 1)).to_string(),
            "2*z");
  EXPECT_EQ(Cyclotomic::root(6, 3).to_string(), "-1");
}

TEST(Cyclotomic, ExponentCounts) {
  // sum over all of mu_N vanishes for N > 1.
  for (int N : {2, 6, 14, 24}) {
    EXPECT_TRUE(Cyclotomic::from_exponent_counts(N, std::vector<std::int64_t>(N, 5)).is_zero());
    std::vector<std::int64_t> c(2 * N, 0);
    c[N + 1] = 3;
    EXPECT_EQ(Cyclotomic::from_exponent_counts(N, c),
              Cyclotomic::root(N, 1) + Cyclotomic::root(N, 1) + Cyclotomic::root(N, 1));
  }
}

TEST(Hecke, Conductor) {
  EXPECT_EQ(conductor(fq(2)), 2);
  EXPECT_EQ(conductor(fq(3)), 6);
  EXPECT_EQ(conductor(fq(4)), 6);
  EXPECT_EQ(conductor(fq(8)), 14);
  EXPECT_EQ(conductor(fq(9)), 24);
}

TEST(Hecke, DoubleCosetsPartition) {
  const auto model = shalika(3, 1, 1);
  const HeckeGeometry<ShalikaModel> geo(model, 100000);
  std::size_t total = 0;
  for (std::size_t c = 0; c < geo.coset_count(); ++c) {
    for (std::uint32_t x : geo.coset_members(c)) EXPECT_EQ(geo.coset_of(x), c);
    total += geo.coset_members(c).size();
    if (c > 0) EXPECT_LT(geo.coset_members(c - 1).front(), geo.coset_members(c).front());
  }
  EXPECT_EQ(total, geo.group_order());
  EXPECT_EQ(geo.group_order(), 48u);
  EXPECT_EQ(geo.subgroup_order(), 6u);
}

TEST(Hecke, GL2F2Commutative) {
  const HeckeReport r = hecke_check(shalika(2, 1, 1));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.commutative);
  EXPECT_EQ(r.group_order, 6u);
  EXPECT_EQ(r.conductor, 2);
}

TEST(Hecke, N1M1Q2CompatibleCount) {
  const auto model = shalika(2, 1, 1);
  const HeckeGeometry<ShalikaModel> geo(model, 1000);
  const Compatibility comp = compatibility(geo, model, 2);
  const auto b = brute_basis(model, 2);
  const auto labels = std::count(comp.by_labels.begin(), comp.by_labels.end(), true);
  EXPECT_EQ(static_cast<std::size_t>(labels), b.reps.size());
  EXPECT_TRUE(comp.agree());
}

TEST(Hecke, TrivialCosetCompatible) {
  for (int q : {2, 3})
    for (auto [n, m] : std::vector<std::pair<int, int>>{{0, 2}, {1, 1}, {1, 2}})
      for (const Twist& t : ShalikaContext(fq(q), n, m).effective_twists()) {
        const auto model = shalika(q, n, m, t);
        const HeckeGeometry<ShalikaModel> geo(model, 100000);
        const Compatibility comp = compatibility(geo, model, conductor(model.field()));
        EXPECT_TRUE(comp.by_labels[geo.coset_of(geo.index_of(Mat::identity(n + m)))]);
      }
}

TEST(Hecke, LabelsAgreeWithStabilizers) {
  for (int q : {2, 3})
    for (auto [n, m] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {1, 2}, {0, 3}})
      for (const Twist& t : ShalikaContext(fq(q), n, m).effective_twists()) {
        const auto model = shalika(q, n, m, t);
        const HeckeGeometry<ShalikaModel> geo(model, 100000);
        EXPECT_TRUE(compatibility(geo, model, conductor(model.field())).agree())
            << q << " " << n << "," << m << " " << to_string(t);
      }
}

TEST(Hecke, CountIndependentOfAdditiveTwist) {
  for (int q : {3, 4}) {
    const ShalikaContext base(fq(q), 1, 1);
    const HeckeGeometry<ShalikaModel> geo(ShalikaModel(base), 100000);
    std::optional<long> first;
    for (int c = 1; c < q; ++c) {
      const ShalikaModel model(base.with_twist({0, 0, c}));
      const auto comp = compatibility(geo, model, conductor(model.field()));
      const long count = std::count(comp.by_labels.begin(), comp.by_labels.end(), true);
      if (!first) first = count;
      EXPECT_EQ(count, *first) << "q=" << q << " c=" << c;
    }
  }
}

TEST(Hecke, StructureConstantsMatchDirectConvolution) {
  expect_matches_brute_force(shalika(2, 1, 1));
  expect_matches_brute_force(shalika(3, 1, 1));
  expect_matches_brute_force(shalika(3, 1, 1, {1, 0, 2}));
  expect_matches_brute_force(shalika(2, 1, 2));
  expect_matches_brute_force(deltap(3, 1, 1));
  expect_matches_brute_force(deltap(3, 1, 1, {1, 1}));
  expect_matches_brute_force(GroupAlgebraModel(fq(2), 2));
}

TEST(Hecke, DimensionMatchesProjectorTrace) {
  auto check = [](const auto& model) {
    const int N = conductor(model.field());
    using M = std::decay_t<decltype(model)>;
    const HeckeGeometry<M> geo(model, 100000);
    const HeckeAlgebra alg = build_algebra(geo, compatibility(geo, model, N), N);
    const std::int64_t h = static_cast<std::int64_t>(geo.subgroup_order());
    std::vector<std::int64_t> expect(1, static_cast<std::int64_t>(alg.dim) * h * h);
    EXPECT_EQ(projector_trace_times_h2(model, N), Cyclotomic::from_exponent_counts(N, expect));
  };
  check(shalika(2, 1, 1));
  check(shalika(3, 1, 1));
  check(shalika(3, 1, 1, {1, 0, 1}));
  check(shalika(2, 1, 2));
  check(deltap(3, 1, 1));
  check(deltap(3, 1, 1, {0, 1}));
}

TEST(Hecke, OneDimensionalIsCommutative) {
  // n = 0: H = G.
  const HeckeReport r = hecke_check(shalika(2, 0, 1));
  EXPECT_EQ(r.dimension, 1u);
  EXPECT_EQ(r.double_cosets, 1u);
  EXPECT_TRUE(r.commutative);
  EXPECT_TRUE(r.ok());
  const HeckeReport r3 = hecke_check(shalika(3, 0, 2));
  EXPECT_EQ(r3.dimension, 1u);
  EXPECT_TRUE(r3.ok());
}

TEST(Hecke, GroupAlgebraIsNotCommutative) {
  // GL_2(F_2) = S_3 with the trivial subgroup.
  const GroupAlgebraModel model(fq(2), 2);
  const HeckeReport r = hecke_check(model);
  EXPECT_EQ(r.dimension, 6u);
  EXPECT_FALSE(r.commutative);
  ASSERT_TRUE(r.noncommuting.has_value());
  EXPECT_LT(r.noncommuting->first, r.noncommuting->second);
  EXPECT_TRUE(r.associative);
  EXPECT_TRUE(r.representative_independent);
  EXPECT_EQ(r.associativity_triples, 216u);
}

TEST(Hecke, DeltaPTrivialChiCommutative) {
  const HeckeReport r = hecke_check(deltap(3, 1, 1));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.group_order, 96u);
}

TEST(Hecke, DeltaPAllChi) {
  for (int q : {2, 3})
    for (int x1 = 0; x1 < q - 1; ++x1)
      for (int x2 = 0; x2 < q - 1; ++x2) {
        const HeckeReport r = hecke_check(deltap(q, 1, 1, {x1, x2}));
        EXPECT_TRUE(r.ok()) << q << " " << x1 << "," << x2;
      }
}

TEST(Hecke, ShalikaTwistsCommutative) {
  for (int q : {2, 3})
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}})
      for (const Twist& t : ShalikaContext(fq(q), n, m).effective_twists()) {
        const HeckeReport r = hecke_check(shalika(q, n, m, t));
        EXPECT_TRUE(r.ok()) << q << " " << n << "," << m << " " << to_string(t);
      }
}

TEST(Hecke, AssociativitySampling) {
  const auto model = shalika(3, 1, 2);
  const HeckeGeometry<ShalikaModel> geo(model, 100000);
  const int N = conductor(model.field());
  const HeckeAlgebra alg = build_algebra(geo, compatibility(geo, model, N), N);
  const auto all = check_associativity(alg, 1u << 30, 1);
  EXPECT_TRUE(all.ok);
  EXPECT_EQ(all.triples, alg.dim * alg.dim * alg.dim);
  const auto sampled = check_associativity(alg, 5, 7);
  EXPECT_TRUE(sampled.ok);
  EXPECT_EQ(sampled.triples, alg.dim * alg.dim * alg.dim <= 5 ? alg.dim * alg.dim * alg.dim : 5u);
}

TEST(Hecke, RepresentativeRescaling) {
  const auto model = shalika(3, 1, 1, {1, 0, 1});
  const HeckeGeometry<ShalikaModel> geo(model, 100000);
  const int N = conductor(model.field());
  const Compatibility comp = compatibility(geo, model, N);
  const HeckeAlgebra alg = build_algebra(geo, comp, N);
  // The largest member of each coset as the new representative.
  std::vector<std::uint32_t> reps;
  for (std::uint32_t c : alg.cosets) reps.push_back(geo.coset_members(c).back());
  const HeckeAlgebra other = build_algebra(geo, comp, N, reps);
  for (std::size_t i = 0; i < alg.dim; ++i)
    for (std::size_t j = 0; j < alg.dim; ++j)
      for (std::size_t k = 0; k < alg.dim; ++k) {
        const int mi = comp.exponents[reps[i]], mj = comp.exponents[reps[j]],
                  mk = comp.exponents[reps[k]];
        EXPECT_EQ(other.at(i, j, k), alg.at(i, j, k) * Cyclotomic::root(N, mk - mi - mj));
      }
  EXPECT_THROW(build_algebra(geo, comp, N, std::vector<std::uint32_t>(alg.dim, reps.back())),
               DomainError);
}

TEST(Hecke, ParallelMatchesSerial) {
  const auto model = shalika(2, 1, 3);
  const HeckeGeometry<ShalikaModel> geo(model, 100000);
  const int N = conductor(model.field());
  const Compatibility comp = compatibility(geo, model, N);
  const HeckeAlgebra a = build_algebra(geo, comp, N, {}, 1);
  const HeckeAlgebra b = build_algebra(geo, comp, N, {}, 4);
  EXPECT_EQ(a.constants, b.constants);
}

TEST(Hecke, BudgetRefusal) {
  EXPECT_THROW(hecke_check(shalika(2, 2, 2), {.max_group_order = 1000}), BudgetExceeded);
}

TEST(Hecke, TrivialGroup) {
  // n = 0, m = 1, q = 2: G = GL_1(F_2) is trivial.
  const HeckeReport r = hecke_check(shalika(2, 0, 1));
  EXPECT_EQ(r.group_order, 1u);
  EXPECT_EQ(r.dimension, 1u);
  EXPECT_TRUE(r.commutative);
}
