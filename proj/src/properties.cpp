#include <functional>
#include <string>
#include <vector>

#include "gelfand/errors.hpp"
#include "gelfand/rng.hpp"
#include "gelfand/verify.hpp"

namespace gelfand::verify {

namespace {

using matrix::IndexSet;
using matrix::Mat;
using shalika::DeltaPContext;
using shalika::ShalikaContext;
namespace mx = matrix;

// splitmix64 finalizer: a per-instance seed that reproduces one instance alone.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t suite, std::uint64_t i) {
  return mix(mix(seed) ^ mix(suite * 0x100000001b3ULL + 1) ^ i);
}

const Field& field_for(int q) {
  static const Field f2 = Field::make(2, 1), f3 = Field::make(3, 1), f4 = Field::make(2, 2);
  return q == 2 ? f2 : q == 3 ? f3 : f4;
}

const Field& random_field(Rng& rng, bool extension) {
  static const int qs[] = {2, 3, 4};
  return field_for(qs[rng.uniform_int(extension ? 3 : 2)]);
}

IndexSet random_subset(int universe, int size, Rng& rng) {
  std::vector<int> all;
  for (int i = 1; i <= universe; ++i) all.push_back(i);
  for (int i = universe - 1; i > 0; --i) std::swap(all[i], all[rng.uniform_int(i + 1)]);
  all.resize(size);
  return IndexSet(universe, all);
}

Twist random_twist(const ShalikaContext& ctx, Rng& rng) {
  const auto ts = ctx.effective_twists();
  return ts[rng.uniform(ts.size())];
}

// A Shalika shape with n >= 1, n <= m, n + m <= 5.
std::pair<int, int> random_shape(Rng& rng) {
  const int n = 1 + rng.uniform_int(2);
  return {n, n + rng.uniform_int(6 - 2 * n)};
}

// Each instance returns an empty string on success or what failed.
using Instance = std::function<std::string(Rng&)>;

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

std::string embed_product(Rng& rng) {
  const Field& F = random_field(rng, true);
  const int N = 1 + rng.uniform_int(6);
  const int a = rng.uniform_int(N + 1), b = rng.uniform_int(N + 1), c = rng.uniform_int(N + 1);
  const IndexSet s1 = random_subset(N, a, rng), s2 = random_subset(N, b, rng),
                 s3 = random_subset(N, c, rng);
  const Mat A = mx::random_matrix(F, a, b, rng), B = mx::random_matrix(F, b, c, rng);
  return expect(mx::mul(F, mx::embed(s1, s2, A), mx::embed(s2, s3, B)) ==
                    mx::embed(s1, s3, mx::mul(F, A, B)),
                "E(A) E(B) != E(AB)");
}

std::string embed_orthogonality(Rng& rng) {
  const Field& F = random_field(rng, true);
  const int N = 1 + rng.uniform_int(6);
  const int a = rng.uniform_int(N + 1), b = rng.uniform_int(N + 1), c = rng.uniform_int(N + 1);
  const IndexSet s1 = random_subset(N, a, rng), s2 = random_subset(N, b, rng),
                 s3 = random_subset(N, c, rng);
  const IndexSet s2c = s2.complement();
  const Mat A = mx::random_matrix(F, a, b, rng), B = mx::random_matrix(F, s2c.size(), c, rng);
  return expect(mx::is_zero(mx::mul(F, mx::embed(s1, s2, A), mx::embed(s2c, s3, B))),
                "E_{S1,S2}(A) E_{S2^c,S3}(B) != 0");
}

std::string embed_transpose(Rng& rng) {
  const Field& F = random_field(rng, true);
  const int N = 1 + rng.uniform_int(6);
  const int a = rng.uniform_int(N + 1), b = rng.uniform_int(N + 1);
  const IndexSet s1 = random_subset(N, a, rng), s2 = random_subset(N, b, rng);
  const Mat A = mx::random_matrix(F, a, b, rng);
  return expect(mx::transpose(mx::embed(s1, s2, A)) == mx::embed(s2, s1, mx::transpose(A)),
                "E(A)^t != E(A^t)");
}

std::string weld_inverse(Rng& rng) {
  const Field& F = random_field(rng, true);
  const int N = 1 + rng.uniform_int(6);
  const int a = rng.uniform_int(N + 1);
  const IndexSet s1 = random_subset(N, a, rng), s2 = random_subset(N, a, rng);
  const Mat P = mx::random_gl(F, a, rng), Q = mx::random_gl(F, N - a, rng);
  return expect(mx::inverse(F, mx::weld(s1, s2, P, Q)) ==
                    mx::weld(s2, s1, mx::inverse(F, P), mx::inverse(F, Q)),
                "(P (+) Q)^{-1} != P^{-1} (+) Q^{-1}");
}

std::string weld_multiplicativity(Rng& rng) {
  const Field& F = random_field(rng, true);
  const int N = 1 + rng.uniform_int(6);
  const int k = rng.uniform_int(N + 1);
  const IndexSet s1 = random_subset(N, k, rng), s2 = random_subset(N, k, rng),
                 s3 = random_subset(N, k, rng);
  const Mat A = mx::random_matrix(F, k, k, rng), B = mx::random_matrix(F, N - k, N - k, rng);
  const Mat C = mx::random_matrix(F, k, k, rng), D = mx::random_matrix(F, N - k, N - k, rng);
  if (mx::mul(F, mx::weld(s1, s2, A, B), mx::weld(s2, s3, C, D)) !=
      mx::weld(s1, s3, mx::mul(F, A, C), mx::mul(F, B, D)))
    return "(A (+) B)(C (+) D) != AC (+) BD";
  return expect(mx::restrict(mx::weld(s1, s2, A, B), s1, s2) == A, "restriction of a weld");
}

std::string weld_character(Rng& rng) {
  const Field& F = random_field(rng, true);
  const auto [n, m] = random_shape(rng);
  // S = S0 u (S0 + n) u (Sbar + 2n); the H' version uses its mirror on [2n].
  std::vector<int> s0, sbar, s, sp;
  for (int i = 1; i <= n; ++i)
    if (rng.coin()) s0.push_back(i);
  for (int i = 1; i <= m - n; ++i)
    if (rng.coin()) sbar.push_back(i);
  for (int x : s0) s.push_back(x);
  for (int x : s0) s.push_back(x + n);
  for (int x : sbar) s.push_back(x + 2 * n);
  for (int x : s) sp.push_back(x <= 2 * n ? 2 * n + 1 - x : x);
  const IndexSet S(n + m, s), Sp(n + m, sp);
  const int n1 = static_cast<int>(s0.size()), m1 = n1 + static_cast<int>(sbar.size());
  const ShalikaContext big0(F, n, m);
  const Twist t = random_twist(big0, rng);
  const ShalikaContext big = big0.with_twist(t), c1(F, n1, m1, t), c2(F, n - n1, m - m1, t);
  const Mat h1 = c1.random_h(rng), h2 = c2.random_h(rng);
  const Mat h = mx::weld(S, S, h1, h2);
  if (!big.h_contains(h)) return "h1 (+) h2 not in H";
  if (big.psi(h) != c1.psi(h1) * c2.psi(h2)) return "psi not multiplicative across the weld";
  if (big.psi_u(h) != c1.psi_u(h1) * c2.psi_u(h2)) return "psi_u not multiplicative across the weld";
  const Mat p1 = c1.tau(h1), p2 = c2.tau(h2);
  const Mat hp = mx::weld(Sp, Sp, p1, p2);
  if (!big.hprime_contains(hp)) return "h1' (+) h2' not in H'";
  return expect(big.psi_tau(hp) == c1.psi_tau(p1) * c2.psi_tau(p2),
                "psi o tau not multiplicative across the weld");
}

std::string tau_weld_compatibility(Rng& rng) {
  // S2 cap [2n] = 2n+1 - (S1 cap [2n]) and S1 \ [2n] = S2 \ [2n].
  const Field& F = random_field(rng, true);
  const auto [n, m] = random_shape(rng);
  const int N = n + m;
  std::vector<int> v1, v2;
  for (int i = 1; i <= 2 * n; ++i)
    if (rng.coin()) {
      v1.push_back(i);
      v2.push_back(2 * n + 1 - i);
    }
  for (int i = 2 * n + 1; i <= N; ++i)
    if (rng.coin()) {
      v1.push_back(i);
      v2.push_back(i);
    }
  const IndexSet s1(N, v1), s2(N, v2);
  int low = 0;
  for (int x : s1.members()) low += x <= 2 * n;
  const Mat A = mx::random_matrix(F, s1.size(), s2.size(), rng);
  const Mat B = mx::random_matrix(F, N - s1.size(), N - s2.size(), rng);
  return expect(mx::tau_general(mx::weld(s1, s2, A, B), 2 * n) ==
                    mx::weld(s1, s2, mx::tau_general(A, low), mx::tau_general(B, 2 * n - low)),
                "tau(A (+) B) != tau(A) (+) tau(B)");
}

std::string tau_laws(Rng& rng) {
  const Field& F = random_field(rng, true);
  const int n = rng.uniform_int(3);
  const int m = std::max(n, 1) + rng.uniform_int(2);
  const Mat g = mx::random_gl(F, n + m, rng), h = mx::random_gl(F, n + m, rng);
  const Mat tg = mx::tau(g, n, m);
  if (mx::tau(tg, n, m) != g) return "tau(tau(g)) != g";
  if (mx::tau(mx::mul(F, g, h), n, m) != mx::mul(F, mx::tau(h, n, m), tg))
    return "tau(gh) != tau(h) tau(g)";
  if (!mx::is_invertible(F, tg)) return "tau(g) singular";
  return expect(mx::tau(mx::inverse(F, g), n, m) == mx::inverse(F, tg), "tau(g^{-1}) != tau(g)^{-1}");
}

std::string character_multiplicativity(Rng& rng) {
  const Field& F = random_field(rng, true);
  const auto [n, m] = random_shape(rng);
  const ShalikaContext base(F, n, m);
  const ShalikaContext ctx = base.with_twist(random_twist(base, rng));
  const Mat h1 = ctx.random_h(rng), h2 = ctx.random_h(rng), h12 = mx::mul(F, h1, h2);
  if (ctx.psi(h12) != ctx.psi(h1) * ctx.psi(h2)) return "psi(h1 h2) != psi(h1) psi(h2)";
  if (ctx.psi_u(h12) != ctx.psi_u(h1) * ctx.psi_u(h2)) return "psi_u(h1 h2) != psi_u(h1) psi_u(h2)";
  const Mat p1 = ctx.tau(h1), p2 = ctx.tau(h2);
  if (ctx.psi_tau(mx::mul(F, p1, p2)) != ctx.psi_tau(p1) * ctx.psi_tau(p2))
    return "psi o tau not multiplicative on H'";
  const int dn = rng.uniform_int(3), dm = rng.uniform_int(3) + (dn == 0);
  const shalika::Chi chi{rng.uniform_int(F.q() - 1), rng.uniform_int(F.q() - 1)};
  const DeltaPContext dp(F, dn, dm, chi);
  const auto x = dp.random_element(rng), y = dp.random_element(rng);
  return expect(dp.chi(dp.mul(x, y)) == dp.chi(x) * dp.chi(y), "chi(xy) != chi(x) chi(y)");
}

std::string gk_conditions(Rng& rng) {
  // The conjugator conditions need psi_1^2 = psi_2^2 = 1, so q in {2, 3}.
  const Field& F = random_field(rng, false);
  const int n = rng.uniform_int(3);
  const int m = std::max(n, 1) + rng.uniform_int(4 - n - std::max(n, 1) + 1);
  const ShalikaContext base(F, n, m);
  const ShalikaContext ctx = base.with_twist(random_twist(base, rng));
  const auto r = shalika::verify_gk_conditions(ctx, {mx::random_gl(F, n + m, rng)},
                                               {ctx.random_hprime(rng)});
  if (r.tau_failures) return "tau(g) != a g^t a^{-1}";
  if (r.membership_failures) return "b tau(h'^{-1}) b^{-1} not in H";
  return expect(r.character_failures == 0, "psi(b tau(h'^{-1}) b^{-1}) != psi(tau(h'))");
}

struct Suite {
  const char* name;
  Instance run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"embed_product", embed_product},
      {"embed_orthogonality", embed_orthogonality},
      {"embed_transpose", embed_transpose},
      {"weld_inverse", weld_inverse},
      {"weld_multiplicativity", weld_multiplicativity},
      {"weld_character", weld_character},
      {"tau_weld_compatibility", tau_weld_compatibility},
      {"tau_laws", tau_laws},
      {"character_multiplicativity", character_multiplicativity},
      {"gk_conditions", gk_conditions},
  };
  return all;
}

}  // namespace

json run_properties(const Campaign& c) {
  json out_suites = json::array();
  bool ok = true;
  const auto& all = suites();
  for (std::size_t s = 0; s < all.size(); ++s) {
    std::uint64_t failures = 0;
    json first = nullptr;
    for (std::uint64_t i = 0; i < c.property_instances; ++i) {
      const std::uint64_t seed = instance_seed(c.seed, s, i);
      Rng rng(seed);
      std::string what;
      try {
        what = all[s].run(rng);
      } catch (const Error& ex) {
        what = std::string("error: ") + ex.what();
      }
      if (what.empty()) continue;
      ++failures;
      if (first.is_null()) first = {{"instance", i}, {"seed", seed}, {"failure", what}};
    }
    json j = {{"name", all[s].name}, {"instances", c.property_instances}, {"failures", failures}};
    if (!first.is_null()) j["first_failure"] = first;
    ok = ok && failures == 0;
    out_suites.push_back(j);
  }
  return {{"verdict", ok ? "holds" : "counterexample"},
          {"seed", c.seed},
          {"suites", out_suites}};
}

}  // namespace gelfand::verify
