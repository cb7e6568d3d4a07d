#include "gelfand/cut.hpp"

#include <map>
#include <memory>
#include <set>
#include <unordered_map>

#include "gelfand/errors.hpp"

namespace gelfand::cut {

using cosets::CosetEngine;
using matrix::IndexSet;
using matrix::MatHash;

namespace {

std::vector<int> eta_sizes(int n, int m, int k, int t) {
  return {k, n - k, n - k, k, m - n - t, t};
}

std::vector<int> offsets(const std::vector<int>& sizes) {
  std::vector<int> out(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) out[i + 1] = out[i] + sizes[i];
  return out;
}

bool has_shape(const Mat& a, int r, int c) { return a.rows() == r && a.cols() == c; }

}  // namespace

bool eta_params_valid(int n, int m, int k, int t) {
  return n >= 0 && m >= n && 2 * k >= n && k <= n && t >= 0 && t <= m - n && t <= k;
}

Mat eta_matrix(int n, int m, const EtaShape& e) {
  const int k = e.k, t = e.t;
  if (!eta_params_valid(n, m, k, t))
    throw ShapeError("eta needs n/2 <= k <= n and t <= min(m-n, k)");
  if (!has_shape(e.a0, k, k) || !has_shape(e.b0, k, k) || !has_shape(e.a1, k, t) ||
      !has_shape(e.b1, t, k))
    throw ShapeError("eta blocks have the wrong sizes");
  const auto o = offsets(eta_sizes(n, m, k, t));
  Mat x(n + m, n + m);
  matrix::place(x, o[0], o[3], e.a0);
  matrix::place(x, o[0], o[5], e.a1);
  matrix::place(x, o[1], o[1], Mat::identity(n - k));
  matrix::place(x, o[2], o[2], Mat::identity(n - k));
  matrix::place(x, o[3], o[0], e.b0);
  matrix::place(x, o[4], o[4], Mat::identity(m - n - t));
  matrix::place(x, o[5], o[3], e.b1);
  return x;
}

std::optional<EtaShape> eta_decompose(int n, int m, int k, int t, const Mat& x) {
  if (!eta_params_valid(n, m, k, t) || !has_shape(x, n + m, n + m)) return std::nullopt;
  const auto o = offsets(eta_sizes(n, m, k, t));
  EtaShape e{k, t, matrix::extract(x, o[0], o[3], k, k), matrix::extract(x, o[3], o[0], k, k),
             matrix::extract(x, o[0], o[5], k, t), matrix::extract(x, o[5], o[3], t, k)};
  if (eta_matrix(n, m, e) != x) return std::nullopt;
  return e;
}

std::vector<Mat> eta_enumerate(const Field& F, int n, int m) {
  std::vector<Mat> out;
  for (int k = 0; k <= n; ++k)
    for (int t = 0; t <= m - n; ++t) {
      if (!eta_params_valid(n, m, k, t)) continue;
      matrix::for_each_matrix(F, k, k, [&](const Mat& a0) {
        matrix::for_each_matrix(F, k, k, [&](const Mat& b0) {
          matrix::for_each_matrix(F, k, t, [&](const Mat& a1) {
            matrix::for_each_matrix(F, t, k, [&](const Mat& b1) {
              const Mat x = eta_matrix(n, m, {k, t, a0, b0, a1, b1});
              if (matrix::is_invertible(F, x)) out.push_back(x);
            });
          });
        });
      });
    }
  return out;
}

Mat cut(const Mat& x, int n) {
  if (x.rows() < 2 * n || x.cols() < 2 * n) throw ShapeError("matrix is smaller than 2n x 2n");
  return matrix::extract(x, 0, 0, 2 * n, 2 * n);
}

ShalikaContext cut_context(const ShalikaContext& ctx) {
  return ShalikaContext(ctx.field(), ctx.n(), ctx.n(), Twist{ctx.twist().a1, 0, ctx.twist().c});
}

bool is_reduced(const EtaShape& e) {
  const int k = e.k, t = e.t;
  std::vector<int> s1, s2;
  std::vector<bool> row_used(k, false), col_used(k, false);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int v = e.a0.code(i, j);
      if (v == 0) continue;
      if (v != 1 || row_used[i] || col_used[j]) return false;
      row_used[i] = col_used[j] = true;
    }
  std::vector<int> s1c, s2c;
  for (int i = 0; i < k; ++i) {
    if (!row_used[i]) s1c.push_back(i);
    if (!col_used[i]) s2c.push_back(i);
  }
  if (static_cast<int>(s1c.size()) != t || static_cast<int>(s2c.size()) != t) return false;
  Mat a1(k, t), b1(t, k);
  for (int i = 0; i < t; ++i) {
    a1.set_code(s1c[i], i, 1);
    b1.set_code(i, s2c[i], 1);
  }
  return e.a1 == a1 && e.b1 == b1;
}

ReducedForm reduced_form(const ShalikaContext& ctx, const Mat& x, int k, int t,
                         std::uint64_t orbit_budget) {
  const int n = ctx.n(), m = ctx.m();
  if (!eta_decompose(n, m, k, t, x)) throw ShapeError("matrix is not an eta of the given (k, t)");
  std::optional<ReducedForm> other;
  for (const Mat& y : cosets::double_coset(ctx, x, orbit_budget)) {
    const auto e = eta_decompose(n, m, k, t, y);
    if (e && is_reduced(*e)) return {y, k, t};
    if (other) continue;
    for (int k2 = 0; k2 <= n && !other; ++k2)
      for (int t2 = 0; t2 <= m - n && !other; ++t2) {
        const auto e2 = eta_decompose(n, m, k2, t2, y);
        if (e2 && is_reduced(*e2)) other = ReducedForm{y, k2, t2};
      }
  }
  if (other) return *other;
  throw ShapeError("no reduced eta in the double coset");
}

// --------------------------------------------------- action on all of Mat

Mat extended_action(const ShalikaContext& ctx, const Mat& h1, const Mat& h2, const Mat& x) {
  if (!ctx.hprime_contains(h1)) throw MembershipError("h1 is not in H'");
  if (!ctx.h_contains(h2)) throw MembershipError("h2 is not in H");
  if (!has_shape(x, ctx.dim(), ctx.dim())) throw DimensionError("x is not (n+m) x (n+m)");
  const Field& F = ctx.field();
  return matrix::mul(F, matrix::mul(F, h1, x), matrix::inverse(F, h2));
}

MatActionOracle::MatActionOracle(ShalikaContext ctx, std::uint64_t budget)
    : ctx_(std::move(ctx)), hs_(ctx_.h_elements(budget)) {
  data_.reserve(hs_.size());
  for (const Mat& h : hs_) data_.push_back(ctx_.char_data(h));
}

std::vector<HCharData> MatActionOracle::transporter_data(const Mat& x, const Mat& y) const {
  const Field& F = ctx_.field();
  // h1 = tau(h_i) ranges over H' with tau(h1) = h_i.
  std::unordered_map<Mat, std::set<HCharData>, MatHash> left;
  for (std::size_t i = 0; i < hs_.size(); ++i)
    left[matrix::mul(F, ctx_.tau(hs_[i]), x)].insert(data_[i]);
  std::set<HCharData> out;
  for (std::size_t j = 0; j < hs_.size(); ++j) {
    const auto it = left.find(matrix::mul(F, y, hs_[j]));
    if (it == left.end()) continue;
    const HCharData inv = ctx_.invert(data_[j]);
    for (const HCharData& d : it->second) out.insert(ctx_.combine(d, inv));
  }
  return {out.begin(), out.end()};
}

std::vector<bool> MatActionOracle::admissible(const Mat& x, Flavor f,
                                              const std::vector<Twist>& twists) const {
  const auto data = transporter_data(x, x);
  std::vector<bool> out;
  for (const Twist& tw : twists) {
    bool ok = true;
    for (const HCharData& d : data) ok = ok && ctx_.evaluate(d, f, tw).is_one();
    out.push_back(ok);
  }
  return out;
}

std::vector<bool> MatActionOracle::invariant(const Mat& x, const std::vector<Twist>& twists) const {
  const auto data = transporter_data(x, ctx_.tau(x));
  std::vector<bool> out;
  for (const Twist& tw : twists) {
    bool found = false;
    for (const HCharData& d : data) found = found || ctx_.evaluate(d, Flavor::kPsi, tw).is_one();
    out.push_back(found);
  }
  return out;
}

// ------------------------------------------------ brute-force structure

void Tally::fail(std::string what) {
  if (failures++ == 0) first_failure = std::move(what);
}

namespace {

std::string describe(const Field& F, const Mat& x, const Twist& t, const char* what) {
  return std::string(what) + " at " + matrix::format(F, x) + " twist " + shalika::to_string(t);
}

}  // namespace

Tally cut_equivalence_check(const Field& F, int n, int m, std::uint64_t budget) {
  const ShalikaContext full(F, n, m);
  const ShalikaContext small = cut_context(full);
  const auto twists = full.effective_twists();
  std::vector<Twist> cut_twists;
  for (const Twist& t : twists) cut_twists.push_back({t.a1, 0, t.c});
  const MatActionOracle big(full, budget), little(small, budget);
  const CosetEngine engine(full, budget);

  Tally tally;
  for (const Mat& eta : eta_enumerate(F, n, m)) {
    const Mat c = cut(eta, n);
    const auto inv_big = big.invariant(eta, twists), inv_small = little.invariant(c, cut_twists);
    for (Flavor f : {Flavor::kPsiU, Flavor::kPsi}) {
      const auto adm_big = big.admissible(eta, f, twists);
      const auto adm_small = little.admissible(c, f, cut_twists);
      const auto an = engine.analyze(eta, twists, f);
      for (std::size_t i = 0; i < twists.size(); ++i) {
        ++tally.checked;
        if (adm_big[i] != adm_small[i]) tally.fail(describe(F, eta, twists[i], "cut admissibility"));
        if (adm_big[i] != an.outcomes[i].admissible)
          tally.fail(describe(F, eta, twists[i], "oracle vs engine admissibility"));
        if (inv_big[i] != an.outcomes[i].witness.has_value())
          tally.fail(describe(F, eta, twists[i], "oracle vs engine invariance"));
      }
    }
    for (std::size_t i = 0; i < twists.size(); ++i) {
      ++tally.checked;
      if (inv_big[i] != inv_small[i]) tally.fail(describe(F, eta, twists[i], "cut invariance"));
    }
  }
  return tally;
}

Tally weld_inheritance_check(const Field& F, int n, int m, std::uint64_t budget) {
  const int N = n + m;
  const ShalikaContext full(F, n, m);
  const auto twists = full.effective_twists();
  std::map<std::pair<int, int>, std::unique_ptr<CosetEngine>> engines;
  auto engine = [&](int a, int b) -> const CosetEngine& {
    auto& slot = engines[{a, b}];
    if (!slot) slot = std::make_unique<CosetEngine>(ShalikaContext(F, a, b), budget);
    return *slot;
  };

  Tally tally;
  for (int mask0 = 0; mask0 < (1 << n); ++mask0)
    for (int maskb = 0; maskb < (1 << (m - n)); ++maskb) {
      std::vector<int> s0, sbar;
      for (int i = 0; i < n; ++i)
        if (mask0 >> i & 1) s0.push_back(i + 1);
      for (int i = 0; i < m - n; ++i)
        if (maskb >> i & 1) sbar.push_back(i + 1);
      std::vector<int> s2;
      for (int x : s0) s2.push_back(x);
      for (int x : s0) s2.push_back(x + n);
      for (int x : sbar) s2.push_back(x + 2 * n);
      std::vector<int> s1;
      for (int x : s2) s1.push_back(x <= 2 * n ? 2 * n + 1 - x : x);
      const IndexSet S1(N, s1), S2(N, s2);
      const int na = static_cast<int>(s0.size()), ma = na + static_cast<int>(sbar.size());
      const int nb = n - na, mb = m - ma;
      if (na + ma == 0 || nb + mb == 0) continue;

      const CosetEngine& ea = engine(na, ma);
      const CosetEngine& eb = engine(nb, mb);
      const CosetEngine& ex = engine(n, m);
      const auto as = matrix::gl_elements(F, na + ma, budget);
      const auto bs = matrix::gl_elements(F, nb + mb, budget);
      std::vector<cosets::Analysis> ra_u, ra_p, rb_u, rb_p;
      for (const Mat& a : as) {
        ra_u.push_back(ea.analyze(a, twists, Flavor::kPsiU));
        ra_p.push_back(ea.analyze(a, twists, Flavor::kPsi));
      }
      for (const Mat& b : bs) {
        rb_u.push_back(eb.analyze(b, twists, Flavor::kPsiU));
        rb_p.push_back(eb.analyze(b, twists, Flavor::kPsi));
      }
      for (std::size_t i = 0; i < as.size(); ++i)
        for (std::size_t j = 0; j < bs.size(); ++j) {
          const Mat x = matrix::weld(S1, S2, as[i], bs[j]);
          const auto xu = ex.analyze(x, twists, Flavor::kPsiU);
          const auto xp = ex.analyze(x, twists, Flavor::kPsi);
          for (std::size_t w = 0; w < twists.size(); ++w) {
            ++tally.checked;
            if (xu.outcomes[w].admissible &&
                !(ra_u[i].outcomes[w].admissible && rb_u[j].outcomes[w].admissible))
              tally.fail(describe(F, x, twists[w], "psi_u admissibility not inherited"));
            if (xp.outcomes[w].admissible &&
                !(ra_p[i].outcomes[w].admissible && rb_p[j].outcomes[w].admissible))
              tally.fail(describe(F, x, twists[w], "psi admissibility not inherited"));
            if (ra_u[i].outcomes[w].witness && rb_u[j].outcomes[w].witness &&
                !xu.outcomes[w].witness)
              tally.fail(describe(F, x, twists[w], "invariance not inherited"));
          }
        }
    }
  return tally;
}

ReducedFormSurvey reduced_form_check(const Field& F, int n, int m, std::uint64_t budget) {
  const ShalikaContext ctx(F, n, m);
  ReducedFormSurvey out;
  for (int k = 0; k <= n; ++k)
    for (int t = 0; t <= m - n; ++t) {
      if (!eta_params_valid(n, m, k, t)) continue;
      for (const Mat& eta : eta_enumerate(F, n, m)) {
        if (!eta_decompose(n, m, k, t, eta)) continue;
        ++out.tally.checked;
        try {
          const ReducedForm r = reduced_form(ctx, eta, k, t, budget);
          if (r.k == k && r.t == t)
            ++out.same_shape;
          else
            ++out.other_shape;
          if (!cosets::same_coset(ctx, eta, r.matrix, budget))
            out.tally.fail("reduced form left the coset of " + matrix::format(F, eta));
        } catch (const ShapeError&) {
          out.tally.fail("no reduced form for " + matrix::format(F, eta));
        }
      }
    }
  return out;
}

}  // namespace gelfand::cut
