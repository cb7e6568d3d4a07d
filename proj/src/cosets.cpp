#include "gelfand/cosets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "gelfand/errors.hpp"

namespace gelfand::cosets {

using matrix::MatHash;

std::string OmegaIndex::to_string() const {
  return "(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(t) + "," +
         std::to_string(s) + ")";
}

bool in_omega(int n, int m, const OmegaIndex& x) {
  if (x.k1 < 0 || x.k2 < 0 || x.t < 0 || x.s < 0) return false;
  if (x.k1 > n || x.k2 > n) return false;
  if (x.k2 > x.t + x.k1 || x.t + x.k1 > n) return false;
  if (x.k1 > x.s + x.k2 || x.s + x.k2 > n) return false;
  return x.s + x.t <= m - n;
}

std::vector<OmegaIndex> omega_enumerate(int n, int m) {
  std::vector<OmegaIndex> out;
  if (n < 0 || m < n) return out;
  for (int k1 = 0; k1 <= n; ++k1)
    for (int k2 = 0; k2 <= n; ++k2)
      for (int t = 0; t <= m - n; ++t)
        for (int s = 0; s <= m - n; ++s)
          if (in_omega(n, m, {k1, k2, t, s})) out.push_back({k1, k2, t, s});
  return out;
}

namespace {

struct SigmaLayout {
  std::vector<int> row_sizes, col_sizes;
};

SigmaLayout sigma_layout(int n, int m, const OmegaIndex& x) {
  const int k1 = x.k1, k2 = x.k2, t = x.t, s = x.s;
  return {{k1, n - t - k1, t, n - k2 - s, k2, s, m - n - s - t, k2 - k1 + s, k1 - k2 + t},
          {k2, n - t - k1, k1 - k2 + t, n - k2 - s, k1, k2 - k1 + s, m - n - s - t, s, t}};
}

// Row block i of sigma is the identity (or w, for blocks 0 and 4) placed in
// column block kTarget[i].
constexpr int kTarget[9] = {4, 1, 8, 3, 0, 7, 6, 5, 2};

std::vector<int> offsets(const std::vector<int>& sizes) {
  std::vector<int> out(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) out[i + 1] = out[i] + sizes[i];
  return out;
}

}  // namespace

Mat sigma_matrix(int n, int m, const OmegaIndex& idx) {
  if (!in_omega(n, m, idx))
    throw DomainError("index " + idx.to_string() + " is outside Omega for n=" +
                      std::to_string(n) + ", m=" + std::to_string(m));
  const SigmaLayout L = sigma_layout(n, m, idx);
  const auto ro = offsets(L.row_sizes), co = offsets(L.col_sizes);
  Mat out(n + m, n + m);
  for (int b = 0; b < 9; ++b) {
    const int size = L.row_sizes[b];
    const bool reversed = b == 0 || b == 4;
    for (int j = 0; j < size; ++j) {
      const int col = co[kTarget[b]] + (reversed ? size - 1 - j : j);
      out.set_code(ro[b] + j, col, 1);
    }
  }
  return out;
}

Mat gamma_matrix(const Field& F, int n, int m, const Mat& y, const Mat& z,
                 const OmegaIndex& idx) {
  if (y.rows() != n || y.cols() != n || z.rows() != n || z.cols() != n)
    throw DimensionError("Y and Z must be n x n");
  const Mat left = matrix::block_diag({y, Mat::identity(m)});
  const Mat right = matrix::block_diag({Mat::identity(n), z, Mat::identity(m - n)});
  return matrix::mul(F, matrix::mul(F, left, sigma_matrix(n, m, idx)), right);
}

BlockSplit block_split(int n, int, const OmegaIndex& x) {
  const int k1 = x.k1, k2 = x.k2, t = x.t, s = x.s;
  return {{n - k2 - s, k2, s},
          {k1, n - t - k1, t},
          {n - k2 - s, k1, k2 - k1 + s},
          {k2, n - t - k1, t + k1 - k2}};
}

std::uint64_t representative_count(const ShalikaContext& ctx) {
  const std::uint64_t g = matrix::gl_order(ctx.field().q(), ctx.n());
  return g * g * omega_enumerate(ctx.n(), ctx.m()).size();
}

void for_each_representative(
    const ShalikaContext& ctx, std::uint64_t budget,
    const std::function<void(const OmegaIndex&, const Mat&, const Mat&, const Mat&)>& fn) {
  const std::uint64_t count = representative_count(ctx);
  if (count > budget)
    throw BudgetExceeded(std::to_string(count) + " representatives exceed the budget " +
                         std::to_string(budget));
  const Field& F = ctx.field();
  const auto gls = matrix::gl_elements(F, ctx.n(), budget);
  for (const OmegaIndex& idx : omega_enumerate(ctx.n(), ctx.m()))
    for (const Mat& y : gls)
      for (const Mat& z : gls) fn(idx, y, z, gamma_matrix(F, ctx.n(), ctx.m(), y, z, idx));
}

// ----------------------------------------------------------- orbit search

namespace {

struct Generators {
  std::vector<Mat> left, right;
};

Generators orbit_generators(const ShalikaContext& ctx) {
  return {ctx.hprime_generators(), ctx.h_generators()};
}

// Breadth-first closure of x; `seen` doubles as the visited set. Returns
// false as soon as `stop` holds for a newly reached element.
template <class Set, class Stop>
bool bfs(const Field& F, const Generators& gens, const Mat& x, std::uint64_t budget, Set& seen,
         Stop stop) {
  std::deque<Mat> frontier{x};
  seen.insert(x);
  if (stop(x)) return false;
  auto visit = [&](Mat y) {
    if (!seen.insert(y).second) return true;
    if (seen.size() > budget)
      throw BudgetExceeded("double coset exceeds the orbit budget " + std::to_string(budget));
    if (stop(y)) return false;
    frontier.push_back(std::move(y));
    return true;
  };
  while (!frontier.empty()) {
    const Mat cur = frontier.front();
    frontier.pop_front();
    for (const Mat& l : gens.left)
      if (!visit(matrix::mul(F, l, cur))) return false;
    for (const Mat& r : gens.right)
      if (!visit(matrix::mul(F, cur, r))) return false;
  }
  return true;
}

}  // namespace

std::vector<Mat> double_coset(const ShalikaContext& ctx, const Mat& x,
                              std::uint64_t orbit_budget) {
  std::unordered_set<Mat, MatHash> seen;
  bfs(ctx.field(), orbit_generators(ctx), x, orbit_budget, seen, [](const Mat&) { return false; });
  std::vector<Mat> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool same_coset(const ShalikaContext& ctx, const Mat& x, const Mat& y,
                std::uint64_t orbit_budget) {
  std::unordered_set<Mat, MatHash> seen;
  return !bfs(ctx.field(), orbit_generators(ctx), x, orbit_budget, seen,
              [&](const Mat& z) { return z == y; });
}

// ------------------------------------------------- stabilizers, witnesses

CosetEngine::CosetEngine(ShalikaContext ctx, std::uint64_t max_subgroup_order)
    : ctx_(std::move(ctx)), budget_(max_subgroup_order) {
  if (ctx_.h_order() <= budget_) {
    hs_ = ctx_.h_elements(budget_);
    data_.reserve(hs_.size());
    for (const Mat& h : hs_) data_.push_back(ctx_.char_data(h));
  }
}

void CosetEngine::scan(const std::function<bool(const Mat&, const HCharData&)>& fn) const {
  if (materialized()) {
    for (std::size_t i = 0; i < hs_.size(); ++i)
      if (!fn(hs_[i], data_[i])) return;
    return;
  }
  std::uint64_t visited = 0;
  ctx_.for_each_h([&](const Mat& h) {
    if (++visited > budget_)
      throw BudgetExceeded("|H| = " + std::to_string(ctx_.h_order()) +
                           " and the search did not finish within the budget " +
                           std::to_string(budget_));
    return fn(h, ctx_.char_data(h));
  });
}

namespace {

// h1 = x h2 g^{-1} lies in H' iff tau(h1) in H; returns the character data of
// the pair (h1, h2), i.e. of tau(h1) h2^{-1}.
std::optional<HCharData> pair_data(const ShalikaContext& ctx, const Mat& h1,
                                   const HCharData& h2_data) {
  const auto d = ctx.h_decompose(ctx.tau(h1));
  if (!d) return std::nullopt;
  return ctx.combine(ctx.char_data(*d), ctx.invert(h2_data));
}

}  // namespace

std::vector<Pair> CosetEngine::stabilizer_pairs(const Mat& g) const {
  const Field& F = ctx_.field();
  const Mat ginv = matrix::inverse(F, g);
  std::vector<Pair> out;
  scan([&](const Mat& h2, const HCharData&) {
    const Mat h1 = matrix::mul(F, g, matrix::mul(F, h2, ginv));
    if (ctx_.hprime_contains(h1)) out.emplace_back(h1, h2);
    return true;
  });
  return out;
}

Admissibility CosetEngine::is_admissible(const Mat& g, Flavor f) const {
  const Analysis a = analyze(g, {ctx_.twist()}, f);
  return {a.outcomes[0].admissible, a.outcomes[0].violation};
}

std::optional<Pair> CosetEngine::invariance_witness(const Mat& g) const {
  return pass(g, {ctx_.twist()}, Flavor::kPsi, false).outcomes[0].witness;
}

Analysis CosetEngine::analyze(const Mat& g, const std::vector<Twist>& twists,
                              Flavor flavor) const {
  return pass(g, twists, flavor, !(flavor == Flavor::kPsiU && ctx_.psi_u_trivial()));
}

Analysis CosetEngine::pass(const Mat& g, const std::vector<Twist>& twists, Flavor flavor,
                           bool need_stabilizer) const {
  const Field& F = ctx_.field();
  const Mat ginv = matrix::inverse(F, g);
  const Mat tg = ctx_.tau(g);

  Analysis out;
  out.outcomes.resize(twists.size());
  for (std::size_t i = 0; i < twists.size(); ++i) out.outcomes[i].twist = twists[i];
  std::size_t unresolved = twists.size();

  std::uint64_t stab = 0, trans = 0;
  std::map<HCharData, bool> stab_seen, trans_seen;
  bool complete = true;

  scan([&](const Mat& h2, const HCharData& d2) {
    ++out.visited;
    const Mat t = matrix::mul(F, h2, ginv);
    if (need_stabilizer) {
      const Mat h1 = matrix::mul(F, g, t);
      if (const auto d = pair_data(ctx_, h1, d2)) {
        ++stab;
        if (stab_seen.emplace(*d, true).second) {
          for (std::size_t i = 0; i < twists.size(); ++i) {
            TwistOutcome& o = out.outcomes[i];
            if (o.admissible && !ctx_.evaluate(*d, flavor, twists[i]).is_one()) {
              o.admissible = false;
              o.violation = Pair{h1, h2};
            }
          }
        }
      }
    }
    const Mat h1 = matrix::mul(F, tg, t);
    if (const auto d = pair_data(ctx_, h1, d2)) {
      ++trans;
      if (unresolved > 0 && trans_seen.emplace(*d, true).second) {
        for (std::size_t i = 0; i < twists.size(); ++i) {
          TwistOutcome& o = out.outcomes[i];
          if (!o.witness && ctx_.evaluate(*d, Flavor::kPsi, twists[i]).is_one()) {
            o.witness = Pair{h1, h2};
            --unresolved;
          }
        }
      }
    }
    if (!need_stabilizer && unresolved == 0) {
      complete = false;
      return false;
    }
    return true;
  });
  if (complete) {
    if (need_stabilizer) out.stabilizer_size = stab;
    out.transporter_size = trans;
  }
  return out;
}

// ----------------------------------------------------------- completeness

CompletenessReport completeness_check(const ShalikaContext& ctx, std::uint64_t max_group_order) {
  const Field& F = ctx.field();
  const int N = ctx.dim();
  const std::uint64_t order = matrix::gl_order(F.q(), N);
  if (order > max_group_order)
    throw BudgetExceeded("|G| = " + std::to_string(order) + " exceeds the budget " +
                         std::to_string(max_group_order));
  const Generators gens = orbit_generators(ctx);

  CompletenessReport rep;
  rep.group_order = order;
  std::unordered_map<Mat, std::uint32_t, MatHash> coset_of;

  // Claims the orbit of x under a fresh id; returns the id.
  auto claim = [&](const Mat& x) {
    const auto id = static_cast<std::uint32_t>(rep.coset_sizes.size());
    std::unordered_set<Mat, MatHash> orbit;
    bfs(F, gens, x, order, orbit, [](const Mat&) { return false; });
    for (const Mat& y : orbit) coset_of.emplace(y, id);
    rep.coset_sizes.push_back(orbit.size());
    return id;
  };

  std::map<OmegaIndex, std::pair<std::uint64_t, std::unordered_set<std::uint32_t>>> by_index;
  for_each_representative(ctx, UINT64_MAX,
                          [&](const OmegaIndex& idx, const Mat&, const Mat&, const Mat& gamma) {
                            const auto it = coset_of.find(gamma);
                            const std::uint32_t id = it == coset_of.end() ? claim(gamma) : it->second;
                            rep.representative_coset.push_back(id);
                            auto& slot = by_index[idx];
                            ++slot.first;
                            slot.second.insert(id);
                          });
  rep.representatives = rep.representative_coset.size();
  rep.distinct_cosets = rep.coset_sizes.size();
  for (const auto& [idx, slot] : by_index)
    rep.per_index.push_back({idx, slot.first, slot.second.size()});
  rep.covered = coset_of.size();

  if (rep.covered < order) {
    std::unordered_set<Mat, MatHash> rest;
    matrix::for_each_gl(F, N, [&](const Mat& x) {
      if (!coset_of.count(x) && !rest.count(x)) {
        bfs(F, gens, x, order, rest, [](const Mat&) { return false; });
        ++rep.missing_cosets;
      }
      return true;
    });
  }
  return rep;
}

// ----------------------------------------------------- necessary conditions

ConditionReport necessary_conditions(const ShalikaContext& ctx, const CosetRecord& record) {
  const int n = ctx.n(), m = ctx.m();
  const OmegaIndex& x = record.index;
  const Mat& g = record.rep;
  const int N = n + m;
  ConditionReport out;

  const int width = x.t + x.k1 - x.k2;
  for (int i = 0; i < N; ++i) {
    bool lead_zero = true;
    for (int j = 0; j < n && lead_zero; ++j) lead_zero = g.code(i, j) == 0;
    if (!lead_zero) continue;
    for (int j = 2 * n - width; j < 2 * n; ++j)
      if (g.code(i, j) != 0) out.vanishing_rows = false;
  }
  for (int j = 0; j < N; ++j) {
    bool mid_zero = true;
    for (int i = n; i < 2 * n && mid_zero; ++i) mid_zero = g.code(i, j) == 0;
    if (!mid_zero) continue;
    for (int i = n - x.s; i < n; ++i)
      if (g.code(i, j) != 0) out.vanishing_columns = false;
  }

  const BlockSplit sp = block_split(n, m, x);
  const auto yb = matrix::partition(record.y, sp.y_rows, sp.y_cols);
  const auto zb = matrix::partition(record.z, sp.z_rows, sp.z_cols);
  out.vanishing_corners = matrix::is_zero(zb[2]) && matrix::is_zero(zb[8]) &&
                          matrix::is_zero(yb[7]) && matrix::is_zero(yb[8]);
  out.matching_cross_blocks = yb[1] == zb[1];
  out.degenerate_case = matrix::is_zero(yb[1]) && matrix::is_zero(zb[1]) &&
                        n - x.t - x.k1 > 0 && n - x.k2 - x.s > 0;
  if (out.degenerate_case) out.degenerate_offsets = x.s == 0 && width == 0;
  return out;
}

}  // namespace gelfand::cosets
