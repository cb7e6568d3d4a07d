#include "gelfand/shalika.hpp"

#include <deque>
#include <unordered_set>

#include "gelfand/errors.hpp"

namespace gelfand::shalika {

using matrix::block_diag;
using matrix::extract;
using matrix::gl_elements;
using matrix::gl_order;
using matrix::MatHash;
using matrix::matrix_count;
using matrix::matrix_from_index;

const char* flavor_name(Flavor f) { return f == Flavor::kPsi ? "psi" : "psi_u"; }

std::string to_string(const Twist& t) {
  return "a1=" + std::to_string(t.a1) + ",a2=" + std::to_string(t.a2) +
         ",c=" + std::to_string(t.c);
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

int mod(int v, int n) { return ((v % n) + n) % n; }

// Field-generator dlog of det(x), 0 for the empty matrix.
int dlog_det(const Field& F, const Mat& x) {
  if (x.rows() == 0) return 0;
  return F.dlog(matrix::det(F, x));
}

// F_p-basis 1, x, ..., x^{k-1} of F_q as element codes.
std::vector<FqElem> prime_basis(const Field& F) {
  std::vector<FqElem> out;
  int code = 1;
  for (int i = 0; i < F.k(); ++i) {
    out.push_back(F.from_code(code));
    code *= F.p();
  }
  return out;
}

Mat transvection(int N, int i, int j, FqElem beta) {
  Mat t = Mat::identity(N);
  t.set(i, j, beta);
  return t;
}

}  // namespace

// ------------------------------------------------------------ generators

std::vector<Mat> gl_generators(const Field& F, int k) {
  std::vector<Mat> gens;
  if (k == 0) return gens;
  Mat d = Mat::identity(k);
  d.set(0, 0, F.generator());
  gens.push_back(d);
  if (k >= 2) {
    gens.push_back(transvection(k, 0, 1, F.one()));
    gens.push_back(transvection(k, 1, 0, F.one()));
    std::vector<int> cycle(k);
    for (int i = 0; i < k; ++i) cycle[i] = (i + 1) % k + 1;
    gens.push_back(matrix::perm_matrix(cycle));
  }
  return gens;
}

// --------------------------------------------------------- ShalikaContext

ShalikaContext::ShalikaContext(Field field, int n, int m, Twist twist)
    : field_(std::move(field)), n_(n), m_(m), twist_(twist) {
  if (n < 0 || m < n)
    throw ConfigError("Shalika context needs 0 <= n <= m (got n=" +
                      std::to_string(n) + ", m=" + std::to_string(m) + ")");
  if (n + m > matrix::kMaxDim)
    throw ConfigError("n + m exceeds the supported matrix size");
  if (twist.c <= 0 || twist.c >= field_.q())
    throw ConfigError("additive twist c must be a nonzero element code");
  const int e = field_.q() - 1;
  twist_.a1 = mod(twist.a1, e);
  twist_.a2 = mod(twist.a2, e);
}

std::optional<HDecomposition> ShalikaContext::h_decompose(const Mat& x) const {
  const int N = dim();
  if (x.rows() != N || x.cols() != N)
    throw DimensionError("element is not (n+m) x (n+m)");
  const int n = n_, r = m_ - n_;
  // Lower block triangle must vanish.
  for (int i = n; i < N; ++i) {
    const int zero_cols = i < 2 * n ? n : 2 * n;
    for (int j = 0; j < zero_cols; ++j)
      if (x.code(i, j) != 0) return std::nullopt;
  }
  HDecomposition d{extract(x, 0, 0, n, n), extract(x, 0, n, n, n),
                   extract(x, 0, 2 * n, n, r), extract(x, n, 2 * n, n, r),
                   extract(x, 2 * n, 2 * n, r, r)};
  if (extract(x, n, n, n, n) != d.g) return std::nullopt;
  if (!matrix::is_invertible(field_, d.g) || !matrix::is_invertible(field_, d.k))
    return std::nullopt;
  return d;
}

Mat ShalikaContext::assemble(const HDecomposition& d) const {
  const int n = n_, r = m_ - n_;
  return matrix::assemble({{d.g, d.u, d.a},
                           {Mat(n, n), d.g, d.b},
                           {Mat(r, n), Mat(r, n), d.k}});
}

HCharData ShalikaContext::char_data(const HDecomposition& d) const {
  HCharData out;
  if (n_ > 0) {
    out.trace_term =
        matrix::trace(field_, matrix::mul(field_, matrix::inverse(field_, d.g), d.u));
    out.dlog_g = dlog_det(field_, d.g);
  }
  out.dlog_k = dlog_det(field_, d.k);
  return out;
}

HCharData ShalikaContext::char_data(const Mat& h) const {
  const auto d = h_decompose(h);
  if (!d) throw MembershipError("element is not in H");
  return char_data(*d);
}

UnityRoot ShalikaContext::evaluate(const HCharData& d, Flavor f, const Twist& t) const {
  UnityRoot v = field_.additive_character(d.trace_term, field_.from_code(t.c));
  if (f == Flavor::kPsi) {
    const int e = field_.q() - 1;
    v *= UnityRoot::from_fraction(static_cast<std::int64_t>(t.a1) * d.dlog_g, e);
    if (m_ > n_) v *= UnityRoot::from_fraction(static_cast<std::int64_t>(t.a2) * d.dlog_k, e);
  }
  return v;
}

HCharData ShalikaContext::combine(const HCharData& x, const HCharData& y) const {
  const int e = field_.q() - 1;
  return HCharData{field_.add(x.trace_term, y.trace_term), mod(x.dlog_g + y.dlog_g, e),
                   mod(x.dlog_k + y.dlog_k, e)};
}

HCharData ShalikaContext::invert(const HCharData& x) const {
  const int e = field_.q() - 1;
  return HCharData{field_.neg(x.trace_term), mod(-x.dlog_g, e), mod(-x.dlog_k, e)};
}

UnityRoot ShalikaContext::psi_tau(const Mat& hp) const {
  const auto d = h_decompose(tau(hp));
  if (!d) throw MembershipError("element is not in H'");
  return evaluate(char_data(*d), Flavor::kPsi);
}

UnityRoot ShalikaContext::action_character(const Mat& h1, const Mat& h2, Flavor f) const {
  if (!hprime_contains(h1)) throw MembershipError("h1 is not in H'");
  if (!h_contains(h2)) throw MembershipError("h2 is not in H");
  const Mat x = matrix::mul(field_, tau(h1), matrix::inverse(field_, h2));
  return evaluate(char_data(x), f);
}

std::uint64_t ShalikaContext::h_order() const {
  const int q = field_.q(), r = m_ - n_;
  std::uint64_t out = saturating_mul(gl_order(q, n_), gl_order(q, r));
  out = saturating_mul(out, matrix_count(q, n_, n_));
  out = saturating_mul(out, matrix_count(q, n_, r));
  return saturating_mul(out, matrix_count(q, n_, r));
}

std::vector<Mat> ShalikaContext::h_elements(std::uint64_t budget) const {
  const std::uint64_t order = h_order();
  if (order > budget)
    throw BudgetExceeded("|H| = " + std::to_string(order) + " exceeds the budget " +
                         std::to_string(budget));
  const int q = field_.q(), n = n_, r = m_ - n_;
  const auto gs = gl_elements(field_, n, budget);
  const auto ks = gl_elements(field_, r, budget);
  const std::uint64_t nu = matrix_count(q, n, n), na = matrix_count(q, n, r);
  std::vector<Mat> us, as;
  for (std::uint64_t i = 0; i < nu; ++i) us.push_back(matrix_from_index(field_, n, n, i));
  for (std::uint64_t i = 0; i < na; ++i) as.push_back(matrix_from_index(field_, n, r, i));
  std::vector<Mat> out;
  out.reserve(order);
  HDecomposition d;
  for (const Mat& g : gs) {
    d.g = g;
    for (const Mat& k : ks) {
      d.k = k;
      for (const Mat& u : us) {
        d.u = u;
        for (const Mat& a : as) {
          d.a = a;
          for (const Mat& b : as) {
            d.b = b;
            out.push_back(assemble(d));
          }
        }
      }
    }
  }
  return out;
}

bool ShalikaContext::for_each_h(const std::function<bool(const Mat&)>& fn) const {
  const int q = field_.q(), n = n_, r = m_ - n_;
  const std::uint64_t nu = matrix_count(q, n, n), na = matrix_count(q, n, r);
  HDecomposition d;
  return matrix::for_each_gl(field_, n, [&](const Mat& g) {
    d.g = g;
    return matrix::for_each_gl(field_, r, [&](const Mat& k) {
      d.k = k;
      for (std::uint64_t iu = 0; iu < nu; ++iu) {
        d.u = matrix_from_index(field_, n, n, iu);
        for (std::uint64_t ia = 0; ia < na; ++ia) {
          d.a = matrix_from_index(field_, n, r, ia);
          for (std::uint64_t ib = 0; ib < na; ++ib) {
            d.b = matrix_from_index(field_, n, r, ib);
            if (!fn(assemble(d))) return false;
          }
        }
      }
      return true;
    });
  });
}

std::vector<Mat> ShalikaContext::h_generators() const {
  const int n = n_, r = m_ - n_, N = dim();
  std::vector<Mat> gens;
  for (const Mat& s : gl_generators(field_, n))
    gens.push_back(block_diag({s, s, Mat::identity(r)}));
  for (const Mat& s : gl_generators(field_, r))
    gens.push_back(block_diag({Mat::identity(2 * n), s}));
  const auto basis = prime_basis(field_);
  for (const FqElem beta : basis) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gens.push_back(transvection(N, i, n + j, beta));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        gens.push_back(transvection(N, i, 2 * n + j, beta));
        gens.push_back(transvection(N, n + i, 2 * n + j, beta));
      }
  }
  return gens;
}

std::vector<Mat> ShalikaContext::hprime_generators() const {
  std::vector<Mat> out;
  for (const Mat& g : h_generators()) out.push_back(tau(g));
  return out;
}

Mat ShalikaContext::random_h(Rng& rng) const {
  const int n = n_, r = m_ - n_;
  HDecomposition d{matrix::random_gl(field_, n, rng), matrix::random_matrix(field_, n, n, rng),
                   matrix::random_matrix(field_, n, r, rng),
                   matrix::random_matrix(field_, n, r, rng), matrix::random_gl(field_, r, rng)};
  return assemble(d);
}

std::vector<Twist> ShalikaContext::effective_twists() const {
  const int e = field_.q() - 1;
  std::vector<Twist> out;
  const int na1 = n_ > 0 ? e : 1;
  const int na2 = m_ > n_ ? e : 1;
  const int nc = n_ > 0 ? field_.q() - 1 : 1;
  for (int a1 = 0; a1 < na1; ++a1)
    for (int a2 = 0; a2 < na2; ++a2)
      for (int c = 1; c <= nc; ++c) out.push_back(Twist{a1, a2, c});
  return out;
}

// -------------------------------------------------------------- GK check

GkConjugators gk_conjugators(const ShalikaContext& ctx) {
  const Field& F = ctx.field();
  const int n = ctx.n(), r = ctx.m() - ctx.n();
  return GkConjugators{
      block_diag({matrix::w(2 * n), Mat::identity(r)}),
      block_diag({Mat::identity(n), matrix::scalar(n, F.neg(F.one())), Mat::identity(r)})};
}

GkReport verify_gk_conditions(const ShalikaContext& ctx, const std::vector<Mat>& gs,
                              const std::vector<Mat>& hps) {
  const Field& F = ctx.field();
  const auto [a, b] = gk_conjugators(ctx);
  const Mat ainv = matrix::inverse(F, a), binv = matrix::inverse(F, b);
  GkReport rep;
  for (const Mat& g : gs) {
    ++rep.checked_g;
    if (ctx.tau(g) != matrix::mul(F, matrix::mul(F, a, matrix::transpose(g)), ainv)) {
      ++rep.tau_failures;
      if (!rep.first_failure) rep.first_failure = g;
    }
  }
  for (const Mat& hp : hps) {
    ++rep.checked_hprime;
    const Mat x =
        matrix::mul(F, matrix::mul(F, b, ctx.tau(matrix::inverse(F, hp))), binv);
    if (!ctx.h_contains(x)) {
      ++rep.membership_failures;
      if (!rep.first_failure) rep.first_failure = hp;
      continue;
    }
    if (ctx.psi(x) != ctx.psi_tau(hp)) {
      ++rep.character_failures;
      if (!rep.first_failure) rep.first_failure = hp;
    }
  }
  return rep;
}

// --------------------------------------------------------------- Delta P

DeltaPContext::DeltaPContext(Field field, int n, int m, Chi chi)
    : field_(std::move(field)), n_(n), m_(m), chi_(chi) {
  if (n < 0 || m < 0) throw ConfigError("Delta P sizes must be non-negative");
  if (n + m > matrix::kMaxDim) throw ConfigError("n + m exceeds the supported matrix size");
  const int e = field_.q() - 1;
  chi_.x1 = mod(chi.x1, e);
  chi_.x2 = mod(chi.x2, e);
}

MatPair DeltaPContext::mul(const MatPair& x, const MatPair& y) const {
  return MatPair{matrix::mul(field_, x.first, y.first),
                 matrix::mul(field_, x.second, y.second)};
}

MatPair DeltaPContext::inverse(const MatPair& x) const {
  return MatPair{matrix::inverse(field_, x.first), matrix::inverse(field_, x.second)};
}

MatPair DeltaPContext::identity() const {
  return MatPair{Mat::identity(n_), Mat::identity(n_ + m_)};
}

bool DeltaPContext::contains(const MatPair& x) const {
  if (x.first.rows() != n_ || x.first.cols() != n_ || x.second.rows() != n_ + m_ ||
      x.second.cols() != n_ + m_)
    throw DimensionError("pair is not in GL_n x GL_{n+m}");
  if (!matrix::is_invertible(field_, x.first)) return false;
  if (extract(x.second, 0, 0, n_, n_) != x.first) return false;
  if (!matrix::is_zero(extract(x.second, n_, 0, m_, n_))) return false;
  return matrix::is_invertible(field_, extract(x.second, n_, n_, m_, m_));
}

UnityRoot DeltaPContext::chi(const MatPair& x) const {
  if (!contains(x)) throw MembershipError("pair is not in Delta P");
  const int e = field_.q() - 1;
  const int d1 = dlog_det(field_, x.first);
  const int d2 = dlog_det(field_, extract(x.second, n_, n_, m_, m_));
  return UnityRoot::from_fraction(static_cast<std::int64_t>(chi_.x1) * d1 +
                                      static_cast<std::int64_t>(chi_.x2) * d2,
                                  e);
}

std::uint64_t DeltaPContext::order() const {
  const int q = field_.q();
  return saturating_mul(saturating_mul(gl_order(q, n_), gl_order(q, m_)),
                        matrix_count(q, n_, m_));
}

std::vector<MatPair> DeltaPContext::elements(std::uint64_t budget) const {
  if (order() > budget)
    throw BudgetExceeded("|Delta P| = " + std::to_string(order()) +
                         " exceeds the budget " + std::to_string(budget));
  std::vector<MatPair> out;
  const auto g1s = gl_elements(field_, n_, budget);
  const auto g2s = gl_elements(field_, m_, budget);
  const std::uint64_t nu = matrix_count(field_.q(), n_, m_);
  for (const Mat& g1 : g1s)
    for (const Mat& g2 : g2s)
      for (std::uint64_t i = 0; i < nu; ++i) {
        const Mat u = matrix_from_index(field_, n_, m_, i);
        out.push_back(MatPair{g1, matrix::assemble({{g1, u}, {Mat(m_, n_), g2}})});
      }
  return out;
}

std::vector<MatPair> DeltaPContext::generators() const {
  std::vector<MatPair> gens;
  for (const Mat& s : gl_generators(field_, n_))
    gens.push_back(MatPair{s, block_diag({s, Mat::identity(m_)})});
  for (const Mat& s : gl_generators(field_, m_))
    gens.push_back(MatPair{Mat::identity(n_), block_diag({Mat::identity(n_), s})});
  for (const FqElem beta : prime_basis(field_))
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < m_; ++j)
        gens.push_back(MatPair{Mat::identity(n_), transvection(n_ + m_, i, n_ + j, beta)});
  return gens;
}

MatPair DeltaPContext::random_element(Rng& rng) const {
  const Mat g1 = matrix::random_gl(field_, n_, rng);
  const Mat g2 = matrix::random_gl(field_, m_, rng);
  const Mat u = matrix::random_matrix(field_, n_, m_, rng);
  return MatPair{g1, matrix::assemble({{g1, u}, {Mat(m_, n_), g2}})};
}

std::uint64_t DeltaPContext::ambient_order() const {
  return saturating_mul(gl_order(field_.q(), n_), gl_order(field_.q(), n_ + m_));
}

std::vector<MatPair> DeltaPContext::ambient_elements(std::uint64_t budget) const {
  if (ambient_order() > budget)
    throw BudgetExceeded("|GL_n x GL_{n+m}| = " + std::to_string(ambient_order()) +
                         " exceeds the budget " + std::to_string(budget));
  const auto a = gl_elements(field_, n_, budget);
  const auto b = gl_elements(field_, n_ + m_, budget);
  std::vector<MatPair> out;
  out.reserve(a.size() * b.size());
  for (const Mat& x : a)
    for (const Mat& y : b) out.push_back(MatPair{x, y});
  return out;
}

std::string DeltaPContext::format(const MatPair& x) const {
  return "(" + matrix::format(field_, x.first) + "," + matrix::format(field_, x.second) + ")";
}

// ------------------------------------------------------- abelianization

std::uint64_t gl_abelianization_order(const Field& F, int k, std::uint64_t budget) {
  const std::uint64_t order = gl_order(F.q(), k);
  if (order > budget)
    throw BudgetExceeded("|GL_" + std::to_string(k) + "| exceeds the budget");
  if (k == 0) return 1;
  const auto gens = gl_generators(F, k);
  std::vector<Mat> gens_inv;
  for (const Mat& g : gens) gens_inv.push_back(matrix::inverse(F, g));
  std::vector<Mat> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      comms.push_back(matrix::mul(
          F, matrix::mul(F, gens[i], gens[j]), matrix::mul(F, gens_inv[i], gens_inv[j])));
  // Smallest set containing I closed under right multiplication by the
  // commutators and conjugation by generators: the derived subgroup.
  std::unordered_set<Mat, MatHash> seen{Mat::identity(k)};
  std::deque<Mat> queue{Mat::identity(k)};
  auto visit = [&](Mat y) {
    if (seen.insert(y).second) queue.push_back(std::move(y));
  };
  while (!queue.empty()) {
    const Mat x = queue.front();
    queue.pop_front();
    for (const Mat& c : comms) visit(matrix::mul(F, x, c));
    for (std::size_t i = 0; i < gens.size(); ++i)
      visit(matrix::mul(F, matrix::mul(F, gens[i], x), gens_inv[i]));
  }
  return order / seen.size();
}

bool deltap_det_family_exhaustive(const DeltaPContext& ctx, std::uint64_t budget) {
  const Field& F = ctx.field();
  const std::uint64_t e = static_cast<std::uint64_t>(F.q() - 1);
  auto ok = [&](int k) { return k == 0 || gl_abelianization_order(F, k, budget) == e; };
  return ok(ctx.n()) && ok(ctx.m());
}

}  // namespace gelfand::shalika
