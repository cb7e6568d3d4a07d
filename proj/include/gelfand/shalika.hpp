#ifndef GELFAND_SHALIKA_HPP
#define GELFAND_SHALIKA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gelfand/ff.hpp"
#include "gelfand/matrix.hpp"
#include "gelfand/rng.hpp"

namespace gelfand::shalika {

using ff::Field;
using ff::FqElem;
using ff::UnityRoot;
using matrix::Mat;

enum class Flavor { kPsi, kPsiU };

const char* flavor_name(Flavor f);

/// psi_1 = mult_character(., a1), psi_2 = mult_character(., a2), and
/// psi_0 = additive_character(., c) with c given by its code.
struct Twist {
  int a1 = 0;
  int a2 = 0;
  int c = 1;

  friend bool operator==(const Twist&, const Twist&) = default;
};

std::string to_string(const Twist& t);

/// Blocks of [[g, u, a], [0, g, b], [0, 0, k]].
struct HDecomposition {
  Mat g, u, a, b, k;
};

/// Everything a character of H depends on: tr(g^{-1} u), dlog det g and
/// dlog det k. h -> HCharData is a homomorphism into F_q x Z/(q-1) x Z/(q-1).
struct HCharData {
  FqElem trace_term;
  int dlog_g = 0;
  int dlog_k = 0;

  friend bool operator==(const HCharData&, const HCharData&) = default;
  friend auto operator<=>(const HCharData&, const HCharData&) = default;
};

/// G = GL_{n+m}(F_q) with the subgroup H = H_{n,m}, its image H' = tau(H)
/// and the twisted character psi.
class ShalikaContext {
 public:
  /// Throws ConfigError unless 0 <= n <= m, n + m <= kMaxDim and c != 0.
  ShalikaContext(Field field, int n, int m, Twist twist = {});

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return n_ + m_; }
  const Field& field() const { return field_; }
  const Twist& twist() const { return twist_; }
  ShalikaContext with_twist(Twist t) const { return ShalikaContext(field_, n_, m_, t); }

  /// Block decomposition when x is in H; throws DimensionError for a wrong
  /// shape.
  std::optional<HDecomposition> h_decompose(const Mat& x) const;
  bool h_contains(const Mat& x) const { return h_decompose(x).has_value(); }
  /// x in H' iff tau(x) in H.
  bool hprime_contains(const Mat& x) const { return h_contains(tau(x)); }
  Mat assemble(const HDecomposition& d) const;

  Mat tau(const Mat& g) const { return matrix::tau(g, n_, m_); }

  /// Character data of h; throws MembershipError when h is not in H.
  HCharData char_data(const Mat& h) const;
  HCharData char_data(const HDecomposition& d) const;
  /// Values under this context's twist.
  UnityRoot evaluate(const HCharData& d, Flavor f) const { return evaluate(d, f, twist_); }
  UnityRoot evaluate(const HCharData& d, Flavor f, const Twist& t) const;
  HCharData combine(const HCharData& x, const HCharData& y) const;
  HCharData invert(const HCharData& x) const;

  UnityRoot psi(const Mat& h) const { return evaluate(char_data(h), Flavor::kPsi); }
  UnityRoot psi_u(const Mat& h) const { return evaluate(char_data(h), Flavor::kPsiU); }
  UnityRoot character(const Mat& h, Flavor f) const { return evaluate(char_data(h), f); }
  /// psi(tau(h')); throws MembershipError when h' is not in H'.
  UnityRoot psi_tau(const Mat& hp) const;
  /// psi(tau(h1) h2^{-1}) (or psi_u) for h1 in H', h2 in H.
  UnityRoot action_character(const Mat& h1, const Mat& h2, Flavor f) const;

  /// |GL_n| |GL_{m-n}| q^{n^2 + 2n(m-n)}.
  std::uint64_t h_order() const;
  /// Elements of H, lexicographic in (g, k, u, a, b), each block in matrix
  /// code order. Throws BudgetExceeded when h_order() > budget.
  std::vector<Mat> h_elements(std::uint64_t budget) const;
  /// Streams H in the same order without a budget; stops once fn returns
  /// false. Returns false when stopped early.
  bool for_each_h(const std::function<bool(const Mat&)>& fn) const;
  /// Generating set: Levi generators embedded as diag(s, s, I) and
  /// diag(I, I, s'), plus one transvection per unipotent coordinate and
  /// F_p-basis element of F_q.
  std::vector<Mat> h_generators() const;
  std::vector<Mat> hprime_generators() const;
  Mat random_h(Rng& rng) const;
  Mat random_hprime(Rng& rng) const { return tau(random_h(rng)); }

  /// True when psi_u is the trivial character (no unipotent u-block, n = 0).
  bool psi_u_trivial() const { return n_ == 0; }

  /// Twists that give distinct characters: a1 ranges over Z/(q-1) only when
  /// n > 0, a2 only when m > n, c over F_q^x only when n > 0.
  std::vector<Twist> effective_twists() const;

 private:
  Field field_;
  int n_;
  int m_;
  Twist twist_;
};

/// Generators of GL_k: diag(w, 1, ..., 1) for the field generator w, the
/// elementary transvections I + E_12, I + E_21 and the k-cycle permutation.
std::vector<Mat> gl_generators(const Field& F, int k);

// ---------------------------------------------------------------- GK check

struct GkConjugators {
  Mat a;  // diag(w_{2n}, I_{m-n})
  Mat b;  // diag(I_n, -I_n, I_{m-n})
};

GkConjugators gk_conjugators(const ShalikaContext& ctx);

struct GkReport {
  std::uint64_t checked_g = 0;
  std::uint64_t checked_hprime = 0;
  std::uint64_t tau_failures = 0;
  std::uint64_t membership_failures = 0;
  std::uint64_t character_failures = 0;
  std::optional<Mat> first_failure;
  bool ok() const { return tau_failures + membership_failures + character_failures == 0; }
};

/// Checks tau(g) = a g^t a^{-1} on every g in `gs`, and for every h' in
/// `hps` that b tau(h'^{-1}) b^{-1} lies in H with psi equal to psi(tau(h')).
GkReport verify_gk_conditions(const ShalikaContext& ctx, const std::vector<Mat>& gs,
                              const std::vector<Mat>& hps);

// ---------------------------------------------------------------- Delta P

/// An element (g1, g2) of GL_n x GL_{n+m}, multiplied componentwise.
struct MatPair {
  Mat first;
  Mat second;

  friend bool operator==(const MatPair&, const MatPair&) = default;
  friend auto operator<=>(const MatPair&, const MatPair&) = default;
  std::size_t hash() const { return first.hash() * 1000003u ^ second.hash(); }
};

struct MatPairHash {
  std::size_t operator()(const MatPair& p) const { return p.hash(); }
};

struct Chi {
  int x1 = 0;
  int x2 = 0;
  friend bool operator==(const Chi&, const Chi&) = default;
};

/// Delta P_{n,m} = {(g1, [[g1, u], [0, g2]])} inside GL_n x GL_{n+m} with
/// chi(g1, [[g1, u], [0, g2]]) = chi_1(det g1)^{x1} chi_2(det g2)^{x2}.
class DeltaPContext {
 public:
  /// Throws ConfigError for negative sizes or n + m > kMaxDim.
  DeltaPContext(Field field, int n, int m, Chi chi = {});

  int n() const { return n_; }
  int m() const { return m_; }
  const Field& field() const { return field_; }
  const Chi& chi_params() const { return chi_; }

  MatPair mul(const MatPair& x, const MatPair& y) const;
  MatPair inverse(const MatPair& x) const;
  MatPair identity() const;

  /// Throws DimensionError when the pair has the wrong shape.
  bool contains(const MatPair& x) const;
  /// Throws MembershipError outside Delta P.
  UnityRoot chi(const MatPair& x) const;
  std::uint64_t order() const;
  /// Ordered lexicographically in (g1, g2, u). Throws BudgetExceeded.
  std::vector<MatPair> elements(std::uint64_t budget) const;
  std::vector<MatPair> generators() const;
  MatPair random_element(Rng& rng) const;
  /// GL_n x GL_{n+m} in lexicographic order. Throws BudgetExceeded.
  std::vector<MatPair> ambient_elements(std::uint64_t budget) const;
  std::uint64_t ambient_order() const;
  std::string format(const MatPair& x) const;

 private:
  Field field_;
  int n_;
  int m_;
  Chi chi_;
};

/// |GL_k(F_q)^{ab}| by brute-force normal closure of generator commutators.
/// Throws BudgetExceeded when |GL_k| > budget.
std::uint64_t gl_abelianization_order(const Field& F, int k, std::uint64_t budget);

/// Whether the determinant characters exhaust the characters of Delta P
/// trivial on its unipotent part, i.e. |GL_n^{ab}| = |GL_m^{ab}| = q - 1
/// (a trivial factor counts as exhausted).
bool deltap_det_family_exhaustive(const DeltaPContext& ctx, std::uint64_t budget);

}  // namespace gelfand::shalika

#endif  // GELFAND_SHALIKA_HPP
