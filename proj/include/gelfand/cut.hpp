#ifndef GELFAND_CUT_HPP
#define GELFAND_CUT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gelfand/cosets.hpp"

namespace gelfand::cut {

using cosets::Pair;
using ff::Field;
using matrix::Mat;
using shalika::Flavor;
using shalika::HCharData;
using shalika::ShalikaContext;
using shalika::Twist;

// ------------------------------------------------------------- eta shape

/// Blocks of eta_{A0,B0,A'0,B'0}. Rows and columns are partitioned as
/// (k, n-k | n-k, k | m-n-t, t); A0 sits in block (1,4), A'0 = a1 in (1,6),
/// B0 in (4,1), B'0 = b1 in (6,4), identities in (2,2), (3,3), (5,5).
struct EtaShape {
  int k = 0;
  int t = 0;
  Mat a0, b0;  // k x k
  Mat a1;      // k x t
  Mat b1;      // t x k
};

/// n/2 <= k <= n, 0 <= t <= min(m-n, k).
bool eta_params_valid(int n, int m, int k, int t);
/// Throws ShapeError for invalid parameters or block sizes.
Mat eta_matrix(int n, int m, const EtaShape& e);
/// The blocks of x when x has the eta shape for (k, t); absent otherwise.
std::optional<EtaShape> eta_decompose(int n, int m, int k, int t, const Mat& x);
/// Every invertible eta for (n, m) over F, ordered by (k, t) then block codes.
std::vector<Mat> eta_enumerate(const Field& F, int n, int m);

/// Top-left 2n x 2n block.
Mat cut(const Mat& x, int n);
/// The H_{n,n} context a cut matrix lives in: twist (a1, 0, c).
ShalikaContext cut_context(const ShalikaContext& ctx);

/// Whether e is in reduced form: A0 = E_{S1,S2}(P) for S1, S2 in [k] of size
/// k - t and a permutation matrix P, a1 = E_{S1^c,[t]}(I_t) and
/// b1 = E_{[t],S2^c}(I_t).
bool is_reduced(const EtaShape& e);

struct ReducedForm {
  Mat matrix;
  int k = 0;
  int t = 0;
};

/// A reduced eta in the double coset of x, which must be an eta for (k, t).
/// Prefers the least reduced eta of the same (k, t); when there is none (the
/// rank of A0 can exceed k - t), falls back to the least reduced eta of any
/// valid shape. Throws ShapeError when x is not an eta for (k, t) or the
/// coset holds no reduced eta at all.
ReducedForm reduced_form(const ShalikaContext& ctx, const Mat& x, int k, int t,
                         std::uint64_t orbit_budget);

// --------------------------------------------------- action on all of Mat

/// h1 x h2^{-1} for h1 in H', h2 in H and any square x of size n + m.
/// Throws MembershipError.
Mat extended_action(const ShalikaContext& ctx, const Mat& h1, const Mat& h2, const Mat& x);

/// Admissibility and invariance for arbitrary (possibly singular) square
/// matrices, decided over all pairs (h1, h2) in H' x H by matching h1 x
/// against x h2 and tau(x) h2. Independent of CosetEngine, which needs x
/// invertible.
class MatActionOracle {
 public:
  /// Throws BudgetExceeded when |H| > budget.
  MatActionOracle(ShalikaContext ctx, std::uint64_t budget);

  const ShalikaContext& context() const { return ctx_; }
  /// Per twist: the character of every pair fixing x is trivial.
  std::vector<bool> admissible(const Mat& x, Flavor f, const std::vector<Twist>& twists) const;
  /// Per twist: some pair sends x to tau(x) with trivial psi.
  std::vector<bool> invariant(const Mat& x, const std::vector<Twist>& twists) const;

 private:
  // Distinct character data of the pairs (h1, h2) with h1 x = y h2.
  std::vector<HCharData> transporter_data(const Mat& x, const Mat& y) const;

  ShalikaContext ctx_;
  std::vector<Mat> hs_;
  std::vector<HCharData> data_;
};

// ------------------------------------------------ brute-force structure

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
  void fail(std::string what);
};

/// For every invertible eta at (n, m) and every twist: admissibility (both
/// flavors) and invariance of eta in GL_{n+m} agree with those of cut(eta) in
/// Mat_{2n}. Also cross-checks the oracle against CosetEngine on eta.
Tally cut_equivalence_check(const Field& F, int n, int m, std::uint64_t budget);

/// For every x = A (+)_{S1,S2} B welded along S2 = S0 u (S0+n) u (Sbar+2n)
/// and S1 its mirror on [2n], with A, B invertible: admissible(x) implies
/// admissible(A) and admissible(B) (both flavors), and invariant(A) and
/// invariant(B) imply invariant(x). Every twist of (n, m).
Tally weld_inheritance_check(const Field& F, int n, int m, std::uint64_t budget);

struct ReducedFormSurvey {
  Tally tally;  // failures: no reduced eta in the coset, or it left the coset
  std::uint64_t same_shape = 0;
  std::uint64_t other_shape = 0;
};

/// Reduced forms exist for every invertible eta at (n, m); counts how often
/// the same (k, t) suffices.
ReducedFormSurvey reduced_form_check(const Field& F, int n, int m, std::uint64_t budget);

}  // namespace gelfand::cut

#endif  // GELFAND_CUT_HPP
