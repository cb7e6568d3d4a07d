#ifndef GELFAND_COSETS_HPP
#define GELFAND_COSETS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gelfand/matrix.hpp"
#include "gelfand/shalika.hpp"

namespace gelfand::cosets {

using ff::Field;
using ff::UnityRoot;
using matrix::Mat;
using shalika::Flavor;
using shalika::HCharData;
using shalika::ShalikaContext;
using shalika::Twist;

inline constexpr std::uint64_t kDefaultMaxSubgroupOrder = 1000000;
inline constexpr std::uint64_t kDefaultMaxGroupOrder = 100000;

/// (h1, h2) with h1 in H', h2 in H, acting by x -> h1 x h2^{-1}.
using Pair = std::pair<Mat, Mat>;

// ------------------------------------------------------------ Omega, sigma

struct OmegaIndex {
  int k1 = 0;
  int k2 = 0;
  int t = 0;
  int s = 0;

  friend bool operator==(const OmegaIndex&, const OmegaIndex&) = default;
  friend auto operator<=>(const OmegaIndex&, const OmegaIndex&) = default;
  std::string to_string() const;
};

bool in_omega(int n, int m, const OmegaIndex& idx);
/// All of Omega for (n, m), lexicographic in (k1, k2, t, s).
std::vector<OmegaIndex> omega_enumerate(int n, int m);

/// The permutation matrix sigma_{k1,k2,t,s}. Rows come in nine blocks of
/// sizes (k1, n-t-k1, t | n-k2-s, k2, s | m-n-s-t, k2-k1+s, k1-k2+t) and
/// columns in (k2, n-t-k1, k1-k2+t | n-k2-s, k1, k2-k1+s | m-n-s-t, s, t).
/// Throws DomainError outside Omega.
Mat sigma_matrix(int n, int m, const OmegaIndex& idx);

/// diag(Y, I_m) sigma diag(I_n, Z, I_{m-n}).
Mat gamma_matrix(const Field& F, int n, int m, const Mat& y, const Mat& z,
                 const OmegaIndex& idx);

/// Partitions of Y and Z into 3 x 3 blocks, read off from where sigma sends
/// the blocks of Y and Z inside gamma.
struct BlockSplit {
  std::vector<int> y_rows, y_cols, z_rows, z_cols;
};
BlockSplit block_split(int n, int m, const OmegaIndex& idx);

/// Number of representatives |GL_n|^2 |Omega|.
std::uint64_t representative_count(const ShalikaContext& ctx);

/// Calls fn(idx, Y, Z, gamma) for idx in Omega order, then Y, then Z in GL_n
/// enumeration order.
void for_each_representative(
    const ShalikaContext& ctx, std::uint64_t budget,
    const std::function<void(const OmegaIndex&, const Mat&, const Mat&, const Mat&)>& fn);

// ----------------------------------------------------------- orbit search

/// The double coset H' x H, sorted. Throws BudgetExceeded when it grows past
/// orbit_budget elements.
std::vector<Mat> double_coset(const ShalikaContext& ctx, const Mat& x,
                              std::uint64_t orbit_budget);
/// y in H' x H, by breadth-first search from x under left multiplication by
/// generators of H' and right multiplication by generators of H.
bool same_coset(const ShalikaContext& ctx, const Mat& x, const Mat& y,
                std::uint64_t orbit_budget);

// ------------------------------------------------- stabilizers, witnesses

struct Admissibility {
  bool admissible = true;
  std::optional<Pair> violation;
};

struct TwistOutcome {
  Twist twist;
  bool admissible = true;            // under the requested flavor
  std::optional<Pair> violation;     // first stabilizer pair with nontrivial character
  std::optional<Pair> witness;       // first transporter pair with trivial psi
};

struct Analysis {
  /// Absent when the pass stopped early: psi_u is trivial (n = 0), so
  /// admissibility needs no stabilizer and the search ends at the last witness.
  std::optional<std::uint64_t> stabilizer_size;
  std::optional<std::uint64_t> transporter_size;
  std::uint64_t visited = 0;
  std::vector<TwistOutcome> outcomes;
};

/// Stabilizer and witness searches for a fixed (n, m, q). Admissibility and
/// witnesses for many twists come out of a single pass over H, since every
/// character of H factors through HCharData. H is materialized when
/// |H| <= max_subgroup_order and streamed otherwise; a streamed pass that
/// would visit more than max_subgroup_order elements throws BudgetExceeded.
class CosetEngine {
 public:
  CosetEngine(ShalikaContext ctx, std::uint64_t max_subgroup_order = kDefaultMaxSubgroupOrder);

  const ShalikaContext& context() const { return ctx_; }
  bool materialized() const { return !hs_.empty(); }

  /// Every (h1, h2) with h1 g h2^{-1} = g, ordered by h2.
  std::vector<Pair> stabilizer_pairs(const Mat& g) const;
  /// Against the context's twist.
  Admissibility is_admissible(const Mat& g, Flavor f) const;
  /// First (h1, h2) in H order with h1 g h2^{-1} = tau(g) and
  /// psi(tau(h1) h2^{-1}) = 1.
  std::optional<Pair> invariance_witness(const Mat& g) const;
  /// Admissibility under `flavor` and psi-witnesses for each twist.
  Analysis analyze(const Mat& g, const std::vector<Twist>& twists,
                   Flavor flavor = Flavor::kPsiU) const;

 private:
  Analysis pass(const Mat& g, const std::vector<Twist>& twists, Flavor flavor,
               bool need_stabilizer) const;
  // Calls fn(h2, data(h2)) in H order until it returns false.
  void scan(const std::function<bool(const Mat&, const HCharData&)>& fn) const;

  ShalikaContext ctx_;
  std::uint64_t budget_;
  std::vector<Mat> hs_;
  std::vector<HCharData> data_;
};

// --------------------------------------------------------------- records

struct CosetRecord {
  OmegaIndex index;
  Mat y, z, rep;
  bool admissible = true;
  std::optional<Pair> violation;
  std::optional<Pair> witness;
};

// ----------------------------------------------------------- completeness

struct IndexRedundancy {
  OmegaIndex index;
  std::uint64_t representatives = 0;
  std::uint64_t distinct_cosets = 0;
};

struct CompletenessReport {
  std::uint64_t group_order = 0;
  std::uint64_t representatives = 0;
  std::uint64_t distinct_cosets = 0;
  /// Sizes of the cosets in order of first appearance among representatives.
  std::vector<std::uint64_t> coset_sizes;
  std::uint64_t covered = 0;
  /// Cosets of G containing no representative.
  std::uint64_t missing_cosets = 0;
  /// Coset id of every representative, in for_each_representative order.
  std::vector<std::uint32_t> representative_coset;
  std::vector<IndexRedundancy> per_index;
  bool partition_ok() const { return missing_cosets == 0 && covered == group_order; }
};

/// Partitions G into H'-H double cosets from the representatives and checks
/// they cover G. Throws BudgetExceeded when |G| > max_group_order.
CompletenessReport completeness_check(const ShalikaContext& ctx,
                                      std::uint64_t max_group_order = kDefaultMaxGroupOrder);

// ----------------------------------------------------- necessary conditions

struct ConditionReport {
  /// A row whose first n entries vanish also vanishes in columns
  /// 2n+1-(t+k1-k2) .. 2n.
  bool vanishing_rows = true;
  /// A column vanishing in rows n+1 .. 2n also vanishes in rows n-s+1 .. n.
  bool vanishing_columns = true;
  /// Z3, Z9, Y8, Y9 are zero.
  bool vanishing_corners = true;
  /// Y2 = Z2.
  bool matching_cross_blocks = true;
  /// Y2 = Z2 = 0 with n-t-k1 > 0 and n-k2-s > 0.
  bool degenerate_case = false;
  /// s = t+k1-k2 = 0 (checked only in the degenerate case).
  bool degenerate_offsets = true;

  bool all() const {
    return vanishing_rows && vanishing_columns && vanishing_corners && matching_cross_blocks &&
           degenerate_offsets;
  }
};

/// Evaluates the structural consequences of psi_u-admissibility on gamma_{Y,Z,idx}.
ConditionReport necessary_conditions(const ShalikaContext& ctx, const CosetRecord& record);

}  // namespace gelfand::cosets

#endif  // GELFAND_COSETS_HPP
