#ifndef GELFAND_HECKE_HPP
#define GELFAND_HECKE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gelfand/cyclotomic.hpp"
#include "gelfand/shalika.hpp"

namespace gelfand::hecke {

using ff::Field;
using matrix::Mat;
using shalika::DeltaPContext;
using shalika::MatPair;
using shalika::ShalikaContext;

inline constexpr std::uint64_t kDefaultMaxHeckeOrder = 25000;

/// lcm(p, q - 1): every character value of H lies in mu_N.
int conductor(const Field& F);

// ------------------------------------------------------------- models
//
// A model is a finite group G, a subgroup H with generators, and a character
// of H with values in mu_N.

/// G = GL_{n+m}(F_q), H = H_{n,m}, the character psi of the context's twist.
class ShalikaModel {
 public:
  using Elem = Mat;
  using Hash = matrix::MatHash;

  explicit ShalikaModel(ShalikaContext ctx) : ctx_(std::move(ctx)) {}

  const ShalikaContext& context() const { return ctx_; }
  const Field& field() const { return ctx_.field(); }
  std::uint64_t group_order() const;
  std::vector<Elem> group_elements(std::uint64_t budget) const;
  std::vector<Elem> subgroup_elements(std::uint64_t budget) const;
  std::vector<Elem> generators() const { return ctx_.h_generators(); }
  Elem mul(const Elem& a, const Elem& b) const { return matrix::mul(field(), a, b); }
  Elem inverse(const Elem& a) const { return matrix::inverse(field(), a); }
  /// psi(h) as a power of zeta_N.
  int character_exponent(const Elem& h, int N) const;
  std::string format(const Elem& x) const { return matrix::format(field(), x); }

 private:
  ShalikaContext ctx_;
};

/// G = GL_n x GL_{n+m}, H = Delta P_{n,m}, the character chi.
class DeltaPModel {
 public:
  using Elem = MatPair;
  using Hash = shalika::MatPairHash;

  explicit DeltaPModel(DeltaPContext ctx) : ctx_(std::move(ctx)) {}

  const DeltaPContext& context() const { return ctx_; }
  const Field& field() const { return ctx_.field(); }
  std::uint64_t group_order() const { return ctx_.ambient_order(); }
  std::vector<Elem> group_elements(std::uint64_t budget) const {
    return ctx_.ambient_elements(budget);
  }
  std::vector<Elem> subgroup_elements(std::uint64_t budget) const {
    return ctx_.elements(budget);
  }
  std::vector<Elem> generators() const { return ctx_.generators(); }
  Elem mul(const Elem& a, const Elem& b) const { return ctx_.mul(a, b); }
  Elem inverse(const Elem& a) const { return ctx_.inverse(a); }
  int character_exponent(const Elem& h, int N) const;
  std::string format(const Elem& x) const { return ctx_.format(x); }

 private:
  DeltaPContext ctx_;
};

// ------------------------------------------------------------- geometry

/// The character-independent part: G enumerated and sorted, inverses,
/// multiplication tables for the generators of H, and the H-H double coset
/// partition. Shared by every character on the same (G, H).
template <class Model>
class HeckeGeometry {
 public:
  using Elem = typename Model::Elem;

  /// Keeps a pointer to model for products. Throws BudgetExceeded when
  /// |G| > max_group_order.
  HeckeGeometry(const Model& model, std::uint64_t max_group_order);

  std::size_t group_order() const { return elems_.size(); }
  std::size_t subgroup_order() const { return subgroup_.size(); }
  std::size_t coset_count() const { return coset_members_.size(); }
  const Elem& element(std::size_t i) const { return elems_[i]; }
  std::size_t index_of(const Elem& x) const { return index_.at(x); }
  std::uint32_t coset_of(std::size_t i) const { return coset_[i]; }
  /// Members of coset c, ascending; the first is its least element.
  const std::vector<std::uint32_t>& coset_members(std::size_t c) const {
    return coset_members_[c];
  }

  // Internal tables, exposed for the algebra builder.
  const std::vector<std::uint32_t>& inverse_index() const { return inverse_; }
  const std::vector<std::uint32_t>& subgroup() const { return subgroup_; }
  const std::vector<Elem>& generators() const { return gens_; }
  /// left_[g][x] = index of gens[g] * x, right_[g][x] = x * gens[g].
  const std::vector<std::vector<std::uint32_t>>& left() const { return left_; }
  const std::vector<std::vector<std::uint32_t>>& right() const { return right_; }
  std::uint32_t product(std::size_t a, std::size_t b) const;
  /// Per coset with least element g: pairs (h, h') of H with h g h' = g.
  const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& stabilizers() const {
    return stabilizers_;
  }

 private:
  const Model* model_;
  std::vector<Elem> elems_;
  std::unordered_map<Elem, std::uint32_t, typename Model::Hash> index_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> subgroup_;
  std::vector<Elem> gens_;
  std::vector<std::vector<std::uint32_t>> left_, right_;
  std::vector<std::uint32_t> coset_;
  std::vector<std::vector<std::uint32_t>> coset_members_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> stabilizers_;
};

// ------------------------------------------------------------- algebra

/// Basis functions f_g on compatible cosets with f_g(g) = 1 and
/// f_g(h x h') = psi(h) psi(h') f_g(x); structure constants c(i, j, k) =
/// (f_i * f_j)(g_k) with the unnormalized convolution over G.
struct HeckeAlgebra {
  int conductor = 1;
  std::size_t dim = 0;
  /// Element indices (into the geometry) of the basis representatives.
  std::vector<std::uint32_t> reps;
  /// Coset id of each basis element.
  std::vector<std::uint32_t> cosets;
  std::vector<Cyclotomic> constants;
  const Cyclotomic& at(std::size_t i, std::size_t j, std::size_t k) const {
    return constants[(i * dim + j) * dim + k];
  }
};

struct Compatibility {
  /// Per coset: whether a nonzero bi-equivariant function lives on it,
  /// decided by propagating values along generator edges.
  std::vector<bool> by_labels;
  /// The same verdict from stabilizers: psi(h) psi(g^{-1} h^{-1} g) = 1 for
  /// every h in H with g^{-1} h^{-1} g in H.
  std::vector<bool> by_stabilizers;
  /// |HgH| |Stab| = |H|^2 on every coset.
  bool orbit_stabilizer_ok = true;
  /// Per element: exponent of f_{coset}(x) against the least element, or -1
  /// on incompatible cosets.
  std::vector<int> exponents;
  bool agree() const { return by_labels == by_stabilizers && orbit_stabilizer_ok; }
};

template <class Model>
Compatibility compatibility(const HeckeGeometry<Model>& geo, const Model& model, int N);

/// Representatives are the coset least elements unless overridden.
/// rep_override, when given, holds one element index per basis coset.
template <class Model>
HeckeAlgebra build_algebra(const HeckeGeometry<Model>& geo, const Compatibility& comp, int N,
                           const std::vector<std::uint32_t>& rep_override = {}, int jobs = 1);

/// First (i, j) with f_i f_j != f_j f_i.
std::optional<std::pair<std::size_t, std::size_t>> first_noncommuting(const HeckeAlgebra& a);

struct AssociativityResult {
  bool ok = true;
  std::uint64_t triples = 0;
};
/// All basis triples when dim^3 <= max_triples, otherwise max_triples
/// triples drawn with the given seed.
AssociativityResult check_associativity(const HeckeAlgebra& a, std::uint64_t max_triples,
                                        std::uint64_t seed);

// ------------------------------------------------------------- report

struct HeckeOptions {
  std::uint64_t max_group_order = kDefaultMaxHeckeOrder;
  std::uint64_t max_associativity_triples = 4096;
  std::uint64_t seed = 1;
  /// Worker threads for the structure constants.
  int jobs = 1;
};

struct HeckeReport {
  int conductor = 1;
  std::uint64_t group_order = 0;
  std::uint64_t subgroup_order = 0;
  std::uint64_t double_cosets = 0;
  std::uint64_t dimension = 0;
  /// Compatible cosets counted by the stabilizer test instead.
  std::uint64_t stabilizer_compatible = 0;
  bool compatibility_crosscheck = true;
  std::vector<std::string> basis;
  bool commutative = true;
  std::optional<std::pair<std::size_t, std::size_t>> noncommuting;
  bool associative = true;
  std::uint64_t associativity_triples = 0;
  /// Randomized representatives give the rescaled structure constants and
  /// the same commutativity verdict.
  bool representative_independent = true;

  bool ok() const {
    return compatibility_crosscheck && commutative && associative && representative_independent;
  }
};

template <class Model>
HeckeReport hecke_check(const HeckeGeometry<Model>& geo, const Model& model,
                        const HeckeOptions& opts = {});

/// Builds the geometry and runs hecke_check for one character.
template <class Model>
HeckeReport hecke_check(const Model& model, const HeckeOptions& opts = {}) {
  const HeckeGeometry<Model> geo(model, opts.max_group_order);
  return hecke_check(geo, model, opts);
}

}  // namespace gelfand::hecke

#endif  // GELFAND_HECKE_HPP
