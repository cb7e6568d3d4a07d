#ifndef GELFAND_HECKE_IMPL_HPP
#define GELFAND_HECKE_IMPL_HPP

// Template definitions behind hecke.hpp. The library instantiates them for
// ShalikaModel and DeltaPModel; include this header to use another model.

#include <algorithm>

#include "gelfand/errors.hpp"
#include "gelfand/hecke.hpp"
#include "gelfand/parallel.hpp"
#include "gelfand/rng.hpp"

namespace gelfand::hecke {

// ------------------------------------------------------------- geometry

template <class Model>
HeckeGeometry<Model>::HeckeGeometry(const Model& model, std::uint64_t max_group_order)
    : model_(&model) {
  const std::uint64_t order = model.group_order();
  if (order > max_group_order)
    throw BudgetExceeded("|G| = " + std::to_string(order) + " exceeds the Hecke budget " +
                         std::to_string(max_group_order));
  elems_ = model.group_elements(max_group_order);
  std::sort(elems_.begin(), elems_.end());
  index_.reserve(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i)
    index_.emplace(elems_[i], static_cast<std::uint32_t>(i));

  inverse_.resize(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i)
    inverse_[i] = index_.at(model.inverse(elems_[i]));

  for (const Elem& h : model.subgroup_elements(max_group_order)) subgroup_.push_back(index_.at(h));
  std::sort(subgroup_.begin(), subgroup_.end());

  gens_ = model.generators();
  left_.assign(gens_.size(), std::vector<std::uint32_t>(elems_.size()));
  right_.assign(gens_.size(), std::vector<std::uint32_t>(elems_.size()));
  for (std::size_t s = 0; s < gens_.size(); ++s)
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      left_[s][i] = index_.at(model.mul(gens_[s], elems_[i]));
      right_[s][i] = index_.at(model.mul(elems_[i], gens_[s]));
    }

  // Double cosets by BFS from the least unassigned element, so coset ids
  // follow their least elements.
  constexpr std::uint32_t kNone = UINT32_MAX;
  coset_.assign(elems_.size(), kNone);
  for (std::size_t start = 0; start < elems_.size(); ++start) {
    if (coset_[start] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(coset_members_.size());
    std::vector<std::uint32_t> members{static_cast<std::uint32_t>(start)};
    coset_[start] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const std::uint32_t x = members[head];
      for (std::size_t s = 0; s < gens_.size(); ++s)
        for (std::uint32_t y : {left_[s][x], right_[s][x]})
          if (coset_[y] == kNone) {
            coset_[y] = id;
            members.push_back(y);
          }
    }
    std::sort(members.begin(), members.end());
    coset_members_.push_back(std::move(members));
  }

  std::vector<bool> in_h(elems_.size(), false);
  for (std::uint32_t h : subgroup_) in_h[h] = true;
  stabilizers_.resize(coset_members_.size());
  for (std::size_t c = 0; c < coset_members_.size(); ++c) {
    const std::uint32_t g = coset_members_[c].front();
    for (std::uint32_t h : subgroup_) {
      // h g h' = g  <=>  h' = g^{-1} h^{-1} g.
      const std::uint32_t hp = product(product(inverse_[g], inverse_[h]), g);
      if (in_h[hp]) stabilizers_[c].emplace_back(h, hp);
    }
  }
}

template <class Model>
std::uint32_t HeckeGeometry<Model>::product(std::size_t a, std::size_t b) const {
  return index_.at(model_->mul(elems_[a], elems_[b]));
}

// ------------------------------------------------------------- algebra

namespace detail {

inline int mod(std::int64_t a, int N) { return static_cast<int>(((a % N) + N) % N); }

}  // namespace detail

template <class Model>
Compatibility compatibility(const HeckeGeometry<Model>& geo, const Model& model, int N) {
  const std::size_t cosets = geo.coset_count();
  Compatibility out;
  out.by_labels.assign(cosets, true);
  out.by_stabilizers.assign(cosets, true);
  out.exponents.assign(geo.group_order(), -1);

  std::vector<int> gen_exp;
  for (const auto& s : geo.generators()) gen_exp.push_back(model.character_exponent(s, N));
  std::vector<int> sub_exp(geo.group_order(), -1);
  for (std::uint32_t h : geo.subgroup())
    sub_exp[h] = model.character_exponent(geo.element(h), N);

  const auto& left = geo.left();
  const auto& right = geo.right();
  for (std::size_t c = 0; c < cosets; ++c) {
    const auto& members = geo.coset_members(c);
    // f(s x) = psi(s) f(x) and f(x s) = f(x) psi(s) on every generator edge.
    std::vector<std::uint32_t> queue{members.front()};
    out.exponents[members.front()] = 0;
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      const std::uint32_t x = queue[head];
      for (std::size_t s = 0; s < gen_exp.size() && ok; ++s) {
        const int e = detail::mod(out.exponents[x] + gen_exp[s], N);
        for (std::uint32_t y : {left[s][x], right[s][x]}) {
          if (out.exponents[y] < 0) {
            out.exponents[y] = e;
            queue.push_back(y);
          } else if (out.exponents[y] != e) {
            ok = false;
            break;
          }
        }
      }
    }
    out.by_labels[c] = ok;
    if (!ok)
      for (std::uint32_t x : members) out.exponents[x] = -1;
    else if (queue.size() != members.size())
      throw Error("labeling did not reach the whole double coset");

    const auto& stab = geo.stabilizers()[c];
    for (const auto& [h, hp] : stab)
      if (detail::mod(sub_exp[h] + sub_exp[hp], N) != 0) {
        out.by_stabilizers[c] = false;
        break;
      }
    const std::uint64_t hsq = static_cast<std::uint64_t>(geo.subgroup_order()) * geo.subgroup_order();
    if (static_cast<std::uint64_t>(members.size()) * stab.size() != hsq) out.orbit_stabilizer_ok = false;
  }
  return out;
}

template <class Model>
HeckeAlgebra build_algebra(const HeckeGeometry<Model>& geo, const Compatibility& comp, int N,
                           const std::vector<std::uint32_t>& rep_override, int jobs) {
  HeckeAlgebra alg;
  alg.conductor = N;
  std::vector<int> basis_of(geo.coset_count(), -1);
  for (std::size_t c = 0; c < geo.coset_count(); ++c)
    if (comp.by_labels[c]) {
      basis_of[c] = static_cast<int>(alg.cosets.size());
      alg.cosets.push_back(static_cast<std::uint32_t>(c));
      alg.reps.push_back(geo.coset_members(c).front());
    }
  alg.dim = alg.cosets.size();
  if (!rep_override.empty()) {
    if (rep_override.size() != alg.dim) throw DimensionError("one representative per basis coset");
    for (std::size_t i = 0; i < alg.dim; ++i)
      if (geo.coset_of(rep_override[i]) != alg.cosets[i])
        throw DomainError("representative outside its double coset");
    alg.reps = rep_override;
  }

  // f_i(x) = zeta^{e(x) - e(rep_i)} on coset i.
  const std::size_t G = geo.group_order();
  std::vector<int> basis(G, -1), value(G, 0);
  for (std::size_t x = 0; x < G; ++x) {
    const int b = basis_of[geo.coset_of(x)];
    if (b < 0) continue;
    basis[x] = b;
    value[x] = detail::mod(comp.exponents[x] - comp.exponents[alg.reps[b]], N);
  }

  const std::size_t d = alg.dim;
  alg.constants.assign(d * d * d, Cyclotomic::zero(N));
  const auto& inv = geo.inverse_index();
  parallel_for(d, jobs, [&](std::size_t k) {
    std::vector<std::int64_t> counts(d * d * N, 0);
    const std::uint32_t g = alg.reps[k];
    for (std::size_t x = 0; x < G; ++x) {
      if (basis[x] < 0) continue;
      const std::uint32_t y = geo.product(inv[x], g);
      if (basis[y] < 0) continue;
      const std::size_t ij = static_cast<std::size_t>(basis[x]) * d + basis[y];
      ++counts[ij * N + (value[x] + value[y]) % N];
    }
    for (std::size_t ij = 0; ij < d * d; ++ij) {
      const std::vector<std::int64_t> slice(counts.begin() + ij * N, counts.begin() + (ij + 1) * N);
      alg.constants[ij * d + k] = Cyclotomic::from_exponent_counts(N, slice);
    }
  });
  return alg;
}

// ------------------------------------------------------------- report

template <class Model>
HeckeReport hecke_check(const HeckeGeometry<Model>& geo, const Model& model,
                        const HeckeOptions& opts) {
  HeckeReport r;
  const int N = conductor(model.field());
  r.conductor = N;
  r.group_order = geo.group_order();
  r.subgroup_order = geo.subgroup_order();
  r.double_cosets = geo.coset_count();

  const Compatibility comp = compatibility(geo, model, N);
  r.compatibility_crosscheck = comp.agree();
  r.stabilizer_compatible = static_cast<std::uint64_t>(
      std::count(comp.by_stabilizers.begin(), comp.by_stabilizers.end(), true));
  const HeckeAlgebra alg = build_algebra(geo, comp, N, {}, opts.jobs);
  r.dimension = alg.dim;
  for (std::uint32_t g : alg.reps) r.basis.push_back(model.format(geo.element(g)));
  r.noncommuting = first_noncommuting(alg);
  r.commutative = !r.noncommuting.has_value();
  const AssociativityResult assoc =
      check_associativity(alg, opts.max_associativity_triples, opts.seed);
  r.associative = assoc.ok;
  r.associativity_triples = assoc.triples;

  // Rebuild on random representatives g'_k. f_{g'_k} = mu_k^{-1} f_k with
  // mu_k = f_k(g'_k), so c'_ijk = c_ijk mu_k / (mu_i mu_j).
  Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::uint32_t> reps;
  std::vector<int> mu;
  for (std::size_t i = 0; i < alg.dim; ++i) {
    const auto& members = geo.coset_members(alg.cosets[i]);
    const std::uint32_t g = members[rng.uniform(members.size())];
    reps.push_back(g);
    mu.push_back(detail::mod(comp.exponents[g] - comp.exponents[alg.reps[i]], N));
  }
  const HeckeAlgebra other = build_algebra(geo, comp, N, reps, opts.jobs);
  bool same = first_noncommuting(other).has_value() == !r.commutative;
  for (std::size_t i = 0; i < alg.dim && same; ++i)
    for (std::size_t j = 0; j < alg.dim && same; ++j)
      for (std::size_t k = 0; k < alg.dim && same; ++k)
        same = other.at(i, j, k) == alg.at(i, j, k) * Cyclotomic::root(N, mu[k] - mu[i] - mu[j]);
  r.representative_independent = same;
  return r;
}

}  // namespace gelfand::hecke

#endif  // GELFAND_HECKE_IMPL_HPP
