#include "gelfand/hecke.hpp"

#include <numeric>

#include "gelfand/hecke_impl.hpp"

namespace gelfand::hecke {

int conductor(const Field& F) { return std::lcm(F.p(), F.q() - 1); }

std::uint64_t ShalikaModel::group_order() const {
  return matrix::gl_order(field().q(), ctx_.dim());
}

std::vector<Mat> ShalikaModel::group_elements(std::uint64_t budget) const {
  return matrix::gl_elements(field(), ctx_.dim(), budget);
}

std::vector<Mat> ShalikaModel::subgroup_elements(std::uint64_t budget) const {
  return ctx_.h_elements(budget);
}

int ShalikaModel::character_exponent(const Elem& h, int N) const {
  return static_cast<int>(ctx_.psi(h).exponent_mod(N));
}

int DeltaPModel::character_exponent(const Elem& h, int N) const {
  return static_cast<int>(ctx_.chi(h).exponent_mod(N));
}

std::optional<std::pair<std::size_t, std::size_t>> first_noncommuting(const HeckeAlgebra& a) {
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i + 1; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k)
        if (!(a.at(i, j, k) == a.at(j, i, k))) return std::make_pair(i, j);
  return std::nullopt;
}

AssociativityResult check_associativity(const HeckeAlgebra& a, std::uint64_t max_triples,
                                        std::uint64_t seed) {
  AssociativityResult out;
  const std::size_t d = a.dim;
  // (f_i f_j) f_l = f_i (f_j f_l), compared coefficient by coefficient.
  auto holds = [&](std::size_t i, std::size_t j, std::size_t l) {
    for (std::size_t m = 0; m < d; ++m) {
      Cyclotomic lhs = Cyclotomic::zero(a.conductor), rhs = Cyclotomic::zero(a.conductor);
      for (std::size_t k = 0; k < d; ++k) {
        lhs += a.at(i, j, k) * a.at(k, l, m);
        rhs += a.at(j, l, k) * a.at(i, k, m);
      }
      if (!(lhs == rhs)) return false;
    }
    return true;
  };
  const std::uint64_t all = static_cast<std::uint64_t>(d) * d * d;
  if (all <= max_triples) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) {
          ++out.triples;
          if (!holds(i, j, l)) out.ok = false;
        }
    return out;
  }
  Rng rng(seed);
  for (std::uint64_t t = 0; t < max_triples; ++t) {
    const std::size_t i = rng.uniform(d), j = rng.uniform(d), l = rng.uniform(d);
    ++out.triples;
    if (!holds(i, j, l)) out.ok = false;
  }
  return out;
}

template class HeckeGeometry<ShalikaModel>;
template class HeckeGeometry<DeltaPModel>;
template Compatibility compatibility(const HeckeGeometry<ShalikaModel>&, const ShalikaModel&, int);
template Compatibility compatibility(const HeckeGeometry<DeltaPModel>&, const DeltaPModel&, int);
template HeckeAlgebra build_algebra(const HeckeGeometry<ShalikaModel>&, const Compatibility&, int,
                                    const std::vector<std::uint32_t>&, int);
template HeckeAlgebra build_algebra(const HeckeGeometry<DeltaPModel>&, const Compatibility&, int,
                                    const std::vector<std::uint32_t>&, int);
template HeckeReport hecke_check(const HeckeGeometry<ShalikaModel>&, const ShalikaModel&,
                                 const HeckeOptions&);
template HeckeReport hecke_check(const HeckeGeometry<DeltaPModel>&, const DeltaPModel&,
                                 const HeckeOptions&);

}  // namespace gelfand::hecke
