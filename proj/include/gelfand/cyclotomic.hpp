#ifndef GELFAND_CYCLOTOMIC_HPP
#define GELFAND_CYCLOTOMIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gelfand/ff.hpp"

namespace gelfand::hecke {

using ff::UnityRoot;

inline constexpr int kMaxConductor = 64;

/// Coefficients of the N-th cyclotomic polynomial, low degree first, by
/// dividing x^N - 1 by Phi_d for every proper divisor d. Throws ConfigError
/// unless 1 <= N <= kMaxConductor.
const std::vector<std::int64_t>& cyclotomic_polynomial(int N);

/// An element of Z[zeta_N] = Z[x]/(Phi_N), coefficients on 1, zeta, ...,
/// zeta^{phi(N)-1}.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  static Cyclotomic zero(int N);
  static Cyclotomic one(int N) { return root(N, 0); }
  /// zeta_N^e for any integer e.
  static Cyclotomic root(int N, std::int64_t e);
  /// The root of unity as a power of zeta_N; throws DomainError unless its
  /// denominator divides N.
  static Cyclotomic embed(const UnityRoot& r, int N);
  /// sum_e counts[e] zeta^e over any number of exponents, reduced.
  static Cyclotomic from_exponent_counts(int N, const std::vector<std::int64_t>& counts);

  int conductor() const { return n_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;

  /// "0", or a sum of terms like "3", "-z", "2*z^3".
  std::string to_string() const;

 private:
  Cyclotomic(int N, std::vector<std::int64_t> c) : n_(N), c_(std::move(c)) {}
  static Cyclotomic reduce(int N, std::vector<std::int64_t> poly);

  int n_ = 1;
  std::vector<std::int64_t> c_;
};

}  // namespace gelfand::hecke

#endif  // GELFAND_CYCLOTOMIC_HPP
