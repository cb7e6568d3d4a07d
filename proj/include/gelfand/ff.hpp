#ifndef GELFAND_FF_HPP
#define GELFAND_FF_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gelfand::ff {

/// An element of F_q, stored as the integer sum c_0 + c_1 p + ... + c_{k-1}
/// p^{k-1} of its power-basis coordinates. The numeric order of codes is the
/// canonical element order used by every enumeration in the library.
class FqElem {
 public:
  constexpr FqElem() = default;
  static constexpr FqElem from_code(std::uint8_t code) { return FqElem(code); }

  constexpr std::uint8_t code() const { return code_; }
  constexpr bool is_zero() const { return code_ == 0; }

  friend constexpr bool operator==(FqElem, FqElem) = default;
  friend constexpr auto operator<=>(FqElem, FqElem) = default;

 private:
  constexpr explicit FqElem(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 0;
};

/// A root of unity e^{2 pi i a/N}, kept as the reduced fraction a/N in [0, 1).
class UnityRoot {
 public:
  UnityRoot() = default;
  /// Reduces num/den modulo 1; den must be positive.
  static UnityRoot from_fraction(std::int64_t num, std::int64_t den);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_one() const { return num_ == 0; }

  UnityRoot inverse() const;
  UnityRoot pow(std::int64_t e) const;
  /// Exponent scaled to a common conductor N (requires den | N).
  std::int64_t exponent_mod(std::int64_t conductor) const;

  /// "0" or "a/N".
  std::string to_string() const;

  friend UnityRoot operator*(const UnityRoot& a, const UnityRoot& b);
  UnityRoot& operator*=(const UnityRoot& b) { return *this = *this * b; }
  friend bool operator==(const UnityRoot&, const UnityRoot&) = default;

 private:
  UnityRoot(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Shipped irreducible modulus for the non-prime field sizes 4, 8 and 9
/// (coefficients low degree first); nullopt for other sizes.
std::optional<std::vector<int>> canonical_modulus(int p, int k);

/// True iff the monic polynomial (coefficients low degree first) over Z/p is
/// irreducible. Exhaustive trial division by monic polynomials up to half the
/// degree.
bool is_irreducible(std::span<const int> poly, int p);

bool is_prime(int n);

/// The finite field F_{p^k} with arithmetic tables. Copies share the tables.
class Field {
 public:
  static constexpr int kMaxOrder = 256;

  /// Builds F_{p^k}. An empty modulus selects the shipped one (k > 1) or
  /// x for k = 1. Throws ConfigError when p is not prime, the modulus is not
  /// monic of degree k, or it is reducible.
  static Field make(int p, int k, std::vector<int> modulus = {});

  /// Parses "p^k" or a plain prime power "q" ("4" is 2^2).
  static Field parse(std::string_view text, std::vector<int> modulus = {});

  int p() const;
  int k() const;
  int q() const;
  const std::vector<int>& modulus() const;
  bool is_prime_field() const { return k() == 1; }

  FqElem zero() const { return FqElem::from_code(0); }
  FqElem one() const { return FqElem::from_code(1); }
  /// Least element (in code order) of multiplicative order q-1.
  FqElem generator() const;

  FqElem from_coeffs(std::span<const int> coeffs) const;
  /// Image of an integer under Z -> F_p -> F_q.
  FqElem from_int(std::int64_t v) const;
  /// Element whose code is v; throws DomainError when v >= q.
  FqElem from_code(int v) const;
  std::vector<int> coeffs(FqElem a) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem inv(FqElem a) const;
  FqElem pow(FqElem a, std::int64_t e) const;

  /// Absolute trace Tr_{F_q/F_p}(a) as an integer in [0, p).
  int trace(FqElem a) const;
  /// Discrete log against generator(); throws DomainError for 0.
  int dlog(FqElem a) const;
  /// Multiplicative order of a nonzero element.
  int order(FqElem a) const;

  /// psi_0(a) = exp(2 pi i Tr(c a) / p). Throws ConfigError for c = 0.
  UnityRoot additive_character(FqElem a, FqElem c) const;
  /// exp(2 pi i e dlog(a) / (q-1)). Throws DomainError for a = 0.
  UnityRoot mult_character(FqElem a, std::int64_t e) const;

  /// Entry text used by the matrix text format: the code's digit for prime
  /// fields, "(c0,c1,...)" otherwise.
  std::string format(FqElem a) const;

  /// Raw row-major q x q tables (codes), for tight loops.
  const std::uint8_t* add_table() const;
  const std::uint8_t* mul_table() const;
  const std::uint8_t* neg_table() const;
  const std::uint8_t* inv_table() const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  struct Tables;
  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::shared_ptr<const Tables> t_;
};

}  // namespace gelfand::ff

#endif  // GELFAND_FF_HPP
