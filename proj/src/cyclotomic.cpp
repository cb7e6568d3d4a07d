#include "gelfand/cyclotomic.hpp"

#include <numeric>

#include "gelfand/errors.hpp"

namespace gelfand::hecke {

namespace {

using Poly = std::vector<std::int64_t>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact quotient by a monic divisor.
Poly divide(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

std::vector<Poly> build_table() {
  std::vector<Poly> table(kMaxConductor + 1);
  for (int n = 1; n <= kMaxConductor; ++n) {
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
      if (n % d == 0) p = divide(p, table[d]);
    table[n] = p;
  }
  return table;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int N) {
  if (N < 1 || N > kMaxConductor)
    throw ConfigError("conductor " + std::to_string(N) + " outside 1.." +
                      std::to_string(kMaxConductor));
  static const std::vector<Poly> table = build_table();
  return table[N];
}

Cyclotomic Cyclotomic::reduce(int N, std::vector<std::int64_t> poly) {
  const Poly& phi = cyclotomic_polynomial(N);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    const std::int64_t c = poly[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  poly.resize(deg, 0);
  return Cyclotomic(N, std::move(poly));
}

Cyclotomic Cyclotomic::zero(int N) {
  return Cyclotomic(N, Poly(cyclotomic_polynomial(N).size() - 1, 0));
}

Cyclotomic Cyclotomic::root(int N, std::int64_t e) {
  cyclotomic_polynomial(N);
  Poly p(N, 0);
  p[((e % N) + N) % N] = 1;
  return reduce(N, std::move(p));
}

Cyclotomic Cyclotomic::embed(const UnityRoot& r, int N) {
  if (N % r.denominator() != 0)
    throw DomainError("root of unity " + r.to_string() + " is not a power of zeta_" +
                      std::to_string(N));
  return root(N, r.exponent_mod(N));
}

Cyclotomic Cyclotomic::from_exponent_counts(int N, const std::vector<std::int64_t>& counts) {
  cyclotomic_polynomial(N);
  Poly p(N, 0);
  for (std::size_t e = 0; e < counts.size(); ++e) p[e % N] += counts[e];
  return reduce(N, std::move(p));
}

bool Cyclotomic::is_zero() const {
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

namespace {

void require_same(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) throw DomainError("cyclotomic conductors differ");
}

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  require_same(a, b);
  Poly c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return Cyclotomic(a.n_, std::move(c));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  require_same(a, b);
  Poly c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return Cyclotomic(a.n_, std::move(c));
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  require_same(a, b);
  if (a.c_.empty()) return a;
  return Cyclotomic::reduce(a.n_, mul(a.c_, b.c_));
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::int64_t v = c_[i];
    if (v == 0) continue;
    if (!out.empty()) out += v > 0 ? "+" : "";
    if (i == 0) {
      out += std::to_string(v);
      continue;
    }
    if (v == -1)
      out += "-";
    else if (v != 1)
      out += std::to_string(v) + "*";
    out += i == 1 ? "z" : "z^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace gelfand::hecke
