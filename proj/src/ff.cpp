#include "gelfand/ff.hpp"

#include <charconv>
#include <numeric>

#include "gelfand/errors.hpp"

namespace gelfand::ff {

// ---------------------------------------------------------------- UnityRoot

UnityRoot UnityRoot::from_fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("unity root denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  if (num == 0) return UnityRoot(0, 1);
  const std::int64_t g = std::gcd(num, den);
  return UnityRoot(num / g, den / g);
}

UnityRoot operator*(const UnityRoot& a, const UnityRoot& b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return UnityRoot::from_fraction(a.num_ * (l / a.den_) + b.num_ * (l / b.den_),
                                  l);
}

UnityRoot UnityRoot::inverse() const { return from_fraction(-num_, den_); }

UnityRoot UnityRoot::pow(std::int64_t e) const {
  // (num * e) mod den without overflow for the small dens used here.
  const std::int64_t r = ((e % den_) + den_) % den_;
  return from_fraction(num_ * r, den_);
}

std::int64_t UnityRoot::exponent_mod(std::int64_t conductor) const {
  if (conductor <= 0 || conductor % den_ != 0)
    throw DomainError("unity root of order " + std::to_string(den_) +
                      " does not embed at conductor " +
                      std::to_string(conductor));
  return num_ * (conductor / den_);
}

std::string UnityRoot::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

// --------------------------------------------------------------- polynomials

namespace {

using Poly = std::vector<int>;  // low degree first, over Z/p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial b.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::span<const int> poly, int p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg == 1) return true;
  // Every monic divisor of degree d in [1, deg/2].
  for (int d = 1; 2 * d <= deg; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      Poly g(d + 1);
      int v = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = v % p;
        v /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> canonical_modulus(int p, int k) {
  if (p == 2 && k == 2) return std::vector<int>{1, 1, 1};     // x^2+x+1
  if (p == 2 && k == 3) return std::vector<int>{1, 1, 0, 1};  // x^3+x+1
  if (p == 3 && k == 2) return std::vector<int>{2, 2, 1};     // x^2+2x+2
  return std::nullopt;
}

// -------------------------------------------------------------------- Field

struct Field::Tables {
  int p = 0;
  int k = 0;
  int q = 0;
  std::vector<int> modulus;
  std::vector<std::uint8_t> add, mul, neg, inv;
  std::vector<int> trace;
  std::vector<int> dlog;  // -1 at 0
  std::vector<int> order;
  std::uint8_t generator = 0;
};

Field Field::make(int p, int k, std::vector<int> modulus) {
  if (!is_prime(p)) throw ConfigError("characteristic " + std::to_string(p) +
                                      " is not prime");
  if (k < 1) throw ConfigError("extension degree must be at least 1");
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder)
      throw ConfigError("field order exceeds " + std::to_string(kMaxOrder));
  }
  if (modulus.empty()) {
    if (k == 1) {
      modulus = {0, 1};
    } else if (auto m = canonical_modulus(p, k)) {
      modulus = *m;
    } else {
      throw ConfigError("no shipped modulus for " + std::to_string(p) + "^" +
                        std::to_string(k) + "; supply one");
    }
  }
  for (int& c : modulus) {
    if (c < 0 || c >= p)
      throw ConfigError("modulus coefficients must lie in [0, p)");
  }
  if (static_cast<int>(modulus.size()) != k + 1 || modulus.back() != 1)
    throw ConfigError("modulus must be monic of degree " + std::to_string(k));
  if (!is_irreducible(modulus, p))
    throw ConfigError("modulus is reducible over F_" + std::to_string(p));

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->k = k;
  t->q = static_cast<int>(q);
  t->modulus = modulus;
  const int Q = t->q;

  auto decode = [&](int code) {
    Poly c(k);
    for (int i = 0; i < k; ++i) {
      c[i] = code % p;
      code /= p;
    }
    return c;
  };
  auto encode = [&](const Poly& c) {
    int code = 0;
    for (int i = k - 1; i >= 0; --i)
      code = code * p + (i < static_cast<int>(c.size()) ? c[i] : 0);
    return code;
  };

  t->add.resize(Q * Q);
  t->mul.resize(Q * Q);
  t->neg.resize(Q);
  t->inv.assign(Q, 0);
  for (int a = 0; a < Q; ++a) {
    const Poly ca = decode(a);
    Poly na(k);
    for (int i = 0; i < k; ++i) na[i] = (p - ca[i]) % p;
    t->neg[a] = static_cast<std::uint8_t>(encode(na));
    for (int b = 0; b < Q; ++b) {
      const Poly cb = decode(b);
      Poly s(k);
      for (int i = 0; i < k; ++i) s[i] = (ca[i] + cb[i]) % p;
      t->add[a * Q + b] = static_cast<std::uint8_t>(encode(s));
      Poly prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      t->mul[a * Q + b] =
          static_cast<std::uint8_t>(encode(poly_mod(prod, modulus, p)));
    }
  }
  for (int a = 1; a < Q; ++a)
    for (int b = 1; b < Q; ++b)
      if (t->mul[a * Q + b] == 1) t->inv[a] = static_cast<std::uint8_t>(b);

  t->order.assign(Q, 0);
  for (int a = 1; a < Q; ++a) {
    int x = a;
    int ord = 1;
    while (x != 1) {
      x = t->mul[x * Q + a];
      ++ord;
    }
    t->order[a] = ord;
  }
  for (int a = 1; a < Q; ++a) {
    if (t->order[a] == Q - 1) {
      t->generator = static_cast<std::uint8_t>(a);
      break;
    }
  }
  t->dlog.assign(Q, -1);
  {
    int x = 1;
    for (int e = 0; e < Q - 1; ++e) {
      t->dlog[x] = e;
      x = t->mul[x * Q + t->generator];
    }
  }
  // Tr(a) = a + a^p + ... + a^{p^{k-1}}.
  t->trace.assign(Q, 0);
  for (int a = 0; a < Q; ++a) {
    int acc = 0;
    int frob = a;
    for (int i = 0; i < k; ++i) {
      acc = t->add[acc * Q + frob];
      int next = 1;
      for (int j = 0; j < p; ++j) next = t->mul[next * Q + frob];
      frob = next;
    }
    if (acc >= p) throw ConfigError("internal: trace left the prime field");
    t->trace[a] = acc;
  }
  return Field(std::move(t));
}

Field Field::parse(std::string_view text, std::vector<int> modulus) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ConfigError("malformed field text '" + std::string(text) + "'");
    return v;
  };
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    return make(parse_int(text.substr(0, caret)),
                parse_int(text.substr(caret + 1)), std::move(modulus));
  }
  const int q = parse_int(text);
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int k = 0;
    int r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) break;
    return make(p, k, std::move(modulus));
  }
  throw ConfigError("field order " + std::to_string(q) +
                    " is not a prime power");
}

int Field::p() const { return t_->p; }
int Field::k() const { return t_->k; }
int Field::q() const { return t_->q; }
const std::vector<int>& Field::modulus() const { return t_->modulus; }
FqElem Field::generator() const { return FqElem::from_code(t_->generator); }

FqElem Field::from_coeffs(std::span<const int> coeffs) const {
  if (static_cast<int>(coeffs.size()) != t_->k)
    throw DimensionError("coefficient vector length must equal k");
  int code = 0;
  for (int i = t_->k - 1; i >= 0; --i) {
    const int c = ((coeffs[i] % t_->p) + t_->p) % t_->p;
    code = code * t_->p + c;
  }
  return FqElem::from_code(static_cast<std::uint8_t>(code));
}

FqElem Field::from_int(std::int64_t v) const {
  const std::int64_t r = ((v % t_->p) + t_->p) % t_->p;
  return FqElem::from_code(static_cast<std::uint8_t>(r));
}

FqElem Field::from_code(int v) const {
  if (v < 0 || v >= t_->q) throw DomainError("element code out of range");
  return FqElem::from_code(static_cast<std::uint8_t>(v));
}

std::vector<int> Field::coeffs(FqElem a) const {
  std::vector<int> c(t_->k);
  int code = a.code();
  for (int i = 0; i < t_->k; ++i) {
    c[i] = code % t_->p;
    code /= t_->p;
  }
  return c;
}

FqElem Field::add(FqElem a, FqElem b) const {
  return FqElem::from_code(t_->add[a.code() * t_->q + b.code()]);
}
FqElem Field::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
FqElem Field::mul(FqElem a, FqElem b) const {
  return FqElem::from_code(t_->mul[a.code() * t_->q + b.code()]);
}
FqElem Field::neg(FqElem a) const {
  return FqElem::from_code(t_->neg[a.code()]);
}
FqElem Field::inv(FqElem a) const {
  if (a.is_zero()) throw DomainError("inversion of zero in F_q");
  return FqElem::from_code(t_->inv[a.code()]);
}

FqElem Field::pow(FqElem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  FqElem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int Field::trace(FqElem a) const { return t_->trace[a.code()]; }

int Field::dlog(FqElem a) const {
  if (a.is_zero()) throw DomainError("discrete log of zero");
  return t_->dlog[a.code()];
}

int Field::order(FqElem a) const {
  if (a.is_zero()) throw DomainError("multiplicative order of zero");
  return t_->order[a.code()];
}

UnityRoot Field::additive_character(FqElem a, FqElem c) const {
  if (c.is_zero())
    throw ConfigError("additive twist c = 0 gives the trivial character");
  return UnityRoot::from_fraction(trace(mul(c, a)), t_->p);
}

UnityRoot Field::mult_character(FqElem a, std::int64_t e) const {
  const std::int64_t n = t_->q - 1;
  const std::int64_t d = dlog(a);
  const std::int64_t er = ((e % n) + n) % n;
  return UnityRoot::from_fraction(er * d, n);
}

std::string Field::format(FqElem a) const {
  if (t_->k == 1) return std::to_string(a.code());
  std::string s = "(";
  const auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  s += ')';
  return s;
}

const std::uint8_t* Field::add_table() const { return t_->add.data(); }
const std::uint8_t* Field::mul_table() const { return t_->mul.data(); }
const std::uint8_t* Field::neg_table() const { return t_->neg.data(); }
const std::uint8_t* Field::inv_table() const { return t_->inv.data(); }

bool operator==(const Field& a, const Field& b) {
  return a.t_ == b.t_ ||
         (a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus);
}

}  // namespace gelfand::ff
