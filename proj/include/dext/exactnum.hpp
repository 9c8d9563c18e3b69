#pragma once

// Exact scalars over Q, Q(a) with a monic irreducible quadratic minimal
// polynomial, and GF(q) for primes q <= 257.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <deque>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dext {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Scalar;

enum class FieldKind { rationals, quadratic, prime };

namespace detail {

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

inline bool is_square(const mpq_class& x) {
  if (sgn(x) < 0) return false;
  mpz_class n = x.get_num(), d = x.get_den();
  return mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
}

// Reads an unsigned decimal rational "p" or "p/q" starting at pos.
inline bool read_rational(const std::string& s, size_t& pos, mpq_class& out) {
  size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) return false;
  std::string num = s.substr(start, pos - start);
  std::string den = "1";
  if (pos + 1 < s.size() && s[pos] == '/' && std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
    size_t ds = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    den = s.substr(ds, pos - ds);
  }
  mpz_class n(num), d(den);
  if (d == 0) throw DivisionByZero();
  out = mpq_class(n, d);
  out.canonicalize();
  return true;
}

// Sum of terms c, c*a, c*a^k with rational c, as coefficients of a^k.
struct APoly {
  mpq_class c[8];
  int max_deg = 0;
};

inline APoly parse_apoly(const std::string& raw, bool allow_a) {
  std::string s = strip_spaces(raw);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  APoly out;
  size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in scalar '" + raw + "'");
    }
    first = false;
    mpq_class coef(1);
    bool have_coef = read_rational(s, pos, coef);
    int deg = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!have_coef) throw ParseError("dangling '*' in scalar '" + raw + "'");
      ++pos;
      if (pos >= s.size() || s[pos] != 'a') throw ParseError("expected 'a' after '*' in '" + raw + "'");
    }
    if (pos < s.size() && s[pos] == 'a') {
      if (!allow_a) throw ParseError("'a' is not defined over this field: '" + raw + "'");
      ++pos;
      deg = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (st == pos) throw ParseError("missing exponent in '" + raw + "'");
        deg = std::stoi(s.substr(st, pos - st));
        if (deg > 7) throw ParseError("exponent too large in '" + raw + "'");
      }
    } else if (!have_coef) {
      throw ParseError("cannot parse scalar '" + raw + "'");
    }
    out.c[deg] += sign * coef;
    if (deg > out.max_deg) out.max_deg = deg;
  }
  return out;
}

}  // namespace detail

class FieldSpec {
 public:
  static const FieldSpec& rationals() { return intern(FieldKind::rationals, 0, 0, 0); }

  // Q(a) with a^2 + u a + v = 0. Throws if the polynomial is reducible.
  static const FieldSpec& quadratic(const mpq_class& u, const mpq_class& v) {
    mpq_class disc = u * u - 4 * v;
    if (detail::is_square(disc))
      throw std::invalid_argument("a^2 + (" + u.get_str() + ")a + (" + v.get_str() +
                                  ") is reducible over Q");
    return intern(FieldKind::quadratic, u, v, 0);
  }

  static const FieldSpec& prime(unsigned q) {
    if (q < 2 || q > 257) throw std::invalid_argument("GF(q) requires a prime q <= 257");
    for (unsigned d = 2; d * d <= q; ++d)
      if (q % d == 0) throw std::invalid_argument("GF(" + std::to_string(q) + "): modulus is not prime");
    return intern(FieldKind::prime, 0, 0, q);
  }

  // Accepts "Q", "Q(a^2+1)", "Q(a^2+a+1)", "GF(11)".
  static const FieldSpec& parse(std::string_view text) {
    std::string s = detail::strip_spaces(text);
    if (s == "Q" || s == "QQ") return rationals();
    if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
      std::string inner = s.substr(3, s.size() - 4);
      if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad field modulus in '" + std::string(text) + "'");
      if (inner.size() > 6) throw std::invalid_argument("GF(q) requires a prime q <= 257");
      return prime(static_cast<unsigned>(std::stoul(inner)));
    }
    if (s.rfind("Q(", 0) == 0 && s.back() == ')') {
      detail::APoly p = detail::parse_apoly(s.substr(2, s.size() - 3), true);
      if (p.max_deg != 2 || p.c[2] != 1)
        throw ParseError("minimal polynomial must be monic of degree 2: '" + std::string(text) + "'");
      return quadratic(p.c[1], p.c[0]);
    }
    throw ParseError("unknown field '" + std::string(text) + "'");
  }

  FieldKind kind() const { return kind_; }
  const mpq_class& u() const { return u_; }
  const mpq_class& v() const { return v_; }
  unsigned modulus() const { return q_; }
  bool is_quadratic() const { return kind_ == FieldKind::quadratic; }
  bool is_prime() const { return kind_ == FieldKind::prime; }

  std::string to_string() const {
    switch (kind_) {
      case FieldKind::rationals:
        return "Q";
      case FieldKind::prime:
        return "GF(" + std::to_string(q_) + ")";
      case FieldKind::quadratic: {
        std::string s = "Q(a^2";
        if (u_ != 0) {
          mpq_class au = abs(u_);
          s += sgn(u_) > 0 ? "+" : "-";
          if (au != 1) s += au.get_str();
          s += "a";
        }
        if (v_ != 0) {
          s += sgn(v_) > 0 ? "+" : "-";
          s += mpq_class(abs(v_)).get_str();
        }
        return s + ")";
      }
    }
    return "?";
  }

  inline Scalar zero() const;
  inline Scalar one() const;
  inline Scalar from_int(long n) const;
  inline Scalar from_rational(const mpq_class& r) const;
  inline Scalar alpha() const;
  inline Scalar parse_scalar(std::string_view text) const;

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

 private:
  struct Key {};

 public:
  FieldSpec(Key, FieldKind k, mpq_class u, mpq_class v, unsigned q) : kind_(k), u_(u), v_(v), q_(q) {}

 private:

  static const FieldSpec& intern(FieldKind k, const mpq_class& u, const mpq_class& v, unsigned q) {
    static std::mutex mu;
    static std::deque<FieldSpec> registry;
    std::lock_guard<std::mutex> lock(mu);
    for (const FieldSpec& f : registry)
      if (f.kind_ == k && f.u_ == u && f.v_ == v && f.q_ == q) return f;
    registry.emplace_back(Key{}, k, u, v, q);
    return registry.back();
  }

  FieldKind kind_;
  mpq_class u_, v_;
  unsigned q_;
};

// c0 + c1*a. Over GF(q) only c0 is used and holds the residue in [0, q).
class Scalar {
 public:
  Scalar() : field_(&FieldSpec::rationals()) {}
  Scalar(const FieldSpec& f, mpq_class c0, mpq_class c1 = 0) : field_(&f), c0_(std::move(c0)), c1_(std::move(c1)) {
    normalize();
  }

  const FieldSpec& field() const { return *field_; }
  const mpq_class& c0() const { return c0_; }
  const mpq_class& c1() const { return c1_; }

  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  bool is_one() const { return c0_ == 1 && c1_ == 0; }
  bool is_rational() const { return c1_ == 0; }

  // Residue for GF(q) scalars.
  unsigned residue() const { return static_cast<unsigned>(c0_.get_num().get_ui()); }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    c0_ += o.c0_;
    c1_ += o.c1_;
    normalize();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    c0_ -= o.c0_;
    c1_ -= o.c1_;
    normalize();
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (field_->kind() == FieldKind::quadratic) {
      mpq_class t = c1_ * o.c1_;
      mpq_class n0 = c0_ * o.c0_ - field_->v() * t;
      mpq_class n1 = c0_ * o.c1_ + c1_ * o.c0_ - field_->u() * t;
      c0_ = std::move(n0);
      c1_ = std::move(n1);
    } else {
      c0_ *= o.c0_;
    }
    normalize();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }

  Scalar operator-() const {
    Scalar r(*this);
    r.c0_ = -r.c0_;
    r.c1_ = -r.c1_;
    r.normalize();
    return r;
  }

  Scalar inv() const {
    if (is_zero()) throw DivisionByZero();
    switch (field_->kind()) {
      case FieldKind::rationals:
        return Scalar(*field_, 1 / c0_);
      case FieldKind::prime: {
        mpz_class r, m(field_->modulus());
        mpz_invert(r.get_mpz_t(), c0_.get_num().get_mpz_t(), m.get_mpz_t());
        return Scalar(*field_, mpq_class(r));
      }
      case FieldKind::quadratic: {
        const mpq_class& u = field_->u();
        const mpq_class& v = field_->v();
        mpq_class norm = c0_ * c0_ - u * c0_ * c1_ + v * c1_ * c1_;
        return Scalar(*field_, (c0_ - u * c1_) / norm, -c1_ / norm);
      }
    }
    throw DivisionByZero();
  }

  Scalar pow(unsigned e) const {
    Scalar r = field_->one(), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.check(b);
    return a.c0_ == b.c0_ && a.c1_ == b.c1_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // True when the scalar is a negative rational; used for sign-aware printing.
  bool is_negative_rational() const {
    return c1_ == 0 && sgn(c0_) < 0 && field_->kind() != FieldKind::prime;
  }

  std::string to_string() const {
    switch (field_->kind()) {
      case FieldKind::rationals:
        return c0_.get_str();
      case FieldKind::prime:
        return c0_.get_str() + " mod " + std::to_string(field_->modulus());
      case FieldKind::quadratic:
        break;
    }
    if (c1_ == 0) return c0_.get_str();
    std::string s;
    if (c0_ != 0) s = c0_.get_str();
    mpq_class a1 = abs(c1_);
    if (sgn(c1_) < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    if (a1 != 1) s += a1.get_str();
    return s + "a";
  }

  // Form without the " mod q" suffix, used inside polynomials and matrices.
  std::string to_plain_string() const {
    if (field_->kind() == FieldKind::prime) return c0_.get_str();
    return to_string();
  }

  static Scalar parse(const FieldSpec& f, std::string_view text) {
    std::string s = detail::trim(text);
    if (f.kind() == FieldKind::prime) {
      size_t m = s.find("mod");
      if (m != std::string::npos) {
        std::string qs = detail::strip_spaces(s.substr(m + 3));
        if (qs != std::to_string(f.modulus()))
          throw FieldMismatch("scalar '" + s + "' is not in " + f.to_string());
        s = s.substr(0, m);
      }
      detail::APoly p = detail::parse_apoly(s, false);
      mpz_class q(f.modulus());
      mpz_class den = p.c[0].get_den();
      if (den % q == 0) throw DivisionByZero();
      return Scalar(f, mpq_class(p.c[0].get_num())) / Scalar(f, mpq_class(den));
    }
    detail::APoly p = detail::parse_apoly(s, f.kind() == FieldKind::quadratic);
    Scalar r(f, p.c[0], 0);
    Scalar a = f.kind() == FieldKind::quadratic ? Scalar(f, 0, 1) : Scalar(f, 0);
    Scalar ak = f.one();
    for (int d = 1; d <= p.max_deg; ++d) {
      ak *= a;
      if (p.c[d] != 0) r += ak * Scalar(f, p.c[d]);
    }
    return r;
  }

 private:
  void check(const Scalar& o) const {
    if (field_ != o.field_)
      throw FieldMismatch("mixed fields: " + field_->to_string() + " and " + o.field_->to_string());
  }

  void normalize() {
    c0_.canonicalize();
    c1_.canonicalize();
    if (field_->kind() == FieldKind::prime) {
      mpz_class m(field_->modulus());
      mpz_class den = c0_.get_den();
      mpz_class num = c0_.get_num();
      if (den != 1) {
        mpz_class di;
        if (mpz_invert(di.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) throw DivisionByZero();
        num *= di;
      }
      mpz_class r;
      mpz_mod(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
      c0_ = mpq_class(r);
      c1_ = 0;
    } else if (field_->kind() == FieldKind::rationals) {
      c1_ = 0;
    }
  }

  const FieldSpec* field_;
  mpq_class c0_, c1_;
};

inline Scalar FieldSpec::zero() const { return Scalar(*this, 0); }
inline Scalar FieldSpec::one() const { return Scalar(*this, 1); }
inline Scalar FieldSpec::from_int(long n) const { return Scalar(*this, mpq_class(n)); }
inline Scalar FieldSpec::from_rational(const mpq_class& r) const { return Scalar(*this, r); }
inline Scalar FieldSpec::alpha() const {
  if (kind_ != FieldKind::quadratic) throw std::logic_error(to_string() + " has no generator a");
  return Scalar(*this, 0, 1);
}
inline Scalar FieldSpec::parse_scalar(std::string_view text) const { return Scalar::parse(*this, text); }

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const FieldSpec& f) { return os << f.to_string(); }

}  // namespace dext
