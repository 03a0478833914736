#include "sumprod/rational.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>

#include "sumprod/errors.hpp"

namespace sumprod {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kInt64Max = std::numeric_limits<std::int64_t>::max();

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

mpz_class mpz_from_u128(u128 v) {
  mpz_class out;
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v),
                                  static_cast<std::uint64_t>(v >> 64)};
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return out;
}

mpz_class mpz_from_i128(i128 v) {
  mpz_class out = mpz_from_u128(abs128(v));
  if (v < 0) out = -out;
  return out;
}

// |v| < 2^63, so negation never overflows.
bool fits_small(const mpz_class& v) { return mpz_sizeinbase(v.get_mpz_t(), 2) <= 63; }

std::size_t hash_mpz(const mpz_class& v) {
  std::size_t h = std::hash<int>{}(mpz_sgn(v.get_mpz_t()));
  const std::size_t n = mpz_size(v.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    h = hash_combine(h, std::hash<mp_limb_t>{}(mpz_getlimbn(v.get_mpz_t(), i)));
  }
  return h;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  set_from_i128(num, den);
}

Rational::Rational(const mpz_class& value) { set_from_mpq(mpq_class(value)); }

Rational::Rational(const mpq_class& value) {
  mpq_class copy(value);
  copy.canonicalize();
  set_from_mpq(std::move(copy));
}

void Rational::set_from_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den != 1) {
    const u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (num > -kInt64Max - 1 && num <= kInt64Max && den <= kInt64Max) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q;
  q.get_num() = mpz_from_i128(num);
  q.get_den() = mpz_from_i128(den);
  set_from_mpq(std::move(q));
}

void Rational::set_from_u128(u128 value) {
  if (value <= static_cast<u128>(kInt64Max)) {
    num_ = static_cast<std::int64_t>(value);
    den_ = 1;
    big_.reset();
    return;
  }
  set_from_mpq(mpq_class(mpz_from_u128(value)));
}

void Rational::set_from_mpq(mpq_class value) {
  if (fits_small(value.get_num()) && fits_small(value.get_den())) {
    num_ = value.get_num().get_si();
    den_ = value.get_den().get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(value));
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (num_text.size() <= 18 && den_text.size() <= 18) {
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::from_chars(num_text.data(), num_text.data() + num_text.size(), n);
    std::from_chars(den_text.data(), den_text.data() + den_text.size(), d);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational out;
    out.set_from_i128(negative ? -static_cast<i128>(n) : n, d);
    return out;
  }
  mpq_class q;
  q.get_num() = mpz_class(std::string(num_text), 10);
  q.get_den() = mpz_class(std::string(den_text), 10);
  if (q.get_den() == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  if (negative) q.get_num() = -q.get_num();
  q.canonicalize();
  Rational out;
  out.set_from_mpq(std::move(q));
  return out;
}

std::string Rational::str() const {
  if (small()) {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }
  std::string s = big_->get_num().get_str();
  if (big_->get_den() != 1) s += "/" + big_->get_den().get_str();
  return s;
}

mpz_class Rational::numerator() const {
  return small() ? mpz_class(static_cast<long>(num_)) : big_->get_num();
}

mpz_class Rational::denominator() const {
  return small() ? mpz_class(static_cast<long>(den_)) : big_->get_den();
}

mpq_class Rational::to_mpq() const {
  if (!small()) return *big_;
  mpq_class q;
  q.get_num() = static_cast<long>(num_);
  q.get_den() = static_cast<long>(den_);
  return q;
}

double Rational::to_double() const {
  if (small()) return static_cast<double>(num_) / static_cast<double>(den_);
  return big_->get_d();
}

int Rational::sign() const noexcept {
  if (small()) return (num_ > 0) - (num_ < 0);
  return sgn(*big_);
}

bool Rational::is_integer() const { return small() ? den_ == 1 : big_->get_den() == 1; }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw DomainError("zero raised to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  Rational result(1);
  Rational factor = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= factor;
    e >>= 1U;
    if (e != 0) factor *= factor;
  }
  return result;
}

std::size_t Rational::hash() const noexcept {
  if (small()) {
    return hash_combine(std::hash<std::int64_t>{}(num_), std::hash<std::int64_t>{}(den_));
  }
  return hash_combine(hash_mpz(big_->get_num()), hash_mpz(big_->get_den()));
}

Rational Rational::operator-() const {
  Rational out;
  if (small()) {
    out.num_ = -num_;
    out.den_ = den_;
  } else {
    out.set_from_mpq(-*big_);
  }
  return out;
}

Rational operator+(const Rational& x, const Rational& y) {
  Rational out;
  if (x.small() && y.small()) {
    if (x.den_ == 1 && y.den_ == 1) {
      out.set_from_i128(static_cast<i128>(x.num_) + y.num_, 1);
    } else {
      out.set_from_i128(static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_,
                        static_cast<i128>(x.den_) * y.den_);
    }
    return out;
  }
  out.set_from_mpq(x.to_mpq() + y.to_mpq());
  return out;
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  Rational out;
  if (x.small() && y.small()) {
    if (x.den_ == 1 && y.den_ == 1) {
      out.set_from_i128(static_cast<i128>(x.num_) * y.num_, 1);
      return out;
    }
    // Cross-cancel so the product is already reduced.
    const auto ux = static_cast<std::uint64_t>(x.num_ < 0 ? -x.num_ : x.num_);
    const auto uy = static_cast<std::uint64_t>(y.num_ < 0 ? -y.num_ : y.num_);
    const std::int64_t g1 = static_cast<std::int64_t>(std::gcd(ux, static_cast<std::uint64_t>(y.den_)));
    const std::int64_t g2 = static_cast<std::int64_t>(std::gcd(uy, static_cast<std::uint64_t>(x.den_)));
    const std::int64_t a = x.num_ / g1;
    const std::int64_t b = y.num_ / g2;
    const std::int64_t c = x.den_ / g2;
    const std::int64_t d = y.den_ / g1;
    if (a == 0 || b == 0) return out;
    out.set_from_i128(static_cast<i128>(a) * b, static_cast<i128>(c) * d);
    return out;
  }
  out.set_from_mpq(x.to_mpq() * y.to_mpq());
  return out;
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw DomainError("division by zero");
  Rational out;
  if (x.small() && y.small()) {
    out.set_from_i128(static_cast<i128>(x.num_) * y.den_, static_cast<i128>(x.den_) * y.num_);
    return out;
  }
  out.set_from_mpq(x.to_mpq() / y.to_mpq());
  return out;
}

bool operator==(const Rational& x, const Rational& y) noexcept {
  if (x.small() != y.small()) return false;
  if (x.small()) return x.num_ == y.num_ && x.den_ == y.den_;
  return *x.big_ == *y.big_;
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) noexcept {
  if (x.small() && y.small()) {
    if (x.den_ == y.den_) return x.num_ <=> y.num_;
    const i128 lhs = static_cast<i128>(x.num_) * y.den_;
    const i128 rhs = static_cast<i128>(y.num_) * x.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(x.to_mpq(), y.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace sumprod
