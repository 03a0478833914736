#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace sumprod {

/// Exact rational number, always stored reduced with a positive denominator.
///
/// Values whose numerator and denominator fit in an int64 are held inline;
/// anything larger lives in a shared, immutable GMP rational. The choice is
/// canonical (a value is big iff it does not fit), so equality and hashing
/// can work on the representation directly.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      set_from_i128(static_cast<__int128>(value), 1);
    } else {
      set_from_u128(static_cast<unsigned __int128>(value));
    }
  }

  /// Throws DomainError when `den` is zero.
  Rational(std::int64_t num, std::int64_t den);

  explicit Rational(const mpz_class& value);
  explicit Rational(const mpq_class& value);

  /// Parses `[+-]digits[/digits]`. Throws ParseError on anything else,
  /// including a zero denominator.
  static Rational parse(std::string_view text);

  std::string str() const;

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const;
  Rational abs() const;

  /// Integer power; negative exponents invert (zero base then throws).
  static Rational pow(const Rational& base, int exponent);

  std::size_t hash() const noexcept;

  Rational operator-() const;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  /// Throws DomainError on division by zero.
  friend Rational operator/(const Rational& x, const Rational& y);

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) noexcept;
  friend std::strong_ordering operator<=>(const Rational& x,
                                          const Rational& y) noexcept;

 private:
  void set_from_i128(__int128 num, __int128 den);
  void set_from_u128(unsigned __int128 value);
  void set_from_mpq(mpq_class value);
  bool small() const noexcept { return !big_; }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

struct RationalHash {
  std::size_t operator()(const Rational& x) const noexcept { return x.hash(); }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

}  // namespace sumprod
