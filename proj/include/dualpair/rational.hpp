#pragma once

#include <gmpxx.h>

#include <charconv>
#include <climits>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dualpair {

namespace detail {
__extension__ typedef __int128 wide_i;
__extension__ typedef unsigned __int128 wide_u;
} // namespace detail

/// Arbitrary-precision rational number in lowest terms with positive
/// denominator.
///
/// Values whose numerator and denominator fit in a signed 64-bit word are held
/// inline and combined with 128-bit intermediates; anything larger spills to a
/// GMP rational. The two representations never overlap: a value that fits is
/// always stored inline, so structural comparison is value comparison.
class Rational {
public:
  Rational() noexcept = default;
  Rational(std::int64_t n) noexcept { set_small_or_big(n, 1); } // NOLINT: implicit by intent
  Rational(int n) noexcept : Rational(static_cast<std::int64_t>(n)) {}
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_wide(n, d);
  }
  explicit Rational(mpq_class q) {
    q.canonicalize();
    adopt(std::move(q));
  }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p", "p/q" with decimal integers of any length.
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || (slash != std::string_view::npos && (den.front() == '-' || den.front() == '+')))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    auto strip_plus = [](std::string_view s) { return (!s.empty() && s.front() == '+') ? s.substr(1) : s; };
    mpz_class n(std::string(strip_plus(num)), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "': zero denominator");
    return Rational(mpq_class(n, d));
  }

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const noexcept { return big_ ? big_->get_den() == 1 : den_ == 1; }
  bool is_small() const noexcept { return !big_; }
  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }

  std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0) return b;
      if (b.num_ == 0) return a;
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t r;
        if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != INT64_MIN) return small(r, 1);
        return from_wide(static_cast<detail::wide_i>(a.num_) + b.num_, 1);
      }
      if (a.den_ == b.den_) return from_wide(static_cast<detail::wide_i>(a.num_) + b.num_, a.den_);
      return from_wide(static_cast<detail::wide_i>(a.num_) * b.den_ + static_cast<detail::wide_i>(b.num_) * a.den_,
                       static_cast<detail::wide_i>(a.den_) * b.den_);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t r;
        if (!__builtin_mul_overflow(a.num_, b.num_, &r) && r != INT64_MIN) return small(r, 1);
        return from_wide(static_cast<detail::wide_i>(a.num_) * b.num_, 1);
      }
      // Cross-cancel first; the result is then already in lowest terms.
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      detail::wide_i n = static_cast<detail::wide_i>(a.num_ / g1) * (b.num_ / g2);
      detail::wide_i d = static_cast<detail::wide_i>(a.den_ / g2) * (b.den_ / g1);
      return from_reduced(n, d);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return a * b.reciprocal();
  }

  Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    return num_ > 0 ? small(den_, num_) : small(-den_, -num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false; // canonical forms differ in storage class only if values differ
  }
  friend bool operator<(const Rational& a, const Rational& b) { return (a - b).sign() < 0; }

private:
  static Rational small(std::int64_t n, std::int64_t d) noexcept {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static detail::wide_u gcd_wide(detail::wide_u a, detail::wide_u b) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
      detail::wide_u t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(detail::wide_i n, detail::wide_i d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::wide_u un = n < 0 ? static_cast<detail::wide_u>(-n) : static_cast<detail::wide_u>(n);
    detail::wide_u g = gcd_wide(un, static_cast<detail::wide_u>(d));
    if (g > 1) {
      n /= static_cast<detail::wide_i>(g);
      d /= static_cast<detail::wide_i>(g);
    }
    return from_reduced(n, d);
  }

  static bool fits(detail::wide_i v) { return v > static_cast<detail::wide_i>(INT64_MIN) && v <= static_cast<detail::wide_i>(INT64_MAX); }

  static mpz_class to_mpz(detail::wide_i v) {
    bool neg = v < 0;
    detail::wide_u u = neg ? static_cast<detail::wide_u>(-v) : static_cast<detail::wide_u>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  static Rational from_reduced(detail::wide_i n, detail::wide_i d) {
    if (fits(n) && fits(d)) return small(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    Rational r;
    r.big_ = std::make_unique<mpq_class>(to_mpz(n), to_mpz(d));
    return r;
  }

  void set_small_or_big(std::int64_t n, std::int64_t d) {
    if (n == INT64_MIN) {
      big_ = std::make_unique<mpq_class>(to_mpz(n), to_mpz(d));
      return;
    }
    num_ = n;
    den_ = d;
  }

  void adopt(mpq_class q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n != LONG_MIN) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

} // namespace dualpair
