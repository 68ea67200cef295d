#pragma once

#include "dualpair/rational.hpp"

#include <ostream>
#include <string>

namespace dualpair {

/// Exact complex number re + im*i with rational parts.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {} // NOLINT: implicit by intent
  GaussianRational(std::int64_t re) : re_(re) {}        // NOLINT
  GaussianRational(int re) : re_(re) {}                 // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  /// i^k for any integer k.
  static GaussianRational i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1};
    case 1: return i();
    case 2: return {-1};
    default: return {Rational(0), Rational(-1)};
    }
  }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    const bool ar = a.im_.is_zero(), br = b.im_.is_zero();
    if (ar && br) return {a.re_ * b.re_};
    const bool ai = a.re_.is_zero(), bi = b.re_.is_zero();
    if (ar && bi) return {Rational(), a.re_ * b.im_};
    if (ai && br) return {Rational(), a.im_ * b.re_};
    if (ai && bi) return {-(a.im_ * b.im_)};
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    if (b.is_real()) return {a.re_ / b.re_, a.im_ / b.re_};
    Rational n = b.norm();
    GaussianRational p = a * b.conj();
    return {p.re_ / n, p.im_ / n};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

  /// *this += a*b without materialising the product when parts vanish.
  void add_product(const GaussianRational& a, const GaussianRational& b) {
    const bool ar = a.im_.is_zero(), br = b.im_.is_zero();
    if (ar && br) {
      re_ += a.re_ * b.re_;
      return;
    }
    const bool ai = a.re_.is_zero(), bi = b.re_.is_zero();
    if (ar && bi) {
      im_ += a.re_ * b.im_;
      return;
    }
    if (ai && br) {
      im_ += a.im_ * b.re_;
      return;
    }
    if (ai && bi) {
      re_ -= a.im_ * b.im_;
      return;
    }
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag;
    if (im_.is_one()) imag = "i";
    else if ((-im_).is_one()) imag = "-i";
    else imag = im_.str() + "i";
    if (re_.is_zero()) return imag;
    return re_.str() + (im_.sign() > 0 ? "+" : "") + imag;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
  Rational re_;
  Rational im_;
};

using Scalar = GaussianRational;

} // namespace dualpair
