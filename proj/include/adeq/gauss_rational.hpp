#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace adeq {

/// An element of Q(i), the Gaussian rationals.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0);

  static GaussRational imaginary_unit() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }
  bool is_minus_one() const { return sgn(im_) == 0 && re_ == -1; }
  /// Real part negative, or purely imaginary with negative imaginary part.
  bool is_negative() const;

  GaussRational conj() const { return {re_, -im_}; }
  mpq_class norm() const;
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Text accepted by the expression grammar: "3", "-1/2", "2*i", "1+2*i".
  std::string to_string() const;
  /// True when to_string() is a single factor that needs no parentheses
  /// in a product.
  bool prints_atomic() const;

 private:
  mpq_class re_;
  mpq_class im_;
};

std::string rational_to_string(const mpq_class& q);

}  // namespace adeq
