#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace jtree::exact {

/// Gaussian rational re + i*im.
struct GaussianRational {
  mpq_class re{0};
  mpq_class im{0};

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] GaussianRational conj() const { return {re, -im}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
};

/// An element a + b*sqrt(r) of Q(i)(sqrt(r)), r squarefree.
///
/// Radicand 1 is the plain Gaussian rationals; b stays zero there.  Values
/// with different radicands > 1 only mix when one of them has b == 0.
class Number {
 public:
  Number() = default;
  Number(long v) : a_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Number(const mpq_class& re, const mpq_class& im = 0) : a_(re, im) {}  // NOLINT
  Number(GaussianRational a) : a_(std::move(a)) {}  // NOLINT
  Number(GaussianRational a, GaussianRational b, std::uint32_t radicand);

  /// sqrt(m) for a positive integer m, with square factors pulled out.
  [[nodiscard]] static Number sqrt_of(std::uint64_t m);

  [[nodiscard]] const GaussianRational& rational_part() const { return a_; }
  [[nodiscard]] const GaussianRational& surd_part() const { return b_; }
  [[nodiscard]] std::uint32_t radicand() const { return r_; }

  [[nodiscard]] bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  [[nodiscard]] bool is_rational() const { return b_.is_zero(); }
  [[nodiscard]] Number conj() const;
  [[nodiscard]] std::complex<double> to_complex() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Number& x, const Number& y);
  friend Number operator+(const Number& x, const Number& y);
  friend Number operator-(const Number& x, const Number& y);
  friend Number operator-(const Number& x);
  friend Number operator*(const Number& x, const Number& y);
  friend Number operator/(const Number& x, const Number& y);

  Number& operator+=(const Number& y) { return *this = *this + y; }
  Number& operator-=(const Number& y) { return *this = *this - y; }
  Number& operator*=(const Number& y) { return *this = *this * y; }
  Number& operator/=(const Number& y) { return *this = *this / y; }

 private:
  GaussianRational a_;
  GaussianRational b_;
  std::uint32_t r_ = 1;
};

/// x * conj(x); always lies in the real subfield.
[[nodiscard]] inline Number abs2(const Number& x) { return x * x.conj(); }

}  // namespace jtree::exact
