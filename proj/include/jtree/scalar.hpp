#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "jtree/coefficients.hpp"
#include "jtree/exact.hpp"

namespace jtree {

using Complex = std::complex<double>;

/// Glue between the floating scalar (std::complex<double>) and the exact one.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_rational(const mpq_class& q) { return q.get_d(); }
  static Complex from_int(long v) { return static_cast<double>(v); }
  static Complex sqrt_int(std::uint64_t m) { return std::sqrt(static_cast<double>(m)); }
  static Complex lambda(const CoefficientSequence& c, std::size_t n) { return c.lambda(n); }
  static Complex beta(const CoefficientSequence& c, std::size_t n) { return c.beta(n); }
  static Complex parameter(const SpectralParameter& z) { return z.value(); }
};

template <>
struct ScalarTraits<exact::Number> {
  static constexpr bool exact = true;
  static exact::Number from_rational(const mpq_class& q) { return exact::Number(q); }
  static exact::Number from_int(long v) { return exact::Number(v); }
  static exact::Number sqrt_int(std::uint64_t m) { return exact::Number::sqrt_of(m); }
  static exact::Number lambda(const CoefficientSequence& c, std::size_t n) {
    return exact::Number(c.exact_lambda(n));
  }
  static exact::Number beta(const CoefficientSequence& c, std::size_t n) {
    return exact::Number(c.exact_beta(n));
  }
  static exact::Number parameter(const SpectralParameter& z) {
    return exact::Number(z.exact_re(), z.exact_im());
  }
};

inline Complex conj_of(const Complex& x) { return std::conj(x); }
inline exact::Number conj_of(const exact::Number& x) { return x.conj(); }

inline double magnitude_of(const Complex& x) { return std::abs(x); }
inline double magnitude_of(const exact::Number& x) { return std::abs(x.to_complex()); }

inline bool is_zero_value(const Complex& x) { return x == Complex{}; }
inline bool is_zero_value(const exact::Number& x) { return x.is_zero(); }

inline Complex to_complex(const Complex& x) { return x; }
inline Complex to_complex(const exact::Number& x) { return x.to_complex(); }

/// Equality up to rel_tol * scale for floats, exact equality otherwise.
inline bool approx_equal(const Complex& a, const Complex& b, double scale, double rel_tol) {
  return std::abs(a - b) <= rel_tol * scale;
}
inline bool approx_equal(const exact::Number& a, const exact::Number& b, double, double) {
  return a == b;
}

/// d^k as a scalar.
template <class T>
T int_power(unsigned d, std::size_t k) {
  T out = ScalarTraits<T>::from_int(1);
  T base = ScalarTraits<T>::from_int(static_cast<long>(d));
  for (std::size_t i = 0; i < k; ++i) out *= base;
  return out;
}

/// sqrt(d)^k as a scalar.
template <class T>
T sqrt_power(unsigned d, std::size_t k) {
  T out = int_power<T>(d, k / 2);
  if (k % 2 == 1) out *= ScalarTraits<T>::sqrt_int(d);
  return out;
}

}  // namespace jtree
