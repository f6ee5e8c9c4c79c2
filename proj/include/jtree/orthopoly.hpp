#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "jtree/coefficients.hpp"
#include "jtree/error.hpp"
#include "jtree/scalar.hpp"
#include "jtree/series.hpp"

namespace jtree {

/// Runs the three-term recurrence
///   z a_n = s lambda_{n-1} a_{n-1} + beta_n a_n + s lambda_n a_{n+1}
/// for p (p_0 = 1, p_1 = (z - beta_0)/(s lambda_0)) and q (q_0 = 0,
/// q_1 = 1/lambda_0), growing on demand.
template <class T>
class RecurrenceStepper {
 public:
  RecurrenceStepper(const CoefficientSequence& coeffs, RadialScale scale, const SpectralParameter& z)
      : coeffs_(&coeffs),
        s_(ScalarTraits<T>::sqrt_int(scale.squared)),
        z_(ScalarTraits<T>::parameter(z)) {
    if (scale.squared == 0) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    p_.push_back(ScalarTraits<T>::from_int(1));
    q_.push_back(ScalarTraits<T>::from_int(0));
  }

  /// Makes p_0..p_n and q_0..q_n available.
  void extend_to(std::size_t n) {
    while (p_.size() <= n) step();
  }

  [[nodiscard]] const T& p(std::size_t n) const { return p_.at(n); }
  [[nodiscard]] const T& q(std::size_t n) const { return q_.at(n); }
  [[nodiscard]] std::size_t size() const { return p_.size(); }
  std::vector<T> take_p() { return std::move(p_); }
  std::vector<T> take_q() { return std::move(q_); }

 private:
  void step() {
    const std::size_t n = p_.size() - 1;  // compute index n + 1
    T lam_n = ScalarTraits<T>::lambda(*coeffs_, n);
    T off_n = s_ * lam_n;
    T shift = z_ - ScalarTraits<T>::beta(*coeffs_, n);
    T pn;
    T qn;
    if (n == 0) {
      pn = shift / off_n;
      qn = ScalarTraits<T>::from_int(1) / lam_n;
    } else {
      T off_prev = s_ * ScalarTraits<T>::lambda(*coeffs_, n - 1);
      pn = (shift * p_[n] - off_prev * p_[n - 1]) / off_n;
      qn = (shift * q_[n] - off_prev * q_[n - 1]) / off_n;
    }
    if constexpr (!ScalarTraits<T>::exact) {
      if (!std::isfinite(pn.real()) || !std::isfinite(pn.imag()) || !std::isfinite(qn.real()) ||
          !std::isfinite(qn.imag())) {
        throw Error(ErrorCode::Overflow,
                    "polynomial values overflowed at n = " + std::to_string(n + 1) +
                        "; use exact mode or rescale the coefficients");
      }
    }
    p_.push_back(std::move(pn));
    q_.push_back(std::move(qn));
  }

  const CoefficientSequence* coeffs_;
  T s_;
  T z_;
  std::vector<T> p_;
  std::vector<T> q_;
};

/// p_n(z), q_n(z) for n = 0..max_index.
template <class T>
struct BasicPolyTable {
  SpectralParameter z;
  RadialScale scale;
  std::size_t max_index = 0;
  std::vector<T> p;
  std::vector<T> q;
  bool exact_mode = ScalarTraits<T>::exact;
};

using PolyTable = BasicPolyTable<Complex>;
using ExactPolyTable = BasicPolyTable<exact::Number>;

template <class T>
BasicPolyTable<T> compute_polys_as(const CoefficientSequence& coeffs, RadialScale scale,
                                   const SpectralParameter& z, std::size_t max_index) {
  if constexpr (ScalarTraits<T>::exact) {
    if (!coeffs.is_exact()) {
      throw Error(ErrorCode::NotExact, "coefficients are not rational; exact mode unavailable");
    }
  }
  coeffs.require_terms(max_index);
  RecurrenceStepper<T> stepper(coeffs, scale, z);
  stepper.extend_to(max_index);
  BasicPolyTable<T> out{z, scale, max_index, stepper.take_p(), stepper.take_q()};
  return out;
}

[[nodiscard]] PolyTable compute_polys(const CoefficientSequence& coeffs, RadialScale scale,
                                      const SpectralParameter& z, std::size_t max_index);
[[nodiscard]] ExactPolyTable compute_polys_exact(const CoefficientSequence& coeffs,
                                                 RadialScale scale, const SpectralParameter& z,
                                                 std::size_t max_index);

/// |p_n q_{n+1} - p_{n+1} q_n - 1/lambda_n| for n < max_index.
[[nodiscard]] std::vector<double> wronskian_residual(const PolyTable& table,
                                                     const CoefficientSequence& coeffs);
/// Same residual divided by max(1/lambda_n, |p_n q_{n+1}| + |p_{n+1} q_n|).
[[nodiscard]] std::vector<double> wronskian_relative_residual(const PolyTable& table,
                                                              const CoefficientSequence& coeffs);
/// Exact differences p_n q_{n+1} - p_{n+1} q_n - 1/lambda_n.
[[nodiscard]] std::vector<exact::Number> wronskian_residual(const ExactPolyTable& table,
                                                            const CoefficientSequence& coeffs);

/// Eigenvalues of the leading n x n block (diagonal beta_k, off-diagonal
/// s lambda_k), i.e. the zeros of p_n, ascending.  Sturm bisection.
[[nodiscard]] std::vector<double> poly_roots(const CoefficientSequence& coeffs, RadialScale scale,
                                             std::size_t n);

/// p_n(x) for real x by the recurrence.
[[nodiscard]] double poly_value(const CoefficientSequence& coeffs, RadialScale scale, double x,
                                std::size_t n);
/// Magnitude of the terms met while evaluating p_n(x); rounding error is a
/// small multiple of eps times this.
[[nodiscard]] double poly_eval_scale(const CoefficientSequence& coeffs, RadialScale scale,
                                     double x, std::size_t n);

struct AlphaEntry {
  double alpha = 0.0;
  SeriesSummary series;
};

/// alpha_0^2 = sum_n |p_n|^2 and
/// alpha_k^2 = lambda_{k-1}^2 sum_{n>=k} |p_{k-1} q_n - q_{k-1} p_n|^2
/// for the radial scaling sqrt(d); alpha_k is the positive root.
struct AlphaTable {
  SpectralParameter z;
  unsigned d = 2;
  std::vector<AlphaEntry> entries;
  SeriesStatus status = SeriesStatus::Inconclusive;

  /// Throws DivergedSeries / InconclusiveSeries unless entry k converged.
  [[nodiscard]] double alpha(std::size_t k) const;
  [[nodiscard]] double alpha_squared(std::size_t k) const;
};

[[nodiscard]] AlphaTable alpha_series(const CoefficientSequence& coeffs, TreeConfig tree,
                                      const SpectralParameter& z, std::size_t k_max,
                                      SeriesRule rule = {});

/// n-th term of the alpha_k series (n >= k), straight from p and q.
template <class T>
T alpha_term(const CoefficientSequence& coeffs, const std::vector<T>& p, const std::vector<T>& q,
             std::size_t k, std::size_t n) {
  if (k == 0) return p[n] * conj_of(p[n]);
  T lam = ScalarTraits<T>::lambda(coeffs, k - 1);
  T w = lam * (p[k - 1] * q[n] - q[k - 1] * p[n]);
  return w * conj_of(w);
}

/// Exact partial sum of the alpha_k series over n = k..last.
[[nodiscard]] exact::Number alpha_partial_sum_exact(const CoefficientSequence& coeffs,
                                                    TreeConfig tree, const SpectralParameter& z,
                                                    std::size_t k, std::size_t last);
[[nodiscard]] double alpha_partial_sum(const CoefficientSequence& coeffs, TreeConfig tree,
                                       const SpectralParameter& z, std::size_t k,
                                       std::size_t last);

}  // namespace jtree
