#include "jtree/orthopoly.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace jtree {

PolyTable compute_polys(const CoefficientSequence& coeffs, RadialScale scale,
                        const SpectralParameter& z, std::size_t max_index) {
  return compute_polys_as<Complex>(coeffs, scale, z, max_index);
}

ExactPolyTable compute_polys_exact(const CoefficientSequence& coeffs, RadialScale scale,
                                   const SpectralParameter& z, std::size_t max_index) {
  return compute_polys_as<exact::Number>(coeffs, scale, z, max_index);
}

std::vector<double> wronskian_residual(const PolyTable& t, const CoefficientSequence& coeffs) {
  std::vector<double> out;
  for (std::size_t n = 0; n < t.max_index; ++n) {
    Complex w = t.p[n] * t.q[n + 1] - t.p[n + 1] * t.q[n];
    out.push_back(std::abs(w - 1.0 / coeffs.lambda(n)));
  }
  return out;
}

std::vector<double> wronskian_relative_residual(const PolyTable& t,
                                                const CoefficientSequence& coeffs) {
  std::vector<double> out;
  for (std::size_t n = 0; n < t.max_index; ++n) {
    Complex a = t.p[n] * t.q[n + 1];
    Complex b = t.p[n + 1] * t.q[n];
    double target = 1.0 / coeffs.lambda(n);
    double size = std::max(target, std::abs(a) + std::abs(b));
    out.push_back(std::abs(a - b - target) / size);
  }
  return out;
}

std::vector<exact::Number> wronskian_residual(const ExactPolyTable& t,
                                              const CoefficientSequence& coeffs) {
  std::vector<exact::Number> out;
  for (std::size_t n = 0; n < t.max_index; ++n) {
    exact::Number w = t.p[n] * t.q[n + 1] - t.p[n + 1] * t.q[n];
    out.push_back(w - exact::Number(1) / exact::Number(coeffs.exact_lambda(n)));
  }
  return out;
}

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off_sq;
  double pivmin = DBL_MIN;
};

Tridiagonal leading_block(const CoefficientSequence& coeffs, RadialScale scale, std::size_t n) {
  Tridiagonal t;
  double s = scale.value();
  double max_b2 = 1.0;
  for (std::size_t k = 0; k < n; ++k) t.diag.push_back(coeffs.beta(k));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double b = s * coeffs.lambda(k);
    t.off_sq.push_back(b * b);
    max_b2 = std::max(max_b2, b * b);
  }
  t.pivmin = DBL_MIN * max_b2;
  return t;
}

// Number of eigenvalues below x.
std::size_t sturm_count(const Tridiagonal& t, double x) {
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < t.pivmin) q = -t.pivmin;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    q = t.diag[i] - x - t.off_sq[i - 1] / q;
    if (std::abs(q) < t.pivmin) q = -t.pivmin;
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> poly_roots(const CoefficientSequence& coeffs, RadialScale scale, std::size_t n) {
  if (n == 0) return {};
  coeffs.require_terms(n);
  Tridiagonal t = leading_block(coeffs, scale, n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::sqrt(t.off_sq[i - 1]);
    if (i + 1 < n) r += std::sqrt(t.off_sq[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  double pad = 2.0 * DBL_EPSILON * std::max(std::abs(lo), std::abs(hi)) + t.pivmin;
  lo -= pad;
  hi += pad;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::Overflow, "tridiagonal block has non-finite entries");
  }

  std::vector<double> roots;
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo;
    double b = hi;
    for (int iter = 0;; ++iter) {
      if (iter > 4000) {
        throw Error(ErrorCode::ConvergenceFailure, "bisection did not converge");
      }
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b ||
          b - a <= 2.0 * DBL_EPSILON * std::max(std::abs(a), std::abs(b)) + t.pivmin) {
        break;
      }
      if (sturm_count(t, mid) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

double poly_value(const CoefficientSequence& coeffs, RadialScale scale, double x, std::size_t n) {
  double s = scale.value();
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    double next = ((x - coeffs.beta(k)) * cur - (k > 0 ? s * coeffs.lambda(k - 1) * prev : 0.0)) /
                  (s * coeffs.lambda(k));
    prev = cur;
    cur = next;
  }
  return cur;
}

double poly_eval_scale(const CoefficientSequence& coeffs, RadialScale scale, double x,
                       std::size_t n) {
  double s = scale.value();
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    double next =
        ((std::abs(x) + std::abs(coeffs.beta(k))) * cur + (k > 0 ? s * coeffs.lambda(k - 1) * prev : 0.0)) /
        (s * coeffs.lambda(k));
    prev = cur;
    cur = next;
  }
  return cur;
}

double AlphaTable::alpha_squared(std::size_t k) const {
  if (k >= entries.size()) {
    throw Error(ErrorCode::InvalidArgument, "alpha table has no entry " + std::to_string(k));
  }
  const auto& e = entries[k];
  if (e.series.status == SeriesStatus::Diverged) {
    throw Error(ErrorCode::DivergedSeries,
                "alpha_" + std::to_string(k) + " series diverges (determinate case)");
  }
  if (e.series.status == SeriesStatus::Inconclusive) {
    throw Error(ErrorCode::InconclusiveSeries,
                "alpha_" + std::to_string(k) + " series is inconclusive: " + e.series.note);
  }
  return e.series.partial_sum + e.series.tail_estimate;
}

double AlphaTable::alpha(std::size_t k) const { return std::sqrt(alpha_squared(k)); }

AlphaTable alpha_series(const CoefficientSequence& coeffs, TreeConfig tree,
                        const SpectralParameter& z, std::size_t k_max, SeriesRule rule) {
  if (z.is_real()) {
    throw Error(ErrorCode::RealSpectralParameter, "alpha series needs a non-real z");
  }
  AlphaTable table;
  table.z = z;
  table.d = tree.d();
  RecurrenceStepper<Complex> st(coeffs, RadialScale::radial(tree.d()), z);
  bool any_diverged = false;
  bool any_inconclusive = false;
  for (std::size_t k = 0; k <= k_max; ++k) {
    SeriesAccumulator acc(rule);
    try {
      st.extend_to(k);
      Complex pk = k > 0 ? st.p(k - 1) : Complex{};
      Complex qk = k > 0 ? st.q(k - 1) : Complex{};
      double lam = k > 0 ? coeffs.lambda(k - 1) : 1.0;
      for (std::size_t n = k;; ++n) {
        st.extend_to(n);
        double term;
        if (k == 0) {
          term = std::norm(st.p(n));
        } else {
          term = lam * lam * std::norm(pk * st.q(n) - qk * st.p(n));
        }
        if (acc.add(term)) break;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      acc.abandon(e.what());
    }
    AlphaEntry entry;
    entry.series = acc.summary();
    entry.alpha = std::sqrt(entry.series.partial_sum + entry.series.tail_estimate);
    any_diverged |= entry.series.status == SeriesStatus::Diverged;
    any_inconclusive |= entry.series.status == SeriesStatus::Inconclusive;
    table.entries.push_back(entry);
  }
  table.status = any_diverged       ? SeriesStatus::Diverged
                 : any_inconclusive ? SeriesStatus::Inconclusive
                                    : SeriesStatus::Converged;
  return table;
}

namespace {

template <class T>
T alpha_partial(const CoefficientSequence& coeffs, TreeConfig tree, const SpectralParameter& z,
                std::size_t k, std::size_t last) {
  auto table = compute_polys_as<T>(coeffs, RadialScale::radial(tree.d()), z, last);
  T sum = ScalarTraits<T>::from_int(0);
  for (std::size_t n = k; n <= last; ++n) sum += alpha_term(coeffs, table.p, table.q, k, n);
  return sum;
}

}  // namespace

exact::Number alpha_partial_sum_exact(const CoefficientSequence& coeffs, TreeConfig tree,
                                      const SpectralParameter& z, std::size_t k,
                                      std::size_t last) {
  return alpha_partial<exact::Number>(coeffs, tree, z, k, last);
}

double alpha_partial_sum(const CoefficientSequence& coeffs, TreeConfig tree,
                         const SpectralParameter& z, std::size_t k, std::size_t last) {
  return alpha_partial<Complex>(coeffs, tree, z, k, last).real();
}

}  // namespace jtree
