#include "jtree/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jtree {

const char* to_string(SeriesStatus s) noexcept {
  switch (s) {
    case SeriesStatus::Converged: return "Converged";
    case SeriesStatus::Diverged: return "Diverged";
    case SeriesStatus::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

SeriesAccumulator::SeriesAccumulator(SeriesRule rule) : rule_(rule) {
  if (rule_.window == 0) rule_.window = 1;
}

void SeriesAccumulator::finish(SeriesStatus status, std::string note) {
  summary_.status = status;
  summary_.note = std::move(note);
  done_ = true;
}

void SeriesAccumulator::abandon(std::string note) {
  if (!done_) finish(SeriesStatus::Inconclusive, std::move(note));
}

bool SeriesAccumulator::add(double term) {
  if (done_) return true;
  ++summary_.terms_used;
  if (!std::isfinite(term)) {
    finish(SeriesStatus::Diverged, "non-finite term");
    return true;
  }
  summary_.partial_sum += term;
  if (summary_.partial_sum > 1.0 / rule_.tol) {
    finish(SeriesStatus::Diverged, "partial sum exceeds 1/tol");
    return true;
  }

  // two-step ratios, so that terms alternating in size (as for a zero
  // diagonal at z = i) still show their geometric decay
  if (have_prev2_) {
    double r;
    if (prev2_ > 0.0) {
      r = std::sqrt(term / prev2_);
    } else {
      r = term > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    ratios_.push_back(r);
    if (ratios_.size() > rule_.window) ratios_.pop_front();
  }
  prev2_ = prev_;
  have_prev2_ = have_prev_;
  prev_ = term;
  have_prev_ = true;

  small_run_ = term < rule_.tol * summary_.partial_sum ? small_run_ + 1 : 0;

  window_.push_back(term);
  if (window_.size() > rule_.window) window_.pop_front();
  if (window_.size() == rule_.window) {
    double m = *std::max_element(window_.begin(), window_.end());
    stall_run_ = (have_prev_max_ && m >= prev_max_) ? stall_run_ + 1 : 0;
    prev_max_ = m;
    have_prev_max_ = true;
  }

  if (small_run_ >= rule_.window && ratios_.size() == rule_.window) {
    std::vector<double> sorted(ratios_.begin(), ratios_.end());
    std::sort(sorted.begin(), sorted.end());
    double r = sorted.size() % 2 == 1
                   ? sorted[sorted.size() / 2]
                   : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    if (r < rule_.max_ratio) {
      summary_.ratio_estimate = r;
      const double rho = r * r;
      summary_.tail_estimate = (term + prev2_) * rho / (1.0 - rho);
      finish(SeriesStatus::Converged, "geometric tail");
      return true;
    }
  }
  if (stall_run_ >= rule_.stall_limit) {
    finish(SeriesStatus::Diverged, "terms stopped decreasing");
    return true;
  }
  if (summary_.terms_used >= rule_.n_max) {
    finish(SeriesStatus::Inconclusive, "term budget n_max exhausted");
    return true;
  }
  return false;
}

SeriesSummary summarize_series(const std::vector<double>& terms, SeriesRule rule) {
  SeriesAccumulator acc(rule);
  for (double t : terms) {
    if (acc.add(t)) break;
  }
  acc.abandon("terms exhausted before a verdict");
  return acc.summary();
}

}  // namespace jtree
