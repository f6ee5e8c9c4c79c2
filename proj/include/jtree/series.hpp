#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace jtree {

enum class SeriesStatus { Converged, Diverged, Inconclusive };

[[nodiscard]] const char* to_string(SeriesStatus s) noexcept;

/// Stopping rule for sums of non-negative terms.
///
/// Converged: `window` consecutive terms below tol * partial sum and the
/// median of sqrt(t_n / t_{n-2}) over the window below `max_ratio`; the
/// tail is extrapolated geometrically.  Diverged: partial sum above 1/tol,
/// or the windowed maximum of the terms fails to decrease `stall_limit`
/// times in a row.  Inconclusive when n_max terms are used up.
struct SeriesRule {
  double tol = 1e-12;
  std::size_t n_max = 100000;
  std::size_t window = 8;
  std::size_t stall_limit = 64;
  double max_ratio = 0.99;
};

struct SeriesSummary {
  SeriesStatus status = SeriesStatus::Inconclusive;
  double partial_sum = 0.0;
  double tail_estimate = 0.0;
  std::size_t terms_used = 0;
  double ratio_estimate = 0.0;
  std::string note;
};

class SeriesAccumulator {
 public:
  explicit SeriesAccumulator(SeriesRule rule = {});

  /// Feeds the next term.  Returns true once a verdict has been reached.
  bool add(double term);
  /// Stops early, e.g. when the terms can no longer be computed.
  void abandon(std::string note);

  [[nodiscard]] bool finished() const noexcept { return done_; }
  [[nodiscard]] const SeriesSummary& summary() const noexcept { return summary_; }

 private:
  void finish(SeriesStatus status, std::string note);

  SeriesRule rule_;
  SeriesSummary summary_;
  bool done_ = false;
  bool have_prev_ = false;
  double prev_ = 0.0;
  bool have_prev2_ = false;
  double prev2_ = 0.0;
  std::deque<double> ratios_;
  std::deque<double> window_;
  bool have_prev_max_ = false;
  double prev_max_ = 0.0;
  std::size_t small_run_ = 0;
  std::size_t stall_run_ = 0;
};

/// Runs the rule over a finished list of terms.
[[nodiscard]] SeriesSummary summarize_series(const std::vector<double>& terms, SeriesRule rule = {});

}  // namespace jtree
