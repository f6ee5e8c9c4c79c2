#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "jtree/series.hpp"

using namespace jtree;

TEST_CASE("geometric terms converge with a geometric tail") {
  std::vector<double> t;
  for (int n = 0; n < 200; ++n) t.push_back(std::pow(0.5, n));
  auto s = summarize_series(t);
  CHECK(s.status == SeriesStatus::Converged);
  CHECK(s.partial_sum + s.tail_estimate == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.ratio_estimate == doctest::Approx(0.5));
  CHECK(s.terms_used < 60);
}

TEST_CASE("constant terms diverge") {
  std::vector<double> t(1000, 1.0);
  auto s = summarize_series(t);
  CHECK(s.status == SeriesStatus::Diverged);
  CHECK(s.terms_used <= 80);
}

TEST_CASE("slowly decaying terms stay inconclusive at the budget") {
  SeriesRule rule;
  rule.n_max = 5000;
  SeriesAccumulator acc(rule);
  std::size_t n = 1;
  while (!acc.add(1.0 / (double(n) * double(n)))) ++n;
  CHECK(acc.summary().status == SeriesStatus::Inconclusive);
  CHECK(acc.summary().terms_used == 5000);
}

TEST_CASE("partial sum above 1/tol diverges") {
  SeriesRule rule;
  rule.tol = 1e-3;
  SeriesAccumulator acc(rule);
  acc.add(1.0);
  CHECK(!acc.finished());
  acc.add(2000.0);
  CHECK(acc.finished());
  CHECK(acc.summary().status == SeriesStatus::Diverged);
}

TEST_CASE("non-finite terms diverge") {
  SeriesAccumulator acc;
  acc.add(1.0);
  CHECK(acc.add(std::numeric_limits<double>::infinity()));
  CHECK(acc.summary().status == SeriesStatus::Diverged);
}

TEST_CASE("ratio near one is not accepted as convergence") {
  // terms shrink below tol * S only after ratios close to 1
  std::vector<double> t;
  for (int n = 0; n < 3000; ++n) t.push_back(std::pow(0.995, n));
  SeriesRule rule;
  rule.tol = 1e-3;
  auto s = summarize_series(t, rule);
  CHECK(s.status != SeriesStatus::Converged);
}

TEST_CASE("abandon keeps the partial sum") {
  SeriesAccumulator acc;
  acc.add(1.0);
  acc.add(0.5);
  acc.abandon("stopped");
  CHECK(acc.finished());
  CHECK(acc.summary().status == SeriesStatus::Inconclusive);
  CHECK(acc.summary().partial_sum == 1.5);
  CHECK(acc.summary().note == "stopped");
}

TEST_CASE("status names") {
  CHECK(std::string(to_string(SeriesStatus::Converged)) == "Converged");
  CHECK(std::string(to_string(SeriesStatus::Diverged)) == "Diverged");
  CHECK(std::string(to_string(SeriesStatus::Inconclusive)) == "Inconclusive");
}
