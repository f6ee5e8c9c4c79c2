#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jtree/deficiency.hpp"
#include "jtree/oracle.hpp"
#include "jtree/orthopoly.hpp"
#include "support.hpp"

using namespace jtree;
using jtree::exact::Number;
using jtree::testing::error_code;

namespace {

const SpectralParameter kI{0.0, 1.0};
const SpectralParameter kZero{0.0, 0.0};

}  // namespace

TEST_CASE("alternating values at zero for the neighbor-sum diagonal") {
  for (auto base : {CoefficientSequence::geometric(1, 2), CoefficientSequence::constant(mpq_class(3, 7)),
                    CoefficientSequence::power(2, 3)}) {
    auto c = CoefficientSequence::neighbor_sum(base);
    auto t = compute_polys_exact(c, RadialScale::unscaled(), kZero, 60);
    for (std::size_t n = 0; n <= 60; ++n) CHECK(t.p[n] == Number(n % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("initial data") {
  auto c = CoefficientSequence::geometric(mpq_class(3, 2), 2, 1);
  for (unsigned s : {1u, 2u, 3u}) {
    auto t = compute_polys(c, RadialScale{s}, SpectralParameter(0.5, 2.0), 4);
    CHECK(t.p[0] == Complex(1.0));
    CHECK(t.q[0] == Complex(0.0));
    CHECK(t.q[1] == Complex(1.0 / 1.5));
    CHECK(t.p[1] == (Complex(0.5, 2.0) - 1.0) / (std::sqrt(double(s)) * 1.5));
  }
}

TEST_CASE("unit constant coefficients at zero") {
  auto t = compute_polys_exact(CoefficientSequence::constant(1), RadialScale::unscaled(), kZero, 8);
  const long expect[] = {1, 0, -1, 0, 1, 0, -1, 0, 1};
  for (std::size_t n = 0; n <= 8; ++n) CHECK(t.p[n] == Number(expect[n]));
}

TEST_CASE("exact Wronskian residual vanishes") {
  auto c = CoefficientSequence::geometric(1, mpq_class(3, 2), mpq_class(1, 3));
  for (unsigned s : {1u, 2u, 5u}) {
    auto t = compute_polys_exact(c, RadialScale{s}, SpectralParameter(mpq_class(1), mpq_class(1)), 40);
    for (auto& r : wronskian_residual(t, c)) CHECK(r.is_zero());
  }
  auto one = compute_polys_exact(c, RadialScale::radial(2), kI, 1);
  auto r = wronskian_residual(one, c);
  REQUIRE(r.size() == 1);
  CHECK(r[0].is_zero());
}

TEST_CASE("float Wronskian against the exact table") {
  auto c = CoefficientSequence::geometric(1, 2);
  auto z = SpectralParameter(1.0, 1.0);
  auto f = compute_polys(c, RadialScale::radial(2), z, 100);
  auto rel = wronskian_relative_residual(f, c);
  CHECK(*std::max_element(rel.begin(), rel.end()) <= 1e-9);
  // values agree with the exact run
  auto e = compute_polys_exact(c, RadialScale::radial(2), z, 100);
  for (std::size_t n = 0; n <= 100; n += 7) {
    auto ex = e.p[n].to_complex();
    CHECK(std::abs(f.p[n] - ex) <= 1e-10 * std::max(1.0, std::abs(ex)));
  }
}

TEST_CASE("overflow fails loudly") {
  auto c = CoefficientSequence::geometric(1, 1000);
  CHECK(error_code([&] { (void)compute_polys(c, RadialScale::unscaled(), kZero, 300); }) ==
        ErrorCode::Overflow);
  CHECK(!error_code([&] { (void)compute_polys_exact(c, RadialScale::unscaled(), kZero, 120); }));
}

TEST_CASE("exact mode needs rational data") {
  auto c = CoefficientSequence::power(1, mpq_class(1, 2));
  CHECK(error_code([&] { (void)compute_polys_exact(c, RadialScale::radial(2), kI, 3); }) ==
        ErrorCode::NotExact);
}

TEST_CASE("roots") {
  auto c = CoefficientSequence::geometric(1, mpq_class(3, 2), mpq_class(1, 2));
  auto r1 = poly_roots(c, RadialScale::radial(2), 1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == doctest::Approx(0.5));

  auto r5 = poly_roots(c, RadialScale::radial(2), 5);
  REQUIRE(r5.size() == 5);
  for (std::size_t j = 1; j < 5; ++j) CHECK(r5[j - 1] < r5[j]);
  for (double t : r5) {
    CHECK(std::abs(poly_value(c, RadialScale::radial(2), t, 5)) <=
          1e-8 * poly_eval_scale(c, RadialScale::radial(2), t, 5));
  }
}

TEST_CASE("roots interlace") {
  for (auto c : {CoefficientSequence::constant(1), CoefficientSequence::doubling_example(),
                 CoefficientSequence::power(1, 1, -2)}) {
    for (std::size_t n = 1; n < 15; ++n) {
      auto a = poly_roots(c, RadialScale::radial(3), n);
      auto b = poly_roots(c, RadialScale::radial(3), n + 1);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(b[j] < a[j]);
        CHECK(a[j] < b[j + 1]);
      }
    }
  }
}

TEST_CASE("roots match the dense block") {
  auto c = CoefficientSequence::power(1, 1, mpq_class(1, 4));
  for (std::size_t n = 1; n <= 25; ++n) {
    auto r = poly_roots(c, RadialScale::radial(2), n);
    auto dense = dense_eigensolve(radial_block(c, RadialScale::radial(2), 0, n));
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(r[j] - dense.values(Eigen::Index(j))) <= 1e-8);
  }
}

TEST_CASE("alpha series: determinate family diverges") {
  auto table = alpha_series(CoefficientSequence::constant(1), TreeConfig(2), kI, 2);
  CHECK(table.entries[0].series.status == SeriesStatus::Diverged);
  CHECK(error_code([&] { (void)table.alpha(0); }) == ErrorCode::DivergedSeries);
  // the raw terms do not tend to zero
  auto raw = series_oracle(CoefficientSequence::constant(1), RadialScale::radial(2), Complex(0, 1), 400);
  CHECK(raw.p_terms.back() > 0.5);
}

TEST_CASE("alpha series: doubling example converges") {
  auto c = CoefficientSequence::doubling_example();
  auto table = alpha_series(c, TreeConfig(2), kI, 6);
  CHECK(table.status == SeriesStatus::Converged);
  for (std::size_t k = 0; k <= 6; ++k) {
    const auto& e = table.entries[k];
    CHECK(e.series.status == SeriesStatus::Converged);
    CHECK(e.alpha > 0.0);
    CHECK(e.alpha * e.alpha == doctest::Approx(e.series.partial_sum + e.series.tail_estimate));
    CHECK(e.series.ratio_estimate < 0.6);
  }
  CHECK(table.alpha_squared(0) >= 1.0);
}

TEST_CASE("alpha series rejects real z and reports budget exhaustion") {
  auto c = CoefficientSequence::doubling_example();
  CHECK(error_code([&] { (void)alpha_series(c, TreeConfig(2), kZero, 1); }) ==
        ErrorCode::RealSpectralParameter);
  SeriesRule rule;
  rule.n_max = 5;
  auto t = alpha_series(c, TreeConfig(2), kI, 1, rule);
  CHECK(t.entries[0].series.status == SeriesStatus::Inconclusive);
  CHECK(error_code([&] { (void)t.alpha(0); }) == ErrorCode::InconclusiveSeries);
}

TEST_CASE("alpha terms equal weighted level values") {
  // term n of the alpha_k series = d^{n-k} |f(level n)|^2 for f rooted at depth k
  auto c = CoefficientSequence::doubling_example();
  const unsigned d = 3;
  const auto z = SpectralParameter(mpq_class(1, 2), mpq_class(1));
  auto table = compute_polys_exact(c, RadialScale::radial(d), z, 20);
  ExactDeficiencyBasis basis(c, TreeConfig(d), z, 20);
  for (std::size_t k = 0; k <= 5; ++k) {
    for (std::size_t n = k; n <= 20; ++n) {
      auto v = basis.level_value(k, n);
      auto lhs = alpha_term(c, table.p, table.q, k, n);
      CHECK(lhs == int_power<Number>(d, n - k) * exact::abs2(v));
    }
  }
}

TEST_CASE("partial sums in both modes agree") {
  auto c = CoefficientSequence::doubling_example();
  for (std::size_t k = 0; k <= 4; ++k) {
    auto e = alpha_partial_sum_exact(c, TreeConfig(2), kI, k, 30).to_complex().real();
    auto f = alpha_partial_sum(c, TreeConfig(2), kI, k, 30);
    CHECK(std::abs(e - f) <= 1e-13 * e);
  }
}
