#include <doctest.h>

#include <cmath>
#include <random>

#include "jtree/boundary.hpp"
#include "jtree/format.hpp"
#include "support.hpp"

using namespace jtree;
using jtree::exact::Number;
using jtree::testing::error_code;
using jtree::testing::kSeed;

namespace {

const SpectralParameter kI{0.0, 1.0};

}  // namespace

TEST_CASE("cylinder measure") {
  CHECK(cylinder_measure(Vertex::root(), 3) == 1);
  CHECK(cylinder_measure(Vertex::parse("1.2.1"), 2) == mpq_class(1, 8));
  CHECK(cylinder_measure(Vertex::parse("4.1"), 5) == mpq_class(1, 25));
  // the children of x partition Omega_x
  auto x = Vertex::parse("2.3");
  mpq_class s = 0;
  for (auto& c : x.children(4)) s += cylinder_measure(c, 4);
  CHECK(s == cylinder_measure(x, 4));
}

TEST_CASE("step function canonical form") {
  StepFunction f(2);
  f.add_piece(Vertex::root(), 1.0);
  f.add_piece(Vertex::parse("1.2"), 2.0);
  auto c = f.canonical();
  CHECK(c.pieces().size() == 4);
  CHECK(c.value_at(Vertex::parse("1.2")) == Complex(3.0));
  CHECK(c.value_at(Vertex::parse("2.1")) == Complex(1.0));
  CHECK(f.value_at(Vertex::parse("1.2.2")) == Complex(3.0));
  CHECK(error_code([&] { (void)f.value_at(Vertex::parse("1")); }) == ErrorCode::AmbiguousPrefix);
  CHECK(integrate(f) == Complex(1.5));
  CHECK(integrate(c) == Complex(1.5));

  StepFunction g(2);
  g.add_piece(Vertex::parse("1"), 1.0);
  g.add_piece(Vertex::parse("1"), -1.0);
  CHECK(g.canonical().pieces().empty());
}

TEST_CASE("inner product of step functions") {
  ExactStepFunction a(3);
  a.add_piece(Vertex::parse("1"), Number(mpq_class(1), mpq_class(1)));
  ExactStepFunction b(3);
  b.add_piece(Vertex::parse("1.2"), Number(2));
  b.add_piece(Vertex::parse("2"), Number(5));
  CHECK(inner_boundary(a, b) == Number(mpq_class(2, 9), mpq_class(2, 9)));
  CHECK(integrate_product(a, a) == Number(mpq_class(0), mpq_class(2, 3)));
  CHECK(inner_boundary(a, a) == Number(mpq_class(2, 3)));
  ExactStepFunction other(2);
  CHECK(error_code([&] { (void)inner_boundary(a, other); }) == ErrorCode::KindMismatch);
}

TEST_CASE("isometry on anchored elements") {
  auto c = CoefficientSequence::doubling_example();
  const unsigned d = 3;
  auto alpha = alpha_series(c, TreeConfig(d), kI, 6);
  for (auto addr : {"e", "1", "2.3", "1.1.2"}) {
    auto x = Vertex::parse(addr);
    auto F = u_isometry_basis(x, d, alpha);
    CHECK(std::abs(std::sqrt(inner_boundary(F.boundary, F.boundary).real()) - alpha.alpha(x.length())) <=
          1e-14 * alpha.alpha(x.length()));
    CHECK(F.tree_root == x);
  }
  // F_{x_i} and F_{x_j} are orthogonal, exactly
  ExactStepFunction bx(d);
  ExactStepFunction by(d);
  bx.add_piece(Vertex::parse("2.1"), Number(3));
  by.add_piece(Vertex::parse("2.2"), Number(7));
  CHECK(inner_boundary(bx, by).is_zero());

  std::mt19937_64 rng(kSeed);
  auto x = Vertex::parse("1.2");
  for (int t = 0; t < 10; ++t) {
    std::vector<Complex> a(d);
    a[0] = jtree::testing::random_complex(rng);
    a[1] = jtree::testing::random_complex(rng);
    a[2] = -a[0] - a[1];
    auto g = DeficiencyElement::anchored(x, a, d);
    auto G = boundary_image(g, d, alpha);
    double asq = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
    CHECK(inner_boundary(G, G).real() == doctest::Approx(alpha.alpha_squared(3) * asq).epsilon(1e-13));
    // boundary images of anchored elements integrate to zero
    CHECK(std::abs(integrate(G)) <= 1e-14);
  }
}

TEST_CASE("kernel path form") {
  auto c = CoefficientSequence::doubling_example();
  const unsigned d = 2;
  auto alpha = alpha_series(c, TreeConfig(d), kI, 4);
  DeficiencyBasis basis(c, TreeConfig(d), kI, 4);
  auto y = Vertex::parse("1.2");
  auto P = poisson_kernel(y, basis, alpha);
  CHECK(P.kernel.pieces().size() == 5);
  CHECK(P.kernel.canonical().pieces().size() == 4);
  // the brackets integrate to zero
  CHECK(std::abs(integrate(P.kernel) - basis.level_value(0, 2) / alpha.alpha(0)) <= 1e-15);
  auto Q = poisson_kernel(y, basis, alpha, KernelConvention::Conjugated);
  for (std::size_t k = 0; k < P.kernel.pieces().size(); ++k) {
    CHECK(Q.kernel.pieces()[k].second == std::conj(P.kernel.pieces()[k].second));
  }
  auto root = poisson_kernel(Vertex::root(), basis, alpha);
  REQUIRE(root.kernel.pieces().size() == 1);
  CHECK(std::abs(root.kernel.pieces()[0].second - 1.0 / alpha.alpha(0)) <= 1e-15);
}

TEST_CASE("kernel depends only on the relative position") {
  auto c = CoefficientSequence::doubling_example();
  const unsigned d = 2;
  auto alpha = alpha_series(c, TreeConfig(d), kI, 6);
  DeficiencyBasis basis(c, TreeConfig(d), kI, 6);
  std::map<std::pair<std::size_t, std::size_t>, Complex> seen;
  for (std::size_t len = 0; len <= 4; ++len) {
    for (auto& y : words_of_length(d, len)) {
      auto P = poisson_kernel(y, basis, alpha).kernel;
      for (auto& w : words_of_length(d, 5)) {
        auto pos = relative_position(y, w);
        Complex v = P.value_at(w);
        auto [it, fresh] = seen.emplace(std::make_pair(pos.m, pos.n), v);
        if (!fresh) CHECK(it->second == v);
      }
    }
  }
  CHECK(error_code([] { (void)relative_position(Vertex::parse("1.2.1"), Vertex::parse("1.2")); }) ==
        ErrorCode::AmbiguousPrefix);
  auto r = relative_position(Vertex::parse("1.2.1"), Vertex::parse("1.1"));
  CHECK(r.m == 1);
  CHECK(r.n == 2);
}

TEST_CASE("U reproduces deficiency elements") {
  auto c = CoefficientSequence::doubling_example();
  const unsigned d = 2;
  auto alpha = alpha_series(c, TreeConfig(d), kI, 6);
  DeficiencyBasis basis(c, TreeConfig(d), kI, 6);
  std::vector<DeficiencyElement> elems{DeficiencyElement::zero_anchored(1.0)};
  for (std::size_t len = 0; len <= 2; ++len) {
    for (auto& x : words_of_length(d, len)) elems.push_back(DeficiencyElement::anchored(x, {1.0, -1.0}, d));
  }
  for (auto& g : elems) {
    auto G = boundary_image(g, d, alpha);
    for (std::size_t len = 0; len <= 5; ++len) {
      for (auto& y : words_of_length(d, len)) {
        Complex want = g.value_at(y, basis);
        CHECK(std::abs(apply_U(G, y, basis, alpha) - want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("step function json") {
  StepFunction f(2);
  f.add_piece(Vertex::parse("2.1"), Complex(0.5, -1));
  auto j = to_json(f);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["base_address"] == "2.1");
  CHECK(j[0]["re"].get<double>() == 0.5);
  CHECK(j[0]["im"].get<double>() == -1.0);
}
