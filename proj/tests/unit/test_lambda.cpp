#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "jtree/lambda_tree.hpp"
#include "jtree/oracle.hpp"
#include "support.hpp"

using namespace jtree;
using jtree::exact::Number;
using jtree::testing::error_code;

TEST_CASE("radial propagation solves the level equation exactly") {
  auto c = CoefficientSequence::geometric(mpq_class(2, 3), mpq_class(3, 2), mpq_class(1, 5));
  for (unsigned d : {2u, 3u}) {
    const TreeConfig tree(d);
    const auto z = SpectralParameter(mpq_class(1, 2), mpq_class(3, 4));
    const Number zz = ScalarTraits<Number>::parameter(z);
    auto v = radial_propagate_as<Number>(Number(1), z, 12, c, tree);
    using S = ScalarTraits<Number>;
    CHECK(S::beta(c, 0) * v[0] + S::lambda(c, 0) * v[1] == zz * v[0]);
    for (std::size_t k = 1; k < 12; ++k) {
      Number lhs = Number(static_cast<long>(d)) * S::lambda(c, k - 1) * v[k - 1] + S::beta(c, k) * v[k] +
                   S::lambda(c, k) * v[k + 1];
      CHECK(lhs == zz * v[k]);
    }
  }
}

TEST_CASE("propagated solutions never vanish off the real line") {
  for (auto c : {CoefficientSequence::constant(1), CoefficientSequence::doubling_example()}) {
    auto cert = esa_certificate(c, TreeConfig(2), SpectralParameter(0.0, 1.0), 30);
    CHECK(cert.certified);
    CHECK(cert.patch_mass.size() == 31);
    for (std::size_t k = 1; k < cert.patch_mass.size(); ++k) CHECK(cert.patch_mass[k] > cert.patch_mass[k - 1]);
  }
  CHECK(error_code([] {
          (void)esa_certificate(CoefficientSequence::constant(1), TreeConfig(2), SpectralParameter(1.0, 0.0), 3);
        }) == ErrorCode::RealSpectralParameter);
}

TEST_CASE("eigenpair for apex level one") {
  auto c = CoefficientSequence::geometric(1, 2, mpq_class(1, 3));
  auto pairs = build_eigenpairs(1, c, TreeConfig(2));
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].eigenvalue == doctest::Approx(1.0 / 3.0));
  const auto& f = pairs[0].eigenfunction;
  CHECK(f.size() == 2);
  CHECK(f.at(Vertex::parse("1")) == Complex(1.0));
  CHECK(f.at(Vertex::parse("2")) == Complex(-1.0));
  CHECK(eigen_residual(pairs[0], c, TreeConfig(2)) <= 1e-15);
}

TEST_CASE("eigenpair counts and residuals") {
  auto c = CoefficientSequence::doubling_example();
  for (unsigned d : {2u, 3u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto pairs = build_eigenpairs(n, c, TreeConfig(d));
      CHECK(pairs.size() == n * (d - 1));
      for (auto& p : pairs) {
        CHECK(eigen_residual(p, c, TreeConfig(d)) <= 1e-10);
        CHECK(p.eigenfunction.at(Vertex::root()) == Complex(0.0));
      }
    }
  }
  CHECK(build_eigenpairs(3, c, TreeConfig(3)).size() == 6);
  CHECK(build_eigenpairs(0, c, TreeConfig(3)).empty());
}

TEST_CASE("dimension audit") {
  auto a = dimension_audit(1, 2);
  CHECK(a.dim_M == 3);
  CHECK(a.dim_V == 1);
  CHECK(a.identity_holds);
  auto b = dimension_audit(2, 2);
  CHECK(b.dim_M == 7);
  CHECK(b.dim_V == 4);
  auto e = dimension_audit(3, 3);
  CHECK(e.dim_V == 36);
  CHECK(e.dim_M == 40);
  for (std::size_t n = 0; n <= 12; ++n) {
    for (unsigned d = 2; d <= 5; ++d) CHECK(dimension_audit(n, d).identity_holds);
  }
  CHECK(error_code([] { (void)dimension_audit(2, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("patch eigenbasis has the expected size") {
  auto c = CoefficientSequence::constant(1);
  for (unsigned d : {2u, 3u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(build_patch_eigenbasis(n, c, TreeConfig(d)).size() == dimension_audit(n, d).dim_V);
    }
  }
}

TEST_CASE("spectrum enumeration") {
  auto c = CoefficientSequence::geometric(1, 2, mpq_class(1, 4));
  auto one = spectrum_enumerate(c, TreeConfig(2), 1);
  REQUIRE(one.roots.size() == 1);
  CHECK(one.roots[0].root == doctest::Approx(0.25));
  CHECK(one.roots[0].n == 1);

  // zero diagonal: the spectrum is symmetric and 0 recurs for every odd n
  auto sym = spectrum_enumerate(CoefficientSequence::constant(1), TreeConfig(3), 7);
  std::size_t zeros = 0;
  for (auto& e : sym.roots) {
    if (std::abs(e.root) <= 1e-10) ++zeros;
    bool mirrored = std::any_of(sym.roots.begin(), sym.roots.end(),
                                [&](const SpectrumEntry& o) { return std::abs(o.root + e.root) <= 1e-9; });
    CHECK(mirrored);
  }
  CHECK(zeros == 1);
  CHECK(sym.min_gap > 1e-10);
  for (std::size_t i = 1; i < sym.roots.size(); ++i) CHECK(sym.roots[i - 1].root < sym.roots[i].root);
}

TEST_CASE("eigenvalues belong to the dense patch spectrum") {
  auto c = CoefficientSequence::power(1, 1, mpq_class(1, 2));
  for (unsigned d : {2u, 3u}) {
    const std::size_t n = 4;
    auto dense = dense_eigensolve(lambda_truncation(c, TreeConfig(d), n));
    for (auto& p : build_patch_eigenbasis(n, c, TreeConfig(d))) {
      double best = 1e300;
      for (Eigen::Index j = 0; j < dense.values.size(); ++j) best = std::min(best, std::abs(dense.values(j) - p.eigenvalue));
      CHECK(best <= 1e-8);
    }
  }
}

TEST_CASE("eigenfunctions: orthogonality and independence") {
  auto c = CoefficientSequence::doubling_example();
  const unsigned d = 3;
  const std::size_t n = 3;
  auto basis = build_patch_eigenbasis(n, c, TreeConfig(d));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      if (std::abs(basis[a].eigenvalue - basis[b].eigenvalue) < 1e-6) continue;
      const auto& f = basis[a].eigenfunction;
      const auto& g = basis[b].eigenfunction;
      CHECK(std::abs(inner(f, g)) <= 1e-10 * norm(f) * norm(g));
    }
  }
  LambdaPatch patch{d, n};
  auto verts = patch.vertices();
  Eigen::MatrixXd M(static_cast<Eigen::Index>(verts.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& f = basis[j].eigenfunction;
    const double nf = norm(f);
    for (std::size_t r = 0; r < verts.size(); ++r) {
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = f.at(verts[r]).real() / nf;
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  auto s = svd.singularValues();
  CHECK(s(s.size() - 1) / s(0) > 1e-8);
}
