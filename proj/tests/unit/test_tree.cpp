#include <doctest.h>

#include <cmath>
#include <random>

#include "jtree/format.hpp"
#include "jtree/tree.hpp"
#include "support.hpp"

using namespace jtree;
using jtree::testing::error_code;
using jtree::testing::kSeed;

TEST_CASE("children and parent") {
  auto kids = Vertex::root().children(3);
  REQUIRE(kids.size() == 3);
  CHECK(kids[0].to_string() == "1");
  CHECK(kids[2].to_string() == "3");
  CHECK(Vertex::parse("1.3.2").parent()->to_string() == "1.3");
  CHECK(!Vertex::root().parent());
  CHECK(Vertex::root().to_string() == "e");
  CHECK(Vertex::parse("e").is_root());
}

TEST_CASE("address round trip and parent of child") {
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 200; ++t) {
    const unsigned d = 2 + t % 11;
    auto x = jtree::testing::random_vertex(d, 8, rng);
    CHECK(Vertex::parse(x.to_string()) == x);
    auto kids = x.children(d);
    CHECK(kids.size() == d);
    for (auto& c : kids) CHECK(*c.parent() == x);
  }
  // indices above 9 need the dotted form
  CHECK(Vertex::parse("12.3").length() == 2);
  CHECK(Vertex::parse("12.3")[0] == 12);
}

TEST_CASE("address validation") {
  CHECK(error_code([] { (void)Vertex::parse("1..2"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { (void)Vertex::parse("0.1"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { Vertex::parse("1.3").validate(2); }) == ErrorCode::InvalidArgument);
  CHECK(!error_code([] { Vertex::parse("1.3").validate(3); }));
}

TEST_CASE("prefixes") {
  auto x = Vertex::parse("2.1.2");
  CHECK(x.prefix(0).is_root());
  CHECK(x.prefix(2).to_string() == "2.1");
  CHECK(Vertex::parse("2.1").is_prefix_of(x));
  CHECK(!Vertex::parse("2.2").is_prefix_of(x));
  CHECK(x.common_prefix_length(Vertex::parse("2.1.1.1")) == 2);
}

TEST_CASE("level enumeration and budget") {
  CHECK(words_of_length(3, 4).size() == 81);
  auto lv = subtree_level(Vertex::parse("1.2"), 2, 5);
  CHECK(lv.size() == 8);
  for (auto& w : lv) CHECK(Vertex::parse("1.2").is_prefix_of(w));
  CHECK(error_code([] { (void)words_of_length(2, 30, 1000); }) == ErrorCode::PatchTooLarge);
}

TEST_CASE("patch cardinality") {
  for (unsigned d = 2; d <= 4; ++d) {
    for (std::size_t n = 0; n <= 6; ++n) {
      LambdaPatch patch{d, n};
      auto v = patch.vertices();
      std::size_t expect = (static_cast<std::size_t>(std::pow(d, n + 1)) - 1) / (d - 1);
      CHECK(v.size() == expect);
      CHECK(patch.size() == expect);
      for (auto& w : v) CHECK(patch.level(w) == n - w.length());
    }
  }
  LambdaPatch p{2, 3};
  CHECK(p.level(Vertex::successor_marker()) == 4);
}

TEST_CASE("level indicators") {
  auto chi0 = level_indicator(2, 0);
  CHECK(chi0 == delta(2, Vertex::root()));
  CHECK(level_indicator(3, 3).size() == 27);
  for (std::size_t n = 0; n <= 8; ++n) {
    auto m = mu(2, n);
    CHECK(std::abs(inner(m, m) - 1.0) <= 1e-14);
    for (std::size_t k = 0; k < n; ++k) CHECK(inner(m, mu(2, k)) == Complex(0.0));
  }
  CHECK(error_code([] { (void)level_indicator(2, 40); }) == ErrorCode::PatchTooLarge);
}

TEST_CASE("inner product") {
  auto x = Vertex::parse("1.2");
  auto y = Vertex::parse("2.2");
  CHECK(inner(delta(2, x), delta(2, x)) == Complex(1.0));
  CHECK(inner(delta(2, x), delta(2, y)) == Complex(0.0));
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 100; ++t) {
    auto f = jtree::testing::random_function(3, 4, 12, rng);
    auto g = jtree::testing::random_function(3, 4, 12, rng);
    Complex a = inner(f, g);
    Complex b = std::conj(inner(g, f));
    CHECK(std::abs(a - b) <= 1e-15 * (1 + std::abs(a)));
    Complex c = jtree::testing::random_complex(rng);
    CHECK(std::abs(inner(c * f, g) - c * a) <= 1e-13 * (1 + std::abs(a)));
    CHECK(std::abs(inner(f, c * g) - std::conj(c) * a) <= 1e-13 * (1 + std::abs(a)));
  }
  auto p = SparseFunction::on_patch(LambdaPatch{2, 2});
  CHECK(error_code([&] { (void)inner(p, delta(2, x)); }) == ErrorCode::KindMismatch);
}

TEST_CASE("no stored zeros") {
  SparseFunction f(2);
  auto x = Vertex::parse("1");
  f.add(x, 2.0);
  f.add(x, -2.0);
  CHECK(f.empty());
  f.set(x, 0.0);
  CHECK(f.empty());
  f.set(x, 1.0);
  f *= Complex(0.0);
  CHECK(f.empty());
}

TEST_CASE("json round trip sorted by address") {
  std::mt19937_64 rng(kSeed);
  auto f = jtree::testing::random_function(2, 5, 20, rng);
  auto j = to_json(f);
  for (std::size_t k = 1; k < j.size(); ++k) {
    auto a = Vertex::parse(j[k - 1]["address"].get<std::string>());
    auto b = Vertex::parse(j[k]["address"].get<std::string>());
    CHECK(a < b);
  }
  CHECK(sparse_function_from_json(j, 2) == f);
}
