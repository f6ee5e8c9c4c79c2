#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "jtree/error.hpp"
#include "jtree/tree.hpp"

namespace jtree::testing {

inline constexpr std::uint64_t kSeed = 0x5eed1234abcdULL;

/// Code of the jtree::Error thrown by f, if any.
template <class F>
std::optional<ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double re = u(rng);
  double im = u(rng);
  return {re, im};
}

inline Vertex random_vertex(unsigned d, std::size_t max_len, std::mt19937_64& rng,
                            std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::uint32_t> idx(1, d);
  Vertex v;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) v = v.child(idx(rng));
  return v;
}

/// Random vertex of the subtree below x, at most max_extra levels deeper.
inline Vertex random_descendant(const Vertex& x, unsigned d, std::size_t max_extra,
                                std::mt19937_64& rng) {
  Vertex tail = random_vertex(d, max_extra, rng);
  Vertex v = x;
  for (std::size_t i = 0; i < tail.length(); ++i) v = v.child(tail[i]);
  return v;
}

inline SparseFunction random_function(unsigned d, std::size_t max_len, std::size_t entries,
                                      std::mt19937_64& rng) {
  SparseFunction f(d);
  for (std::size_t k = 0; k < entries; ++k) f.add(random_vertex(d, max_len, rng), random_complex(rng));
  return f;
}

/// Random function on the patch with apex level n (no mass on the successor).
inline SparseFunction random_patch_function(const LambdaPatch& patch, std::size_t entries,
                                            std::mt19937_64& rng) {
  auto f = SparseFunction::on_patch(patch);
  for (std::size_t k = 0; k < entries; ++k) {
    f.add(random_vertex(patch.d, patch.apex_level, rng), random_complex(rng));
  }
  return f;
}

/// c_i h(|y|) on the subtree of x_i, with sum c_i = 0, levels |x|+1..depth.
inline SparseFunction random_hx_member(const Vertex& x, unsigned d, std::size_t depth,
                                       std::mt19937_64& rng) {
  std::vector<Complex> c(d);
  Complex sum{};
  for (std::uint32_t i = 0; i + 1 < d; ++i) {
    c[i] = random_complex(rng);
    sum += c[i];
  }
  c[d - 1] = -sum;
  SparseFunction f(d);
  for (std::size_t n = x.length() + 1; n <= depth; ++n) {
    Complex h = random_complex(rng);
    for (std::uint32_t i = 1; i <= d; ++i) {
      for (auto& y : subtree_level(x.child(i), d, n)) f.set(y, c[i - 1] * h);
    }
  }
  return f;
}

inline SparseFunction random_radial(unsigned d, std::size_t depth, std::mt19937_64& rng) {
  SparseFunction f(d);
  for (std::size_t n = 0; n <= depth; ++n) {
    Complex h = random_complex(rng);
    for (auto& y : words_of_length(d, n)) f.set(y, h);
  }
  return f;
}

}  // namespace jtree::testing
