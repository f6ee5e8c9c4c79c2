#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "jtree/deficiency.hpp"
#include "jtree/tree.hpp"

namespace jtree {

/// Omega_x: the ends of the tree passing through x.
struct CylinderSet {
  Vertex base;
};

/// d^{-|x|}, exactly.
[[nodiscard]] mpq_class cylinder_measure(const Vertex& x, unsigned d);

/// Finite combination of cylinder indicators.
template <class T>
class BasicStepFunction {
 public:
  explicit BasicStepFunction(unsigned d = 2) : d_(d) {}

  void add_piece(const Vertex& base, T value) {
    if (is_zero_value(value)) return;
    pieces_.emplace_back(base, std::move(value));
  }

  [[nodiscard]] unsigned d() const noexcept { return d_; }
  [[nodiscard]] const std::vector<std::pair<Vertex, T>>& pieces() const noexcept { return pieces_; }

  [[nodiscard]] std::size_t depth() const {
    std::size_t m = 0;
    for (const auto& [b, v] : pieces_) m = std::max(m, b.length());
    return m;
  }

  /// Common refinement at the deepest base: disjoint cylinders covering
  /// the union of the supports, overlapping values summed, zeros dropped.
  [[nodiscard]] BasicStepFunction canonical(std::size_t budget = kDefaultEntryBudget) const {
    const std::size_t D = depth();
    std::map<Vertex, T> acc;
    for (const auto& [b, v] : pieces_) {
      for (auto& w : subtree_level(b, d_, D, budget)) {
        auto [it, inserted] = acc.try_emplace(w, v);
        if (!inserted) it->second += v;
      }
      if (acc.size() > budget) throw Error(ErrorCode::PatchTooLarge, "refinement exceeds budget");
    }
    BasicStepFunction out(d_);
    for (auto& [w, v] : acc) out.add_piece(w, v);
    return out;
  }

  /// Value on the cylinder of omega_prefix, which must be at least as deep
  /// as every base it could be ambiguous about.
  [[nodiscard]] T value_at(const Vertex& omega_prefix) const {
    T s = ScalarTraits<T>::from_int(0);
    for (const auto& [b, v] : pieces_) {
      if (b.is_prefix_of(omega_prefix)) {
        s += v;
      } else if (omega_prefix.is_prefix_of(b)) {
        throw Error(ErrorCode::AmbiguousPrefix,
                    "prefix " + omega_prefix.to_string() + " is too short to resolve the step function");
      }
    }
    return s;
  }

  BasicStepFunction& operator+=(const BasicStepFunction& g) {
    for (const auto& [b, v] : g.pieces_) add_piece(b, v);
    return *this;
  }
  BasicStepFunction& operator*=(const T& c) {
    for (auto& [b, v] : pieces_) v *= c;
    return *this;
  }

 private:
  unsigned d_;
  std::vector<std::pair<Vertex, T>> pieces_;
};

using StepFunction = BasicStepFunction<Complex>;
using ExactStepFunction = BasicStepFunction<exact::Number>;

template <class T>
T integrate(const BasicStepFunction<T>& F) {
  T s = ScalarTraits<T>::from_int(0);
  for (const auto& [b, v] : F.pieces()) s += v * ScalarTraits<T>::from_rational(cylinder_measure(b, F.d()));
  return s;
}

namespace detail {

/// sum over piece pairs of F_a op(G_b) |Omega_a cap Omega_b|; cylinders are
/// either nested or disjoint.
template <class T, class Op>
T pair_integral(const BasicStepFunction<T>& F, const BasicStepFunction<T>& G, Op op) {
  if (F.d() != G.d()) throw Error(ErrorCode::KindMismatch, "boundaries of different trees");
  T s = ScalarTraits<T>::from_int(0);
  for (const auto& [a, fa] : F.pieces()) {
    for (const auto& [b, gb] : G.pieces()) {
      const Vertex* deeper = nullptr;
      if (a.is_prefix_of(b)) {
        deeper = &b;
      } else if (b.is_prefix_of(a)) {
        deeper = &a;
      } else {
        continue;
      }
      s += fa * op(gb) * ScalarTraits<T>::from_rational(cylinder_measure(*deeper, F.d()));
    }
  }
  return s;
}

}  // namespace detail

/// <F, G> = integral of F conj(G).
template <class T>
T inner_boundary(const BasicStepFunction<T>& F, const BasicStepFunction<T>& G) {
  return detail::pair_integral(F, G, [](const T& g) { return conj_of(g); });
}

/// integral of F G, no conjugation.
template <class T>
T integrate_product(const BasicStepFunction<T>& F, const BasicStepFunction<T>& G) {
  return detail::pair_integral(F, G, [](const T& g) { return g; });
}

/// F_x = alpha_{|x|} sqrt(d)^{|x|} 1_{Omega_x}, the boundary partner of f_x.
struct IsometryPair {
  StepFunction boundary;
  Vertex tree_root;
  double alpha = 0.0;
};

[[nodiscard]] IsometryPair u_isometry_basis(const Vertex& x, unsigned d, const AlphaTable& alpha);

/// Boundary partner of an element: a F_0, or sum_i a_i F_{x_i}.
[[nodiscard]] StepFunction boundary_image(const DeficiencyElement& g, unsigned d,
                                          const AlphaTable& alpha);

enum class KernelConvention {
  /// f_{y_i}(y) enters unconjugated
  AsStated,
  /// conj(f_{y_i}(y)) instead
  Conjugated,
};

struct PoissonKernel {
  Vertex y;
  KernelConvention convention = KernelConvention::AsStated;
  /// Path form: 1_Omega and the brackets 1_{Omega_{y_i}} - 1_{Omega_{y_{i-1}}}/d.
  StepFunction kernel;
};

/// P_z(y, .) = f_e(y)/alpha_0 1_Omega
///   + sum_{i=1..n} f_{y_i}(y) sqrt(d)^i / alpha_i [1_{Omega_{y_i}} - 1_{Omega_{y_{i-1}}}/d].
[[nodiscard]] PoissonKernel poisson_kernel(const Vertex& y, const DeficiencyBasis& basis,
                                           const AlphaTable& alpha,
                                           KernelConvention convention = KernelConvention::AsStated);

struct RelativePosition {
  std::size_t m = 0;  // length of the common prefix of y and omega
  std::size_t n = 0;  // |y| - m
};

/// Where y sits relative to the end omega given by a finite prefix.
[[nodiscard]] RelativePosition relative_position(const Vertex& y, const Vertex& omega_prefix);

/// (U F)(y) = integral of P_z(y, .) F.
[[nodiscard]] Complex apply_U(const StepFunction& F, const Vertex& y, const DeficiencyBasis& basis,
                              const AlphaTable& alpha);

}  // namespace jtree
