#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jtree/coefficients.hpp"
#include "jtree/orthopoly.hpp"
#include "jtree/radial_function.hpp"
#include "jtree/tree.hpp"

namespace jtree {

/// Level profiles of the solutions f_x of J f = z f (away from the parent of
/// x) supported below a vertex x:
///   |x| = 0:  f(n) = p_n / sqrt(d)^n
///   |x| = K:  f(n) = lambda_{K-1} (p_{K-1} q_n - q_{K-1} p_n) / sqrt(d)^{n-K}, n >= K
/// with p, q taken from the radially scaled recurrence.  Immutable once built.
template <class T>
class BasicDeficiencyBasis {
 public:
  BasicDeficiencyBasis(CoefficientSequence coeffs, TreeConfig tree, SpectralParameter z,
                       std::size_t max_level)
      : coeffs_(std::move(coeffs)),
        tree_(tree),
        z_(std::move(z)),
        table_(compute_polys_as<T>(coeffs_, RadialScale::radial(tree.d()), z_, max_level)) {
    inv_sqrt_pow_.reserve(max_level + 1);
    T inv_s = ScalarTraits<T>::from_int(1) / ScalarTraits<T>::sqrt_int(tree.d());
    T acc = ScalarTraits<T>::from_int(1);
    for (std::size_t j = 0; j <= max_level; ++j) {
      inv_sqrt_pow_.push_back(acc);
      acc *= inv_s;
    }
    lambdas_.reserve(max_level + 1);
    for (std::size_t j = 0; j <= max_level; ++j) lambdas_.push_back(ScalarTraits<T>::lambda(coeffs_, j));
  }

  [[nodiscard]] const CoefficientSequence& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] TreeConfig tree() const noexcept { return tree_; }
  [[nodiscard]] unsigned d() const noexcept { return tree_.d(); }
  [[nodiscard]] const SpectralParameter& z() const noexcept { return z_; }
  [[nodiscard]] std::size_t max_level() const noexcept { return table_.max_index; }
  [[nodiscard]] const BasicPolyTable<T>& table() const noexcept { return table_; }

  /// Value of f_x on level n where |x| = root_depth; zero above the root.
  [[nodiscard]] T level_value(std::size_t root_depth, std::size_t n) const {
    if (n > max_level()) {
      throw Error(ErrorCode::InvalidArgument, "level " + std::to_string(n) +
                                                  " beyond the basis depth " +
                                                  std::to_string(max_level()));
    }
    if (n < root_depth) return ScalarTraits<T>::from_int(0);
    const auto& p = table_.p;
    const auto& q = table_.q;
    if (root_depth == 0) return p[n] * inv_sqrt_pow_[n];
    const std::size_t k = root_depth - 1;
    return lambdas_[k] * (p[k] * q[n] - q[k] * p[n]) * inv_sqrt_pow_[n - root_depth];
  }

  /// f_root(y).
  [[nodiscard]] T value_at(const Vertex& root, const Vertex& y) const {
    if (!root.is_prefix_of(y)) return ScalarTraits<T>::from_int(0);
    return level_value(root.length(), y.length());
  }

 private:
  CoefficientSequence coeffs_;
  TreeConfig tree_;
  SpectralParameter z_;
  BasicPolyTable<T> table_;
  std::vector<T> inv_sqrt_pow_;
  std::vector<T> lambdas_;
};

using DeficiencyBasis = BasicDeficiencyBasis<Complex>;
using ExactDeficiencyBasis = BasicDeficiencyBasis<exact::Number>;

enum class AnchorKind { Zero, RootChild, General };

/// Level-n value of f_0 (Zero), of f_{e_i} (RootChild) or of f_{x_i} with
/// |x| = k (General).
[[nodiscard]] Complex f_value(AnchorKind kind, std::size_t k, std::size_t n,
                              const SpectralParameter& z, const CoefficientSequence& coeffs,
                              TreeConfig tree);

/// Element of A_0 (a f_0) or of A_x (sum_i a_i f_{x_i}, sum a_i = 0).
template <class T>
class BasicDeficiencyElement {
 public:
  static BasicDeficiencyElement zero_anchored(T a) {
    BasicDeficiencyElement e;
    e.coefficients_.push_back(std::move(a));
    return e;
  }

  static BasicDeficiencyElement anchored(Vertex x, std::vector<T> a, unsigned d) {
    if (a.size() != d) throw Error(ErrorCode::InvalidArgument, "need one coefficient per child");
    T sum = ScalarTraits<T>::from_int(0);
    double scale = 0.0;
    for (const auto& v : a) {
      sum += v;
      scale += magnitude_of(v);
    }
    if (!approx_equal(sum, ScalarTraits<T>::from_int(0), std::max(1.0, scale), 1e-14)) {
      throw Error(ErrorCode::InvalidArgument, "coefficients of an anchored element must sum to zero");
    }
    BasicDeficiencyElement e;
    e.anchor_ = std::move(x);
    e.coefficients_ = std::move(a);
    return e;
  }

  [[nodiscard]] bool is_zero_anchor() const noexcept { return !anchor_.has_value(); }
  [[nodiscard]] const std::optional<Vertex>& anchor() const noexcept { return anchor_; }
  [[nodiscard]] const std::vector<T>& coefficients() const noexcept { return coefficients_; }

  /// Coefficient carried by the branch containing y, or zero.
  [[nodiscard]] T branch_coefficient(const Vertex& y) const {
    if (!anchor_) return coefficients_[0];
    if (!anchor_->is_prefix_of(y) || y.length() == anchor_->length()) {
      return ScalarTraits<T>::from_int(0);
    }
    return coefficients_[y[anchor_->length()] - 1];
  }

  /// Depth of the roots of the f's used by this element.
  [[nodiscard]] std::size_t root_depth() const { return anchor_ ? anchor_->length() + 1 : 0; }

  [[nodiscard]] T value_at(const Vertex& y, const BasicDeficiencyBasis<T>& basis) const {
    T c = branch_coefficient(y);
    if (is_zero_value(c)) return c;
    return c * basis.level_value(root_depth(), y.length());
  }

 private:
  BasicDeficiencyElement() = default;
  std::optional<Vertex> anchor_;
  std::vector<T> coefficients_;
};

using DeficiencyElement = BasicDeficiencyElement<Complex>;
using ExactDeficiencyElement = BasicDeficiencyElement<exact::Number>;

/// Vertex-by-vertex values on levels <= depth.
template <class T>
BasicSparseFunction<T> materialize(const BasicDeficiencyElement<T>& e,
                                   const BasicDeficiencyBasis<T>& basis, std::size_t depth,
                                   std::size_t budget = kDefaultEntryBudget) {
  const unsigned d = basis.d();
  BasicSparseFunction<T> out(d);
  const std::size_t k = e.root_depth();
  std::size_t used = 0;
  for (std::size_t n = k; n <= depth; ++n) {
    T level = basis.level_value(k, n);
    if (!e.anchor()) {
      auto words = words_of_length(d, n, budget);
      used += words.size();
      if (used > budget) throw Error(ErrorCode::PatchTooLarge, "materialization exceeds the entry budget");
      T v = e.coefficients()[0] * level;
      for (auto& w : words) out.set(w, v);
      continue;
    }
    for (std::uint32_t i = 1; i <= d; ++i) {
      const T& a = e.coefficients()[i - 1];
      if (is_zero_value(a)) continue;
      auto words = subtree_level(e.anchor()->child(i), d, n, budget);
      used += words.size();
      if (used > budget) throw Error(ErrorCode::PatchTooLarge, "materialization exceeds the entry budget");
      T v = a * level;
      for (auto& w : words) out.set(w, v);
    }
  }
  return out;
}

/// Same values, stored per branch and level.
template <class T>
BasicBranchRadialFunction<T> materialize_radial(const BasicDeficiencyElement<T>& e,
                                                const BasicDeficiencyBasis<T>& basis,
                                                std::size_t depth) {
  const unsigned d = basis.d();
  const std::size_t k = e.root_depth();
  BasicBranchRadialFunction<T> out(d, k, depth);
  if (k > depth) return out;
  std::vector<T> profile;
  for (std::size_t n = k; n <= depth; ++n) profile.push_back(basis.level_value(k, n));
  auto scaled = [&](const T& a) {
    std::vector<T> v;
    v.reserve(profile.size());
    for (const auto& x : profile) v.push_back(a * x);
    return v;
  };
  if (!e.anchor()) {
    out.set_tail(Vertex::root(), scaled(e.coefficients()[0]));
  } else {
    for (std::uint32_t i = 1; i <= d; ++i) out.set_tail(e.anchor()->child(i), scaled(e.coefficients()[i - 1]));
  }
  return out;
}

/// (z - J) f at one vertex x of the rooted tree.
template <class T, class Lookup>
T deficiency_residual_at(const Lookup& value, const Vertex& x, const CoefficientSequence& coeffs,
                         unsigned d, const T& z) {
  const std::size_t n = x.length();
  T jf = ScalarTraits<T>::beta(coeffs, n) * value(x);
  if (auto p = x.parent()) jf += ScalarTraits<T>::lambda(coeffs, n - 1) * value(*p);
  T children = ScalarTraits<T>::from_int(0);
  for (std::uint32_t i = 1; i <= d; ++i) children += value(x.child(i));
  jf += ScalarTraits<T>::lambda(coeffs, n) * children;
  return z * value(x) - jf;
}

/// max over vertices of level < depth of |z f(x) - (J f)(x)|.
template <class T>
double deficiency_residual(const BasicSparseFunction<T>& f, const SpectralParameter& z,
                           const CoefficientSequence& coeffs, TreeConfig tree, std::size_t depth) {
  const unsigned d = tree.d();
  const T zz = ScalarTraits<T>::parameter(z);
  auto lookup = [&](const Vertex& v) { return f.at(v); };
  std::map<Vertex, bool> candidates;
  for (const auto& [x, v] : f.entries()) {
    candidates[x];
    if (auto p = x.parent()) candidates[*p];
    for (auto& c : x.children(d)) candidates[c];
  }
  double worst = 0.0;
  for (const auto& [x, unused] : candidates) {
    if (x.length() >= depth) continue;
    worst = std::max(worst, magnitude_of(deficiency_residual_at<T>(lookup, x, coeffs, d, zz)));
  }
  return worst;
}

template <class T>
double deficiency_residual(const BasicBranchRadialFunction<T>& f, const SpectralParameter& z,
                           const CoefficientSequence& coeffs, TreeConfig tree, std::size_t depth) {
  const unsigned d = tree.d();
  const T zz = ScalarTraits<T>::parameter(z);
  auto lookup = [&](const Vertex& v) { return f.value(v); };
  std::map<Vertex, bool> candidates;
  for (const auto& [x, v] : f.explicit_values()) {
    candidates[x];
    if (auto p = x.parent()) candidates[*p];
    for (auto& c : x.children(d)) candidates[c];
  }
  for (const auto& [r, vals] : f.tails()) {
    if (auto p = r.parent()) candidates[*p];
  }
  double worst = 0.0;
  for (const auto& [x, unused] : candidates) {
    if (x.length() >= depth) continue;
    worst = std::max(worst, magnitude_of(deficiency_residual_at<T>(lookup, x, coeffs, d, zz)));
  }
  // Inside a tail every vertex of a level sees the same equation.
  for (const auto& [r, vals] : f.tails()) {
    Vertex x = r;
    for (std::size_t m = f.frontier(); m < depth && m <= f.depth(); ++m) {
      worst = std::max(worst, magnitude_of(deficiency_residual_at<T>(lookup, x, coeffs, d, zz)));
      x = x.child(1);
    }
  }
  return worst;
}

enum class Verdict { EssentiallySelfadjoint, NotEssentiallySelfadjoint, Inconclusive };

[[nodiscard]] const char* to_string(Verdict v) noexcept;

struct ClassifyOptions {
  SpectralParameter z{0.0, 1.0};
  /// Defaults to the radial scaling sqrt(d).
  std::optional<RadialScale> scale;
  SeriesRule rule;
  bool exact = false;
};

struct ClassificationReport {
  Verdict verdict = Verdict::Inconclusive;
  SeriesSummary p_series;
  SeriesSummary q_series;
  std::size_t terms_used = 0;
  std::string diagnostics;
  SpectralParameter z;
  RadialScale scale;
  bool exact = false;
  unsigned d = 2;
  std::string coefficients;
};

/// Runs sum |p_n(z)|^2 and sum |q_n(z)|^2.  Both converging means the
/// operator is not essentially selfadjoint; one diverging means it is.
[[nodiscard]] ClassificationReport classify(const CoefficientSequence& coeffs, TreeConfig tree,
                                            const ClassifyOptions& options = {});

/// Orthogonal projection of delta_y onto A_x (x given) or A_0 (x empty).
[[nodiscard]] DeficiencyElement project_onto_Ax(const Vertex& y, const std::optional<Vertex>& x,
                                                const DeficiencyBasis& basis,
                                                const AlphaTable& alpha);

/// Projections onto A_0 and onto A_{y_0}, ..., A_{y_{n-1}} along the path to y.
[[nodiscard]] std::vector<DeficiencyElement> project_full(const Vertex& y,
                                                          const DeficiencyBasis& basis,
                                                          const AlphaTable& alpha);

/// Sum of elements in per-branch radial form.
[[nodiscard]] BranchRadialFunction materialize_sum(const std::vector<DeficiencyElement>& elements,
                                                   const DeficiencyBasis& basis, std::size_t depth);

}  // namespace jtree
