#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "jtree/tree.hpp"

namespace jtree {

/// Function on the rooted tree that is radial inside every subtree rooted at
/// the frontier depth D, truncated at level `depth`.
///
/// Vertices above D carry explicit values; below D the value only depends on
/// the frontier ancestor r and the level, so a level-25 function on the
/// binary tree costs a few hundred numbers instead of 2^26.
template <class T>
class BasicBranchRadialFunction {
 public:
  BasicBranchRadialFunction(unsigned d, std::size_t frontier, std::size_t depth)
      : d_(d), frontier_(frontier), depth_(depth) {
    if (frontier > depth + 1) throw Error(ErrorCode::InvalidArgument, "frontier below depth");
  }

  [[nodiscard]] unsigned d() const noexcept { return d_; }
  [[nodiscard]] std::size_t frontier() const noexcept { return frontier_; }
  [[nodiscard]] std::size_t depth() const noexcept { return depth_; }
  [[nodiscard]] const std::map<Vertex, T>& explicit_values() const noexcept { return explicit_; }
  [[nodiscard]] const std::map<Vertex, std::vector<T>>& tails() const noexcept { return tails_; }

  void set_explicit(const Vertex& v, T value) {
    if (v.length() >= frontier_) throw Error(ErrorCode::InvalidArgument, "vertex below frontier");
    if (is_zero_value(value)) {
      explicit_.erase(v);
    } else {
      explicit_[v] = std::move(value);
    }
  }

  /// values[j] is the value on level frontier + j of the subtree of r.
  void set_tail(const Vertex& r, std::vector<T> values) {
    if (r.length() != frontier_) throw Error(ErrorCode::InvalidArgument, "tail root off the frontier");
    values.resize(depth_ + 1 - frontier_, ScalarTraits<T>::from_int(0));
    bool all_zero = true;
    for (auto& v : values) all_zero = all_zero && is_zero_value(v);
    if (all_zero) {
      tails_.erase(r);
    } else {
      tails_[r] = std::move(values);
    }
  }

  [[nodiscard]] T tail_value(const Vertex& r, std::size_t level) const {
    auto it = tails_.find(r);
    if (it == tails_.end() || level < frontier_ || level > depth_) return ScalarTraits<T>::from_int(0);
    return it->second[level - frontier_];
  }

  [[nodiscard]] T value(const Vertex& y) const {
    if (y.length() > depth_) return ScalarTraits<T>::from_int(0);
    if (y.length() < frontier_) {
      auto it = explicit_.find(y);
      return it == explicit_.end() ? ScalarTraits<T>::from_int(0) : it->second;
    }
    return tail_value(y.prefix(frontier_), y.length());
  }

  /// Same function with a deeper frontier.
  [[nodiscard]] BasicBranchRadialFunction refined(std::size_t new_frontier,
                                                  std::size_t budget = kDefaultEntryBudget) const {
    if (new_frontier < frontier_) throw Error(ErrorCode::InvalidArgument, "cannot coarsen");
    if (new_frontier == frontier_) return *this;
    BasicBranchRadialFunction out(d_, new_frontier, depth_);
    out.explicit_ = explicit_;
    for (const auto& [r, vals] : tails_) {
      for (std::size_t m = frontier_; m < new_frontier && m <= depth_; ++m) {
        if (is_zero_value(vals[m - frontier_])) continue;
        for (auto& w : subtree_level(r, d_, m, budget)) out.set_explicit(w, vals[m - frontier_]);
      }
      if (new_frontier > depth_) continue;
      std::vector<T> rest(vals.begin() + static_cast<long>(new_frontier - frontier_), vals.end());
      for (auto& w : subtree_level(r, d_, new_frontier, budget)) out.set_tail(w, rest);
    }
    return out;
  }

  BasicBranchRadialFunction& operator+=(const BasicBranchRadialFunction& g) {
    if (g.d_ != d_ || g.depth_ != depth_) throw Error(ErrorCode::KindMismatch, "incompatible functions");
    if (g.frontier_ > frontier_) *this = refined(g.frontier_);
    const BasicBranchRadialFunction src = g.frontier_ < frontier_ ? g.refined(frontier_) : g;
    for (const auto& [v, x] : src.explicit_) set_explicit(v, value(v) + x);
    for (const auto& [r, vals] : src.tails_) {
      auto mine = tails_.count(r) ? tails_.at(r)
                                  : std::vector<T>(vals.size(), ScalarTraits<T>::from_int(0));
      for (std::size_t j = 0; j < vals.size(); ++j) mine[j] += vals[j];
      set_tail(r, std::move(mine));
    }
    return *this;
  }

  /// Number of vertices of level m (>= frontier) below one frontier root.
  [[nodiscard]] T multiplicity(std::size_t m) const { return int_power<T>(d_, m - frontier_); }

  /// sum over vertices of |f|^2, computed level by level.
  [[nodiscard]] T norm_squared() const {
    T s = ScalarTraits<T>::from_int(0);
    for (const auto& [v, x] : explicit_) s += x * conj_of(x);
    for (const auto& [r, vals] : tails_) {
      for (std::size_t j = 0; j < vals.size(); ++j) {
        s += multiplicity(frontier_ + j) * (vals[j] * conj_of(vals[j]));
      }
    }
    return s;
  }

  /// sum of f over the vertices of level m inside the subtree of x.
  [[nodiscard]] T level_sum(const Vertex& x, std::size_t m) const {
    T s = ScalarTraits<T>::from_int(0);
    if (m < x.length() || m > depth_) return s;
    if (m < frontier_) {
      for (const auto& [v, val] : explicit_) {
        if (v.length() == m && x.is_prefix_of(v)) s += val;
      }
      return s;
    }
    for (const auto& [r, vals] : tails_) {
      if (x.is_prefix_of(r)) {
        s += multiplicity(m) * vals[m - frontier_];
      } else if (r.is_prefix_of(x)) {
        s += int_power<T>(d_, m - x.length()) * vals[m - frontier_];
      }
    }
    return s;
  }

  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (const auto& [v, x] : explicit_) m = std::max(m, magnitude_of(x));
    for (const auto& [r, vals] : tails_)
      for (const auto& x : vals) m = std::max(m, magnitude_of(x));
    return m;
  }

  /// Vertex-by-vertex form; refuses beyond the entry budget.
  [[nodiscard]] BasicSparseFunction<T> expand(std::size_t budget = kDefaultEntryBudget) const {
    BasicSparseFunction<T> out(d_);
    for (const auto& [v, x] : explicit_) out.set(v, x);
    std::size_t used = out.size();
    for (const auto& [r, vals] : tails_) {
      for (std::size_t m = frontier_; m <= depth_; ++m) {
        const T& x = vals[m - frontier_];
        if (is_zero_value(x)) continue;
        auto level = subtree_level(r, d_, m, budget);
        used += level.size();
        if (used > budget) throw Error(ErrorCode::PatchTooLarge, "expansion exceeds the entry budget");
        for (auto& w : level) out.set(w, x);
      }
    }
    return out;
  }

 private:
  unsigned d_;
  std::size_t frontier_;
  std::size_t depth_;
  std::map<Vertex, T> explicit_;
  std::map<Vertex, std::vector<T>> tails_;
};

using BranchRadialFunction = BasicBranchRadialFunction<Complex>;
using ExactBranchRadialFunction = BasicBranchRadialFunction<exact::Number>;

}  // namespace jtree
