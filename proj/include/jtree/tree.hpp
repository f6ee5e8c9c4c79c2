#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jtree/error.hpp"
#include "jtree/scalar.hpp"

namespace jtree {

inline constexpr std::size_t kDefaultEntryBudget = 2'000'000;

/// A word over {1..d}.  On the rooted tree it is the path from the root e;
/// on a Lambda patch it is the path from the apex towards the predecessors.
///
/// Text form: "e" for the empty word, otherwise indices joined by '.'.
/// The single-letter word {0} is reserved for the successor of a patch
/// apex and prints as "^".
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<std::uint32_t> word);

  [[nodiscard]] static Vertex root() { return Vertex{}; }
  [[nodiscard]] static Vertex successor_marker();
  [[nodiscard]] static Vertex parse(std::string_view text);

  [[nodiscard]] bool is_root() const noexcept { return word_.empty(); }
  [[nodiscard]] bool is_successor_marker() const noexcept {
    return word_.size() == 1 && word_[0] == 0;
  }
  [[nodiscard]] std::size_t length() const noexcept { return word_.size(); }
  [[nodiscard]] std::uint32_t operator[](std::size_t i) const { return word_[i]; }
  [[nodiscard]] const std::vector<std::uint32_t>& word() const noexcept { return word_; }

  [[nodiscard]] std::optional<Vertex> parent() const;
  [[nodiscard]] Vertex child(std::uint32_t i) const;
  [[nodiscard]] std::vector<Vertex> children(unsigned d) const;
  [[nodiscard]] Vertex prefix(std::size_t len) const;
  /// True when this word is a prefix of `other` (other lies in the subtree).
  [[nodiscard]] bool is_prefix_of(const Vertex& other) const;
  [[nodiscard]] std::size_t common_prefix_length(const Vertex& other) const;
  /// Checks every letter is in 1..d.
  void validate(unsigned d) const;
  [[nodiscard]] std::string to_string() const;

  /// Shortlex: shorter words first, then lexicographic.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b);
  friend bool operator==(const Vertex& a, const Vertex& b) = default;

 private:
  std::vector<std::uint32_t> word_;
};

/// All words of length exactly `length` over {1..d}, shortlex order.
[[nodiscard]] std::vector<Vertex> words_of_length(unsigned d, std::size_t length,
                                                  std::size_t budget = kDefaultEntryBudget);
/// All words in the subtree of `x` at absolute depth `depth`.
[[nodiscard]] std::vector<Vertex> subtree_level(const Vertex& x, unsigned d, std::size_t depth,
                                                std::size_t budget = kDefaultEntryBudget);

/// d^k, throwing PatchTooLarge above `cap`.
[[nodiscard]] std::size_t checked_power(unsigned d, std::size_t k, std::size_t cap);

/// Finite piece of the two-sided tree: the apex at level n and everything
/// reachable from it through predecessors.  Word w sits at level n - |w|.
struct LambdaPatch {
  unsigned d = 2;
  std::size_t apex_level = 0;

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::size_t level(const Vertex& w) const;
  [[nodiscard]] std::vector<Vertex> vertices(std::size_t budget = kDefaultEntryBudget) const;
};

enum class TreeKind { Gamma, LambdaPatch };

/// Finitely supported function on a tree, no stored zeros.
template <class T>
class BasicSparseFunction {
 public:
  using Map = std::map<Vertex, T>;

  explicit BasicSparseFunction(unsigned d = 2, TreeKind kind = TreeKind::Gamma,
                               std::size_t apex_level = 0)
      : d_(d), kind_(kind), apex_level_(apex_level) {}

  static BasicSparseFunction on_patch(const LambdaPatch& patch) {
    return BasicSparseFunction(patch.d, TreeKind::LambdaPatch, patch.apex_level);
  }

  [[nodiscard]] unsigned d() const noexcept { return d_; }
  [[nodiscard]] TreeKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t apex_level() const noexcept { return apex_level_; }
  [[nodiscard]] LambdaPatch patch() const { return {d_, apex_level_}; }
  [[nodiscard]] const Map& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  [[nodiscard]] T at(const Vertex& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? ScalarTraits<T>::from_int(0) : it->second;
  }

  void set(const Vertex& x, T v) {
    if (is_zero_value(v)) {
      entries_.erase(x);
    } else {
      entries_[x] = std::move(v);
    }
  }

  void add(const Vertex& x, const T& v) {
    if (is_zero_value(v)) return;
    auto [it, inserted] = entries_.try_emplace(x, v);
    if (!inserted) {
      it->second += v;
      if (is_zero_value(it->second)) entries_.erase(it);
    }
  }

  /// Level of x on this tree.
  [[nodiscard]] std::size_t level(const Vertex& x) const {
    if (kind_ == TreeKind::Gamma) return x.length();
    if (x.is_successor_marker()) return apex_level_ + 1;
    return apex_level_ - x.length();
  }

  void check_compatible(const BasicSparseFunction& other) const {
    if (d_ != other.d_ || kind_ != other.kind_ ||
        (kind_ == TreeKind::LambdaPatch && apex_level_ != other.apex_level_)) {
      throw Error(ErrorCode::KindMismatch, "functions live on different trees");
    }
  }

  BasicSparseFunction& operator+=(const BasicSparseFunction& g) {
    check_compatible(g);
    for (const auto& [x, v] : g.entries_) add(x, v);
    return *this;
  }
  BasicSparseFunction& operator-=(const BasicSparseFunction& g) {
    check_compatible(g);
    for (const auto& [x, v] : g.entries_) add(x, -v);
    return *this;
  }
  BasicSparseFunction& operator*=(const T& c) {
    if (is_zero_value(c)) {
      entries_.clear();
      return *this;
    }
    for (auto it = entries_.begin(); it != entries_.end();) {
      it->second *= c;
      if (is_zero_value(it->second)) {
        it = entries_.erase(it);
      } else {
        ++it;
      }
    }
    return *this;
  }

  friend BasicSparseFunction operator+(BasicSparseFunction f, const BasicSparseFunction& g) {
    return f += g;
  }
  friend BasicSparseFunction operator-(BasicSparseFunction f, const BasicSparseFunction& g) {
    return f -= g;
  }
  friend BasicSparseFunction operator*(const T& c, BasicSparseFunction f) { return f *= c; }

  friend bool operator==(const BasicSparseFunction& a, const BasicSparseFunction& b) {
    return a.d_ == b.d_ && a.kind_ == b.kind_ && a.apex_level_ == b.apex_level_ &&
           a.entries_ == b.entries_;
  }

 private:
  unsigned d_;
  TreeKind kind_;
  std::size_t apex_level_;
  Map entries_;
};

using SparseFunction = BasicSparseFunction<Complex>;
using ExactSparseFunction = BasicSparseFunction<exact::Number>;

/// <f, g> = sum f(x) conj(g(x)).
template <class T>
T inner(const BasicSparseFunction<T>& f, const BasicSparseFunction<T>& g) {
  f.check_compatible(g);
  T sum = ScalarTraits<T>::from_int(0);
  const auto& small = f.size() <= g.size() ? f.entries() : g.entries();
  const bool f_small = f.size() <= g.size();
  for (const auto& [x, v] : small) {
    const auto& other = f_small ? g.entries() : f.entries();
    auto it = other.find(x);
    if (it == other.end()) continue;
    sum += f_small ? v * conj_of(it->second) : it->second * conj_of(v);
  }
  return sum;
}

template <class T>
double norm(const BasicSparseFunction<T>& f) {
  double s = 0.0;
  for (const auto& [x, v] : f.entries()) s += std::norm(to_complex(v));
  return std::sqrt(s);
}

/// Exact squared norm sum |f(x)|^2.
template <class T>
T norm_squared(const BasicSparseFunction<T>& f) {
  T s = ScalarTraits<T>::from_int(0);
  for (const auto& [x, v] : f.entries()) s += v * conj_of(v);
  return s;
}

template <class T>
double max_abs(const BasicSparseFunction<T>& f) {
  double m = 0.0;
  for (const auto& [x, v] : f.entries()) m = std::max(m, magnitude_of(v));
  return m;
}

/// Indicator of level n of the rooted tree.
template <class T = Complex>
BasicSparseFunction<T> level_indicator(unsigned d, std::size_t n,
                                       std::size_t budget = kDefaultEntryBudget) {
  BasicSparseFunction<T> f(d);
  for (auto& x : words_of_length(d, n, budget)) f.set(x, ScalarTraits<T>::from_int(1));
  return f;
}

/// mu_n = d^{-n/2} chi_n, a unit vector.
template <class T = Complex>
BasicSparseFunction<T> mu(unsigned d, std::size_t n, std::size_t budget = kDefaultEntryBudget) {
  T c = ScalarTraits<T>::from_int(1) / sqrt_power<T>(d, n);
  BasicSparseFunction<T> f(d);
  for (auto& x : words_of_length(d, n, budget)) f.set(x, c);
  return f;
}

/// Single point mass.
template <class T = Complex>
BasicSparseFunction<T> delta(unsigned d, const Vertex& x) {
  BasicSparseFunction<T> f(d);
  f.set(x, ScalarTraits<T>::from_int(1));
  return f;
}

}  // namespace jtree
