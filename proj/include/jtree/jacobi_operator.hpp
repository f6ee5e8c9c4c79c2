#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jtree/coefficients.hpp"
#include "jtree/tree.hpp"

namespace jtree {

/// Jacobi operator with the given coefficients on the d-ary rooted tree or
/// on a patch of the two-sided tree.
struct JacobiOperator {
  CoefficientSequence coeffs;
  TreeConfig tree;

  /// J f.  On the rooted tree
  ///   J delta_x = lambda_{n-1} delta_{parent} + beta_n delta_x + lambda_n sum delta_{child}
  /// and on a patch
  ///   J delta_x = lambda_{n-1} sum delta_{pred} + beta_n delta_x + lambda_n delta_{succ}.
  /// Applying J to a patch function with mass on the apex successor needs
  /// vertices outside the patch and throws PatchTooLarge.
  template <class T>
  [[nodiscard]] BasicSparseFunction<T> apply(const BasicSparseFunction<T>& f) const;
};

template <class T>
BasicSparseFunction<T> JacobiOperator::apply(const BasicSparseFunction<T>& f) const {
  const JacobiOperator& J = *this;
  const unsigned d = J.tree.d();
  if (f.d() != d) throw Error(ErrorCode::KindMismatch, "branching number mismatch");
  BasicSparseFunction<T> out(d, f.kind(), f.apex_level());
  for (const auto& [x, v] : f.entries()) {
    if (f.kind() == TreeKind::Gamma) {
      const std::size_t n = x.length();
      out.add(x, ScalarTraits<T>::beta(J.coeffs, n) * v);
      T down = ScalarTraits<T>::lambda(J.coeffs, n) * v;
      for (std::uint32_t i = 1; i <= d; ++i) out.add(x.child(i), down);
      if (auto p = x.parent()) out.add(*p, ScalarTraits<T>::lambda(J.coeffs, n - 1) * v);
    } else {
      if (x.is_successor_marker()) {
        throw Error(ErrorCode::PatchTooLarge,
                    "function reaches the apex successor; enlarge the patch");
      }
      const std::size_t n = f.level(x);
      out.add(x, ScalarTraits<T>::beta(J.coeffs, n) * v);
      if (n >= 1) {
        T up = ScalarTraits<T>::lambda(J.coeffs, n - 1) * v;
        for (std::uint32_t i = 1; i <= d; ++i) out.add(x.child(i), up);
      }
      T to_succ = ScalarTraits<T>::lambda(J.coeffs, n) * v;
      if (x.is_root()) {
        out.add(Vertex::successor_marker(), to_succ);
      } else {
        out.add(*x.parent(), to_succ);
      }
    }
  }
  return out;
}

enum class MomentRoute { Matrix, Tree };

/// m_n = <J^n delta_e, delta_e> for n = 0..N.  The matrix route iterates the
/// radial matrix on e_0; the tree route iterates apply on delta_e.
template <class T>
std::vector<T> moments_as(const JacobiOperator& J, std::size_t N, MomentRoute route,
                          std::size_t budget = kDefaultEntryBudget) {
  std::vector<T> out;
  const unsigned d = J.tree.d();
  if (route == MomentRoute::Tree) {
    (void)checked_power(d, N, budget);
    auto f = delta<T>(d, Vertex::root());
    out.push_back(f.at(Vertex::root()));
    for (std::size_t n = 1; n <= N; ++n) {
      f = J.apply(f);
      if (f.size() > budget) throw Error(ErrorCode::PatchTooLarge, "moment iterate too large");
      out.push_back(f.at(Vertex::root()));
    }
    return out;
  }
  T s = ScalarTraits<T>::sqrt_int(d);
  std::vector<T> v(N + 2, ScalarTraits<T>::from_int(0));
  v[0] = ScalarTraits<T>::from_int(1);
  out.push_back(v[0]);
  for (std::size_t n = 1; n <= N; ++n) {
    std::vector<T> w(N + 2, ScalarTraits<T>::from_int(0));
    for (std::size_t k = 0; k <= n && k <= N; ++k) {
      if (is_zero_value(v[k])) continue;
      w[k] += ScalarTraits<T>::beta(J.coeffs, k) * v[k];
      T off = s * ScalarTraits<T>::lambda(J.coeffs, k);
      w[k + 1] += off * v[k];
      if (k > 0) w[k - 1] += s * ScalarTraits<T>::lambda(J.coeffs, k - 1) * v[k];
    }
    v = std::move(w);
    out.push_back(v[0]);
  }
  return out;
}

[[nodiscard]] std::vector<double> moments(const JacobiOperator& J, std::size_t N,
                                          MomentRoute route = MomentRoute::Matrix);

/// Radial average E: every vertex on level n gets the mean of f over level n.
/// Levels up to `depth` are materialized.
template <class T>
BasicSparseFunction<T> radial_average_E(const BasicSparseFunction<T>& f, std::size_t depth,
                                        std::size_t budget = kDefaultEntryBudget) {
  if (f.kind() != TreeKind::Gamma) throw Error(ErrorCode::KindMismatch, "E acts on the rooted tree");
  const unsigned d = f.d();
  std::map<std::size_t, T> sums;
  for (const auto& [x, v] : f.entries()) {
    if (x.length() > depth) {
      throw Error(ErrorCode::InvalidArgument, "support deeper than the requested depth");
    }
    auto [it, inserted] = sums.try_emplace(x.length(), v);
    if (!inserted) it->second += v;
  }
  BasicSparseFunction<T> out(d);
  std::size_t used = 0;
  for (const auto& [n, s] : sums) {
    if (is_zero_value(s)) continue;
    T value = s / int_power<T>(d, n);
    auto level = words_of_length(d, n, budget);
    used += level.size();
    if (used > budget) throw Error(ErrorCode::PatchTooLarge, "averaged function exceeds budget");
    for (auto& x : level) out.set(x, value);
  }
  return out;
}

/// E_x: averages f over each level of the subtree below x.
template <class T>
BasicSparseFunction<T> subtree_average_Ex(const BasicSparseFunction<T>& f, const Vertex& x,
                                          std::size_t depth,
                                          std::size_t budget = kDefaultEntryBudget) {
  if (f.kind() != TreeKind::Gamma) throw Error(ErrorCode::KindMismatch, "E_x acts on the rooted tree");
  const unsigned d = f.d();
  std::map<std::size_t, T> sums;
  for (const auto& [y, v] : f.entries()) {
    if (!x.is_prefix_of(y)) {
      throw Error(ErrorCode::NotInSubtree,
                  "vertex " + y.to_string() + " is outside the subtree of " + x.to_string());
    }
    if (y.length() > depth) {
      throw Error(ErrorCode::InvalidArgument, "support deeper than the requested depth");
    }
    auto [it, inserted] = sums.try_emplace(y.length(), v);
    if (!inserted) it->second += v;
  }
  BasicSparseFunction<T> out(d);
  std::size_t used = 0;
  for (const auto& [n, s] : sums) {
    if (is_zero_value(s)) continue;
    T value = s / int_power<T>(d, n - x.length());
    auto level = subtree_level(x, d, n, budget);
    used += level.size();
    if (used > budget) throw Error(ErrorCode::PatchTooLarge, "averaged function exceeds budget");
    for (auto& y : level) out.set(y, value);
  }
  return out;
}

/// Radial matrix with the index shifted by `offset`: diagonal
/// beta_{offset+j}, off-diagonal sqrt(d) lambda_{offset+j}.  d = 1 gives the
/// plain Jacobi matrix.
struct RadialMatrix {
  CoefficientSequence coeffs;
  unsigned d = 2;
  std::size_t offset = 0;

  [[nodiscard]] double diagonal(std::size_t j) const { return coeffs.beta(offset + j); }
  [[nodiscard]] double off_diagonal(std::size_t j) const {
    return RadialScale::radial(d).value() * coeffs.lambda(offset + j);
  }
  /// Leading n x n block as a row-major dense matrix.
  [[nodiscard]] std::vector<double> dense(std::size_t n) const;
};

[[nodiscard]] RadialMatrix radial_matrix(const CoefficientSequence& coeffs, unsigned d,
                                         std::size_t offset = 0);

struct MembershipReport {
  bool member = true;
  int violated_condition = 0;  // 0 when member
  std::string reason;
};

namespace detail {

template <class T>
struct LevelStats {
  T value{};
  bool set = false;
  std::size_t count = 0;
  double max_mag = 0.0;
  bool uniform = true;
};

}  // namespace detail

/// Membership in H_x (x given) or in the radial functions (x empty).
///
/// H_x: support inside the subtree of x minus x, radial on every child
/// subtree, and of the form c_i h(level) on the subtree of child i with
/// sum c_i = 0.  Floats compare at 1e-10 relative to the relevant
/// magnitude; exact scalars compare exactly.
template <class T>
MembershipReport hx_membership(const BasicSparseFunction<T>& f, const std::optional<Vertex>& x,
                               double rel_tol = 1e-10) {
  MembershipReport rep;
  auto fail = [&](int cond, std::string why) {
    rep.member = false;
    rep.violated_condition = cond;
    rep.reason = std::move(why);
    return rep;
  };
  const unsigned d = f.d();
  const double global = max_abs(f);
  if (global == 0.0) return rep;

  // branch key -> level -> stats; branch 0 means the whole tree.
  std::map<std::uint32_t, std::map<std::size_t, detail::LevelStats<T>>> branches;
  const std::size_t base = x ? x->length() + 1 : 0;
  for (const auto& [y, v] : f.entries()) {
    std::uint32_t b = 0;
    if (x) {
      if (!x->is_prefix_of(y) || y.length() == x->length()) {
        if (magnitude_of(v) <= rel_tol * global) continue;
        return fail(1, "support leaves the subtree below " + x->to_string() + " at " + y.to_string());
      }
      b = y[x->length()];
    }
    auto& st = branches[b][y.length()];
    st.count++;
    st.max_mag = std::max(st.max_mag, magnitude_of(v));
    if (!st.set) {
      st.value = v;
      st.set = true;
    }
  }
  // Second pass for uniformity against the first value on the level.
  for (const auto& [y, v] : f.entries()) {
    if (x && (!x->is_prefix_of(y) || y.length() == x->length())) continue;
    std::uint32_t b = x ? y[x->length()] : 0;
    auto& st = branches[b][y.length()];
    if (!approx_equal(v, st.value, st.max_mag, rel_tol)) st.uniform = false;
  }
  for (auto& [b, levels] : branches) {
    for (auto& [n, st] : levels) {
      std::size_t full;
      try {
        full = checked_power(d, n - base, std::size_t(1) << 62);
      } catch (const Error&) {
        full = std::size_t(-1);
      }
      if (st.count < full) {
        // some vertex on this level is zero, so every value must be
        if (st.max_mag > rel_tol * global || (ScalarTraits<T>::exact && st.max_mag > 0)) {
          return fail(3, "not radial on level " + std::to_string(n));
        }
        st.value = ScalarTraits<T>::from_int(0);
      } else if (!st.uniform) {
        return fail(3, "not radial on level " + std::to_string(n));
      }
    }
  }
  if (!x) return rep;

  // c_i h(n): pick the reference branch/level with the largest magnitude.
  std::uint32_t ref_b = 0;
  std::size_t ref_n = 0;
  double best = -1.0;
  for (auto& [b, levels] : branches) {
    for (auto& [n, st] : levels) {
      if (st.max_mag > best) {
        best = st.max_mag;
        ref_b = b;
        ref_n = n;
      }
    }
  }
  auto value_of = [&](std::uint32_t b, std::size_t n) -> T {
    auto bi = branches.find(b);
    if (bi == branches.end()) return ScalarTraits<T>::from_int(0);
    auto li = bi->second.find(n);
    return li == bi->second.end() ? ScalarTraits<T>::from_int(0) : li->second.value;
  };
  const T ref = value_of(ref_b, ref_n);
  std::vector<std::size_t> levels_seen;
  for (auto& [b, levels] : branches)
    for (auto& [n, st] : levels) levels_seen.push_back(n);
  std::sort(levels_seen.begin(), levels_seen.end());
  levels_seen.erase(std::unique(levels_seen.begin(), levels_seen.end()), levels_seen.end());
  T csum = ScalarTraits<T>::from_int(0);
  double cmag = 0.0;
  for (std::uint32_t i = 1; i <= d; ++i) {
    T ci = value_of(i, ref_n);
    csum += ci;
    cmag += magnitude_of(ci);
    for (std::size_t n : levels_seen) {
      double level_max = 0.0;
      for (std::uint32_t j = 1; j <= d; ++j) level_max = std::max(level_max, magnitude_of(value_of(j, n)));
      // v_i(n) * ref == c_i * v_ref(n)
      if (!approx_equal(value_of(i, n) * ref, ci * value_of(ref_b, n), level_max * magnitude_of(ref),
                        rel_tol)) {
        return fail(4, "child subtrees are not proportional on level " + std::to_string(n));
      }
    }
  }
  if (!approx_equal(csum, ScalarTraits<T>::from_int(0), cmag, rel_tol)) {
    return fail(2, "branch coefficients do not sum to zero");
  }
  return rep;
}

}  // namespace jtree
