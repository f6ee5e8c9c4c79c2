#pragma once

#include <cstdint>
#include <vector>

#include "jtree/coefficients.hpp"
#include "jtree/jacobi_operator.hpp"
#include "jtree/orthopoly.hpp"
#include "jtree/tree.hpp"

namespace jtree {

/// Level values sqrt(d)^k p_k(z) v0, k = 0..k_max, of a solution of
/// J v = z v on the part of the two-sided tree below a level-0 vertex
/// holding v0; p_k from the radially scaled recurrence.
template <class T>
std::vector<T> radial_propagate_as(const T& v0, const SpectralParameter& z, std::size_t k_max,
                                   const CoefficientSequence& coeffs, TreeConfig tree) {
  auto table = compute_polys_as<T>(coeffs, RadialScale::radial(tree.d()), z, k_max);
  std::vector<T> out;
  out.reserve(k_max + 1);
  T scale = ScalarTraits<T>::from_int(1);
  T s = ScalarTraits<T>::sqrt_int(tree.d());
  for (std::size_t k = 0; k <= k_max; ++k) {
    out.push_back(scale * table.p[k] * v0);
    scale *= s;
  }
  return out;
}

[[nodiscard]] std::vector<Complex> radial_propagate(Complex v0, const SpectralParameter& z,
                                                    std::size_t k_max,
                                                    const CoefficientSequence& coeffs,
                                                    TreeConfig tree);

struct EsaCertificate {
  /// Every level value of a nonzero solution is nonzero.
  bool certified = false;
  double min_abs_p = 0.0;
  std::size_t argmin = 0;
  /// Squared norm of a propagated solution (v0 = 1) on the patch with apex
  /// level N, for N = 0..k_max: d^N sum_{k<=N} |p_k(z)|^2.
  std::vector<double> patch_mass;
};

/// Evidence that J on the two-sided tree has no nonzero l^2 solution of
/// J v = z v for non-real z.
[[nodiscard]] EsaCertificate esa_certificate(const CoefficientSequence& coeffs, TreeConfig tree,
                                             const SpectralParameter& z, std::size_t k_max);

struct EigenPair {
  double eigenvalue = 0.0;
  SparseFunction eigenfunction;
  /// Apex of the supporting subpatch, as a word in the enclosing patch.
  Vertex apex;
  std::size_t apex_level = 0;
  std::uint32_t branch = 0;      // i in 2..d
  std::size_t root_index = 0;    // j, zeros of p_{apex_level} in ascending order
};

/// For an apex on level n: each zero t_j of p_n and each i = 2..d gives
/// f_{1,j} - f_{i,j}, equal to sqrt(d)^k p_k(t_j) on level k below the first
/// predecessor and its negative below the i-th.
[[nodiscard]] std::vector<EigenPair> build_eigenpairs(std::size_t n,
                                                      const CoefficientSequence& coeffs,
                                                      TreeConfig tree);

/// The same construction for every vertex of positive level of the patch
/// with apex level n, all expressed on that patch.
[[nodiscard]] std::vector<EigenPair> build_patch_eigenbasis(std::size_t n,
                                                            const CoefficientSequence& coeffs,
                                                            TreeConfig tree);

/// ||J f - t f|| / ||f||, computed with the sparse operator on the patch.
[[nodiscard]] double eigen_residual(const EigenPair& pair, const CoefficientSequence& coeffs,
                                    TreeConfig tree);

struct DimensionAudit {
  std::size_t n = 0;
  unsigned d = 2;
  std::uint64_t dim_M = 0;        // vertices of the patch
  std::uint64_t dim_V = 0;        // (d-1) sum_{k=1..n} k d^{n-k}
  std::uint64_t radial_count = 0; // n + 1
  bool identity_holds = false;    // dim_M == dim_V + radial_count
};

[[nodiscard]] DimensionAudit dimension_audit(std::size_t n, unsigned d);

struct SpectrumEntry {
  std::size_t n = 0;  // first polynomial index where the value appears
  double root = 0.0;
};

struct SpectrumSummary {
  std::vector<SpectrumEntry> roots;
  double min_gap = 0.0;
};

/// Union of the zeros of p_1..p_{n_max}, merged at absolute distance 1e-10.
[[nodiscard]] SpectrumSummary spectrum_enumerate(const CoefficientSequence& coeffs,
                                                 TreeConfig tree, std::size_t n_max);

}  // namespace jtree
