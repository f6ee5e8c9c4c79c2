#include "jtree/lambda_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jtree {

std::vector<Complex> radial_propagate(Complex v0, const SpectralParameter& z, std::size_t k_max,
                                      const CoefficientSequence& coeffs, TreeConfig tree) {
  return radial_propagate_as<Complex>(v0, z, k_max, coeffs, tree);
}

EsaCertificate esa_certificate(const CoefficientSequence& coeffs, TreeConfig tree,
                               const SpectralParameter& z, std::size_t k_max) {
  if (z.is_real()) {
    throw Error(ErrorCode::RealSpectralParameter, "the certificate needs a non-real z");
  }
  auto table = compute_polys(coeffs, RadialScale::radial(tree.d()), z, k_max);
  EsaCertificate cert;
  cert.min_abs_p = std::numeric_limits<double>::infinity();
  double level_sum = 0.0;
  double layer = 1.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    double a = std::abs(table.p[k]);
    if (a < cert.min_abs_p) {
      cert.min_abs_p = a;
      cert.argmin = k;
    }
    level_sum += a * a;
    cert.patch_mass.push_back(layer * level_sum);
    layer *= tree.d();
  }
  cert.certified = cert.min_abs_p > 0.0;
  return cert;
}

namespace {

// p_0(t)..p_{m-1}(t) for real t.
std::vector<double> real_values(const CoefficientSequence& coeffs, double s, double t, std::size_t m) {
  std::vector<double> p;
  p.reserve(m);
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    p.push_back(cur);
    double next = ((t - coeffs.beta(k)) * cur - (k > 0 ? s * coeffs.lambda(k - 1) * prev : 0.0)) /
                  (s * coeffs.lambda(k));
    prev = cur;
    cur = next;
  }
  return p;
}

void append_for_apex(const Vertex& apex, std::size_t N, const CoefficientSequence& coeffs,
                     TreeConfig tree, std::vector<EigenPair>& out) {
  const unsigned d = tree.d();
  const std::size_t m = N - apex.length();
  if (m == 0) return;
  const double s = std::sqrt(static_cast<double>(d));
  auto roots = poly_roots(coeffs, RadialScale::radial(d), m);
  const LambdaPatch patch{d, N};
  for (std::size_t j = 0; j < roots.size(); ++j) {
    auto p = real_values(coeffs, s, roots[j], m);
    std::vector<double> level_value(m);
    double sp = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      level_value[k] = sp * p[k];
      sp *= s;
    }
    for (std::uint32_t i = 2; i <= d; ++i) {
      EigenPair ep;
      ep.eigenvalue = roots[j];
      ep.apex = apex;
      ep.apex_level = m;
      ep.branch = i;
      ep.root_index = j;
      ep.eigenfunction = SparseFunction::on_patch(patch);
      for (std::size_t k = 0; k < m; ++k) {
        // level k below the predecessor on level m - 1
        std::size_t depth_below = m - 1 - k;
        for (auto& w : subtree_level(apex.child(1), d, apex.length() + 1 + depth_below)) {
          ep.eigenfunction.set(w, level_value[k]);
        }
        for (auto& w : subtree_level(apex.child(i), d, apex.length() + 1 + depth_below)) {
          ep.eigenfunction.set(w, -level_value[k]);
        }
      }
      out.push_back(std::move(ep));
    }
  }
}

}  // namespace

std::vector<EigenPair> build_eigenpairs(std::size_t n, const CoefficientSequence& coeffs,
                                        TreeConfig tree) {
  std::vector<EigenPair> out;
  append_for_apex(Vertex::root(), n, coeffs, tree, out);
  return out;
}

std::vector<EigenPair> build_patch_eigenbasis(std::size_t n, const CoefficientSequence& coeffs,
                                              TreeConfig tree) {
  std::vector<EigenPair> out;
  const LambdaPatch patch{tree.d(), n};
  for (auto& w : patch.vertices()) append_for_apex(w, n, coeffs, tree, out);
  return out;
}

double eigen_residual(const EigenPair& pair, const CoefficientSequence& coeffs, TreeConfig tree) {
  JacobiOperator J{coeffs, tree};
  auto r = J.apply(pair.eigenfunction);
  r -= Complex(pair.eigenvalue) * pair.eigenfunction;
  return norm(r) / norm(pair.eigenfunction);
}

DimensionAudit dimension_audit(std::size_t n, unsigned d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "d must be >= 2");
  DimensionAudit a;
  a.n = n;
  a.d = d;
  std::uint64_t layer = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    a.dim_M += layer;
    if (k < n) layer *= d;
  }
  // d^{n-k} for k = 1..n
  std::uint64_t sum = 0;
  std::uint64_t pw = 1;
  for (std::size_t k = n; k >= 1; --k) {
    sum += static_cast<std::uint64_t>(k) * pw;
    pw *= d;
  }
  a.dim_V = (d - 1) * sum;
  a.radial_count = n + 1;
  a.identity_holds = a.dim_M == a.dim_V + a.radial_count;
  return a;
}

SpectrumSummary spectrum_enumerate(const CoefficientSequence& coeffs, TreeConfig tree,
                                   std::size_t n_max) {
  SpectrumSummary out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (double t : poly_roots(coeffs, RadialScale::radial(tree.d()), n)) {
      bool seen = std::any_of(out.roots.begin(), out.roots.end(), [&](const SpectrumEntry& e) {
        return std::abs(e.root - t) <= 1e-10;
      });
      if (!seen) out.roots.push_back({n, t});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.root < b.root; });
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < out.roots.size(); ++i) {
    out.min_gap = std::min(out.min_gap, out.roots[i].root - out.roots[i - 1].root);
  }
  return out;
}

}  // namespace jtree
