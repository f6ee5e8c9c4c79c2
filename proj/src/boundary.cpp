#include "jtree/boundary.hpp"

#include <cmath>

namespace jtree {

mpq_class cylinder_measure(const Vertex& x, unsigned d) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), d, x.length());
  return mpq_class(mpz_class(1), den);
}

IsometryPair u_isometry_basis(const Vertex& x, unsigned d, const AlphaTable& alpha) {
  IsometryPair out;
  out.alpha = alpha.alpha(x.length());
  out.tree_root = x;
  out.boundary = StepFunction(d);
  double scale = std::pow(std::sqrt(static_cast<double>(d)), static_cast<double>(x.length()));
  out.boundary.add_piece(x, out.alpha * scale);
  return out;
}

StepFunction boundary_image(const DeficiencyElement& g, unsigned d, const AlphaTable& alpha) {
  StepFunction out(d);
  if (g.is_zero_anchor()) {
    out.add_piece(Vertex::root(), g.coefficients()[0] * alpha.alpha(0));
    return out;
  }
  for (std::uint32_t i = 1; i <= d; ++i) {
    auto pair = u_isometry_basis(g.anchor()->child(i), d, alpha);
    for (const auto& [b, v] : pair.boundary.pieces()) out.add_piece(b, g.coefficients()[i - 1] * v);
  }
  return out;
}

PoissonKernel poisson_kernel(const Vertex& y, const DeficiencyBasis& basis, const AlphaTable& alpha,
                             KernelConvention convention) {
  const unsigned d = basis.d();
  auto fix = [&](Complex v) { return convention == KernelConvention::Conjugated ? std::conj(v) : v; };
  PoissonKernel out{y, convention, StepFunction(d)};
  out.kernel.add_piece(Vertex::root(), fix(basis.level_value(0, y.length())) / alpha.alpha(0));
  const double s = std::sqrt(static_cast<double>(d));
  double root_pow = 1.0;
  for (std::size_t i = 1; i <= y.length(); ++i) {
    root_pow *= s;
    Complex c = fix(basis.level_value(i, y.length())) * root_pow / alpha.alpha(i);
    out.kernel.add_piece(y.prefix(i), c);
    out.kernel.add_piece(y.prefix(i - 1), -c / static_cast<double>(d));
  }
  return out;
}

RelativePosition relative_position(const Vertex& y, const Vertex& omega_prefix) {
  std::size_t m = y.common_prefix_length(omega_prefix);
  if (m == omega_prefix.length() && m < y.length()) {
    throw Error(ErrorCode::AmbiguousPrefix,
                "prefix " + omega_prefix.to_string() + " does not decide where the end leaves the path to " +
                    y.to_string());
  }
  return {m, y.length() - m};
}

Complex apply_U(const StepFunction& F, const Vertex& y, const DeficiencyBasis& basis,
                const AlphaTable& alpha) {
  return integrate_product(poisson_kernel(y, basis, alpha).kernel, F);
}

}  // namespace jtree
