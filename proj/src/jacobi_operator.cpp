#include "jtree/jacobi_operator.hpp"

namespace jtree {

std::vector<double> moments(const JacobiOperator& J, std::size_t N, MomentRoute route) {
  auto m = moments_as<Complex>(J, N, route);
  std::vector<double> out;
  out.reserve(m.size());
  for (auto& v : m) out.push_back(v.real());
  return out;
}

RadialMatrix radial_matrix(const CoefficientSequence& coeffs, unsigned d, std::size_t offset) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "d must be positive");
  return RadialMatrix{coeffs, d, offset};
}

std::vector<double> RadialMatrix::dense(std::size_t n) const {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    m[j * n + j] = diagonal(j);
    if (j + 1 < n) {
      m[j * n + j + 1] = off_diagonal(j);
      m[(j + 1) * n + j] = off_diagonal(j);
    }
  }
  return m;
}

}  // namespace jtree
