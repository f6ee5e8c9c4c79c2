#include "jtree/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <istream>
#include <ostream>

#include "jtree/format.hpp"

namespace jtree {

namespace {

void check_rows(std::size_t rows) {
  if (rows > kMaxDenseRows) {
    throw Error(ErrorCode::PatchTooLarge, "dense truncation would have " + std::to_string(rows) +
                                              " rows (limit " + std::to_string(kMaxDenseRows) + ")");
  }
}

void set_edge(DenseTruncation& t, const Vertex& a, const Vertex& b, double w) {
  auto i = t.row_of.at(a);
  auto j = t.row_of.at(b);
  t.matrix(i, j) = w;
  t.matrix(j, i) = w;
}

}  // namespace

DenseTruncation gamma_truncation(const CoefficientSequence& coeffs, TreeConfig tree,
                                 std::size_t depth) {
  const unsigned d = tree.d();
  DenseTruncation t;
  t.kind = TruncationKind::GammaPatch;
  for (std::size_t n = 0; n <= depth; ++n) {
    for (auto& w : words_of_length(d, n, kMaxDenseRows + 1)) {
      t.index.push_back(w);
      check_rows(t.index.size());
    }
  }
  const auto rows = static_cast<Eigen::Index>(t.index.size());
  t.matrix = Eigen::MatrixXd::Zero(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) t.row_of[t.index[r]] = r;
  for (const auto& x : t.index) {
    t.matrix(t.row_of[x], t.row_of[x]) = coeffs.beta(x.length());
    if (x.length() < depth) {
      for (auto& c : x.children(d)) set_edge(t, x, c, coeffs.lambda(x.length()));
    }
  }
  return t;
}

DenseTruncation radial_block(const CoefficientSequence& coeffs, RadialScale scale,
                             std::size_t offset, std::size_t size) {
  check_rows(size);
  DenseTruncation t;
  t.kind = TruncationKind::RadialBlock;
  const auto n = static_cast<Eigen::Index>(size);
  t.matrix = Eigen::MatrixXd::Zero(n, n);
  const double s = scale.value();
  for (Eigen::Index j = 0; j < n; ++j) {
    t.matrix(j, j) = coeffs.beta(offset + static_cast<std::size_t>(j));
    if (j + 1 < n) {
      double b = s * coeffs.lambda(offset + static_cast<std::size_t>(j));
      t.matrix(j, j + 1) = b;
      t.matrix(j + 1, j) = b;
    }
  }
  return t;
}

DenseTruncation lambda_truncation(const CoefficientSequence& coeffs, TreeConfig tree, std::size_t n) {
  const LambdaPatch patch{tree.d(), n};
  DenseTruncation t;
  t.kind = TruncationKind::LambdaPatch;
  check_rows(patch.size());
  t.index = patch.vertices(kMaxDenseRows);
  const auto rows = static_cast<Eigen::Index>(t.index.size());
  t.matrix = Eigen::MatrixXd::Zero(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) t.row_of[t.index[r]] = r;
  for (const auto& w : t.index) {
    const std::size_t level = patch.level(w);
    t.matrix(t.row_of[w], t.row_of[w]) = coeffs.beta(level);
    if (level >= 1) {
      for (auto& c : w.children(tree.d())) set_edge(t, w, c, coeffs.lambda(level - 1));
    }
  }
  return t;
}

DenseSpectrum dense_eigensolve(const DenseTruncation& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t.matrix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
  }
  DenseSpectrum out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  const double scale = std::max(1.0, t.matrix.norm());
  for (Eigen::Index j = 0; j < out.values.size(); ++j) {
    double r = (t.matrix * out.vectors.col(j) - out.values(j) * out.vectors.col(j)).norm();
    out.max_residual = std::max(out.max_residual, r / scale);
  }
  if (out.max_residual > 1e-9) {
    throw Error(ErrorCode::ConvergenceFailure, "dense eigenpair residual too large");
  }
  return out;
}

SeriesTerms series_oracle(const CoefficientSequence& coeffs, RadialScale scale,
                          std::complex<double> z, std::size_t n_max) {
  SeriesTerms out;
  const double s = std::sqrt(static_cast<double>(scale.squared));
  std::complex<double> p_prev = 0.0, p = 1.0, q_prev = 0.0, q = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    out.p_terms.push_back(std::norm(p));
    out.q_terms.push_back(std::norm(q));
    if (!std::isfinite(out.p_terms.back()) || !std::isfinite(out.q_terms.back())) {
      throw Error(ErrorCode::Overflow, "oracle terms overflowed at n = " + std::to_string(n));
    }
    const double a = s * coeffs.lambda(n);
    const double b = n > 0 ? s * coeffs.lambda(n - 1) : 0.0;
    const double beta = coeffs.beta(n);
    std::complex<double> p_next = ((z - beta) * p - b * p_prev) / a;
    std::complex<double> q_next = n == 0 ? std::complex<double>(1.0 / coeffs.lambda(0))
                                         : ((z - beta) * q - b * q_prev) / a;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
  }
  return out;
}

OracleVerdict oracle_series_verdict(const std::vector<double>& terms) {
  if (terms.size() < 16) return OracleVerdict::Undecided;
  double total = 0.0;
  for (double t : terms) total += t;
  if (!std::isfinite(total) || total > 1e15) return OracleVerdict::Divergent;
  // fit log t_n = a + b n over the second half, skipping zero terms
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t n = terms.size() / 2; n < terms.size(); ++n) {
    if (terms[n] <= 0.0) continue;
    double x = static_cast<double>(n);
    double y = std::log(terms[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 8) return OracleVerdict::Undecided;
  const double c = static_cast<double>(cnt);
  const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
  if (slope < std::log(0.98)) return OracleVerdict::Convergent;
  if (slope >= 0.0) return OracleVerdict::Divergent;
  return OracleVerdict::Undecided;
}

double geometric_envelope(const std::vector<double>& terms, double rate) {
  double c = 0.0;
  double scale = 1.0;
  for (double t : terms) {
    c = std::max(c, t / scale);
    scale *= rate;
  }
  return c;
}

void write_matrix_text(std::ostream& os, const Eigen::MatrixXd& m) {
  os << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix_text(std::istream& is) {
  Eigen::Index n = 0;
  if (!(is >> n) || n < 0) throw Error(ErrorCode::InvalidArgument, "bad matrix header");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(is >> m(i, j))) throw Error(ErrorCode::InvalidArgument, "truncated matrix text");
  return m;
}

}  // namespace jtree
