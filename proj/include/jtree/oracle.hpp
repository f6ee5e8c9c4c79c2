#pragma once

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <map>
#include <vector>

#include "jtree/coefficients.hpp"
#include "jtree/tree.hpp"

namespace jtree {

inline constexpr std::size_t kMaxDenseRows = 4096;

enum class TruncationKind { GammaPatch, RadialBlock, LambdaPatch };

/// Dense symmetric truncation of J with zero boundary conditions.
struct DenseTruncation {
  TruncationKind kind = TruncationKind::GammaPatch;
  Eigen::MatrixXd matrix;
  /// Row labels (vertices); empty for radial blocks.
  std::vector<Vertex> index;
  std::map<Vertex, Eigen::Index> row_of;
};

/// Rooted tree, levels 0..depth.
[[nodiscard]] DenseTruncation gamma_truncation(const CoefficientSequence& coeffs, TreeConfig tree,
                                               std::size_t depth);
/// Rows offset..offset+size-1 of the radial matrix (scale sqrt(scale_squared)).
[[nodiscard]] DenseTruncation radial_block(const CoefficientSequence& coeffs, RadialScale scale,
                                           std::size_t offset, std::size_t size);
/// Patch of the two-sided tree with apex on level n, successor dropped.
[[nodiscard]] DenseTruncation lambda_truncation(const CoefficientSequence& coeffs, TreeConfig tree,
                                                std::size_t n);

struct DenseSpectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
  double max_residual = 0.0;
};

/// Symmetric eigensolve; ConvergenceFailure when the solver or the residual
/// check (||T v - t v|| <= 1e-9 ||T||) fails.
[[nodiscard]] DenseSpectrum dense_eigensolve(const DenseTruncation& t);

struct SeriesTerms {
  std::vector<double> p_terms;
  std::vector<double> q_terms;
};

/// The first n_max terms |p_n(z)|^2 and |q_n(z)|^2, computed by a plain loop
/// that shares no code with the main recurrence.
[[nodiscard]] SeriesTerms series_oracle(const CoefficientSequence& coeffs, RadialScale scale,
                                        std::complex<double> z, std::size_t n_max);

enum class OracleVerdict { Convergent, Divergent, Undecided };

/// Least-squares slope of log t_n over the second half of the terms.
[[nodiscard]] OracleVerdict oracle_series_verdict(const std::vector<double>& terms);

/// sup_n t_n rate^{-n}; a finite value bounds the terms by C rate^n.
[[nodiscard]] double geometric_envelope(const std::vector<double>& terms, double rate);

/// "n" on the first line, then n rows of n numbers.
void write_matrix_text(std::ostream& os, const Eigen::MatrixXd& m);
[[nodiscard]] Eigen::MatrixXd read_matrix_text(std::istream& is);

}  // namespace jtree
