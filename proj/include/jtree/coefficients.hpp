#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jtree {

/// Parses "3", "-0.25", "1e-3" or "3/4" into an exact rational.
[[nodiscard]] mpq_class parse_rational(std::string_view text);

/// Jacobi coefficients lambda_n > 0 and beta_n for n >= 0.
///
/// Every family keeps its parameters as rationals so that the same sequence
/// feeds both the floating and the exact code paths.
class CoefficientSequence {
 public:
  struct Constant {
    mpq_class lambda{1};
    mpq_class beta{0};
  };
  /// lambda_n = base * ratio^n
  struct Geometric {
    mpq_class base{1};
    mpq_class ratio{2};
    mpq_class beta{0};
  };
  /// lambda_n = base * (n + 1)^exponent
  struct Power {
    mpq_class base{1};
    mpq_class exponent{1};
    mpq_class beta{0};
  };
  struct Explicit {
    std::vector<mpq_class> lambda;
    std::vector<mpq_class> beta;
  };
  /// lambda_n from another sequence, beta_n = lambda_n + lambda_{n-1}, beta_0 = lambda_0.
  struct NeighborSum {
    std::shared_ptr<const CoefficientSequence> lambda_source;
  };

  static CoefficientSequence constant(mpq_class lambda, mpq_class beta = 0);
  static CoefficientSequence geometric(mpq_class base, mpq_class ratio, mpq_class beta = 0);
  static CoefficientSequence power(mpq_class base, mpq_class exponent, mpq_class beta = 0);
  static CoefficientSequence explicit_lists(std::vector<mpq_class> lambda,
                                            std::vector<mpq_class> beta);
  static CoefficientSequence neighbor_sum(const CoefficientSequence& lambda_source);
  /// lambda_n = 2^n with the neighbor-sum diagonal.
  static CoefficientSequence doubling_example();

  [[nodiscard]] double lambda(std::size_t n) const;
  [[nodiscard]] double beta(std::size_t n) const;
  [[nodiscard]] mpq_class exact_lambda(std::size_t n) const;
  [[nodiscard]] mpq_class exact_beta(std::size_t n) const;

  /// False when some coefficient is irrational (non-integer power exponent).
  [[nodiscard]] bool is_exact() const noexcept;
  /// Number of stored terms for list-backed sequences.
  [[nodiscard]] std::optional<std::size_t> available_terms() const noexcept;
  /// Throws CoefficientIndex naming the first missing index below n.
  void require_terms(std::size_t n) const;
  [[nodiscard]] std::string describe() const;

 private:
  using Family = std::variant<Constant, Geometric, Power, Explicit, NeighborSum>;
  explicit CoefficientSequence(Family family) : family_(std::move(family)) {}

  Family family_;
};

/// Branching number of the tree, d >= 2.
class TreeConfig {
 public:
  explicit TreeConfig(unsigned d);
  [[nodiscard]] unsigned d() const noexcept { return d_; }

 private:
  unsigned d_;
};

/// Off-diagonal scale sqrt(squared): sqrt(d) for the radial matrix, 1 for the plain one.
struct RadialScale {
  unsigned squared = 1;

  [[nodiscard]] static RadialScale unscaled() { return {1}; }
  [[nodiscard]] static RadialScale radial(unsigned d) { return {d}; }
  [[nodiscard]] double value() const;
};

/// Complex spectral parameter with exact rational parts.
class SpectralParameter {
 public:
  SpectralParameter() : SpectralParameter(0.0, 1.0) {}
  SpectralParameter(double re, double im);
  SpectralParameter(mpq_class re, mpq_class im);
  [[nodiscard]] static SpectralParameter parse(std::string_view text);

  [[nodiscard]] std::complex<double> value() const { return value_; }
  [[nodiscard]] const mpq_class& exact_re() const { return re_; }
  [[nodiscard]] const mpq_class& exact_im() const { return im_; }
  [[nodiscard]] bool is_real() const { return sgn(im_) == 0; }
  [[nodiscard]] std::string to_string() const;

 private:
  mpq_class re_;
  mpq_class im_;
  std::complex<double> value_;
};

}  // namespace jtree
