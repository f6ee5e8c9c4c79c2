#include "jtree/coefficients.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "jtree/error.hpp"

namespace jtree {

namespace {

mpq_class pow_rational(const mpq_class& base, unsigned long e) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

mpq_class checked_positive(mpq_class v, std::size_t n) {
  if (sgn(v) <= 0) {
    throw Error(ErrorCode::NonPositiveLambda,
                "lambda_" + std::to_string(n) + " = " + v.get_str() + " is not positive");
  }
  return v;
}

std::string str(const mpq_class& q) { return q.get_str(); }

}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");

  auto fail = [&]() { return Error(ErrorCode::InvalidArgument, "not a rational number: '" + s + "'"); };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class num = parse_rational(s.substr(0, slash));
    mpq_class den = parse_rational(s.substr(slash + 1));
    if (sgn(den) == 0) throw fail();
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw fail();
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (i + used != s.size() || std::labs(e) > 100000) throw fail();
    exponent += e;
  }
  mpz_class mant(digits, 10);
  if (negative) mant = -mant;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class out = exponent >= 0 ? mpq_class(mant * scale) : mpq_class(mant, scale);
  out.canonicalize();
  return out;
}

CoefficientSequence CoefficientSequence::constant(mpq_class lambda, mpq_class beta) {
  checked_positive(lambda, 0);
  return CoefficientSequence(Constant{std::move(lambda), std::move(beta)});
}

CoefficientSequence CoefficientSequence::geometric(mpq_class base, mpq_class ratio, mpq_class beta) {
  checked_positive(base, 0);
  if (sgn(ratio) <= 0) throw Error(ErrorCode::NonPositiveLambda, "geometric ratio must be positive");
  return CoefficientSequence(Geometric{std::move(base), std::move(ratio), std::move(beta)});
}

CoefficientSequence CoefficientSequence::power(mpq_class base, mpq_class exponent, mpq_class beta) {
  checked_positive(base, 0);
  return CoefficientSequence(Power{std::move(base), std::move(exponent), std::move(beta)});
}

CoefficientSequence CoefficientSequence::explicit_lists(std::vector<mpq_class> lambda,
                                                        std::vector<mpq_class> beta) {
  for (std::size_t n = 0; n < lambda.size(); ++n) checked_positive(lambda[n], n);
  return CoefficientSequence(Explicit{std::move(lambda), std::move(beta)});
}

CoefficientSequence CoefficientSequence::neighbor_sum(const CoefficientSequence& lambda_source) {
  return CoefficientSequence(NeighborSum{std::make_shared<const CoefficientSequence>(lambda_source)});
}

CoefficientSequence CoefficientSequence::doubling_example() {
  return neighbor_sum(geometric(1, 2));
}

mpq_class CoefficientSequence::exact_lambda(std::size_t n) const {
  return std::visit(
      [&](const auto& f) -> mpq_class {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Constant>) {
          return f.lambda;
        } else if constexpr (std::is_same_v<F, Geometric>) {
          return f.base * pow_rational(f.ratio, n);
        } else if constexpr (std::is_same_v<F, Power>) {
          if (f.exponent.get_den() != 1) {
            throw Error(ErrorCode::NotExact, "power family with exponent " + str(f.exponent) +
                                                 " has irrational coefficients");
          }
          mpz_class e = f.exponent.get_num();
          mpq_class b(static_cast<unsigned long>(n + 1));
          if (sgn(e) < 0) {
            b = 1 / b;
            e = -e;
          }
          return f.base * pow_rational(b, e.get_ui());
        } else if constexpr (std::is_same_v<F, Explicit>) {
          if (n >= f.lambda.size()) {
            throw Error(ErrorCode::CoefficientIndex,
                        "lambda list has no entry for index " + std::to_string(n));
          }
          return f.lambda[n];
        } else {
          return f.lambda_source->exact_lambda(n);
        }
      },
      family_);
}

mpq_class CoefficientSequence::exact_beta(std::size_t n) const {
  return std::visit(
      [&](const auto& f) -> mpq_class {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Explicit>) {
          if (n >= f.beta.size()) {
            throw Error(ErrorCode::CoefficientIndex,
                        "beta list has no entry for index " + std::to_string(n));
          }
          return f.beta[n];
        } else if constexpr (std::is_same_v<F, NeighborSum>) {
          mpq_class out = f.lambda_source->exact_lambda(n);
          if (n > 0) out += f.lambda_source->exact_lambda(n - 1);
          return out;
        } else {
          return f.beta;
        }
      },
      family_);
}

double CoefficientSequence::lambda(std::size_t n) const {
  double v = std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Constant>) {
          return f.lambda.get_d();
        } else if constexpr (std::is_same_v<F, Geometric>) {
          return f.base.get_d() * std::pow(f.ratio.get_d(), static_cast<double>(n));
        } else if constexpr (std::is_same_v<F, Power>) {
          return f.base.get_d() *
                 std::pow(static_cast<double>(n + 1), f.exponent.get_d());
        } else if constexpr (std::is_same_v<F, Explicit>) {
          return exact_lambda(n).get_d();
        } else {
          return f.lambda_source->lambda(n);
        }
      },
      family_);
  if (!(v > 0.0)) {
    throw Error(ErrorCode::NonPositiveLambda,
                "lambda_" + std::to_string(n) + " is not a positive double");
  }
  return v;
}

double CoefficientSequence::beta(std::size_t n) const {
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Explicit>) {
          return exact_beta(n).get_d();
        } else if constexpr (std::is_same_v<F, NeighborSum>) {
          double out = f.lambda_source->lambda(n);
          if (n > 0) out += f.lambda_source->lambda(n - 1);
          return out;
        } else {
          return f.beta.get_d();
        }
      },
      family_);
}

bool CoefficientSequence::is_exact() const noexcept {
  return std::visit(
      [](const auto& f) -> bool {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Power>) {
          return f.exponent.get_den() == 1;
        } else if constexpr (std::is_same_v<F, NeighborSum>) {
          return f.lambda_source->is_exact();
        } else {
          return true;
        }
      },
      family_);
}

std::optional<std::size_t> CoefficientSequence::available_terms() const noexcept {
  return std::visit(
      [](const auto& f) -> std::optional<std::size_t> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Explicit>) {
          return std::min(f.lambda.size(), f.beta.size());
        } else if constexpr (std::is_same_v<F, NeighborSum>) {
          return f.lambda_source->available_terms();
        } else {
          return std::nullopt;
        }
      },
      family_);
}

void CoefficientSequence::require_terms(std::size_t n) const {
  if (const auto* e = std::get_if<Explicit>(&family_)) {
    if (e->lambda.size() < n) {
      throw Error(ErrorCode::CoefficientIndex,
                  "lambda list has no entry for index " + std::to_string(e->lambda.size()));
    }
    if (e->beta.size() < n) {
      throw Error(ErrorCode::CoefficientIndex,
                  "beta list has no entry for index " + std::to_string(e->beta.size()));
    }
  } else if (const auto* s = std::get_if<NeighborSum>(&family_)) {
    s->lambda_source->require_terms(n);
  }
}

std::string CoefficientSequence::describe() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Constant>) {
          return "constant(lambda=" + str(f.lambda) + ", beta=" + str(f.beta) + ")";
        } else if constexpr (std::is_same_v<F, Geometric>) {
          return "geometric(base=" + str(f.base) + ", ratio=" + str(f.ratio) +
                 ", beta=" + str(f.beta) + ")";
        } else if constexpr (std::is_same_v<F, Power>) {
          return "power(base=" + str(f.base) + ", exponent=" + str(f.exponent) +
                 ", beta=" + str(f.beta) + ")";
        } else if constexpr (std::is_same_v<F, Explicit>) {
          return "explicit(" + std::to_string(f.lambda.size()) + " terms)";
        } else {
          return "neighbor-sum(" + f.lambda_source->describe() + ")";
        }
      },
      family_);
}

TreeConfig::TreeConfig(unsigned d) : d_(d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "branching number d must be >= 2");
}

double RadialScale::value() const {
  if (squared == 0) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  return std::sqrt(static_cast<double>(squared));
}

namespace {

double finite_part(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "spectral parameter must be finite");
  return v;
}

}  // namespace

SpectralParameter::SpectralParameter(double re, double im)
    : re_(finite_part(re)), im_(finite_part(im)), value_(re, im) {}

SpectralParameter::SpectralParameter(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)), value_(re_.get_d(), im_.get_d()) {}

SpectralParameter SpectralParameter::parse(std::string_view text) {
  std::string s(text);
  if (auto comma = s.find(','); comma != std::string::npos) {
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
  }
  if (s == "i") return {mpq_class(0), mpq_class(1)};
  return {parse_rational(s), mpq_class(0)};
}

std::string SpectralParameter::to_string() const {
  std::ostringstream os;
  os << re_.get_str() << "," << im_.get_str();
  return os.str();
}

}  // namespace jtree
