#include "jtree/exact.hpp"

#include <algorithm>
#include <sstream>

#include "jtree/error.hpp"

namespace jtree::exact {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "exact division by zero");
  mpq_class den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Number::Number(GaussianRational a, GaussianRational b, std::uint32_t radicand)
    : a_(std::move(a)), b_(std::move(b)), r_(radicand) {
  if (r_ == 0) throw Error(ErrorCode::InvalidArgument, "radicand must be positive");
  if (r_ == 1) {
    a_ = a_ + b_;
    b_ = GaussianRational{};
  }
}

Number Number::sqrt_of(std::uint64_t m) {
  if (m == 0) return Number{};
  std::uint64_t outside = 1;
  std::uint64_t inside = 1;
  std::uint64_t rest = m;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      outside *= p;
    }
    if (rest % p == 0) {
      rest /= p;
      inside *= p;
    }
  }
  inside *= rest;
  mpq_class k(static_cast<unsigned long>(outside));
  if (inside == 1) return Number(k);
  if (inside > 0xffffffffULL) throw Error(ErrorCode::NotExact, "radicand too large");
  return Number(GaussianRational{}, GaussianRational{k}, static_cast<std::uint32_t>(inside));
}

namespace {

std::uint32_t common_radicand(const Number& x, const Number& y) {
  if (x.radicand() == y.radicand()) return x.radicand();
  if (x.surd_part().is_zero()) return y.radicand();
  if (y.surd_part().is_zero()) return x.radicand();
  throw Error(ErrorCode::NotExact, "mixing incompatible square roots");
}

}  // namespace

Number Number::conj() const {
  Number out = *this;
  out.a_ = a_.conj();
  out.b_ = b_.conj();
  return out;
}

bool operator==(const Number& x, const Number& y) {
  if (!(x.a_ == y.a_)) return false;
  if (x.b_.is_zero() && y.b_.is_zero()) return true;
  return x.r_ == y.r_ && x.b_ == y.b_;
}

Number operator+(const Number& x, const Number& y) {
  auto r = common_radicand(x, y);
  Number out;
  out.a_ = x.a_ + y.a_;
  out.b_ = x.b_ + y.b_;
  out.r_ = r;
  return out;
}

Number operator-(const Number& x, const Number& y) {
  auto r = common_radicand(x, y);
  Number out;
  out.a_ = x.a_ - y.a_;
  out.b_ = x.b_ - y.b_;
  out.r_ = r;
  return out;
}

Number operator-(const Number& x) {
  Number out = x;
  out.a_ = -x.a_;
  out.b_ = -x.b_;
  return out;
}

Number operator*(const Number& x, const Number& y) {
  auto r = common_radicand(x, y);
  Number out;
  out.r_ = r;
  if (x.b_.is_zero()) {
    out.a_ = x.a_ * y.a_;
    out.b_ = x.a_ * y.b_;
  } else if (y.b_.is_zero()) {
    out.a_ = x.a_ * y.a_;
    out.b_ = x.b_ * y.a_;
  } else {
    out.a_ = x.a_ * y.a_ + GaussianRational{mpq_class(r)} * (x.b_ * y.b_);
    out.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  }
  return out;
}

Number operator/(const Number& x, const Number& y) {
  if (y.is_zero()) throw Error(ErrorCode::InvalidArgument, "exact division by zero");
  if (y.b_.is_zero()) {
    Number out;
    out.r_ = x.r_;
    out.a_ = x.a_ / y.a_;
    out.b_ = x.b_ / y.a_;
    return out;
  }
  auto r = common_radicand(x, y);
  // multiply through by the surd conjugate c - e*sqrt(r)
  GaussianRational norm = y.a_ * y.a_ - GaussianRational{mpq_class(r)} * (y.b_ * y.b_);
  Number conj_y;
  conj_y.a_ = y.a_;
  conj_y.b_ = -y.b_;
  conj_y.r_ = r;
  Number num = x * conj_y;
  num.a_ = num.a_ / norm;
  num.b_ = num.b_ / norm;
  return num;
}

std::complex<double> Number::to_complex() const {
  if (b_.is_zero()) return {a_.re.get_d(), a_.im.get_d()};
  // High precision so that a + b*sqrt(r) survives cancellation.
  constexpr mp_bitcnt_t kBits = 1024;
  mpf_class root(r_, kBits);
  root = sqrt(root);
  mpf_class re(a_.re, kBits);
  mpf_class im(a_.im, kBits);
  mpf_class bre(b_.re, kBits);
  mpf_class bim(b_.im, kBits);
  re += bre * root;
  im += bim * root;
  return {re.get_d(), im.get_d()};
}

std::string Number::to_string() const {
  std::ostringstream os;
  auto gauss = [&](const GaussianRational& g) {
    os << "(" << g.re.get_str() << (sgn(g.im) < 0 ? "-" : "+") << mpq_class(abs(g.im)).get_str() << "i)";
  };
  gauss(a_);
  if (!b_.is_zero()) {
    os << "+";
    gauss(b_);
    os << "*sqrt(" << r_ << ")";
  }
  return os.str();
}

}  // namespace jtree::exact
