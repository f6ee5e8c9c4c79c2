#include "jtree/deficiency.hpp"

#include <limits>
#include <sstream>

namespace jtree {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::EssentiallySelfadjoint: return "EssentiallySelfadjoint";
    case Verdict::NotEssentiallySelfadjoint: return "NotEssentiallySelfadjoint";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

Complex f_value(AnchorKind kind, std::size_t k, std::size_t n, const SpectralParameter& z,
                const CoefficientSequence& coeffs, TreeConfig tree) {
  DeficiencyBasis basis(coeffs, tree, z, n);
  switch (kind) {
    case AnchorKind::Zero:
      return basis.level_value(0, n);
    case AnchorKind::RootChild:
      if (n < 1) throw Error(ErrorCode::InvalidArgument, "root-child functions start on level 1");
      return basis.level_value(1, n);
    case AnchorKind::General:
      if (n < k) throw Error(ErrorCode::InvalidArgument, "level above the anchor");
      return basis.level_value(k + 1, n);
  }
  return {};
}

namespace {

template <class T>
void run_series(const CoefficientSequence& coeffs, RadialScale scale, const SpectralParameter& z,
                const SeriesRule& rule, ClassificationReport& rep) {
  RecurrenceStepper<T> st(coeffs, scale, z);
  SeriesAccumulator p_acc(rule);
  SeriesAccumulator q_acc(rule);
  try {
    for (std::size_t n = 0; !(p_acc.finished() && q_acc.finished()); ++n) {
      st.extend_to(n);
      if (!p_acc.finished()) {
        if constexpr (ScalarTraits<T>::exact) {
          p_acc.add(exact::abs2(st.p(n)).to_complex().real());
        } else {
          p_acc.add(std::norm(st.p(n)));
        }
      }
      if (!q_acc.finished()) {
        if constexpr (ScalarTraits<T>::exact) {
          q_acc.add(exact::abs2(st.q(n)).to_complex().real());
        } else {
          q_acc.add(std::norm(st.q(n)));
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    // A series whose terms overflow is growing without bound.
    if (!p_acc.finished()) p_acc.add(std::numeric_limits<double>::infinity());
    if (!q_acc.finished()) q_acc.add(std::numeric_limits<double>::infinity());
  }
  rep.p_series = p_acc.summary();
  rep.q_series = q_acc.summary();
}

}  // namespace

ClassificationReport classify(const CoefficientSequence& coeffs, TreeConfig tree,
                              const ClassifyOptions& options) {
  ClassificationReport rep;
  rep.z = options.z;
  rep.scale = options.scale.value_or(RadialScale::radial(tree.d()));
  rep.exact = options.exact;
  rep.d = tree.d();
  rep.coefficients = coeffs.describe();
  if (options.exact) {
    if (!coeffs.is_exact()) {
      throw Error(ErrorCode::NotExact, "coefficients are not rational; exact mode unavailable");
    }
    run_series<exact::Number>(coeffs, rep.scale, options.z, options.rule, rep);
  } else {
    run_series<Complex>(coeffs, rep.scale, options.z, options.rule, rep);
  }
  rep.terms_used = std::max(rep.p_series.terms_used, rep.q_series.terms_used);
  const bool p_conv = rep.p_series.status == SeriesStatus::Converged;
  const bool q_conv = rep.q_series.status == SeriesStatus::Converged;
  const bool any_div = rep.p_series.status == SeriesStatus::Diverged ||
                       rep.q_series.status == SeriesStatus::Diverged;
  if (p_conv && q_conv) {
    rep.verdict = Verdict::NotEssentiallySelfadjoint;
  } else if (any_div) {
    rep.verdict = Verdict::EssentiallySelfadjoint;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  std::ostringstream os;
  os << "p-series " << to_string(rep.p_series.status) << " (" << rep.p_series.note << ", "
     << rep.p_series.terms_used << " terms); q-series " << to_string(rep.q_series.status) << " ("
     << rep.q_series.note << ", " << rep.q_series.terms_used << " terms)";
  if (options.z.is_real()) os << "; evaluated on the real axis";
  rep.diagnostics = os.str();
  return rep;
}

DeficiencyElement project_onto_Ax(const Vertex& y, const std::optional<Vertex>& x,
                                  const DeficiencyBasis& basis, const AlphaTable& alpha) {
  const unsigned d = basis.d();
  if (!x) {
    Complex a = std::conj(basis.level_value(0, y.length())) / alpha.alpha_squared(0);
    return DeficiencyElement::zero_anchored(a);
  }
  std::vector<Complex> a(d, Complex{});
  if (!x->is_prefix_of(y) || y.length() == x->length()) {
    return DeficiencyElement::anchored(*x, std::move(a), d);
  }
  const std::size_t k = x->length() + 1;
  const std::uint32_t i = y[x->length()];
  Complex c = std::conj(basis.level_value(k, y.length())) / alpha.alpha_squared(k);
  for (std::uint32_t j = 1; j <= d; ++j) {
    a[j - 1] = j == i ? c * (1.0 - 1.0 / d) : -c / static_cast<double>(d);
  }
  return DeficiencyElement::anchored(*x, std::move(a), d);
}

std::vector<DeficiencyElement> project_full(const Vertex& y, const DeficiencyBasis& basis,
                                            const AlphaTable& alpha) {
  std::vector<DeficiencyElement> out;
  out.push_back(project_onto_Ax(y, std::nullopt, basis, alpha));
  for (std::size_t j = 0; j < y.length(); ++j) {
    out.push_back(project_onto_Ax(y, y.prefix(j), basis, alpha));
  }
  return out;
}

BranchRadialFunction materialize_sum(const std::vector<DeficiencyElement>& elements,
                                     const DeficiencyBasis& basis, std::size_t depth) {
  BranchRadialFunction sum(basis.d(), 0, depth);
  for (const auto& e : elements) sum += materialize_radial(e, basis, depth);
  return sum;
}

}  // namespace jtree
