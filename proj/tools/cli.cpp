#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "jtree/boundary.hpp"
#include "jtree/deficiency.hpp"
#include "jtree/error.hpp"
#include "jtree/format.hpp"
#include "jtree/jacobi_operator.hpp"
#include "jtree/lambda_tree.hpp"
#include "jtree/oracle.hpp"
#include "jtree/orthopoly.hpp"

namespace jtree::cli {

namespace {

struct RunConfig {
  std::string tree = "gamma";
  unsigned d = 2;
  std::string family = "doubling";
  std::string lambda = "1";
  std::string ratio = "2";
  std::string exponent = "1";
  std::string beta = "0";
  std::vector<std::string> lambda_list;
  std::vector<std::string> beta_list;
  bool neighbor_sum = false;
  std::string z = "0,1";
  std::string scale = "radial";
  std::size_t depth = 0;
  std::size_t n_max = 0;
  double tol = 1e-12;
  std::string mode = "float";
  std::string out;
  bool strict = false;

  // subcommand options
  std::string anchor = "zero";
  std::vector<std::string> coeff;
  std::string y = "1.2";
  std::string convention = "as-stated";
  std::size_t level = 3;
  std::string spectrum_csv;
  std::string matrix_out;

  CLI::Option* depth_opt = nullptr;
  CLI::Option* n_max_opt = nullptr;
  CLI::Option* z_opt = nullptr;
};

/// Raised when --strict turns an inconclusive result into a failure.
struct InconclusiveExit {
  std::string message;
};

bool exact_mode(const RunConfig& c) { return c.mode == "exact"; }

std::size_t depth_or(const RunConfig& c, std::size_t fallback) {
  return c.depth_opt->count() > 0 ? c.depth : fallback;
}

std::size_t n_max_or(const RunConfig& c, std::size_t fallback) {
  return c.n_max_opt->count() > 0 ? c.n_max : fallback;
}

SpectralParameter z_or(const RunConfig& c, const char* fallback) {
  return SpectralParameter::parse(c.z_opt->count() > 0 ? c.z : std::string(fallback));
}

std::vector<mpq_class> parse_list(const std::vector<std::string>& items) {
  std::vector<mpq_class> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

CoefficientSequence build_coefficients(const RunConfig& c) {
  const mpq_class beta = parse_rational(c.beta);
  std::optional<CoefficientSequence> base;
  if (c.family == "doubling") {
    return CoefficientSequence::doubling_example();
  } else if (c.family == "constant") {
    base = CoefficientSequence::constant(parse_rational(c.lambda), beta);
  } else if (c.family == "geometric") {
    base = CoefficientSequence::geometric(parse_rational(c.lambda), parse_rational(c.ratio), beta);
  } else if (c.family == "power") {
    base = CoefficientSequence::power(parse_rational(c.lambda), parse_rational(c.exponent), beta);
  } else if (c.family == "explicit") {
    if (c.lambda_list.empty()) {
      throw Error(ErrorCode::InvalidArgument, "family explicit needs --lambda-list");
    }
    auto lam = parse_list(c.lambda_list);
    std::vector<mpq_class> b = c.neighbor_sum ? std::vector<mpq_class>{} : parse_list(c.beta_list);
    base = CoefficientSequence::explicit_lists(std::move(lam), std::move(b));
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown family " + c.family);
  }
  if (c.neighbor_sum) return CoefficientSequence::neighbor_sum(*base);
  return *base;
}

RadialScale build_scale(const RunConfig& c) {
  return c.scale == "unscaled" ? RadialScale::unscaled() : RadialScale::radial(c.d);
}

SeriesRule build_rule(const RunConfig& c) {
  SeriesRule r;
  r.tol = c.tol;
  r.n_max = n_max_or(c, r.n_max);
  if (!(r.tol > 0.0 && r.tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "--tol must lie in (0, 1)");
  if (r.n_max == 0) throw Error(ErrorCode::InvalidArgument, "--n-max must be positive");
  return r;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file_atomic(c.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json complex_json(Complex v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

// ---------------------------------------------------------------- polys

void cmd_polys(const RunConfig& c, std::ostream& out) {
  (void)TreeConfig(c.d);
  auto coeffs = build_coefficients(c);
  const auto z = z_or(c, "0,1");
  const std::size_t n = n_max_or(c, 20);
  coeffs.require_terms(n);
  PolyTable table;
  if (exact_mode(c)) {
    auto ex = compute_polys_exact(coeffs, build_scale(c), z, n);
    table = PolyTable{ex.z, ex.scale, ex.max_index, {}, {}, true};
    for (const auto& v : ex.p) table.p.push_back(v.to_complex());
    for (const auto& v : ex.q) table.q.push_back(v.to_complex());
  } else {
    try {
      table = compute_polys(coeffs, build_scale(c), z, n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      std::string msg = e.what();
      msg = msg.substr(0, msg.find(';'));
      throw Error(ErrorCode::Overflow, msg + "; rerun with --mode exact");
    }
  }
  std::ostringstream os;
  write_polys_csv(os, table);
  emit(c, os.str(), out);
}

// ------------------------------------------------------------- classify

void cmd_classify(const RunConfig& c, std::ostream& out) {
  TreeConfig tree(c.d);
  auto coeffs = build_coefficients(c);
  ClassifyOptions opt;
  opt.z = z_or(c, "0,1");
  opt.scale = build_scale(c);
  opt.rule = build_rule(c);
  opt.exact = exact_mode(c);
  auto rep = classify(coeffs, tree, opt);
  emit(c, dump(to_json(rep)), out);
  if (c.strict && rep.verdict == Verdict::Inconclusive) {
    throw InconclusiveExit{"classification inconclusive: " + rep.diagnostics};
  }
}

// ----------------------------------------------------------- deficiency

template <class T>
std::vector<T> parse_coefficients(const RunConfig& c, unsigned d) {
  std::vector<T> a;
  if (c.coeff.empty()) {
    if (c.anchor == "zero") return {ScalarTraits<T>::from_int(1)};
    a.assign(d, ScalarTraits<T>::from_int(0));
    a[0] = ScalarTraits<T>::from_int(1);
    a[1] = ScalarTraits<T>::from_int(-1);
    return a;
  }
  for (const auto& s : c.coeff) a.push_back(ScalarTraits<T>::parameter(SpectralParameter::parse(s)));
  return a;
}

template <class T>
BasicDeficiencyElement<T> build_element(const RunConfig& c, unsigned d) {
  auto a = parse_coefficients<T>(c, d);
  if (c.anchor == "zero") {
    if (a.size() != 1) throw Error(ErrorCode::InvalidArgument, "the zero anchor takes one coefficient");
    return BasicDeficiencyElement<T>::zero_anchored(a[0]);
  }
  auto x = Vertex::parse(c.anchor);
  x.validate(d);
  return BasicDeficiencyElement<T>::anchored(x, std::move(a), d);
}

void cmd_deficiency(const RunConfig& c, std::ostream& out) {
  TreeConfig tree(c.d);
  const unsigned d = c.d;
  auto coeffs = build_coefficients(c);
  const auto z = z_or(c, "0,1");
  if (z.is_real()) throw Error(ErrorCode::RealSpectralParameter, "deficiency elements need a non-real z");
  const std::size_t depth = depth_or(c, 25);
  Json rep;
  rep["coefficients"] = coeffs.describe();
  rep["d"] = d;
  rep["z"] = complex_json(z.value());
  rep["depth"] = depth;
  rep["mode"] = c.mode;

  auto alpha = alpha_series(coeffs, tree, z, depth + 1, build_rule(c));
  auto e = build_element<Complex>(c, d);
  DeficiencyBasis basis(coeffs, tree, z, depth + 1);
  auto f = materialize_radial(e, basis, depth);
  const double fmax = f.max_abs();
  const double res = deficiency_residual(f, z, coeffs, tree, depth);
  Json el;
  el["anchor"] = e.anchor() ? e.anchor()->to_string() : std::string("zero");
  Json a = Json::array();
  for (const auto& v : e.coefficients()) a.push_back(complex_json(v));
  el["coefficients"] = a;
  rep["element"] = el;
  rep["alpha"] = to_json(alpha);
  rep["max_abs"] = fmax;
  rep["residual"] = res;
  rep["relative_residual"] = fmax > 0 ? res / fmax : 0.0;
  rep["norm_squared"] = f.norm_squared().real();

  if (exact_mode(c)) {
    auto ee = build_element<exact::Number>(c, d);
    ExactDeficiencyBasis eb(coeffs, tree, z, depth + 1);
    auto fe = materialize_radial(ee, eb, depth);
    bool sums_vanish = true;
    if (ee.anchor()) {
      for (std::size_t m = ee.root_depth(); m <= depth; ++m) {
        if (!fe.level_sum(*ee.anchor(), m).is_zero()) sums_vanish = false;
      }
    }
    rep["exact_residual"] = deficiency_residual(fe, z, coeffs, tree, depth);
    rep["level_sums_vanish"] = sums_vanish;
  }
  emit(c, dump(rep), out);
}

// -------------------------------------------------------------- poisson

void cmd_poisson(const RunConfig& c, std::ostream& out) {
  TreeConfig tree(c.d);
  const unsigned d = c.d;
  auto coeffs = build_coefficients(c);
  const auto z = z_or(c, "0,1");
  if (z.is_real()) throw Error(ErrorCode::RealSpectralParameter, "the kernel needs a non-real z");
  auto y = Vertex::parse(c.y);
  y.validate(d);
  const std::size_t anchor_depth = depth_or(c, 3);
  const std::size_t top = std::max(y.length(), anchor_depth + 1);
  auto alpha = alpha_series(coeffs, tree, z, top, build_rule(c));
  DeficiencyBasis basis(coeffs, tree, z, top + 1);
  const auto conv =
      c.convention == "conjugated" ? KernelConvention::Conjugated : KernelConvention::AsStated;
  auto P = poisson_kernel(y, basis, alpha, conv);

  // g(y) against the boundary integral for f_0 and for e_1 - e_i anchored at
  // every vertex with |x| <= anchor_depth.
  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const DeficiencyElement& g) {
    Complex direct = g.value_at(y, basis);
    Complex via = integrate_product(P.kernel, boundary_image(g, d, alpha));
    worst = std::max(worst, std::abs(direct - via) / std::max(1.0, std::abs(direct)));
    ++checked;
  };
  check(DeficiencyElement::zero_anchored(1.0));
  for (std::size_t k = 0; k <= anchor_depth; ++k) {
    for (auto& x : words_of_length(d, k)) {
      for (std::uint32_t i = 2; i <= d; ++i) {
        std::vector<Complex> a(d);
        a[0] = 1.0;
        a[i - 1] = -1.0;
        check(DeficiencyElement::anchored(x, a, d));
      }
    }
  }
  Json rep;
  rep["y"] = y.to_string();
  rep["d"] = d;
  rep["z"] = complex_json(z.value());
  rep["convention"] = c.convention;
  rep["kernel"] = to_json(P.kernel.canonical());
  rep["elements_checked"] = checked;
  rep["reproducing_residual"] = worst;
  emit(c, dump(rep), out);
}

// --------------------------------------------------------------- lambda

void cmd_lambda(const RunConfig& c, std::ostream& out) {
  TreeConfig tree(c.d);
  auto coeffs = build_coefficients(c);
  const std::size_t n = c.level;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "--level must be positive");
  auto pairs = build_eigenpairs(n, coeffs, tree);
  Json list = Json::array();
  double worst = 0.0;
  for (const auto& p : pairs) {
    double r = eigen_residual(p, coeffs, tree);
    worst = std::max(worst, r);
    list.push_back(Json{{"eigenvalue", p.eigenvalue},
                        {"branch", p.branch},
                        {"root_index", p.root_index},
                        {"residual", r}});
  }
  auto audit = dimension_audit(n, c.d);
  Json rep;
  rep["coefficients"] = coeffs.describe();
  rep["d"] = c.d;
  rep["level"] = n;
  rep["eigenpair_count"] = pairs.size();
  rep["expected_count"] = n * (c.d - 1);
  rep["max_residual"] = worst;
  rep["eigenpairs"] = list;
  rep["dimension"] = Json{{"dim_M", audit.dim_M},
                          {"dim_V", audit.dim_V},
                          {"radial_count", audit.radial_count},
                          {"identity_holds", audit.identity_holds}};
  if (!c.spectrum_csv.empty()) {
    std::ostringstream os;
    write_spectrum_csv(os, spectrum_enumerate(coeffs, tree, n));
    write_file_atomic(c.spectrum_csv, os.str());
  }
  emit(c, dump(rep), out);
}

// --------------------------------------------------------------- oracle

void cmd_oracle(const RunConfig& c, std::ostream& out) {
  TreeConfig tree(c.d);
  auto coeffs = build_coefficients(c);
  const std::size_t n_max = n_max_or(c, 10);
  const auto scale = build_scale(c);
  double root_dev = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto roots = poly_roots(coeffs, scale, n);
    auto dense = dense_eigensolve(radial_block(coeffs, scale, 0, n));
    for (std::size_t j = 0; j < n; ++j) {
      root_dev = std::max(root_dev, std::abs(roots[j] - dense.values(static_cast<Eigen::Index>(j))) /
                                        std::max(1.0, std::abs(roots[j])));
    }
  }

  // dense column against sparse apply on interior basis vectors
  const std::size_t depth = depth_or(c, 3);
  const bool lambda = c.tree == "lambda";
  auto T = lambda ? lambda_truncation(coeffs, tree, depth) : gamma_truncation(coeffs, tree, depth);
  JacobiOperator J{coeffs, tree};
  const LambdaPatch patch{c.d, depth};
  double apply_dev = 0.0;
  std::size_t interior = 0;
  for (const auto& x : T.index) {
    const std::size_t lev = lambda ? patch.level(x) : x.length();
    if (lambda ? (lev == 0 || lev >= depth) : lev >= depth) continue;
    ++interior;
    auto f = lambda ? SparseFunction::on_patch(patch) : SparseFunction(c.d);
    f.set(x, 1.0);
    auto g = J.apply(f);
    const Eigen::Index col = T.row_of.at(x);
    for (const auto& w : T.index) {
      apply_dev = std::max(apply_dev, std::abs(g.at(w) - T.matrix(T.row_of.at(w), col)));
    }
  }
  if (!c.matrix_out.empty()) {
    std::ostringstream os;
    write_matrix_text(os, T.matrix);
    write_file_atomic(c.matrix_out, os.str());
  }
  Json rep;
  rep["coefficients"] = coeffs.describe();
  rep["d"] = c.d;
  rep["scale_squared"] = scale.squared;
  rep["roots_checked_up_to"] = n_max;
  rep["max_root_deviation"] = root_dev;
  rep["tree"] = c.tree;
  rep["truncation_rows"] = T.index.size();
  rep["interior_vertices"] = interior;
  rep["max_apply_deviation"] = apply_dev;
  emit(c, dump(rep), out);
}

// -------------------------------------------------------- worked example

void cmd_worked_example(const RunConfig& c, std::ostream& out) {
  const auto coeffs = CoefficientSequence::doubling_example();
  const TreeConfig tree(2);
  SeriesRule rule = build_rule(c);
  Json checks = Json::array();
  bool passed = true;
  bool inconclusive = false;
  auto record = [&](const std::string& name, bool ok, Json detail) {
    checks.push_back(Json{{"name", name}, {"passed", ok}, {"detail", std::move(detail)}});
    passed = passed && ok;
  };

  // p_n(0) = (-1)^n, exactly, for the unscaled recurrence
  const std::size_t n_check = 200;
  auto ex = compute_polys_exact(coeffs, RadialScale::unscaled(), SpectralParameter(0.0, 0.0), n_check);
  std::optional<std::size_t> bad;
  for (std::size_t n = 0; n <= n_check && !bad; ++n) {
    if (!(ex.p[n] == exact::Number(n % 2 == 0 ? 1 : -1))) bad = n;
  }
  record("alternating_p_at_zero", !bad,
         Json{{"n_max", n_check}, {"first_mismatch", bad ? Json(*bad) : Json(nullptr)}});

  // radial matrix at z = i: both series converge geometrically
  ClassifyOptions radial;
  radial.z = SpectralParameter(0.0, 1.0);
  radial.scale = RadialScale::radial(2);
  radial.rule = rule;
  auto rrep = classify(coeffs, tree, radial);
  const bool geometric = rrep.p_series.status == SeriesStatus::Converged &&
                         rrep.q_series.status == SeriesStatus::Converged &&
                         rrep.p_series.ratio_estimate < 1.0 && rrep.q_series.ratio_estimate < 1.0;
  Json env = nullptr;
  if (geometric) {
    auto terms = series_oracle(coeffs, RadialScale::radial(2), Complex(0.0, 1.0), rrep.terms_used);
    env = Json{{"rate", 0.5},
               {"p_constant", geometric_envelope(terms.p_terms, 0.5)},
               {"q_constant", geometric_envelope(terms.q_terms, 0.5)}};
  }
  record("radial_series_converge", geometric,
         Json{{"p_series", to_json(rrep.p_series)}, {"q_series", to_json(rrep.q_series)}, {"envelope", env}});

  // classical matrix: unscaled recurrence at z = 0
  ClassifyOptions classical;
  classical.z = SpectralParameter(0.0, 0.0);
  classical.scale = RadialScale::unscaled();
  classical.rule = rule;
  auto crep = classify(coeffs, tree, classical);

  const bool c_ok = crep.verdict == Verdict::EssentiallySelfadjoint;
  const bool r_ok = rrep.verdict == Verdict::NotEssentiallySelfadjoint;
  inconclusive = crep.verdict == Verdict::Inconclusive || rrep.verdict == Verdict::Inconclusive;
  record("classical_verdict", c_ok, to_json(crep));
  record("radial_verdict", r_ok, to_json(rrep));

  Json rep;
  rep["coefficients"] = coeffs.describe();
  rep["d"] = 2;
  rep["verdicts"] = Json{{"classical", to_string(crep.verdict)},
                         {"radial", to_string(rrep.verdict)},
                         {"tree", to_string(rrep.verdict)}};
  rep["checks"] = checks;
  rep["passed"] = passed;
  emit(c, dump(rep), out);
  if (!passed) {
    if (inconclusive) {
      if (c.strict) throw InconclusiveExit{"worked example inconclusive; raise --n-max"};
    } else {
      throw Error(ErrorCode::ConvergenceFailure, "worked example failed; see the report");
    }
  }
}

void add_common(CLI::App& app, RunConfig& c) {
  app.add_option("--tree", c.tree, "gamma or lambda")->check(CLI::IsMember({"gamma", "lambda"}));
  app.add_option("--d", c.d, "branching number")->check(CLI::Range(2u, 64u));
  app.add_option("--family", c.family, "doubling, constant, geometric, power or explicit")
      ->check(CLI::IsMember({"doubling", "constant", "geometric", "power", "explicit"}));
  app.add_option("--lambda", c.lambda, "lambda, or base of lambda_n");
  app.add_option("--ratio", c.ratio, "geometric ratio");
  app.add_option("--exponent", c.exponent, "power exponent");
  app.add_option("--beta", c.beta, "constant diagonal");
  app.add_option("--lambda-list", c.lambda_list, "explicit lambda_0, lambda_1, ...")->delimiter(',');
  app.add_option("--beta-list", c.beta_list, "explicit beta_0, beta_1, ...")->delimiter(',');
  app.add_flag("--neighbor-sum", c.neighbor_sum, "beta_n = lambda_n + lambda_{n-1}");
  c.z_opt = app.add_option("--z", c.z, "spectral parameter re,im");
  app.add_option("--scale", c.scale, "radial (sqrt d) or unscaled")
      ->check(CLI::IsMember({"radial", "unscaled"}));
  c.depth_opt = app.add_option("--depth", c.depth, "depth or level limit");
  c.n_max_opt = app.add_option("--n-max", c.n_max, "term or index limit");
  app.add_option("--tol", c.tol, "series tolerance");
  app.add_option("--mode", c.mode, "float or exact")->check(CLI::IsMember({"float", "exact"}));
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_flag("--strict", c.strict, "exit 4 on inconclusive results");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobi operators on homogeneous trees"};
  app.set_config("--config", "", "INI config; command line flags win");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  add_common(app, c);

  auto* polys = app.add_subcommand("polys", "p_n and q_n as CSV");
  auto* classify_cmd = app.add_subcommand("classify", "essential selfadjointness from the two series");
  auto* deficiency = app.add_subcommand("deficiency", "deficiency element on the rooted tree");
  deficiency->add_option("--anchor", c.anchor, "zero or a vertex address");
  deficiency->add_option("--coeff", c.coeff, "coefficient re,im (repeat per child)");
  auto* poisson = app.add_subcommand("poisson", "kernel at a vertex and its reproducing residual");
  poisson->add_option("--y", c.y, "vertex address");
  poisson->add_option("--convention", c.convention, "as-stated or conjugated")
      ->check(CLI::IsMember({"as-stated", "conjugated"}));
  auto* lambda = app.add_subcommand("lambda", "eigenpairs on a patch of the two-sided tree");
  lambda->add_option("--level", c.level, "apex level n");
  lambda->add_option("--spectrum-csv", c.spectrum_csv, "also write the root union as CSV");
  auto* oracle = app.add_subcommand("oracle", "dense cross-checks");
  oracle->add_option("--matrix-out", c.matrix_out, "write the dense truncation as text");
  auto* worked = app.add_subcommand("worked-example", "the lambda_n = 2^n example on the binary tree");
  worked->alias("paper-example");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*polys) cmd_polys(c, out);
    if (*classify_cmd) cmd_classify(c, out);
    if (*deficiency) cmd_deficiency(c, out);
    if (*poisson) cmd_poisson(c, out);
    if (*lambda) cmd_lambda(c, out);
    if (*oracle) cmd_oracle(c, out);
    if (*worked) cmd_worked_example(c, out);
  } catch (const InconclusiveExit& e) {
    err << "inconclusive: " << e.message << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return is_validation_error(e.code()) ? kValidation : kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}

}  // namespace jtree::cli
