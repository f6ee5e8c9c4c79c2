#include "jtree/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>

namespace jtree {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

void write_polys_csv(std::ostream& os, const PolyTable& t) {
  os << "n,re_p,im_p,re_q,im_q\n";
  for (std::size_t n = 0; n <= t.max_index; ++n) {
    os << n << ',' << format_double(t.p[n].real()) << ',' << format_double(t.p[n].imag()) << ','
       << format_double(t.q[n].real()) << ',' << format_double(t.q[n].imag()) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const SpectrumSummary& s) {
  os << "n,root\n";
  for (const auto& e : s.roots) os << e.n << ',' << format_double(e.root) << '\n';
}

Json to_json(const SparseFunction& f) {
  Json arr = Json::array();
  for (const auto& [x, v] : f.entries()) {
    arr.push_back(Json{{"address", x.to_string()}, {"re", v.real()}, {"im", v.imag()}});
  }
  return arr;
}

SparseFunction sparse_function_from_json(const Json& j, unsigned d) {
  SparseFunction f(d);
  for (const auto& item : j) {
    auto x = Vertex::parse(item.at("address").get<std::string>());
    x.validate(d);
    f.set(x, Complex(item.at("re").get<double>(), item.at("im").get<double>()));
  }
  return f;
}

Json to_json(const StepFunction& f) {
  Json arr = Json::array();
  for (const auto& [b, v] : f.pieces()) {
    arr.push_back(Json{{"base_address", b.to_string()}, {"re", v.real()}, {"im", v.imag()}});
  }
  return arr;
}

Json to_json(const SeriesSummary& s) {
  return Json{{"status", to_string(s.status)},
              {"partial_sum", s.partial_sum},
              {"tail_estimate", s.tail_estimate},
              {"ratio_estimate", s.ratio_estimate},
              {"terms_used", s.terms_used},
              {"note", s.note}};
}

Json to_json(const ClassificationReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"coefficients", r.coefficients},
              {"d", r.d},
              {"scale_squared", r.scale.squared},
              {"z", {{"re", r.z.value().real()}, {"im", r.z.value().imag()}}},
              {"exact", r.exact},
              {"p_series", to_json(r.p_series)},
              {"q_series", to_json(r.q_series)},
              {"terms_used", r.terms_used},
              {"diagnostics", r.diagnostics}};
}

Json to_json(const DeficiencyElement& e, const AlphaTable& alpha) {
  Json coeffs = Json::array();
  for (const auto& a : e.coefficients()) coeffs.push_back(Json{{"re", a.real()}, {"im", a.imag()}});
  return Json{{"anchor", e.anchor() ? e.anchor()->to_string() : std::string("zero")},
              {"coefficients", coeffs},
              {"alpha", alpha.alpha(e.root_depth())}};
}

Json to_json(const AlphaTable& t) {
  Json arr = Json::array();
  for (std::size_t k = 0; k < t.entries.size(); ++k) {
    arr.push_back(Json{{"k", k}, {"alpha", t.entries[k].alpha}, {"series", to_json(t.entries[k].series)}});
  }
  return Json{{"status", to_string(t.status)}, {"entries", arr}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::InvalidArgument, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::InvalidArgument, "cannot move output into " + path.string());
  }
}

}  // namespace jtree
