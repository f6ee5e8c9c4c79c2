#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "jtree/boundary.hpp"
#include "jtree/deficiency.hpp"
#include "jtree/lambda_tree.hpp"
#include "jtree/orthopoly.hpp"
#include "jtree/tree.hpp"

namespace jtree {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_double(double v);

/// CSV with header n,re_p,im_p,re_q,im_q.
void write_polys_csv(std::ostream& os, const PolyTable& table);
/// CSV with header n,root.
void write_spectrum_csv(std::ostream& os, const SpectrumSummary& spectrum);

/// [{address, re, im}, ...] in address order.
[[nodiscard]] Json to_json(const SparseFunction& f);
[[nodiscard]] SparseFunction sparse_function_from_json(const Json& j, unsigned d);
/// [{base_address, re, im}, ...]
[[nodiscard]] Json to_json(const StepFunction& f);
[[nodiscard]] Json to_json(const SeriesSummary& s);
[[nodiscard]] Json to_json(const ClassificationReport& r);
/// {anchor, coefficients, alpha}
[[nodiscard]] Json to_json(const DeficiencyElement& e, const AlphaTable& alpha);
[[nodiscard]] Json to_json(const AlphaTable& t);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace jtree
