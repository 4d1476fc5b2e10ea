#pragma once

// JSON bundles ("schema": "aqft-kit/1"). Rationals are strings "p/q" (plain
// integers are accepted on input). Parts without a table form, such as
// functors out of parametric categories, are written as {"builtin": "<entry>/<part>"}
// and resolved through the corpus on input.

#include "aqft/corpus.hpp"
#include "aqft/homalg.hpp"
#include "aqft/report.hpp"

#include <json.hpp>

#include <string>

namespace aqft {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "aqft-kit/1";

/// Parses text; syntax errors become Error(Schema) with line and column.
Json parse_json(const std::string& text, const std::string& source = "<input>");

Json write_bundle(const Bundle& bundle);
/// Error(Schema) with a JSON path for every structural problem.
Bundle read_bundle(const Json& doc);

/// Reflective data for `bundle`'s base: either a bare reflective document, a
/// {"builtin": ...} reference, or a whole bundle carrying a "reflective" part.
ReflectiveData read_reflective(const Json& doc, const Bundle& bundle);

Json write_complex(const ChainComplex& x);
ChainComplex read_complex(const Json& doc, const std::string& path = "$");
Json write_matrix(const Matrix& m);
Matrix read_matrix(const Json& doc, std::size_t rows, std::size_t cols, const std::string& path = "$");
Json write_chain_map(const ChainMap& f);
Json write_algebra(const DgAlgebra& a);
DgAlgebraPtr read_algebra(const Json& doc, const std::string& path = "$");

Json write_verdict(const Verdict& v);
Json write_report(const Report& r);

/// Text rendering of a JSON report: one line per scalar, nested keys joined by '.'.
std::string render_text(const Json& doc);

}  // namespace aqft
