#pragma once

// JSON encodings for characteristics, period matrices and reports, plus the
// canonical writer used for every file the tool emits.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "theta4/basis_analysis.hpp"
#include "theta4/identities.hpp"
#include "theta4/mmatrix.hpp"
#include "theta4/theta_eval.hpp"

namespace theta4 {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, doubles as %.17g, non-finite as null.
std::string canonical_dump(const Json& j);

/// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
Json read_json_file(const std::filesystem::path& path);

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"a1": [bits...], "a2": [bits...]}
Json to_json(const Characteristic& c);
/// Accepts the object form, or a two-element integer array [a1, a2] read
/// most-significant-bit-first (which needs the genus).
Characteristic characteristic_from_json(const Json& j, int g);
/// Parses "a1,a2" with integer halves, most-significant-bit-first.
Characteristic parse_characteristic(std::string_view text, int g);

/// {"g": G, "re": [[...]], "im": [[...]]}, row-major.
Json to_json(const PeriodMatrix& tau);
PeriodMatrix period_matrix_from_json(const Json& j);
PeriodMatrix load_period_matrix(const std::filesystem::path& path);

Json to_json(const Point& z);
/// Parses "re,im;re,im;..." with one entry per coordinate.
Point parse_point(std::string_view text);

Json to_json(const SignMatrix& m);
Json to_json(const MMatrixVerification& v);
Json to_json(const TruncationPolicy& p);
Json to_json(const IdentityResidual& r);
Json to_json(const std::vector<NullValue>& nulls, double null_threshold);
Json to_json(const BasisReport& r);

}  // namespace theta4
