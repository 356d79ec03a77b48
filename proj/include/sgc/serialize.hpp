#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "sgc/engine.hpp"
#include "sgc/matrix.hpp"
#include "sgc/scheme.hpp"
#include "sgc/verifier.hpp"

// JSON forms of the library's artifacts. Field elements and moduli are
// decimal strings; integers that are sizes or labels are JSON numbers.
// Parsing is strict: anything malformed or inconsistent throws ParseError.

namespace sgc {

using Json = nlohmann::json;

inline constexpr int kArtifactFormatVersion = 1;

/// {"rows": r, "cols": c, "q": "...", "data": ["...", ...]} row-major.
Json matrix_to_json(const FieldMatrix& m);
/// When `expected` is given the matrix's "q" must match it.
FieldMatrix matrix_from_json(const Json& j, const std::optional<FieldModulus>& expected = std::nullopt);

/// {"D": [[2,3],[1,2],...]}, 1-based server labels, dataset order = list order.
Json assignment_to_json(const DataAssignment& a);
DataAssignment assignment_from_json(const Json& j, int N);

/// header {format_version, K, N, Nr, M, S, q, seed, retries_used},
/// assignment {D}, C and F in matrix form.
Json artifact_to_json(const SchemeArtifact& s);
SchemeArtifact artifact_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Json round_report_to_json(const RoundReport& r);

/// Pretty-printed JSON with a trailing newline; byte-stable for equal inputs.
std::string dump_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
Json parse_json_file(const std::string& path);

std::string hex64(std::uint64_t v);

}  // namespace sgc
