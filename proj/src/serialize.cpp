#include "sgc/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sgc/error.hpp"

namespace sgc {

namespace {

std::uint64_t parse_decimal(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a decimal string");
  const auto& s = j.get_ref<const std::string&>();
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) throw ParseError(std::string(what) + ": bad decimal '" + s + "'");
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<T>();
}

FieldModulus parse_modulus(const Json& j) {
  const std::uint64_t q = parse_decimal(j, "q");
  try {
    return FieldModulus(q);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid modulus: ") + e.what());
  }
}

}  // namespace

Json matrix_to_json(const FieldMatrix& m) {
  Json data = Json::array();
  for (std::uint64_t v : m.data()) data.push_back(std::to_string(v));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"q", std::to_string(m.modulus().value())}, {"data", data}};
}

FieldMatrix matrix_from_json(const Json& j, const std::optional<FieldModulus>& expected) {
  const auto rows = integer<std::size_t>(j, "rows");
  const auto cols = integer<std::size_t>(j, "cols");
  const FieldModulus q = parse_modulus(field(j, "q"));
  if (expected && !(*expected == q)) {
    throw ParseError("matrix modulus " + std::to_string(q.value()) + " does not match " +
                     std::to_string(expected->value()));
  }
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw ParseError("matrix data must hold rows*cols = " + std::to_string(rows * cols) + " entries");
  }
  std::vector<std::uint64_t> values;
  values.reserve(data.size());
  for (const auto& e : data) {
    const std::uint64_t v = parse_decimal(e, "matrix entry");
    if (v >= q.value()) throw ParseError("matrix entry " + std::to_string(v) + " is not reduced mod q");
    values.push_back(v);
  }
  return FieldMatrix(rows, cols, q, std::move(values));
}

Json assignment_to_json(const DataAssignment& a) { return Json{{"D", a.dataset_servers()}}; }

DataAssignment assignment_from_json(const Json& j, int N) {
  const Json& d = field(j, "D");
  if (!d.is_array()) throw ParseError("'D' must be a list of server lists");
  std::vector<ServerSet> sets;
  for (const auto& s : d) {
    if (!s.is_array()) throw ParseError("each entry of 'D' must be a list of server labels");
    ServerSet set;
    for (const auto& v : s) {
      if (!v.is_number_integer()) throw ParseError("server labels must be integers");
      set.push_back(v.get<int>());
    }
    sets.push_back(std::move(set));
  }
  return DataAssignment(N, std::move(sets));
}

Json artifact_to_json(const SchemeArtifact& s) {
  const auto& p = s.params;
  Json header{{"format_version", kArtifactFormatVersion},
              {"K", p.K},
              {"N", p.N},
              {"Nr", p.Nr},
              {"M", p.M},
              {"S", p.S},
              {"q", std::to_string(p.q.value())},
              {"seed", s.seed},
              {"retries_used", s.retries_used}};
  return Json{{"header", header},
              {"assignment", assignment_to_json(s.assignment)},
              {"C", matrix_to_json(s.coding.C)},
              {"F", matrix_to_json(s.demand.F)}};
}

SchemeArtifact artifact_from_json(const Json& j) {
  const Json& h = field(j, "header");
  if (integer<int>(h, "format_version") != kArtifactFormatVersion) throw ParseError("unsupported format_version");
  const SchemeParams params{integer<int>(h, "K"), integer<int>(h, "N"), integer<int>(h, "Nr"),
                            integer<int>(h, "M"), integer<int>(h, "S"), parse_modulus(field(h, "q"))};
  const auto seed = integer<std::uint64_t>(h, "seed");
  const auto retries = integer<int>(h, "retries_used");
  DerivedDims d;
  try {
    d = derive_dims(params);
  } catch (const Error& e) {
    throw ParseError(std::string("header parameters rejected: ") + e.what());
  }

  DataAssignment assignment = assignment_from_json(field(j, "assignment"), params.N);
  if (auto bad = validate_assignment(params, assignment); !bad.empty()) {
    throw ParseError("invalid assignment: " + bad.front());
  }

  const std::size_t c_rows = d.messages_per_server * static_cast<std::size_t>(params.N);
  FieldMatrix C = matrix_from_json(field(j, "C"), params.q);
  if (C.rows() != c_rows || C.cols() != d.f_rows) {
    throw ParseError("C has shape " + std::to_string(C.rows()) + "x" + std::to_string(C.cols()) + ", expected " +
                     std::to_string(c_rows) + "x" + std::to_string(d.f_rows));
  }
  FieldMatrix F = matrix_from_json(field(j, "F"), params.q);
  if (F.rows() != d.f_rows || F.cols() != d.f_cols) {
    throw ParseError("F has shape " + std::to_string(F.rows()) + "x" + std::to_string(F.cols()) + ", expected " +
                     std::to_string(d.f_rows) + "x" + std::to_string(d.f_cols));
  }
  const std::size_t gcols = d.pieces * static_cast<std::size_t>(params.K);
  DemandMatrix demand{F.block(0, 0, d.pieces, gcols), F.block(d.pieces, 0, d.key_columns(), gcols),
                      F.block(d.pieces, gcols, d.key_columns(), d.key_columns()), F};
  CodingMatrix coding{std::move(C), d.pieces, d.messages_per_server};
  return SchemeArtifact{params, d, std::move(assignment), std::move(coding), std::move(demand), seed, retries};
}

Json certificate_to_json(const Certificate& c) {
  Json dec{{"subsets_checked", c.decodability.subsets_checked},
           {"pass", c.decodability.pass},
           {"witness", c.decodability.witness ? Json(*c.decodability.witness) : Json(nullptr)}};
  Json violations = Json::array();
  for (const auto& v : c.encodability.violations) {
    violations.push_back({{"kind", v.kind == EncodabilityViolation::Kind::kGradient ? "gradient" : "key"},
                          {"server", v.server},
                          {"row", v.row},
                          {"column", v.column}});
  }
  Json enc{{"violation_count", c.encodability.violation_count},
           {"violations", violations},
           {"pass", c.encodability.pass()}};
  const auto& s = c.security;
  Json sec{{"mi_value", to_fraction_string(s.mi_value)},
           {"pass", s.pass()},
           {"transcript_rank", s.transcript_rank},
           {"expected_rank", s.expected_rank},
           {"determined_by_any_Nr", s.determined_by_any_responders},
           {"determinism_witness", s.determinism_witness ? Json(*s.determinism_witness) : Json(nullptr)},
           {"chain_slack", s.chain_slack}};
  Json dims{{"identity_holds", c.dims.identity_holds},
            {"solvability_holds", c.dims.solvability_holds},
            {"shapes_ok", c.dims.shapes_ok},
            {"demand_structure_ok", c.dims.demand_structure_ok},
            {"demand_canonical", c.dims.demand_canonical},
            {"pass", c.dims.pass()}};
  return Json{{"decodability", dec},
              {"encodability", enc},
              {"security", sec},
              {"dims", dims},
              {"certified", c.certified()}};
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json round_report_to_json(const RoundReport& r) {
  return Json{{"round", r.round},
              {"seed", r.seed},
              {"L", r.length},
              {"message_symbols", r.message_symbols},
              {"responders", r.responders},
              {"decoded_hash", hex64(r.decoded_hash)},
              {"direct_hash", hex64(r.direct_hash)},
              {"match", r.match}};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw ParseError("write to '" + path + "' failed");
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace sgc
