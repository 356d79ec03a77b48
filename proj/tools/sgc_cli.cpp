// sgc: build, verify and simulate secure gradient coding schemes, and
// tabulate their communication cost.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sgc/analysis.hpp"
#include "sgc/engine.hpp"
#include "sgc/error.hpp"
#include "sgc/keyspace.hpp"
#include "sgc/scheme.hpp"
#include "sgc/serialize.hpp"
#include "sgc/verifier.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kConstruction = 3,
  kVerification = 4,
  kParse = 5,
};

struct Options {
  int K = 1, N = 0, Nr = 0, M = 0, S = 0;
  std::uint64_t q = sgc::FieldModulus::kDefault;
  std::uint64_t seed = 0;
  std::string assignment_path;
  std::string out_path;
  std::string cert_path;
  std::string artifact_path;
  std::optional<std::size_t> L;
  std::size_t rounds = 1;
  std::vector<int> responders;
  std::string axis = "M";
  int from = 0;
  int to = -1;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    sgc::write_file(path, text);
  }
}

std::string set_str(const sgc::ServerSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

sgc::SchemeParams scheme_params(const Options& o) {
  return sgc::SchemeParams{o.K, o.N, o.Nr, o.M, o.S, sgc::make_field(o.q)};
}

void print_certificate(const sgc::Certificate& c) {
  const auto& d = c.decodability;
  std::cout << "decodability: " << (d.pass ? "pass" : "FAIL") << " (" << d.subsets_checked << " subsets)";
  if (d.witness) std::cout << " singular responder set " << set_str(*d.witness);
  std::cout << "\n";
  const auto& e = c.encodability;
  std::cout << "encodability: " << (e.pass() ? "pass" : "FAIL");
  if (!e.pass()) {
    const auto& v = e.violations.front();
    std::cout << " (" << e.violation_count << " nonzero entries; first: server " << v.server << ", row " << v.row
              << ", column " << v.column << ")";
  }
  std::cout << "\n";
  const auto& s = c.security;
  std::cout << "security: " << (s.pass() ? "pass" : "FAIL") << " (I = " << sgc::to_fraction_string(s.mi_value)
            << ", rank " << s.transcript_rank << " of " << s.expected_rank << ")\n";
  std::cout << "dims: " << (c.dims.pass() ? "pass" : "FAIL");
  if (!c.dims.pass()) {
    std::cout << " (identity " << c.dims.identity_holds << ", solvability " << c.dims.solvability_holds << ", shapes "
              << c.dims.shapes_ok << ", demand structure " << c.dims.demand_structure_ok << ", canonical F2 "
              << c.dims.demand_canonical << ")";
  }
  std::cout << "\n";
  std::cout << (c.certified() ? "certified" : "NOT certified") << "\n";
}

int cmd_cost(const Options& o) {
  const sgc::Rational R = sgc::cost_R(o.N, o.Nr, o.M, o.S);
  const sgc::CostPoint p = sgc::cost_point(o.N, o.Nr, o.M, o.S);
  std::cout << "R=" << sgc::to_fraction_string(R) << " Rn=" << sgc::to_fraction_string(*p.Rn)
            << " ratio=" << sgc::to_fraction_string(*p.ratio) << " beta=" << sgc::to_fraction_string(*p.beta)
            << " regime=" << sgc::regime_name(p.regime) << "\n";
  if (!o.out_path.empty()) {
    sgc::Json j{{"N", o.N},
                {"Nr", o.Nr},
                {"M", o.M},
                {"S", o.S},
                {"R", sgc::to_fraction_string(R)},
                {"R_dec", sgc::to_decimal_string(R)},
                {"Rn", sgc::to_fraction_string(*p.Rn)},
                {"ratio", sgc::to_fraction_string(*p.ratio)},
                {"beta", sgc::to_fraction_string(*p.beta)},
                {"regime", sgc::regime_name(p.regime)}};
    emit(o.out_path, sgc::dump_json(j));
  }
  return kOk;
}

int cmd_build(const Options& o) {
  const sgc::SchemeParams params = scheme_params(o);
  const sgc::DerivedDims dims = sgc::derive_dims(params);
  std::optional<sgc::DataAssignment> assignment;
  if (!o.assignment_path.empty()) {
    assignment = sgc::assignment_from_json(sgc::parse_json_file(o.assignment_path), params.N);
    if (auto bad = sgc::validate_assignment(params, *assignment); !bad.empty()) {
      throw sgc::ParseError("assignment file '" + o.assignment_path + "': " + bad.front());
    }
  }
  const sgc::SchemeArtifact scheme = sgc::build_scheme(params, assignment, o.seed);
  const sgc::Certificate cert = sgc::certify(scheme);

  std::cout << "r=" << dims.messages_per_server << " n=" << dims.pieces << " alpha=" << dims.key_pieces
            << " F=" << scheme.demand.F.rows() << "x" << scheme.demand.F.cols() << " C=" << scheme.coding.C.rows()
            << "x" << scheme.coding.C.cols() << " retries=" << scheme.retries_used << "\n";
  print_certificate(cert);

  const std::string cert_path = o.cert_path.empty() ? o.out_path + ".cert.json" : o.cert_path;
  if (!cert.certified()) {
    std::cerr << "error: refusing to write an uncertified artifact\n";
    return kVerification;
  }
  emit(o.out_path, sgc::dump_json(sgc::artifact_to_json(scheme)));
  if (!o.out_path.empty() && o.out_path != "-") sgc::write_file(cert_path, sgc::dump_json(sgc::certificate_to_json(cert)));
  return kOk;
}

int cmd_verify(const Options& o) {
  const sgc::SchemeArtifact scheme = sgc::artifact_from_json(sgc::parse_json_file(o.artifact_path));
  const sgc::Certificate cert = sgc::certify(scheme);
  print_certificate(cert);
  if (!o.out_path.empty()) emit(o.out_path, sgc::dump_json(sgc::certificate_to_json(cert)));
  return cert.certified() ? kOk : kVerification;
}

int cmd_simulate(const Options& o) {
  const sgc::SchemeArtifact scheme = sgc::artifact_from_json(sgc::parse_json_file(o.artifact_path));
  const std::size_t L = o.L.value_or(scheme.dims.pieces * 4);
  const auto subsets = sgc::lex_subsets(scheme.params.N, scheme.params.Nr);
  sgc::Decoder decoder(scheme);
  sgc::Json reports = sgc::Json::array();
  std::size_t matches = 0;
  for (std::size_t i = 0; i < o.rounds; ++i) {
    const sgc::ServerSet responders = o.responders.empty() ? subsets[i % subsets.size()] : o.responders;
    const std::uint64_t seed = sgc::SeededRng::derive_seed(o.seed, static_cast<std::uint64_t>(i));
    const sgc::RoundReport r = sgc::simulate_round(scheme, decoder, i, L, seed, responders);
    if (r.match) ++matches;
    reports.push_back(sgc::round_report_to_json(r));
  }
  std::cout << matches << "/" << o.rounds << " rounds matched (L=" << L << ")\n";
  if (!o.out_path.empty()) emit(o.out_path, sgc::dump_json(reports));
  return matches == o.rounds ? kOk : kVerification;
}

int cmd_sweep(const Options& o) {
  sgc::SweepSpec spec{sgc::parse_axis(o.axis), o.N, o.Nr, o.M, o.S, o.from, o.to};
  const auto points = sgc::sweep(spec);
  emit(o.out_path, sgc::sweep_csv(spec, points));
  return kOk;
}

void add_tuple(CLI::App* cmd, Options& o, bool with_k) {
  cmd->add_option("--N", o.N, "servers")->required();
  cmd->add_option("--Nr", o.Nr, "responders needed")->required();
  cmd->add_option("--M", o.M, "replication of each dataset")->required();
  cmd->add_option("--S", o.S, "servers sharing each key")->required();
  if (with_k) cmd->add_option("--K", o.K, "datasets")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure gradient coding with groupwise keys"};
  app.require_subcommand(1);
  Options o;

  auto* cost = app.add_subcommand("cost", "achievable and non-secure cost for one tuple");
  add_tuple(cost, o, false);
  cost->add_option("--out", o.out_path, "also write the point as JSON");

  auto* build = app.add_subcommand("build", "construct and certify a scheme");
  add_tuple(build, o, true);
  build->add_option("--q", o.q, "prime field size");
  build->add_option("--seed", o.seed, "construction seed");
  build->add_option("--assignment", o.assignment_path, "JSON {\"D\": [[...], ...]}");
  build->add_option("--out", o.out_path, "artifact path")->required();
  build->add_option("--cert", o.cert_path, "certificate path (default <out>.cert.json)");

  auto* verify = app.add_subcommand("verify", "re-run every certificate check on an artifact");
  verify->add_option("--artifact", o.artifact_path, "artifact path")->required();
  verify->add_option("--out", o.out_path, "certificate output path");

  auto* simulate = app.add_subcommand("simulate", "encode and decode random rounds");
  simulate->add_option("--artifact", o.artifact_path, "artifact path")->required();
  simulate->add_option("--L", o.L, "gradient length (default 4 * pieces)");
  simulate->add_option("--rounds", o.rounds, "number of rounds");
  simulate->add_option("--seed", o.seed, "round seed");
  simulate->add_option("--responders", o.responders, "comma-separated responder set")->delimiter(',');
  simulate->add_option("--out", o.out_path, "round reports (JSON)");

  auto* sw = app.add_subcommand("sweep", "tabulate the cost along one axis as CSV");
  sw->add_option("--axis", o.axis, "M, S, Nr or N")->required();
  sw->add_option("--from", o.from, "first value")->required();
  sw->add_option("--to", o.to, "last value (inclusive)")->required();
  sw->add_option("--N", o.N, "servers");
  sw->add_option("--Nr", o.Nr, "responders needed");
  sw->add_option("--M", o.M, "replication");
  sw->add_option("--S", o.S, "key group size");
  sw->add_option("--out", o.out_path, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cost) return cmd_cost(o);
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*simulate) return cmd_simulate(o);
    if (*sw) return cmd_sweep(o);
  } catch (const sgc::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const sgc::ConstructionFailed& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kConstruction;
  } catch (const sgc::Singular& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const sgc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const sgc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
