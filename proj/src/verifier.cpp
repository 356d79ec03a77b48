#include "sgc/verifier.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <unordered_map>

#include "sgc/error.hpp"

namespace sgc {

DecodabilityReport verify_decodability(const SchemeArtifact& scheme) {
  DecodabilityReport rep;
  rep.witness = find_singular_responder_set(scheme.params, scheme.coding, &rep.subsets_checked);
  rep.pass = !rep.witness.has_value();
  return rep;
}

EncodabilityReport verify_encodability(const SchemeArtifact& scheme) {
  const auto& p = scheme.params;
  const auto& d = scheme.dims;
  const auto K = static_cast<std::size_t>(p.K);
  const std::size_t r = d.messages_per_server;
  const FieldMatrix P = scheme.coding.C * scheme.demand.F;
  const KeyGroupIndex groups(p.N, p.S);
  EncodabilityReport rep;

  auto scan = [&](int server, std::size_t col, EncodabilityViolation::Kind kind) {
    for (std::size_t t = 0; t < r; ++t) {
      const std::size_t row = static_cast<std::size_t>(server - 1) * r + t;
      if (P(row, col) == 0) continue;
      if (rep.violations.size() < EncodabilityReport::kMaxListed) {
        rep.violations.push_back({kind, server, row + 1, col + 1});
      }
      ++rep.violation_count;
    }
  };

  for (int server = 1; server <= p.N; ++server) {
    for (int k = 1; k <= p.K; ++k) {
      if (scheme.assignment.holds(server, k)) continue;
      for (std::size_t i = 1; i <= d.pieces; ++i) scan(server, gradient_column(K, k, i), EncodabilityViolation::Kind::kGradient);
    }
    for (std::size_t v = 1; v <= d.key_groups; ++v) {
      if (groups.contains(v, server)) continue;
      for (std::size_t j = 1; j <= d.key_pieces; ++j)
        scan(server, d.pieces * K + key_piece_offset(d.key_groups, v, j), EncodabilityViolation::Kind::kKey);
    }
  }
  return rep;
}

Rational rank_entropy(const LinearObservable& obs) { return Rational(rank(obs.coeff)); }

Rational linear_conditional_mi(const FieldMatrix& x, const FieldMatrix& y, const FieldMatrix& z) {
  const auto h = [](const std::vector<FieldMatrix>& parts) { return static_cast<long long>(rank(vstack(parts))); };
  const long long hz = static_cast<long long>(rank(z));
  return Rational(h({x, z}) + h({y, z}) - h({x, y, z}) - hz);
}

namespace {

struct SecurityObservables {
  FieldMatrix transcript;  // C*F
  FieldMatrix gradients;   // [I 0]
  FieldMatrix sum;         // [F1 0]
};

SecurityObservables security_observables(const SchemeArtifact& scheme) {
  const auto& d = scheme.dims;
  const auto& q = scheme.params.q;
  const std::size_t grad_vars = d.pieces * static_cast<std::size_t>(scheme.params.K);
  FieldMatrix G = hstack({FieldMatrix::identity(grad_vars, q), FieldMatrix(grad_vars, d.key_columns(), q)});
  FieldMatrix Ssum = hstack({scheme.demand.F1, FieldMatrix(d.pieces, d.key_columns(), q)});
  return {scheme.coding.C * scheme.demand.F, std::move(G), std::move(Ssum)};
}

}  // namespace

Rational conditional_mi_rank(const SchemeArtifact& scheme) {
  const auto obs = security_observables(scheme);
  return linear_conditional_mi(obs.transcript, obs.gradients, obs.sum);
}

SecurityReport analyze_security(const SchemeArtifact& scheme) {
  const auto obs = security_observables(scheme);
  SecurityReport rep;
  rep.mi_value = linear_conditional_mi(obs.transcript, obs.gradients, obs.sum);
  rep.transcript_rank = rank(obs.transcript);
  rep.expected_rank = scheme.dims.messages_per_server * static_cast<std::size_t>(scheme.params.Nr);
  rep.chain_slack = rep.expected_rank >= rep.transcript_rank ? rep.expected_rank - rep.transcript_rank : 0;
  rep.determined_by_any_responders = true;
  for (const auto& u : lex_subsets(scheme.params.N, scheme.params.Nr)) {
    if (rank(obs.transcript.select_rows(scheme.coding.rows_of(u))) != rep.transcript_rank) {
      rep.determined_by_any_responders = false;
      rep.determinism_witness = u;
      break;
    }
  }
  return rep;
}

BruteEntropy entropy_bruteforce(const std::vector<FieldMatrix>& observables, std::uint64_t q, std::size_t var_count) {
  const FieldModulus field(q);
  double total_d = 1.0;
  std::size_t total = 1;
  for (std::size_t i = 0; i < var_count; ++i) {
    total_d *= static_cast<double>(q);
    if (total_d > static_cast<double>(kBruteForceLimit)) {
      throw TooLarge("brute-force enumeration of " + std::to_string(q) + "^" + std::to_string(var_count) +
                     " assignments exceeds the limit");
    }
    total *= q;
  }
  for (const auto& m : observables) {
    if (m.cols() != var_count || m.modulus().value() != q) {
      throw DimensionMismatch("observable does not match the variable count or field");
    }
  }
  const FieldMatrix stacked = observables.empty() ? FieldMatrix(0, var_count, field) : vstack(observables);

  std::unordered_map<std::string, std::size_t> counts;
  std::vector<std::uint64_t> vars(var_count, 0);
  std::string key(stacked.rows() * sizeof(std::uint64_t), '\0');
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t i = 0; i < stacked.rows(); ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < var_count; ++j) acc = field.add(acc, field.mul(stacked(i, j), vars[j]));
      std::memcpy(key.data() + i * sizeof(std::uint64_t), &acc, sizeof(acc));
    }
    ++counts[key];
    // Mixed-radix increment.
    for (std::size_t j = 0; j < var_count; ++j) {
      if (++vars[j] < q) break;
      vars[j] = 0;
    }
  }

  BruteEntropy out;
  out.outcomes = counts.size();
  const double log_q = std::log(static_cast<double>(q));
  bool uniform = true;
  const std::size_t first = counts.begin()->second;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    out.value -= p * std::log(p) / log_q;
    if (c != first) uniform = false;
  }
  if (uniform) {
    std::size_t m = 1;
    long long e = 0;
    while (m < out.outcomes) {
      m *= q;
      ++e;
    }
    if (m == out.outcomes) out.exact = e;
  }
  return out;
}

std::optional<Rational> conditional_mi_bruteforce(const FieldMatrix& x, const FieldMatrix& y, const FieldMatrix& z) {
  const std::uint64_t q = x.modulus().value();
  const std::size_t vars = x.cols();
  const auto hxz = entropy_bruteforce({x, z}, q, vars);
  const auto hyz = entropy_bruteforce({y, z}, q, vars);
  const auto hxyz = entropy_bruteforce({x, y, z}, q, vars);
  const auto hz = entropy_bruteforce({z}, q, vars);
  if (!hxz.exact || !hyz.exact || !hxyz.exact || !hz.exact) return std::nullopt;
  return Rational(*hxz.exact + *hyz.exact - *hxyz.exact - *hz.exact);
}

MonotonicityReport verify_monotonicity(const SchemeParams& params) {
  const DerivedDims d = derive_dims(params);
  const BigInt total = binomial_big(params.N, params.S);
  const long alpha = params.N - params.M;
  const BigInt r = static_cast<unsigned long long>(d.messages_per_server);
  const BigInt n = static_cast<unsigned long long>(d.pieces);
  MonotonicityReport rep;
  auto omega = [&](long x) { return total - binomial_big(params.N - x, params.S); };
  for (long x = 1; x <= alpha; ++x) rep.f_values.emplace_back(alpha * omega(x), BigInt(x));
  for (long x = 1; x <= params.Nr; ++x) rep.g_values.emplace_back(n + alpha * omega(x), BigInt(x));

  rep.f_strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.f_values.size(); ++i)
    if (!(rep.f_values[i] < rep.f_values[i - 1])) rep.f_strictly_decreasing = false;
  rep.g_nonincreasing = true;
  for (std::size_t i = 1; i < rep.g_values.size(); ++i)
    if (rep.g_values[i] > rep.g_values[i - 1]) rep.g_nonincreasing = false;
  rep.f_end_equals_r = !rep.f_values.empty() && rep.f_values.back() == Rational(r);
  rep.g_end_equals_r = !rep.g_values.empty() && rep.g_values.back() == Rational(r);
  return rep;
}

DimsReport verify_dims(const SchemeArtifact& scheme) {
  const auto& p = scheme.params;
  const auto& d = scheme.dims;
  DimsReport rep;
  const auto total = binomial(p.N, p.S);
  rep.identity_holds = d.messages_per_server * static_cast<std::size_t>(p.Nr) == d.pieces + d.key_pieces * total &&
                       d.key_groups == total;
  rep.solvability_holds = d.key_pieces * (total - binomial(p.M, p.S)) >=
                          static_cast<std::size_t>(p.N - p.M) * d.messages_per_server;

  const auto& C = scheme.coding.C;
  const auto& dm = scheme.demand;
  const std::size_t gcols = d.pieces * static_cast<std::size_t>(p.K);
  rep.shapes_ok = C.rows() == d.messages_per_server * static_cast<std::size_t>(p.N) && C.cols() == d.f_rows &&
                  scheme.coding.free_columns == d.pieces && scheme.coding.rows_per_server == d.messages_per_server &&
                  dm.F.rows() == d.f_rows && dm.F.cols() == d.f_cols && dm.F1.rows() == d.pieces &&
                  dm.F1.cols() == gcols && dm.F2.rows() == d.key_columns() && dm.F2.cols() == gcols &&
                  dm.F3.rows() == d.key_columns() && dm.F3.cols() == d.key_columns() &&
                  static_cast<int>(scheme.assignment.datasets()) == p.K;
  if (!rep.shapes_ok) return rep;

  bool ok = dm.F3 == FieldMatrix::identity(d.key_columns(), p.q);
  for (std::size_t i = 0; i < d.pieces && ok; ++i)
    for (std::size_t c = 0; c < gcols; ++c) {
      const std::uint64_t want = c / static_cast<std::size_t>(p.K) == i ? 1 : 0;
      if (dm.F1(i, c) != want) {
        ok = false;
        break;
      }
    }
  ok = ok && dm.F.block(0, gcols, d.pieces, d.key_columns()).is_zero();
  ok = ok && dm.F == assemble_blocks({{dm.F1, FieldMatrix(d.pieces, d.key_columns(), p.q)}, {dm.F2, dm.F3}});
  rep.demand_structure_ok = ok;
  try {
    rep.demand_canonical = build_demand_matrix(p, d, scheme.assignment, scheme.coding).F2 == dm.F2;
  } catch (const Unsolvable&) {
    rep.demand_canonical = false;
  }
  return rep;
}

Certificate certify(const SchemeArtifact& scheme) {
  Certificate cert;
  cert.dims = verify_dims(scheme);
  if (!cert.dims.shapes_ok) return cert;
  cert.decodability = verify_decodability(scheme);
  cert.encodability = verify_encodability(scheme);
  cert.security = analyze_security(scheme);
  return cert;
}

}  // namespace sgc
