#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgc/matrix.hpp"
#include "sgc/rational.hpp"
#include "sgc/scheme.hpp"

namespace sgc {

struct DecodabilityReport {
  std::size_t subsets_checked = 0;
  bool pass = false;
  std::optional<ServerSet> witness;  // first singular responder set
};

/// Inverts C_U for every Nr-subset in lexicographic order; stops at the first failure.
DecodabilityReport verify_decodability(const SchemeArtifact& scheme);

struct EncodabilityViolation {
  enum class Kind { kGradient, kKey };
  Kind kind = Kind::kGradient;
  int server = 0;
  std::size_t row = 0;     // 1-based row of C*F
  std::size_t column = 0;  // 1-based column of F
};

struct EncodabilityReport {
  static constexpr std::size_t kMaxListed = 64;
  std::size_t violation_count = 0;
  std::vector<EncodabilityViolation> violations;  // first kMaxListed
  bool pass() const noexcept { return violation_count == 0; }
};

/// Computes C*F once and checks that each server's rows vanish on every
/// gradient column of a dataset it lacks and every key column of a group
/// it is not in.
EncodabilityReport verify_encodability(const SchemeArtifact& scheme);

/// Coefficients of a linear function of the independent uniform variables
/// (all gradient pieces, then all key pieces).
struct LinearObservable {
  FieldMatrix coeff;
};

/// Entropy of a linear observable in q-ary symbols per piece column: its rank.
Rational rank_entropy(const LinearObservable& obs);

/// I(X; Y | Z) = H(X,Z) + H(Y,Z) - H(X,Y,Z) - H(Z) for linear observables of
/// the same variables, evaluated through ranks.
Rational linear_conditional_mi(const FieldMatrix& x, const FieldMatrix& y, const FieldMatrix& z);

/// I(X_1..X_N; g_1..g_K | sum_k g_k) per piece column, with X = C*F, the
/// gradients [I 0] and the sum [F1 0].
Rational conditional_mi_rank(const SchemeArtifact& scheme);

struct SecurityReport {
  Rational mi_value{0};
  std::size_t transcript_rank = 0;  // rank(C*F)
  std::size_t expected_rank = 0;    // pieces + key_pieces*C(N,S) = r*Nr
  /// rank of any Nr servers' rows equals rank of all rows.
  bool determined_by_any_responders = false;
  std::optional<ServerSet> determinism_witness;
  /// r*Nr - rank(C*F): slack in the per-server size bound; reported, not a failure.
  std::size_t chain_slack = 0;
  bool pass() const { return mi_value == 0; }
};

SecurityReport analyze_security(const SchemeArtifact& scheme);

/// Result of exhaustive enumeration over all q^var_count assignments.
struct BruteEntropy {
  double value = 0.0;                 // Shannon entropy, base q
  std::optional<long long> exact;     // set when the distribution is uniform on q^e outcomes
  std::size_t outcomes = 0;
};

inline constexpr std::size_t kBruteForceLimit = 1000000;

/// Joint entropy of the stacked observables (each with var_count columns over
/// GF(q)) by enumerating every variable assignment. Throws TooLarge when
/// q^var_count exceeds kBruteForceLimit.
BruteEntropy entropy_bruteforce(const std::vector<FieldMatrix>& observables, std::uint64_t q,
                                std::size_t var_count);

/// I(X; Y | Z) from four brute-force entropies; nullopt unless all are exact.
std::optional<Rational> conditional_mi_bruteforce(const FieldMatrix& x, const FieldMatrix& y, const FieldMatrix& z);

struct MonotonicityReport {
  std::vector<Rational> f_values;  // x = 1..N-M
  std::vector<Rational> g_values;  // x = 1..Nr
  bool f_strictly_decreasing = false;
  bool g_nonincreasing = false;
  bool f_end_equals_r = false;
  bool g_end_equals_r = false;
  bool all_pass() const { return f_strictly_decreasing && g_nonincreasing && f_end_equals_r && g_end_equals_r; }
};

/// f(x) = a(C(N,S)-C(N-x,S))/x and g(x) = (n + a(C(N,S)-C(N-x,S)))/x in exact
/// rationals, a = N-M. Throws Infeasible for infeasible tuples.
MonotonicityReport verify_monotonicity(const SchemeParams& params);

struct DimsReport {
  bool identity_holds = false;       // r*Nr = n + a*C(N,S)
  bool solvability_holds = false;    // a*(C(N,S)-C(M,S)) >= (N-M)*r
  bool shapes_ok = false;            // C, F and their blocks have the derived sizes
  bool demand_structure_ok = false;  // F1 pattern, zero block, F3 = I
  /// F2 is the canonical solution (free variables zero) for this C. Entries of
  /// F2 whose key group lies inside D_k are unconstrained by encodability,
  /// decodability and security alike; only this comparison pins them.
  bool demand_canonical = false;
  bool pass() const {
    return identity_holds && solvability_holds && shapes_ok && demand_structure_ok && demand_canonical;
  }
};

DimsReport verify_dims(const SchemeArtifact& scheme);

struct Certificate {
  DecodabilityReport decodability;
  EncodabilityReport encodability;
  SecurityReport security;
  DimsReport dims;
  bool certified() const {
    return decodability.pass && encodability.pass() && security.pass() && dims.pass();
  }
};

/// Runs every check. A scheme is serialized as certified only when all pass.
Certificate certify(const SchemeArtifact& scheme);

}  // namespace sgc
