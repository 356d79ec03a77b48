#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgc/rational.hpp"

namespace sgc {

/// Achievable cost (C(N,S)-C(M,S)) / ((C(N,S)-C(M,S))*Nr - C(N,S)*(N-M)).
/// Throws Infeasible when S < N-Nr+2 or the denominator is not positive.
Rational cost_R(int N, int Nr, int M, int S);

/// Non-secure linear optimum 1/(Nr-N+M); Infeasible when Nr-N+M <= 0.
Rational cost_Rn(int N, int Nr, int M);

struct RatioBeta {
  Rational ratio;  // (Nr-(N-M)) / (Nr - beta*(N-M))
  Rational beta;   // C(N,S) / (C(N,S)-C(M,S))
};

/// Closed-form ratio R/Rn through beta. Infeasible on infeasible tuples.
RatioBeta ratio_and_beta(int N, int Nr, int M, int S);

enum class Regime { kKeysFree, kKeysLimited, kInfeasible };

/// "S>M", "S<=M", "infeasible".
std::string regime_name(Regime r);

struct CostPoint {
  int N = 0, Nr = 0, M = 0, S = 0;
  std::optional<Rational> R;
  std::optional<Rational> Rn;
  std::optional<Rational> ratio;
  std::optional<Rational> beta;
  Regime regime = Regime::kInfeasible;
};

CostPoint cost_point(int N, int Nr, int M, int S);

enum class SweepAxis { kM, kS, kNr, kN };

/// Parses "M", "S", "Nr", "N"; throws InvalidParams otherwise.
SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kM;
  int N = 0, Nr = 0, M = 0, S = 0;  // the swept field is overwritten per row
  int from = 0;
  int to = -1;  // inclusive; to < from is an empty sweep
};

std::vector<CostPoint> sweep(const SweepSpec& spec);

/// Header axis,value,R_frac,R_dec,Rn_frac,Rn_dec,ratio_frac,ratio_dec,regime;
/// LF line endings; undefined quantities are left empty.
std::string sweep_csv(const SweepSpec& spec, const std::vector<CostPoint>& points);

struct OrderOptimalityReport {
  std::size_t tuples_checked = 0;
  std::size_t keys_free_tuples = 0;
  std::size_t keys_limited_tuples = 0;
  std::vector<std::string> failures;
  Rational max_ratio{0};
  CostPoint argmax;
  bool argmax_has_S2_and_full_responders = false;
  bool all_hold() const { return failures.empty() && argmax_has_S2_and_full_responders; }
};

/// Every feasible (N <= max_N, Nr, M, S): S>M gives R = Rn; S<=M gives
/// Rn < R <= 2 Rn; the largest ratio must sit at S = 2, Nr = N.
/// Throws InvalidParams for max_N > 20.
OrderOptimalityReport order_optimality_check(int max_N);

}  // namespace sgc
