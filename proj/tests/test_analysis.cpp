#include <gtest/gtest.h>

#include <sstream>

#include "sgc/analysis.hpp"
#include "sgc/error.hpp"

namespace sgc {
namespace {

// Independent oracle: exact fractions from int64 binomials.
long long choose(int n, int k) {
  if (k < 0 || n < 0 || n < k) return 0;
  long long a = 1;
  for (int i = 1; i <= k; ++i) a = a * (n - k + i) / i;
  return a;
}

Rational frac(long long p, long long q) { return Rational(BigInt(p), BigInt(q)); }

TEST(Cost, Examples) {
  EXPECT_EQ(cost_R(3, 3, 2, 2), frac(2, 3));
  EXPECT_EQ(cost_R(14, 12, 8, 9), frac(1, 6));
  EXPECT_THROW(cost_R(3, 2, 2, 2), Infeasible);
  EXPECT_EQ(cost_Rn(3, 3, 2), frac(1, 2));
  EXPECT_EQ(cost_Rn(14, 12, 8), frac(1, 6));
  EXPECT_THROW(cost_Rn(10, 8, 2), Infeasible);
}

TEST(Cost, RatioAndBeta) {
  const auto rb = ratio_and_beta(3, 3, 2, 2);
  EXPECT_EQ(rb.ratio, frac(4, 3));
  EXPECT_EQ(rb.beta, frac(3, 2));
  EXPECT_EQ(ratio_and_beta(14, 12, 8, 9).beta, 1);
  EXPECT_EQ(ratio_and_beta(14, 12, 8, 9).ratio, 1);
}

TEST(Cost, MatchesOracleAndOrderingOnAllFeasibleTuples) {
  for (int N = 2; N <= 16; ++N)
    for (int Nr = 1; Nr <= N; ++Nr)
      for (int M = 1; M <= N; ++M)
        for (int S = 1; S <= N; ++S) {
          const long long total = choose(N, S), r = total - choose(M, S);
          const long long den = r * Nr - total * (N - M);
          const bool feasible = S >= N - Nr + 2 && den > 0;
          if (!feasible) {
            EXPECT_THROW(cost_R(N, Nr, M, S), Infeasible);
            EXPECT_EQ(cost_point(N, Nr, M, S).regime, Regime::kInfeasible);
            continue;
          }
          const Rational R = cost_R(N, Nr, M, S);
          ASSERT_EQ(R, frac(r, den));
          const Rational Rn = cost_Rn(N, Nr, M);
          EXPECT_GE(R, Rn);
          EXPECT_EQ(R == Rn, S > M) << N << " " << Nr << " " << M << " " << S;
          const auto rb = ratio_and_beta(N, Nr, M, S);
          EXPECT_EQ(rb.ratio, R / Rn);
          EXPECT_EQ(rb.beta, frac(total, r));
          const auto pt = cost_point(N, Nr, M, S);
          EXPECT_EQ(pt.regime, S > M ? Regime::kKeysFree : Regime::kKeysLimited);
          ASSERT_TRUE(pt.R && pt.Rn && pt.ratio && pt.beta);
          EXPECT_EQ(*pt.R, R);
        }
}

TEST(Cost, BetaNonIncreasingInS) {
  for (int N = 2; N <= 20; ++N)
    for (int M = 1; M < N; ++M)
      for (int S = 2; S <= M; ++S) {
        const Rational prev(BigInt(choose(N, S - 1)), BigInt(choose(N, S - 1) - choose(M, S - 1)));
        const Rational cur(BigInt(choose(N, S)), BigInt(choose(N, S) - choose(M, S)));
        EXPECT_LE(cur, prev) << N << " " << M << " " << S;
      }
}

TEST(Cost, Strings) {
  EXPECT_EQ(to_fraction_string(frac(4, 6)), "2/3");
  EXPECT_EQ(to_fraction_string(Rational(3)), "3");
  EXPECT_EQ(to_decimal_string(frac(2, 3)), "0.666666666667");
  EXPECT_EQ(to_decimal_string(frac(1, 2)), "0.5");
  EXPECT_EQ(regime_name(Regime::kKeysFree), "S>M");
  EXPECT_EQ(regime_name(Regime::kKeysLimited), "S<=M");
  EXPECT_EQ(regime_name(Regime::kInfeasible), "infeasible");
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Sweep, AxisParsing) {
  EXPECT_EQ(parse_axis("Nr"), SweepAxis::kNr);
  EXPECT_EQ(axis_name(SweepAxis::kS), "S");
  EXPECT_THROW(parse_axis("q"), InvalidParams);
}

TEST(Sweep, RowsAndCsv) {
  const SweepSpec spec{SweepAxis::kS, 14, 12, 8, 0, 4, 13};
  const auto pts = sweep(spec);
  ASSERT_EQ(pts.size(), 10u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i].S, 4 + static_cast<int>(i));
    EXPECT_EQ(pts[i].regime, pts[i].S >= 9 ? Regime::kKeysFree : Regime::kKeysLimited);
  }
  const std::string csv = sweep_csv(spec, pts);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  const auto ls = lines(csv);
  ASSERT_EQ(ls.size(), 11u);
  EXPECT_EQ(ls[0], "axis,value,R_frac,R_dec,Rn_frac,Rn_dec,ratio_frac,ratio_dec,regime");
  EXPECT_EQ(ls[6].rfind("S,9,1/6,", 0), 0u);
  EXPECT_NE(ls[6].find(",S>M"), std::string::npos);
}

TEST(Sweep, EmptyRangeAndInfeasibleRows) {
  const SweepSpec empty{SweepAxis::kM, 14, 12, 0, 6, 5, 4};
  EXPECT_TRUE(sweep(empty).empty());
  EXPECT_EQ(lines(sweep_csv(empty, {})).size(), 1u);
  // M = 1 with Nr = 12, N = 14 is infeasible: empty quantities.
  const SweepSpec low{SweepAxis::kM, 14, 12, 0, 6, 1, 1};
  const auto ls = lines(sweep_csv(low, sweep(low)));
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[1], "M,1,,,,,,,infeasible");
}

TEST(OrderOptimality, SmallRange) {
  const auto rep = order_optimality_check(10);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_GT(rep.tuples_checked, 0u);
  EXPECT_EQ(rep.tuples_checked, rep.keys_free_tuples + rep.keys_limited_tuples);
  EXPECT_EQ(rep.argmax.S, 2);
  EXPECT_EQ(rep.argmax.Nr, rep.argmax.N);
  EXPECT_LE(rep.max_ratio, 2);
  EXPECT_THROW(order_optimality_check(21), InvalidParams);
}

}  // namespace
}  // namespace sgc
