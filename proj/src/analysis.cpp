#include "sgc/analysis.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <sstream>

#include "sgc/error.hpp"

namespace sgc {

namespace {

using Decimal = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>>;

std::string tuple_str(int N, int Nr, int M, int S) {
  return "(N=" + std::to_string(N) + ", Nr=" + std::to_string(Nr) + ", M=" + std::to_string(M) +
         ", S=" + std::to_string(S) + ")";
}

}  // namespace

std::string to_fraction_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& x, int significant) {
  const Decimal v = Decimal(boost::multiprecision::numerator(x)) / Decimal(boost::multiprecision::denominator(x));
  return v.str(significant);
}

BigInt binomial_big(long n, long k) {
  if (n < 0 || k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (long i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

Rational cost_R(int N, int Nr, int M, int S) {
  if (S < N - Nr + 2) throw Infeasible("feasibility S >= N-Nr+2 violated for " + tuple_str(N, Nr, M, S));
  const BigInt total = binomial_big(N, S);
  const BigInt r = total - binomial_big(M, S);
  const BigInt den = r * Nr - total * (N - M);
  if (den <= 0) throw Infeasible("cost denominator is not positive for " + tuple_str(N, Nr, M, S));
  return Rational(r, den);
}

Rational cost_Rn(int N, int Nr, int M) {
  const int den = Nr - N + M;
  if (den <= 0) throw Infeasible("Nr-N+M must be positive, got " + std::to_string(den));
  return Rational(1, den);
}

RatioBeta ratio_and_beta(int N, int Nr, int M, int S) {
  // Validates feasibility the same way the cost does.
  (void)cost_R(N, Nr, M, S);
  const BigInt total = binomial_big(N, S);
  const Rational beta(total, total - binomial_big(M, S));
  const Rational ratio = Rational(Nr - (N - M)) / (Rational(Nr) - beta * (N - M));
  return {ratio, beta};
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::kKeysFree:
      return "S>M";
    case Regime::kKeysLimited:
      return "S<=M";
    case Regime::kInfeasible:
      break;
  }
  return "infeasible";
}

CostPoint cost_point(int N, int Nr, int M, int S) {
  CostPoint pt;
  pt.N = N;
  pt.Nr = Nr;
  pt.M = M;
  pt.S = S;
  const bool in_range = N >= 1 && Nr >= 1 && Nr <= N && M >= 1 && M <= N && S >= 1 && S <= N;
  if (in_range && Nr - N + M > 0) pt.Rn = cost_Rn(N, Nr, M);
  if (!in_range) return pt;
  try {
    pt.R = cost_R(N, Nr, M, S);
  } catch (const Infeasible&) {
    return pt;
  }
  auto rb = ratio_and_beta(N, Nr, M, S);
  pt.ratio = rb.ratio;
  pt.beta = rb.beta;
  pt.regime = S > M ? Regime::kKeysFree : Regime::kKeysLimited;
  return pt;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "M") return SweepAxis::kM;
  if (name == "S") return SweepAxis::kS;
  if (name == "Nr") return SweepAxis::kNr;
  if (name == "N") return SweepAxis::kN;
  throw InvalidParams("sweep axis must be one of M, S, Nr, N; got '" + name + "'");
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kM:
      return "M";
    case SweepAxis::kS:
      return "S";
    case SweepAxis::kNr:
      return "Nr";
    case SweepAxis::kN:
      return "N";
  }
  return "?";
}

std::vector<CostPoint> sweep(const SweepSpec& spec) {
  std::vector<CostPoint> out;
  for (int v = spec.from; v <= spec.to; ++v) {
    int N = spec.N, Nr = spec.Nr, M = spec.M, S = spec.S;
    switch (spec.axis) {
      case SweepAxis::kM:
        M = v;
        break;
      case SweepAxis::kS:
        S = v;
        break;
      case SweepAxis::kNr:
        Nr = v;
        break;
      case SweepAxis::kN:
        N = v;
        break;
    }
    out.push_back(cost_point(N, Nr, M, S));
  }
  return out;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<CostPoint>& points) {
  std::ostringstream os;
  os << "axis,value,R_frac,R_dec,Rn_frac,Rn_dec,ratio_frac,ratio_dec,regime\n";
  auto cell = [&](const std::optional<Rational>& x) {
    if (x) {
      os << to_fraction_string(*x) << ',' << to_decimal_string(*x) << ',';
    } else {
      os << ",,";
    }
  };
  for (const auto& p : points) {
    int value = 0;
    switch (spec.axis) {
      case SweepAxis::kM:
        value = p.M;
        break;
      case SweepAxis::kS:
        value = p.S;
        break;
      case SweepAxis::kNr:
        value = p.Nr;
        break;
      case SweepAxis::kN:
        value = p.N;
        break;
    }
    os << axis_name(spec.axis) << ',' << value << ',';
    cell(p.R);
    cell(p.Rn);
    cell(p.ratio);
    os << regime_name(p.regime) << '\n';
  }
  return os.str();
}

OrderOptimalityReport order_optimality_check(int max_N) {
  if (max_N > 20) throw InvalidParams("order_optimality_check supports max_N <= 20");
  OrderOptimalityReport rep;
  std::vector<CostPoint> maximizers;
  auto fail = [&](const CostPoint& p, const std::string& what) {
    if (rep.failures.size() < 32) rep.failures.push_back(tuple_str(p.N, p.Nr, p.M, p.S) + ": " + what);
  };
  for (int N = 1; N <= max_N; ++N)
    for (int Nr = 1; Nr <= N; ++Nr)
      for (int M = 1; M <= N; ++M)
        for (int S = 1; S <= N; ++S) {
          const CostPoint p = cost_point(N, Nr, M, S);
          if (p.regime == Regime::kInfeasible) continue;
          ++rep.tuples_checked;
          const Rational& R = *p.R;
          const Rational& Rn = *p.Rn;
          if (R < Rn) fail(p, "R < Rn");
          if (*p.ratio != R / Rn) fail(p, "closed-form ratio disagrees with R/Rn");
          if (p.regime == Regime::kKeysFree) {
            ++rep.keys_free_tuples;
            if (R != Rn) fail(p, "S>M but R != Rn");
          } else {
            ++rep.keys_limited_tuples;
            if (!(Rn < R)) fail(p, "S<=M but R is not strictly above Rn");
            if (R > 2 * Rn) fail(p, "R exceeds 2 Rn");
          }
          if (maximizers.empty() || *p.ratio > rep.max_ratio) {
            rep.max_ratio = *p.ratio;
            maximizers.assign(1, p);
          } else if (*p.ratio == rep.max_ratio) {
            maximizers.push_back(p);
          }
        }
  if (!maximizers.empty()) {
    rep.argmax = maximizers.front();
    rep.argmax_has_S2_and_full_responders = true;
    for (const auto& m : maximizers) {
      if (m.S != 2 || m.Nr != m.N) rep.argmax_has_S2_and_full_responders = false;
    }
  }
  return rep;
}

}  // namespace sgc
