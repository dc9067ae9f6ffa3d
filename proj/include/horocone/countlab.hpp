#pragma once

// Desk-scale counting: exponent prediction for flag-variety point counts,
// exhaustive enumeration of projective points / flags / horocycle lifts,
// log-space growth fitting, and the dyadic tail check for the height series.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "horocone/rootsys.hpp"

namespace horocone::countlab {

using rootsys::ParabolicIndex;
using rootsys::RootDatum;

struct LineBundleChar {
    ParabolicIndex E;
    std::map<int, int> c;  // alpha (not in E) -> positive integer coefficient
};

struct CountingExponents {
    Rat a;                    // max over alpha outside E of m_alpha / c_alpha
    ParabolicIndex F_chi;     // E plus the maximizers
    int b = 0;                // |F_chi \ E|: the log-power is b - 1
    std::map<int, Rat> m;     // the rho' coefficients used
};

CountingExponents counting_exponents(const RootDatum& datum, const LineBundleChar& bundle);

struct CountPoint {
    double T = 0;
    std::uint64_t N = 0;
};

struct CountSeries {
    std::vector<CountPoint> points;
};

// primitive vectors in Z^n of Euclidean norm <= T, modulo +-1
enum class LoopOrder { Forward, Reversed };  // independent enumeration oracle
std::uint64_t count_projective(int n, double T, LoopOrder order = LoopOrder::Forward);
CountSeries count_projective_series(int n, const std::vector<double>& thresholds);

// flags in Q^3 as pairs of primitive v, w in Z^3 mod +-, v.w = 0, with
// H(v)^c1 H(w)^c2 <= T. VOuter/WOuter are brute-force oracles; Split cuts the
// outer loop at height sqrt(T) on both sides and is the fast path.
enum class FlagStrategy { VOuter, WOuter, Split };
std::uint64_t count_flags_sl3(int c1, int c2, double T,
                              FlagStrategy strategy = FlagStrategy::Split);
CountSeries count_flags_sl3_series(int c1, int c2, const std::vector<double>& thresholds,
                                   FlagStrategy strategy = FlagStrategy::Split);

// lifts of the closed horocycle {x + i} meeting the hyperbolic R-ball at i:
// the horizontal line plus the horocycles tangent at p/q of diameter 1/q^2;
// the distance condition reduces to p^2 + q^2 <= e^R
std::uint64_t count_horocycle_lifts(double R);

enum class FitModel { Power, PowerLog, Exponential };

struct FitResult {
    FitModel model = FitModel::Power;
    double logC = 0;
    double a = 0, a_err = 0;  // T-exponent (Power/PowerLog) or rate (Exponential)
    double b = 0, b_err = 0;  // log-power + 1 (PowerLog only)
};

// least squares in log coordinates; for PowerLog pass fixed_a to regress only
// the log-power, or NaN to fit both exponents jointly
FitResult fit_growth(const CountSeries& series, FitModel model,
                     double fixed_a = std::nan(""));

struct XiShell {
    int n = 0;            // shell 2^n <= c^2 + d^2 < 2^{n+1}
    std::uint64_t count = 0;
    double mass = 0;      // sum of (c^2 + d^2)^{-s} over the shell
    double bound = 0;     // count * 2^{-s n}
    double cumulative = 0;
};

struct XiReport {
    double s = 0;
    bool divergence_expected = false;
    std::vector<XiShell> shells;
    double total = 0;
};

// partial sums of sum over coprime (c, d) mod +- of (c^2 + d^2)^{-s},
// organized in dyadic shells with |c|, |d| <= Q_max
XiReport xi_tail_check(double s, int Q_max);

}  // namespace horocone::countlab
