#pragma once

// Exponential-integral asymptotics: the g_m family with modified-Bessel base
// cases, ball integrals of exp(<v0, y>) with their leading asymptote, and
// numeric estimates of exponential integrals over shifted simplicial cones.

#include <cstdint>
#include <string>
#include <vector>

namespace horocone::asym {

// Modified Bessel functions of the first kind, order 0 and 1. Power series
// below x = 15, large-x asymptotic expansion above; both branches are
// cross-validated against quadrature in the tests.
double bessel_i0(double x);
double bessel_i1(double x);

// g_m(x) = integral_{-1}^{1} (1 - s^2)^{m/2} e^{xs} ds, m >= -1, x > 0.
//
// Evaluated by the all-positive series
//   g_m(x) = sum_k x^{2k}/(2k)! * B(k + 1/2, m/2 + 1),
// which is immune to the catastrophic cancellation of the upward recursion
//   x^2 g_m = -m(m-1) g_{m-2} + m(m-2) g_{m-4}
// at small x. The recursion and the closed forms g_0 = 2 sinh(x)/x,
// g_1 = (pi/x) I_1(x), g_{-1} = pi I_0(x) are kept as test oracles.
double g_m(int m, double x);
double log_g_m(int m, double x);  // overflow-safe variant

struct BallIntegral {
    int n = 0;
    double v0_norm = 0;
    double R = 0;
    double exact_value = 0;  // exp(log_exact); +inf when out of double range
    double asymptote = 0;
    double ratio = 0;        // exact/asymptote, computed in log space
    double log_exact = 0;
    double log_asymptote = 0;
};

// integral over the Euclidean R-ball in R^n of exp(<v0, y>).
// exact  = nu_{n-1} R^n g_{n-1}(|v0| R), nu_{n-1} = unit (n-1)-ball volume;
// asymptote = (2 pi R / |v0|)^{(n-1)/2} e^{|v0| R} / |v0|.
// (The source chain for the asymptote omits a 1/|v0| slicing Jacobian; the
// form above is the genuine leading term of the integral, so ratio -> 1 for
// every |v0|, and at |v0| = 1 it coincides with the quoted formula.)
BallIntegral ball_exponential_integral(const std::vector<double>& v0, int n, double R);

enum class RegionMode { Grid, MonteCarlo };

struct RegionEstimate {
    std::vector<int> m, c;
    std::vector<double> y;
    double T = 0;
    double value = 0;
    double stderr_est = 0;  // 0 in grid mode
    double a_pred = 0;      // max m_a / c_a
    int b_pred = 0;         // number of maximizers
    RegionMode mode = RegionMode::Grid;
};

// integral over {x >= y componentwise, sum c_a x_a <= log T} of
// exp(sum m_a x_a); grows like C T^a (log T)^{b-1}.
RegionEstimate cone_region_estimate(const std::vector<int>& m, const std::vector<int>& c,
                                    const std::vector<double>& y, double T,
                                    RegionMode mode, long samples = 200000,
                                    std::uint64_t seed = 1, int jobs = 1);

}  // namespace horocone::asym
