#include "horocone/asymptotics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace horocone::asym {

namespace {

constexpr double kBesselCrossover = 15.0;

double bessel_series(int nu, double x) {
    // I_nu(x) = (x/2)^nu sum_k (x^2/4)^k / (k! (k+nu)!)
    double q = x * x / 4.0;
    double term = nu == 0 ? 1.0 : x / 2.0;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (double(k) * double(k + nu));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

double bessel_asymptotic(int nu, double x) {
    // I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k,
    // a_k = prod_{j<k} (mu - (2j+1)^2) / (k! 8^k), mu = 4 nu^2
    double mu = 4.0 * nu * nu;
    double sum = 1.0, term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        double odd = 2.0 * k - 1.0;
        double next = term * -(mu - odd * odd) / (8.0 * k * x);
        if (std::fabs(next) >= std::fabs(term)) break;  // optimal truncation
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

}  // namespace

double bessel_i0(double x) {
    x = std::fabs(x);
    return x < kBesselCrossover ? bessel_series(0, x) : bessel_asymptotic(0, x);
}

double bessel_i1(double x) {
    double s = x < 0 ? -1.0 : 1.0;
    x = std::fabs(x);
    return s * (x < kBesselCrossover ? bessel_series(1, x) : bessel_asymptotic(1, x));
}

double log_g_m(int m, double x) {
    if (m < -1) throw std::domain_error("g_m needs m >= -1");
    if (!(x > 0)) throw std::domain_error("g_m needs x > 0");
    // log of sum_k x^{2k}/(2k)! * B(k + 1/2, m/2 + 1); every term is
    // positive, so a streaming log-sum-exp is exact to roundoff
    const double lx = std::log(x);
    const double la = std::lgamma(m / 2.0 + 1.0);
    double best = -HUGE_VAL, acc = 0.0;
    const int kmax = int(x) + 80;
    for (int k = 0; k <= kmax; ++k) {
        double lt = 2.0 * k * lx - std::lgamma(2.0 * k + 1.0) +
                    std::lgamma(k + 0.5) + la - std::lgamma(k + m / 2.0 + 1.5);
        if (lt > best) {
            acc = acc * std::exp(best - lt) + 1.0;
            best = lt;
        } else {
            acc += std::exp(lt - best);
            if (2.0 * k > x && lt < best - 45.0) break;
        }
    }
    return best + std::log(acc);
}

double g_m(int m, double x) { return std::exp(log_g_m(m, x)); }

BallIntegral ball_exponential_integral(const std::vector<double>& v0, int n, double R) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (int(v0.size()) != n) throw std::invalid_argument("v0 has wrong dimension");
    if (!(R > 0)) throw std::invalid_argument("radius must be positive");
    double nrm2 = 0;
    for (double v : v0) nrm2 += v * v;
    double nrm = std::sqrt(nrm2);
    if (nrm == 0) throw std::invalid_argument("v0 must be nonzero");

    BallIntegral out;
    out.n = n;
    out.v0_norm = nrm;
    out.R = R;
    double x = nrm * R;
    double log_nu = (n - 1) / 2.0 * std::log(M_PI) - std::lgamma((n + 1) / 2.0);
    out.log_exact = log_nu + n * std::log(R) + log_g_m(n - 1, x);
    out.log_asymptote = (n - 1) / 2.0 * std::log(2.0 * M_PI * R / nrm) + x - std::log(nrm);
    out.exact_value = std::exp(out.log_exact);
    out.asymptote = std::exp(out.log_asymptote);
    out.ratio = std::exp(out.log_exact - out.log_asymptote);
    return out;
}

namespace {

// trapezoid over x_i with the innermost variable integrated in closed form
double grid_rec(const std::vector<int>& m, const std::vector<int>& c,
                const std::vector<double>& y, size_t i, double budget, int N) {
    double lo = y[i], hi = budget / c[i];
    if (hi <= lo) return 0.0;
    if (i + 1 == m.size()) return (std::exp(m[i] * hi) - std::exp(m[i] * lo)) / m[i];
    double h = (hi - lo) / N;
    double sum = 0.0;
    for (int k = 0; k <= N; ++k) {
        double xk = lo + k * h;
        double f = std::exp(m[i] * xk) * grid_rec(m, c, y, i + 1, budget - c[i] * xk, N);
        sum += (k == 0 || k == N) ? 0.5 * f : f;
    }
    return sum * h;
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RegionEstimate cone_region_estimate(const std::vector<int>& m, const std::vector<int>& c,
                                    const std::vector<double>& y, double T,
                                    RegionMode mode, long samples, std::uint64_t seed,
                                    int jobs) {
    const size_t d = m.size();
    if (c.size() != d || y.size() != d || d == 0)
        throw std::invalid_argument("m, c, y must have equal positive length");
    for (size_t i = 0; i < d; ++i)
        if (m[i] < 1 || c[i] < 1)
            throw std::invalid_argument("all coefficients must be >= 1");

    RegionEstimate out;
    out.m = m;
    out.c = c;
    out.y = y;
    out.T = T;
    out.mode = mode;
    // predicted shape: a = max m_a/c_a, b = number of maximizers (exact
    // fraction comparison so ties are detected without float fuzz)
    int bi = 0, bc = 1;
    for (size_t i = 0; i < d; ++i) {
        long lhs = long(m[i]) * bc, rhs = long(bi) * c[i];
        if (lhs > rhs) { bi = m[i]; bc = c[i]; out.b_pred = 1; }
        else if (lhs == rhs) ++out.b_pred;
    }
    out.a_pred = double(bi) / bc;

    if (!(T > 1)) return out;  // empty region
    const double L = std::log(T);
    double slack = L;
    for (size_t i = 0; i < d; ++i) slack -= c[i] * y[i];
    if (slack <= 0) return out;

    if (mode == RegionMode::Grid) {
        double prev = grid_rec(m, c, y, 0, L, 64);
        for (int N = 128; N <= 16384; N *= 2) {
            double cur = grid_rec(m, c, y, 0, L, N);
            if (std::fabs(cur - prev) <= 1e-4 * std::fabs(cur)) { prev = cur; break; }
            prev = cur;
        }
        out.value = prev;
        return out;
    }

    // importance sampling: x_i ~ density m_i e^{m_i x} on [y_i, hi_i], where
    // hi_i is the largest feasible coordinate; weight = prod Z_i times the
    // indicator of the budget constraint
    std::vector<double> hi(d);
    double logW = 0.0;
    for (size_t i = 0; i < d; ++i) {
        double rest = L;
        for (size_t j = 0; j < d; ++j)
            if (j != i) rest -= c[j] * y[j];
        hi[i] = rest / c[i];
        logW += m[i] * hi[i] + std::log1p(-std::exp(m[i] * (y[i] - hi[i]))) -
                std::log(double(m[i]));
    }

    if (jobs < 1) jobs = 1;
    std::vector<long> hits(jobs, 0), quota(jobs, samples / jobs);
    quota[0] += samples % jobs;
    auto worker = [&](int w) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (w + 1))));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        long h = 0;
        for (long s = 0; s < quota[w]; ++s) {
            double spend = 0.0;
            for (size_t i = 0; i < d; ++i) {
                double u = unif(rng);
                double xi = hi[i] +
                            std::log(u + (1.0 - u) * std::exp(m[i] * (y[i] - hi[i]))) /
                                m[i];
                spend += c[i] * xi;
            }
            if (spend <= L) ++h;
        }
        hits[w] = h;
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    long total = 0;
    for (long h : hits) total += h;
    double p = double(total) / double(samples);
    double W = std::exp(logW);
    out.value = W * p;
    out.stderr_est = W * std::sqrt(p * (1.0 - p) / double(samples));
    return out;
}

}  // namespace horocone::asym
