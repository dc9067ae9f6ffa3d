#include "horocone/equisim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace horocone::equisim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

HPoint reduce_point(HPoint p) {
    if (!(p.y > 0)) throw std::invalid_argument("point must be in the upper half-plane");
    for (int iter = 0; iter < 10000; ++iter) {
        p.x -= std::round(p.x);
        double n2 = p.x * p.x + p.y * p.y;
        if (n2 >= 1.0 - 1e-15) break;
        p.x = -p.x / n2;  // z -> -1/z
        p.y = p.y / n2;
    }
    p.reduced = std::fabs(p.x) <= 0.5 + 1e-12 &&
                p.x * p.x + p.y * p.y >= 1.0 - 1e-12;
    return p;
}

std::vector<HPoint> sample_horocycle_sl2(double y0, long N) {
    if (!(y0 > 0)) throw std::invalid_argument("y0 must be positive");
    if (N < 1) throw std::invalid_argument("need at least one sample");
    std::vector<HPoint> out;
    out.reserve(N);
    for (long k = 0; k < N; ++k)
        out.push_back(reduce_point({double(k) / double(N), y0, false}));
    return out;
}

double cusp_mass(const std::vector<HPoint>& points, double h) {
    if (h < 1) throw std::invalid_argument("cusp height must be >= 1");
    if (points.empty()) throw std::invalid_argument("no points");
    long hits = 0;
    for (const auto& p : points)
        if (p.y > h) ++hits;
    return double(hits) / double(points.size());
}

double cusp_mass_oracle(double h) { return (3.0 / kPi) / h; }

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 sub_mul(const Vec3& a, double m, const Vec3& b) {
    return {a[0] - m * b[0], a[1] - m * b[1], a[2] - m * b[2]};
}

double norm2(const Vec3& a) { return dot(a, a); }

void sort_rows(Mat3& B) {
    if (norm2(B[0]) > norm2(B[1])) std::swap(B[0], B[1]);
    if (norm2(B[1]) > norm2(B[2])) std::swap(B[1], B[2]);
    if (norm2(B[0]) > norm2(B[1])) std::swap(B[0], B[1]);
}

}  // namespace

Mat3 reduce_basis_3d(const Mat3& basis) {
    Mat3 B = basis;
    for (int iter = 0; iter < 500; ++iter) {
        sort_rows(B);
        bool changed = false;
        // pairwise size reduction
        for (int i = 1; i < 3; ++i)
            for (int j = 0; j < i; ++j) {
                double mu = std::round(dot(B[i], B[j]) / norm2(B[j]));
                if (mu != 0) {
                    B[i] = sub_mul(B[i], mu, B[j]);
                    changed = true;
                }
            }
        // greedy step: replace b2 by its remainder against the closest vector
        // of the (b0, b1) plane lattice
        double g00 = norm2(B[0]), g01 = dot(B[0], B[1]), g11 = norm2(B[1]);
        double det = g00 * g11 - g01 * g01;
        if (det > 0) {
            double r0 = dot(B[2], B[0]), r1 = dot(B[2], B[1]);
            double a = (r0 * g11 - r1 * g01) / det;
            double b = (g00 * r1 - g01 * r0) / det;
            Vec3 best = B[2];
            double bn = norm2(best);
            for (int da = -1; da <= 1; ++da)
                for (int db = -1; db <= 1; ++db) {
                    double m1 = std::round(a) + da, m2 = std::round(b) + db;
                    Vec3 cand = sub_mul(sub_mul(B[2], m1, B[0]), m2, B[1]);
                    if (norm2(cand) < bn - 1e-15 * bn) {
                        best = cand;
                        bn = norm2(cand);
                    }
                }
            if (norm2(best) < norm2(B[2]) * (1.0 - 1e-12)) {
                B[2] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }
    sort_rows(B);
    return B;
}

LatticeSample make_lattice_sample(const Mat3& basis) {
    LatticeSample s;
    s.basis = basis;
    s.reduced_basis = reduce_basis_3d(basis);
    s.lambda1 = std::sqrt(norm2(s.reduced_basis[0]));
    return s;
}

std::vector<LatticeSample> sample_translate_lattices_sl3(const Vec3& theta, double t,
                                                         long N, std::uint64_t seed,
                                                         int jobs) {
    if (std::fabs(theta[0] + theta[1] + theta[2]) > 1e-9)
        throw std::invalid_argument("cocharacter must be trace-zero");
    if (N < 1) throw std::invalid_argument("need at least one sample");
    Vec3 d = {std::exp(t * theta[0]), std::exp(t * theta[1]), std::exp(t * theta[2])};
    std::vector<LatticeSample> out(N);
    auto fill = [&](long lo, long hi) {
        for (long k = lo; k < hi; ++k) {
            std::mt19937_64 rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(k + 1))));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double u01 = unif(rng), u02 = unif(rng), u12 = unif(rng);
            // rows are the columns of diag(d) * [[1,u01,u02],[0,1,u12],[0,0,1]]
            Mat3 B = {Vec3{d[0], 0, 0},
                      Vec3{d[0] * u01, d[1], 0},
                      Vec3{d[0] * u02, d[1] * u12, d[2]}};
            out[k] = make_lattice_sample(B);
        }
    };
    if (jobs <= 1) {
        fill(0, N);
    } else {
        std::vector<std::thread> pool;
        long chunk = (N + jobs - 1) / jobs;
        for (int w = 0; w < jobs; ++w) {
            long lo = w * chunk, hi = std::min(N, lo + chunk);
            if (lo < hi) pool.emplace_back(fill, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

double escape_fraction(const std::vector<LatticeSample>& samples, double eps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("need 0 < eps < 1");
    if (samples.empty()) throw std::invalid_argument("no samples");
    long hits = 0;
    for (const auto& s : samples)
        if (s.lambda1 < eps) ++hits;
    return double(hits) / double(samples.size());
}

double ball_volume_3d(double r) { return 4.0 / 3.0 * kPi * r * r * r; }

namespace {

// count nonzero lattice vectors of norm <= r by bounded enumeration over the
// Gram-Schmidt coordinates of the reduced basis
long count_in_ball(const Mat3& B, double r) {
    Vec3 s0 = B[0];
    double n0 = norm2(s0);
    double mu10 = dot(B[1], s0) / n0;
    Vec3 s1 = sub_mul(B[1], mu10, s0);
    double n1 = norm2(s1);
    double mu20 = dot(B[2], s0) / n0;
    double mu21 = dot(B[2], s1) / n1;
    Vec3 s2 = sub_mul(sub_mul(B[2], mu20, s0), mu21, s1);
    double n2 = norm2(s2);
    double r2 = r * r;
    long B2 = long(std::sqrt(r2 / n2)) + 1;
    double work = (2.0 * B2 + 1) * (2.0 * std::sqrt(r2 / n1) + 1) *
                  (2.0 * std::sqrt(r2 / n0) + 1);
    if (work > 2e7) throw std::invalid_argument("radius too large for enumeration");
    long count = 0;
    for (long x2 = -B2; x2 <= B2; ++x2) {
        double rem2 = r2 - x2 * x2 * n2;
        if (rem2 < 0) continue;
        double c1 = -x2 * mu21;
        long lo1 = long(std::ceil(c1 - std::sqrt(rem2 / n1) - 1e-9));
        long hi1 = long(std::floor(c1 + std::sqrt(rem2 / n1) + 1e-9));
        for (long x1 = lo1; x1 <= hi1; ++x1) {
            double rem1 = rem2 - (x1 - c1) * (x1 - c1) * n1;
            if (rem1 < 0) continue;
            double c0 = -x2 * mu20 - x1 * mu10;
            long lo0 = long(std::ceil(c0 - std::sqrt(rem1 / n0) - 1e-9));
            long hi0 = long(std::floor(c0 + std::sqrt(rem1 / n0) + 1e-9));
            for (long x0 = lo0; x0 <= hi0; ++x0) {
                if (x0 == 0 && x1 == 0 && x2 == 0) continue;
                Vec3 v = {x0 * B[0][0] + x1 * B[1][0] + x2 * B[2][0],
                          x0 * B[0][1] + x1 * B[1][1] + x2 * B[2][1],
                          x0 * B[0][2] + x1 * B[1][2] + x2 * B[2][2]};
                if (norm2(v) <= r2) ++count;
            }
        }
    }
    return count;
}

}  // namespace

MeanStderr siegel_statistic(const std::vector<LatticeSample>& samples, double r) {
    if (!(r > 0)) throw std::invalid_argument("radius must be positive");
    if (samples.empty()) throw std::invalid_argument("no samples");
    double sum = 0, sumsq = 0;
    for (const auto& s : samples) {
        double c = double(count_in_ball(s.reduced_basis, r));
        sum += c;
        sumsq += c * c;
    }
    double n = double(samples.size());
    MeanStderr out;
    out.mean = sum / n;
    double var = std::max(0.0, sumsq / n - out.mean * out.mean);
    out.stderr_est = std::sqrt(var / n);
    return out;
}

}  // namespace horocone::equisim
