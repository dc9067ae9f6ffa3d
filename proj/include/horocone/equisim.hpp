#pragma once

// Monte-Carlo equidistribution laboratory: closed-horocycle sampling on the
// modular surface, translated unimodular lattices in dimension 3, and the
// statistics (cusp mass, escape fraction, Siegel point counts) used to probe
// the convergence / divergence regimes empirically.

#include <array>
#include <cstdint>
#include <vector>

namespace horocone::equisim {

struct HPoint {
    double x = 0, y = 1;
    bool reduced = false;  // lies in the standard fundamental domain
};

HPoint reduce_point(HPoint p);

// the N points k/N + i y0, k = 0..N-1, each reduced into the standard
// fundamental domain
std::vector<HPoint> sample_horocycle_sl2(double y0, long N);

// fraction of reduced points with Im > h; the Haar prediction is
// (3/pi)/h (cusp area 1/h over total area pi/3 -- an out-of-source oracle)
double cusp_mass(const std::vector<HPoint>& points, double h);
double cusp_mass_oracle(double h);  // (3/pi)/h

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // rows are basis vectors

struct LatticeSample {
    Mat3 basis{};          // determinant 1
    Mat3 reduced_basis{};  // greedy-reduced; first row is a shortest vector
    double lambda1 = 0;    // length of the shortest nonzero vector
};

// greedy reduction, iterated to a fixed point; attains the true shortest
// vector in dimension <= 3
Mat3 reduce_basis_3d(const Mat3& basis);

LatticeSample make_lattice_sample(const Mat3& basis);

// N samples of diag(e^{t th_0}, e^{t th_1}, e^{t th_2}) * u * Z^3 with u
// upper-triangular unipotent, entries uniform in [0,1)^3; sample k derives
// its generator state from (seed, k), so any partition over index ranges
// reproduces the single-thread stream exactly
std::vector<LatticeSample> sample_translate_lattices_sl3(const Vec3& theta, double t,
                                                         long N, std::uint64_t seed,
                                                         int jobs = 1);

// Mahler-criterion proxy: fraction of samples with lambda1 < eps
double escape_fraction(const std::vector<LatticeSample>& samples, double eps);

struct MeanStderr {
    double mean = 0;
    double stderr_est = 0;
};

// mean number of nonzero lattice vectors of norm <= r; the Haar reference is
// the ball volume (Siegel mean value, an out-of-source oracle)
MeanStderr siegel_statistic(const std::vector<LatticeSample>& samples, double r);
double ball_volume_3d(double r);

}  // namespace horocone::equisim
