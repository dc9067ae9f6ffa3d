#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "horocone/equisim.hpp"

using namespace horocone::equisim;

TEST_SUITE_BEGIN("equisim");

TEST_CASE("fundamental domain reduction") {
    auto p = reduce_point({0.0, 1.0, false});  // i is already reduced
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(1.0));
    CHECK(p.reduced);

    auto pts = sample_horocycle_sl2(1.0, 2);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].y == doctest::Approx(1.0));
    CHECK(std::fabs(pts[1].x) == doctest::Approx(0.5));
    CHECK(pts[1].y == doctest::Approx(1.0));
    for (const auto& q : pts) CHECK(q.reduced);

    // idempotence: reducing a reduced point changes nothing
    for (double y0 : {0.8, 0.05, 0.001}) {
        auto cloud = sample_horocycle_sl2(y0, 50);
        for (const auto& q : cloud) {
            CHECK(q.reduced);
            auto again = reduce_point(q);
            CHECK(again.x == doctest::Approx(q.x).epsilon(1e-9));
            CHECK(again.y == doctest::Approx(q.y).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(reduce_point({0.0, -1.0, false}), std::invalid_argument);
}

TEST_CASE("cusp mass basics") {
    std::vector<HPoint> at_i(10, HPoint{0.0, 1.0, true});
    CHECK(cusp_mass(at_i, 2.0) == 0.0);
    CHECK_THROWS_AS(cusp_mass(at_i, 0.5), std::invalid_argument);
    CHECK(cusp_mass_oracle(2.0) == doctest::Approx(3.0 / M_PI / 2.0));
}

TEST_CASE("cusp mass approaches the area prediction, and halves with h") {
    auto pts = sample_horocycle_sl2(std::exp(-10.0), 20000);
    double m2 = cusp_mass(pts, 2.0);
    CHECK(m2 == doctest::Approx(cusp_mass_oracle(2.0)).epsilon(0.05));
    double m4 = cusp_mass(pts, 4.0);
    CHECK(m4 == doctest::Approx(0.5 * m2).epsilon(0.15));
}

TEST_CASE("lattice reduction on Z^3 and a skewed basis") {
    Mat3 id = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    auto s = make_lattice_sample(id);
    CHECK(s.lambda1 == doctest::Approx(1.0));
    CHECK(escape_fraction({s}, 0.5) == 0.0);
    auto ms = siegel_statistic({s}, 1.1);
    CHECK(ms.mean == doctest::Approx(6.0));  // the six unit vectors

    // lambda1 is a lattice invariant: re-randomize the basis over SL3(Z)
    Mat3 skew = {Vec3{1, 0.5, 0.25}, Vec3{0, 1, 0.75}, Vec3{0, 0, 1}};
    double l1 = make_lattice_sample(skew).lambda1;
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> sign(0, 1);
    Mat3 b = skew;
    for (int step = 0; step < 60; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        int c = sign(rng) ? 1 : -1;  // row_i += c * row_j is unimodular
        for (int k = 0; k < 3; ++k) b[i][k] += c * b[j][k];
    }
    CHECK(make_lattice_sample(b).lambda1 == doctest::Approx(l1).epsilon(1e-9));
}

TEST_CASE("translated lattice sampling: determinism and partitioning") {
    Vec3 theta = {1.0, 0.0, -1.0};
    auto a = sample_translate_lattices_sl3(theta, 2.0, 64, 5, 1);
    auto b = sample_translate_lattices_sl3(theta, 2.0, 64, 5, 1);
    auto c = sample_translate_lattices_sl3(theta, 2.0, 64, 5, 3);
    REQUIRE(a.size() == 64);
    for (size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].lambda1 == b[k].lambda1);
        CHECK(a[k].lambda1 == c[k].lambda1);  // jobs never change the stream
    }
    CHECK_THROWS_AS(sample_translate_lattices_sl3({1.0, 0.0, 0.0}, 1.0, 4, 1),
                    std::invalid_argument);
}

TEST_CASE("unit translate t = 0 keeps the covolume and determinant") {
    auto samples = sample_translate_lattices_sl3({1.0, 0.0, -1.0}, 0.0, 32, 11);
    for (const auto& s : samples) {
        // determinant of the basis is 1 (unipotent times identity)
        const auto& m = s.basis;
        double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        CHECK(std::fabs(std::fabs(det) - 1.0) < 1e-9);
        CHECK(s.lambda1 > 0.0);
        CHECK(s.lambda1 <= 1.0 + 1e-12);  // e_1-ish short vector of the unipotent
    }
}

TEST_CASE("diverging ray develops short vectors; Haar ray does not") {
    Vec3 diverge = {-1.0, 1.0, 0.0};  // (lambda_1, theta) < 0
    auto dsamp = sample_translate_lattices_sl3(diverge, 8.0, 200, 7);
    CHECK(escape_fraction(dsamp, 0.1) > 0.9);

    Vec3 haar = {1.0, 0.0, -1.0};
    double prev = 1.0;
    for (double t : {5.0, 10.0, 15.0}) {
        auto hsamp = sample_translate_lattices_sl3(haar, t, 400, 7);
        double esc = escape_fraction(hsamp, 0.1);
        CHECK(esc < 0.2);
        prev = esc;
    }
    (void)prev;
}

TEST_CASE("siegel statistic input validation") {
    Mat3 id = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    auto s = make_lattice_sample(id);
    CHECK_THROWS_AS(siegel_statistic({s}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(siegel_statistic({s}, 1e5), std::invalid_argument);
    CHECK_THROWS_AS(escape_fraction({s}, 2.0), std::invalid_argument);
}

TEST_SUITE_END();
