#include <stdexcept>
#include <random>

#include "doctest.h"
#include "horocone/regimes.hpp"

using namespace horocone;
using namespace horocone::regimes;

namespace {

CochVec coch(std::initializer_list<Rat> xs) { return CochVec{RatVec(xs)}; }

}  // namespace

TEST_SUITE_BEGIN("regimes");

TEST_CASE("SL3 rules: coroot rays converge to the matching parabolic") {
    auto d = rootsys::build_root_datum("A2");
    for (int i = 0; i < 2; ++i) {
        CochVec theta{d.coroot(d.simple_roots()[i])};
        auto v = classify_ray(d, {}, theta);
        CHECK(v.kind == VerdictKind::ConvergesTo);
        CHECK(v.F.subset == std::set<int>{i});
    }
    // any theta with (lambda_1, theta) < 0 diverges
    CochVec neg{rv_scale(Rat(-1), d.coroot(d.simple_roots()[0]))};
    CHECK(classify_ray(d, {}, neg).kind == VerdictKind::Diverges);
}

TEST_CASE("SL5 example: Haar with witnesses (6,13,1,10)") {
    auto d = rootsys::build_root_datum("A4");
    auto v = classify_ray(d, {}, coch({Rat(6), Rat(7), Rat(-12), Rat(9), Rat(-10)}));
    CHECK(v.kind == VerdictKind::Haar);
    CHECK(v.pairings.at(0) == Rat(6));
    CHECK(v.pairings.at(1) == Rat(13));
    CHECK(v.pairings.at(2) == Rat(1));
    CHECK(v.pairings.at(3) == Rat(10));
    CHECK(v.cone_position == ConePosition::DualConeInterior);
    CHECK(!v.chamber_violations.empty());  // inside the dual cone, outside the chamber
}

TEST_CASE("input validation") {
    auto d = rootsys::build_root_datum("A2");
    CHECK_THROWS_AS(classify_ray(d, {}, coch({Rat(1), Rat(0)})), std::invalid_argument);
    CHECK_THROWS_AS(classify_ray(d, {}, coch({Rat(0), Rat(0), Rat(0)})),
                    std::invalid_argument);
}

TEST_CASE("scaling invariance and monotonicity in E") {
    auto d = rootsys::build_root_datum("A3");
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        RatVec th(4);
        for (auto& x : th) x = Rat(coef(rng));
        if (rv_is_zero(th)) continue;
        CochVec theta{th};
        auto v1 = classify_ray(d, {}, theta);
        auto v2 = classify_ray(d, {}, CochVec{rv_scale(Rat(7, 3), th)});
        CHECK(v1.kind == v2.kind);
        CHECK(v1.F.subset == v2.F.subset);
        // consistency: all pairings positive <=> dual cone interior
        bool all_pos = true;
        for (const auto& [a, p] : v1.pairings)
            if (!(p > Rat(0))) all_pos = false;
        CHECK(all_pos == (v1.cone_position == ConePosition::DualConeInterior ||
                          v1.cone_position == ConePosition::WeylChamberInterior));
        if (v1.kind == VerdictKind::Diverges) continue;
        auto v3 = classify_ray(d, {{0, 2}}, theta);
        if (v3.kind != VerdictKind::Diverges) {
            for (int a : v1.F.subset) CHECK(v3.F.subset.count(a) == 1);
        }
    }
}

TEST_CASE("classify_sequence matches the theorem hypotheses literally") {
    auto d = rootsys::build_root_datum("A2");
    SequenceBehavior all_inf{{{0, Behavior::ToInfinity}, {1, Behavior::ToInfinity}}};
    CHECK(classify_sequence(d, {}, all_inf).kind == VerdictKind::Haar);

    SequenceBehavior zero{{{0, Behavior::ToZero}, {1, Behavior::ToInfinity}}};
    CHECK(classify_sequence(d, {}, zero).kind == VerdictKind::Diverges);

    SequenceBehavior osc{{{0, Behavior::BoundedBelowAwayFromZero}, {1, Behavior::One}}};
    CHECK(classify_sequence(d, {}, osc).kind == VerdictKind::NotCovered);

    SequenceBehavior part{{{0, Behavior::ToInfinity}, {1, Behavior::One}}};
    auto v = classify_sequence(d, {}, part);
    CHECK(v.kind == VerdictKind::ConvergesTo);
    CHECK(v.F.subset == std::set<int>{0});

    // profile must cover exactly the complement of E
    CHECK_THROWS_AS(classify_sequence(d, {{0}}, all_inf), std::invalid_argument);
}

TEST_CASE("ray-induced behavior profile agrees with classify_ray") {
    auto d = rootsys::build_root_datum("A3");
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        RatVec th(4);
        for (auto& x : th) x = Rat(coef(rng));
        if (rv_is_zero(th)) continue;
        auto vr = classify_ray(d, {}, CochVec{th});
        SequenceBehavior b;
        for (int a = 0; a < d.rank(); ++a) {
            Rat p = vr.pairings.at(a);
            b.per_root[a] = p > Rat(0) ? Behavior::ToInfinity
                                       : (p.is_zero() ? Behavior::One : Behavior::ToZero);
        }
        auto vs = classify_sequence(d, {}, b);
        CHECK(vr.kind == vs.kind);
        if (vr.kind != VerdictKind::Diverges) CHECK(vr.F.subset == vs.F.subset);
    }
}

TEST_CASE("abs_cont_check: A3 Levi-fixed root makes condition (a) fail") {
    auto d = rootsys::build_root_datum("A3");
    CochVec theta{d.coroot(d.simple_roots()[0])};
    auto ck = abs_cont_check(d, {}, {{0}}, theta);
    CHECK(ck.cond_a.status == CheckStatus::Fail);  // entry (3,4) is fixed by the Levi
    CHECK(ck.cond_b.status == CheckStatus::NotCheckable);
}

TEST_CASE("abs_cont_check: A2 full F with a positive ray passes") {
    auto d = rootsys::build_root_datum("A2");
    CochVec theta{RatVec{Rat(1), Rat(0), Rat(-1)}};
    auto ck = abs_cont_check(d, {}, {{0, 1}}, theta);
    CHECK(ck.cond_a.status == CheckStatus::Pass);
    CHECK(ck.cond_c.status == CheckStatus::Pass);
    CHECK(ck.cond_d.status == CheckStatus::Pass);
    // root-sum oracle: sum over Phi+ of (phi, theta) = 1 + 1 + 2 = 4
    CHECK(ck.cond_d.witness.find("sum=4") != std::string::npos);
}

TEST_CASE("abs_cont_check: F = E is vacuous") {
    auto d = rootsys::build_root_datum("A2");
    CochVec theta{RatVec{Rat(1), Rat(-1), Rat(0)}};
    auto ck = abs_cont_check(d, {}, {}, theta);
    CHECK(ck.cond_c.status == CheckStatus::VacuousPass);
    CHECK(ck.cond_d.status == CheckStatus::VacuousPass);
}

TEST_SUITE_END();
