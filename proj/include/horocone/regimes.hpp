#pragma once

// Decision procedure for the limiting behavior of translated horospherical
// measures: classify a translation ray or an abstract sequence-behavior
// profile into Diverges / ConvergesTo(F) / Haar / NotCovered, plus the
// checkable absolute-continuity conditions.

#include <map>
#include <string>

#include "horocone/rootsys.hpp"

namespace horocone::regimes {

using rootsys::CharVec;
using rootsys::CochVec;
using rootsys::ParabolicIndex;
using rootsys::RootDatum;

enum class Behavior { ToZero, One, BoundedBelowAwayFromZero, ToInfinity };

// One entry per simple root outside E.
struct SequenceBehavior {
    std::map<int, Behavior> per_root;
};

enum class VerdictKind { Diverges, ConvergesTo, Haar, NotCovered };

enum class ConePosition {
    WeylChamberInterior,
    DualConeInterior,
    DualConeBoundary,
    OutsideDualCone,
    Unknown,  // sequence input carries no cochar
};

struct RegimeVerdict {
    VerdictKind kind = VerdictKind::NotCovered;
    ParabolicIndex F;                 // meaningful for ConvergesTo / Haar
    std::map<int, Rat> pairings;      // alpha index -> (lambda_alpha, theta)
    std::map<int, Behavior> behaviors;  // for sequence input
    ConePosition cone_position = ConePosition::Unknown;
    std::set<int> boundary_facets;      // alphas with (lambda_alpha, theta) = 0
    std::set<int> chamber_violations;   // alphas with (alpha, theta) < 0
};

RegimeVerdict classify_ray(const RootDatum& datum, const ParabolicIndex& E,
                           const CochVec& theta);

RegimeVerdict classify_sequence(const RootDatum& datum, const ParabolicIndex& E,
                                const SequenceBehavior& b);

enum class CheckStatus { Pass, Fail, VacuousPass, NotCheckable };

struct ConditionReport {
    CheckStatus status = CheckStatus::NotCheckable;
    std::string witness;  // human-readable justification
};

struct AbsContChecklist {
    ConditionReport cond_a;  // Levi acts without fixed vectors on Lie R_u(Q_F)
    ConditionReport cond_b;  // compact-factor invariance: not root-datum decidable
    ConditionReport cond_c;  // pairings vanish off F, positive on F \ E
    ConditionReport cond_d;  // per F-component, sum of (phi, theta) > 0
};

AbsContChecklist abs_cont_check(const RootDatum& datum, const ParabolicIndex& E,
                                const ParabolicIndex& F, const CochVec& theta);

std::string to_string(VerdictKind k);
std::string to_string(ConePosition c);
std::string to_string(CheckStatus s);
std::string to_string(Behavior b);

}  // namespace horocone::regimes
