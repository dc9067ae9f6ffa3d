#include "horocone/regimes.hpp"

#include <sstream>

namespace horocone::regimes {

namespace {

void check_parabolic(const RootDatum& datum, const ParabolicIndex& P) {
    for (int a : P.subset)
        if (a < 0 || a >= datum.rank())
            throw std::invalid_argument("parabolic index out of range");
}

}  // namespace

RegimeVerdict classify_ray(const RootDatum& datum, const ParabolicIndex& E,
                           const CochVec& theta) {
    check_parabolic(datum, E);
    if (int(theta.coords.size()) != datum.ambient_dim())
        throw std::invalid_argument("cocharacter dimension mismatch");
    if (rv_is_zero(theta.coords)) throw std::invalid_argument("cocharacter must be nonzero");

    RegimeVerdict v;
    bool lam_all_pos = true, lam_any_neg = false;
    bool alpha_all_pos = true;
    for (int a = 0; a < datum.rank(); ++a) {
        Rat p = datum.inner(datum.weights()[a], theta.coords);
        v.pairings[a] = p;
        if (p.sign() < 0) lam_any_neg = true;
        if (p.sign() <= 0) lam_all_pos = false;
        if (p.is_zero()) v.boundary_facets.insert(a);
        Rat q = datum.inner(datum.simple_roots()[a], theta.coords);
        if (q.sign() < 0) v.chamber_violations.insert(a);
        if (q.sign() <= 0) alpha_all_pos = false;
    }
    if (alpha_all_pos)
        v.cone_position = ConePosition::WeylChamberInterior;
    else if (lam_all_pos)
        v.cone_position = ConePosition::DualConeInterior;
    else if (!lam_any_neg)
        v.cone_position = ConePosition::DualConeBoundary;
    else
        v.cone_position = ConePosition::OutsideDualCone;

    v.F = E;
    for (int a = 0; a < datum.rank(); ++a) {
        if (E.contains(a)) continue;
        if (v.pairings[a].sign() < 0) {
            v.kind = VerdictKind::Diverges;
            return v;
        }
        if (v.pairings[a].sign() > 0) v.F.subset.insert(a);
    }
    v.kind = int(v.F.subset.size()) == datum.rank() ? VerdictKind::Haar
                                                    : VerdictKind::ConvergesTo;
    return v;
}

RegimeVerdict classify_sequence(const RootDatum& datum, const ParabolicIndex& E,
                                const SequenceBehavior& b) {
    check_parabolic(datum, E);
    for (int a = 0; a < datum.rank(); ++a) {
        bool present = b.per_root.count(a) != 0;
        if (E.contains(a) == present)
            throw std::invalid_argument("behavior profile must cover exactly the "
                                        "simple roots outside E");
    }
    RegimeVerdict v;
    v.behaviors = b.per_root;
    v.F = E;
    bool covered = true;
    for (const auto& [a, beh] : b.per_root) {
        if (beh == Behavior::ToZero) {
            v.kind = VerdictKind::Diverges;
            return v;
        }
        if (beh == Behavior::ToInfinity) v.F.subset.insert(a);
        if (beh == Behavior::BoundedBelowAwayFromZero) covered = false;
    }
    if (!covered) {
        v.kind = VerdictKind::NotCovered;
        return v;
    }
    v.kind = int(v.F.subset.size()) == datum.rank() ? VerdictKind::Haar
                                                    : VerdictKind::ConvergesTo;
    return v;
}

namespace {

// connected components of F under (alpha_i, alpha_j) != 0
std::vector<std::vector<int>> f_components(const RootDatum& datum,
                                           const ParabolicIndex& F) {
    std::vector<int> idx(F.subset.begin(), F.subset.end());
    std::map<int, int> comp;
    for (int a : idx) comp[a] = a;
    std::function<int(int)> find = [&](int a) {
        while (comp[a] != a) a = comp[a] = comp[comp[a]];
        return a;
    };
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (!datum.inner(datum.simple_roots()[idx[i]], datum.simple_roots()[idx[j]])
                     .is_zero())
                comp[find(idx[i])] = find(idx[j]);
    std::map<int, std::vector<int>> groups;
    for (int a : idx) groups[find(a)].push_back(a);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    return out;
}

bool support_inside(const rootsys::PositiveRoot& phi, const ParabolicIndex& F) {
    for (size_t i = 0; i < phi.simple_coords.size(); ++i)
        if (!phi.simple_coords[i].is_zero() && !F.contains(int(i))) return false;
    return true;
}

}  // namespace

AbsContChecklist abs_cont_check(const RootDatum& datum, const ParabolicIndex& E,
                                const ParabolicIndex& F, const CochVec& theta) {
    if (!datum.is_split())
        throw std::invalid_argument("abs_cont_check supports split data only");
    check_parabolic(datum, F);
    check_parabolic(datum, E);
    for (int a : E.subset)
        if (!F.contains(a)) throw std::invalid_argument("need E subset of F");
    if (int(theta.coords.size()) != datum.ambient_dim())
        throw std::invalid_argument("cocharacter dimension mismatch");

    AbsContChecklist out;
    out.cond_b = {CheckStatus::NotCheckable,
                  "compact-factor invariance is not decidable from root data"};

    // (a): no positive root outside span(F) may be orthogonal to every simple
    // root of F (such a root spans a weight space the derived Levi fixes)
    if (F.subset.empty()) {
        out.cond_a = {CheckStatus::VacuousPass, "F is empty: no derived Levi factors"};
    } else {
        out.cond_a = {CheckStatus::Pass, "every unstable root pairs with F"};
        for (const auto& phi : datum.positive_roots()) {
            if (support_inside(phi, F)) continue;
            bool orth = true;
            for (int a : F.subset)
                if (!datum.inner(phi.v, datum.simple_roots()[a]).is_zero()) {
                    orth = false;
                    break;
                }
            if (orth) {
                std::ostringstream w;
                w << "root with simple coordinates (";
                for (size_t i = 0; i < phi.simple_coords.size(); ++i)
                    w << (i ? "," : "") << phi.simple_coords[i].str();
                w << ") is orthogonal to all of F";
                out.cond_a = {CheckStatus::Fail, w.str()};
                break;
            }
        }
    }

    // (c): (lambda_alpha, theta) = 0 off F and > 0 on F \ E
    {
        std::vector<int> grow;
        for (int a : F.subset)
            if (!E.contains(a)) grow.push_back(a);
        if (grow.empty()) {
            out.cond_c = {CheckStatus::VacuousPass, "F = E: no translated directions"};
        } else {
            out.cond_c = {CheckStatus::Pass, ""};
            std::ostringstream w;
            for (int a = 0; a < datum.rank(); ++a) {
                Rat p = datum.inner(datum.weights()[a], theta.coords);
                bool ok = F.contains(a) ? (E.contains(a) || p.sign() > 0) : p.is_zero();
                w << (a ? ", " : "") << "p_" << a << "=" << p.str();
                if (!ok) out.cond_c.status = CheckStatus::Fail;
            }
            out.cond_c.witness = w.str();
        }
    }

    // (d): per irreducible F-component, sum over its positive roots of
    // mult * (phi, theta) > 0
    {
        auto comps = f_components(datum, F);
        if (comps.empty()) {
            out.cond_d = {CheckStatus::VacuousPass, "empty F-subsystem"};
        } else {
            out.cond_d = {CheckStatus::Pass, ""};
            std::ostringstream w;
            for (size_t j = 0; j < comps.size(); ++j) {
                ParabolicIndex J;
                J.subset.insert(comps[j].begin(), comps[j].end());
                Rat sum;
                for (const auto& phi : datum.positive_roots())
                    if (support_inside(phi, J))
                        sum += Rat(phi.mult) * datum.inner(phi.v, theta.coords);
                w << (j ? "; " : "") << "component " << j << " sum=" << sum.str();
                if (!(sum > Rat(0))) out.cond_d.status = CheckStatus::Fail;
            }
            out.cond_d.witness = w.str();
        }
    }
    return out;
}

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Diverges: return "Diverges";
        case VerdictKind::ConvergesTo: return "ConvergesTo";
        case VerdictKind::Haar: return "Haar";
        default: return "NotCovered";
    }
}

std::string to_string(ConePosition c) {
    switch (c) {
        case ConePosition::WeylChamberInterior: return "WeylChamberInterior";
        case ConePosition::DualConeInterior: return "DualConeInterior";
        case ConePosition::DualConeBoundary: return "DualConeBoundary";
        case ConePosition::OutsideDualCone: return "OutsideDualCone";
        default: return "Unknown";
    }
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::VacuousPass: return "vacuous-pass";
        default: return "not-checkable";
    }
}

std::string to_string(Behavior b) {
    switch (b) {
        case Behavior::ToZero: return "ToZero";
        case Behavior::One: return "One";
        case Behavior::BoundedBelowAwayFromZero: return "BoundedBelowAwayFromZero";
        default: return "ToInfinity";
    }
}

}  // namespace horocone::regimes
