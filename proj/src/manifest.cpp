#include "horocone/manifest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "horocone/asymptotics.hpp"
#include "horocone/countlab.hpp"
#include "horocone/equisim.hpp"
#include "horocone/regimes.hpp"
#include "horocone/rootsys.hpp"

namespace horocone::manifest {

namespace {

using nlohmann::json;

bool log_enabled() {
    const char* v = std::getenv("HOROCONE_LOG");
    return v && *v && std::string(v) != "0";
}

void log_line(const std::string& s) {
    if (log_enabled()) std::cerr << "[horocone] " << s << "\n";
}

RatVec parse_ratvec(const json& j) {
    RatVec v;
    for (const auto& e : j) {
        if (e.is_number_integer())
            v.push_back(Rat(e.get<std::int64_t>()));
        else
            v.push_back(Rat::parse(e.get<std::string>()));
    }
    return v;
}

json ratvec_json(const RatVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

rootsys::RootDatum datum_from(const json& m) {
    if (m.contains("data")) return rootsys::root_datum_from_json(m.at("data"));
    return rootsys::build_root_datum(m.at("type").get<std::string>());
}

rootsys::ParabolicIndex parabolic_from(const json& m, const char* key) {
    rootsys::ParabolicIndex P;
    if (m.contains(key))
        for (int a : m.at(key)) P.subset.insert(a);
    return P;
}

json verdict_json(const regimes::RegimeVerdict& v) {
    json out;
    out["kind"] = regimes::to_string(v.kind);
    out["F"] = json::array();
    if (v.kind == regimes::VerdictKind::ConvergesTo || v.kind == regimes::VerdictKind::Haar)
        for (int a : v.F.subset) out["F"].push_back(a);
    json pr = json::object();
    for (const auto& [a, p] : v.pairings) pr[std::to_string(a)] = p.str();
    out["pairings"] = pr;
    out["cone_position"] = regimes::to_string(v.cone_position);
    out["boundary_facets"] = json::array();
    for (int a : v.boundary_facets) out["boundary_facets"].push_back(a);
    out["chamber_violations"] = json::array();
    for (int a : v.chamber_violations) out["chamber_violations"].push_back(a);
    return out;
}

json series_json(const countlab::CountSeries& s) {
    json out = json::array();
    for (const auto& p : s.points) out.push_back({p.T, p.N});
    return out;
}

json fit_json(const countlab::FitResult& f) {
    json out;
    out["model"] = f.model == countlab::FitModel::Power
                       ? "power"
                       : (f.model == countlab::FitModel::PowerLog ? "power_log"
                                                                  : "exponential");
    out["logC"] = f.logC;
    out["a"] = f.a;
    out["a_err"] = f.a_err;
    if (f.model == countlab::FitModel::PowerLog) {
        out["b"] = f.b;
        out["b_err"] = f.b_err;
    }
    return out;
}

std::vector<double> thresholds_from(const json& m) {
    std::vector<double> out;
    if (m.contains("thresholds")) {
        for (double t : m.at("thresholds")) out.push_back(t);
    } else if (m.contains("Tmax")) {
        // dyadic grid from Tmin (default 8) up to Tmax
        double t = m.value("Tmin", 8.0), tmax = m.at("Tmax").get<double>();
        for (; t <= tmax * (1 + 1e-12); t *= 2) out.push_back(t);
    }
    if (out.empty()) throw std::invalid_argument("empty threshold grid");
    return out;
}

countlab::FitModel model_from(const std::string& s) {
    if (s == "power") return countlab::FitModel::Power;
    if (s == "power_log") return countlab::FitModel::PowerLog;
    if (s == "exponential") return countlab::FitModel::Exponential;
    throw std::invalid_argument("unknown fit model: " + s);
}

// extreme rays of {theta : (basis_i, theta) >= 0} inside the span of the
// simple roots, for rank-2 data: ray_j solves (basis_i, ray_j) = delta_ij
json cone_rays(const rootsys::RootDatum& d, const std::vector<RatVec>& basis) {
    RatMat M(2, RatVec(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M[i][j] = d.inner(basis[i], d.simple_roots()[j]);
    json rays = json::array();
    for (int j = 0; j < 2; ++j) {
        RatVec rhs(2, Rat(0));
        rhs[j] = Rat(1);
        RatVec c = solve_linear(M, rhs);
        RatVec ray = rv_add(rv_scale(c[0], d.simple_roots()[0]),
                            rv_scale(c[1], d.simple_roots()[1]));
        rays.push_back(ratvec_json(ray));
    }
    return rays;
}

json dispatch(const json& m) {
    const std::string kind = m.at("kind").get<std::string>();
    log_line("running " + kind);
    json out;
    json oracles = json::array();

    if (kind == "rootsys") {
        auto d = datum_from(m);
        out["name"] = d.name();
        out["rank"] = d.rank();
        json sr = json::array(), w = json::array();
        for (const auto& a : d.simple_roots()) sr.push_back(ratvec_json(a));
        for (const auto& l : d.weights()) w.push_back(ratvec_json(l));
        out["simple_roots"] = sr;
        out["weights"] = w;
        auto F = parabolic_from(m, "parabolic");
        auto rho = rootsys::rho_prime(d, F);
        out["rho_prime"] = ratvec_json(rho.coords);
        out["rho_prime_fw"] = ratvec_json(*rho.fw_coords);
        json ks = json::array();
        for (int a = 0; a < d.rank(); ++a) ks.push_back(rootsys::k_alpha(d, a));
        out["k_alpha"] = ks;
    } else if (kind == "classify") {
        auto d = datum_from(m);
        auto E = parabolic_from(m, "parabolic");
        regimes::CochVec theta{parse_ratvec(m.at("cochar"))};
        out["verdict"] = verdict_json(regimes::classify_ray(d, E, theta));
    } else if (kind == "abscont") {
        auto d = datum_from(m);
        auto E = parabolic_from(m, "E");
        auto F = parabolic_from(m, "F");
        regimes::CochVec theta{parse_ratvec(m.at("cochar"))};
        auto ck = regimes::abs_cont_check(d, E, F, theta);
        auto one = [](const regimes::ConditionReport& r) {
            return json{{"status", regimes::to_string(r.status)}, {"witness", r.witness}};
        };
        out["cond_a"] = one(ck.cond_a);
        out["cond_b"] = one(ck.cond_b);
        out["cond_c"] = one(ck.cond_c);
        out["cond_d"] = one(ck.cond_d);
    } else if (kind == "asym_gm") {
        int mm = m.at("m").get<int>();
        double x = m.at("x").get<double>();
        out["log_value"] = asym::log_g_m(mm, x);
        out["value"] = asym::g_m(mm, x);
    } else if (kind == "asym_ball") {
        std::vector<double> v = m.at("v").get<std::vector<double>>();
        auto b = asym::ball_exponential_integral(v, m.at("dim").get<int>(),
                                                 m.at("R").get<double>());
        out["exact"] = b.exact_value;
        out["asymptote"] = b.asymptote;
        out["ratio"] = b.ratio;
        out["log_exact"] = b.log_exact;
        out["log_asymptote"] = b.log_asymptote;
    } else if (kind == "asym_region") {
        auto mode = m.value("mode", std::string("grid")) == "grid"
                        ? asym::RegionMode::Grid
                        : asym::RegionMode::MonteCarlo;
        auto mv = m.at("m").get<std::vector<int>>();
        auto cv = m.at("c").get<std::vector<int>>();
        auto yv = m.value("y", std::vector<double>(mv.size(), 0.0));
        auto est = asym::cone_region_estimate(mv, cv, yv, m.at("T").get<double>(), mode,
                                              m.value("samples", 200000L),
                                              m.value("seed", std::uint64_t(1)),
                                              m.value("jobs", 1));
        out["value"] = est.value;
        out["stderr"] = est.stderr_est;
        out["a_pred"] = est.a_pred;
        out["b_pred"] = est.b_pred;
    } else if (kind == "count_projective") {
        auto s = countlab::count_projective_series(m.at("n").get<int>(), thresholds_from(m));
        out["series"] = series_json(s);
        if (m.value("fit", true) && s.points.size() >= 5)
            out["fit"] = fit_json(countlab::fit_growth(s, countlab::FitModel::Power));
    } else if (kind == "count_flags") {
        auto c = m.at("c").get<std::vector<int>>();
        if (c.size() != 2) throw std::invalid_argument("flags need two exponents");
        auto s = countlab::count_flags_sl3_series(c[0], c[1], thresholds_from(m));
        out["series"] = series_json(s);
    } else if (kind == "count_horocycles") {
        double Rmax = m.at("Rmax").get<double>(), step = m.value("step", 0.5);
        if (!(step > 0) || !(Rmax >= 0)) throw std::invalid_argument("bad R grid");
        countlab::CountSeries s;
        for (double R = m.value("Rmin", step); R <= Rmax + 1e-12; R += step)
            s.points.push_back({R, countlab::count_horocycle_lifts(R)});
        if (s.points.empty()) throw std::invalid_argument("empty R grid");
        out["series"] = series_json(s);
        if (s.points.size() >= 5)
            out["fit"] = fit_json(countlab::fit_growth(s, countlab::FitModel::Exponential));
    } else if (kind == "count_fit") {
        countlab::CountSeries s;
        for (const auto& p : m.at("series"))
            s.points.push_back({p.at(0).get<double>(), p.at(1).get<std::uint64_t>()});
        double fa = m.contains("fixed_a") ? m.at("fixed_a").get<double>() : std::nan("");
        out["fit"] = fit_json(
            countlab::fit_growth(s, model_from(m.at("model").get<std::string>()), fa));
    } else if (kind == "xi") {
        auto rep = countlab::xi_tail_check(m.at("s").get<double>(), m.at("Qmax").get<int>());
        out["divergence_expected"] = rep.divergence_expected;
        out["total"] = rep.total;
        json shells = json::array();
        for (const auto& sh : rep.shells)
            shells.push_back({{"n", sh.n},
                              {"count", sh.count},
                              {"mass", sh.mass},
                              {"bound", sh.bound},
                              {"cumulative", sh.cumulative}});
        out["shells"] = shells;
    } else if (kind == "sim_horocycle") {
        auto pts = equisim::sample_horocycle_sl2(m.at("y0").get<double>(),
                                                 m.at("N").get<long>());
        double h = m.value("h", 2.0);
        out["cusp_mass"] = equisim::cusp_mass(pts, h);
        out["cusp_mass_oracle"] = equisim::cusp_mass_oracle(h);
        oracles.push_back("cusp-area");  // out-of-source reference value
    } else if (kind == "sim_sl3") {
        auto tv = m.at("theta").get<std::vector<double>>();
        if (tv.size() != 3) throw std::invalid_argument("theta must have 3 entries");
        auto samples = equisim::sample_translate_lattices_sl3(
            {tv[0], tv[1], tv[2]}, m.at("t").get<double>(), m.at("N").get<long>(),
            m.value("seed", std::uint64_t(42)), m.value("jobs", 1));
        const std::string stat = m.value("stat", std::string("lambda1"));
        if (stat == "siegel") {
            double r = m.at("r").get<double>();
            auto ms = equisim::siegel_statistic(samples, r);
            out["mean"] = ms.mean;
            out["stderr"] = ms.stderr_est;
            out["ball_volume"] = equisim::ball_volume_3d(r);
            oracles.push_back("siegel-mean-value");
        } else if (stat == "escape") {
            out["escape_fraction"] =
                equisim::escape_fraction(samples, m.at("eps").get<double>());
        } else if (stat == "lambda1") {
            double sum = 0, mn = 1e300;
            for (const auto& s : samples) {
                sum += s.lambda1;
                mn = std::min(mn, s.lambda1);
            }
            out["lambda1_mean"] = sum / double(samples.size());
            out["lambda1_min"] = mn;
        } else {
            throw std::invalid_argument("unknown statistic: " + stat);
        }
    } else if (kind == "plotdata_cone") {
        auto d = datum_from(m);
        if (d.rank() != 2) throw std::invalid_argument("cone plot needs rank 2");
        out["chamber_rays"] = cone_rays(d, {d.simple_roots()[0], d.simple_roots()[1]});
        out["dual_cone_rays"] = cone_rays(d, {d.weights()[0], d.weights()[1]});
    } else {
        throw std::invalid_argument("unknown experiment kind: " + kind);
    }

    json record;
    record["manifest"] = m;
    record["outputs"] = out;
    record["oracles"] = oracles;
    record["version"] = kArtifactVersion;
    return record;
}

}  // namespace

json run_experiment(const json& m) {
    json record = dispatch(m);
    auto now = std::chrono::system_clock::now().time_since_epoch();
    record["timestamp"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    return record;
}

std::string emit(const json& record, const std::string& format) {
    if (format == "json") return record.dump(2) + "\n";
    const auto& out = record.at("outputs");
    if (format == "csv") {
        if (!out.contains("series"))
            throw std::invalid_argument("csv format needs a series-bearing record");
        std::ostringstream os;
        os << "T,N\n";
        for (const auto& p : out.at("series"))
            os << p.at(0).get<double>() << "," << p.at(1).get<std::uint64_t>() << "\n";
        return os.str();
    }
    if (format == "plotdata") {
        std::ostringstream os;
        if (out.contains("chamber_rays")) {
            auto dump_rays = [&](const char* name, const json& rays) {
                for (const auto& ray : rays) {
                    os << name;
                    for (const auto& c : ray) os << " " << c.get<std::string>();
                    os << "\n";
                }
            };
            dump_rays("chamber", out.at("chamber_rays"));
            dump_rays("dual", out.at("dual_cone_rays"));
            return os.str();
        }
        if (out.contains("series")) {
            for (const auto& p : out.at("series"))
                os << p.at(0).get<double>() << " " << p.at(1).get<std::uint64_t>() << "\n";
            return os.str();
        }
        throw std::invalid_argument("record has no plottable payload");
    }
    throw std::invalid_argument("unsupported format: " + format);
}

bool records_equal_modulo_timestamp(json a, json b) {
    a.erase("timestamp");
    b.erase("timestamp");
    return a == b;
}

}  // namespace horocone::manifest
