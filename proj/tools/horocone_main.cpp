// horocone: root-system regime classification, exponential-integral
// asymptotics, and desk-scale counting/equidistribution experiments.
//
// Every subcommand assembles a JSON experiment manifest, runs it, and emits
// the result record (json/csv/plotdata). Identical manifests (including
// seeds) reproduce identical records up to the timestamp.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "horocone/manifest.hpp"
#include "horocone/rootsys.hpp"

namespace {

using nlohmann::json;

struct Common {
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 42;
    int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    cmd->add_option("--format", c.format, "json | csv | plotdata")
        ->check(CLI::IsMember({"json", "csv", "plotdata"}));
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--jobs", c.jobs, "worker count for partitionable runs")
        ->check(CLI::PositiveNumber);
}

json split_list(const std::string& csv) {
    json arr = json::array();
    std::string cur;
    std::stringstream ss(csv);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) arr.push_back(cur);
    return arr;
}

std::vector<int> parse_parabolic(const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    std::stringstream ss(csv);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(std::stoi(cur));
    return out;
}

int finish(const json& manifest, const Common& c) {
    json record = horocone::manifest::run_experiment(manifest);
    std::string text = horocone::manifest::emit(record, c.format);
    if (c.out.empty()) {
        std::cout << text;
    } else {
        // write the whole record atomically: never leave partial results
        std::string tmp = c.out + ".tmp";
        {
            std::ofstream f(tmp, std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open output file: " + c.out);
            f << text;
        }
        if (std::rename(tmp.c_str(), c.out.c_str()) != 0)
            throw std::runtime_error("cannot move output into place: " + c.out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact root-datum regimes, exponential asymptotics, and "
                 "counting experiments"};
    app.require_subcommand(1);

    // ---- rootsys ----
    Common c_root;
    std::string rt_type = "A2", rt_data, rt_parab;
    auto* rootsys_cmd = app.add_subcommand("rootsys", "root datum report: weights, "
                                                      "rho', k_alpha");
    rootsys_cmd->add_option("--type", rt_type, "split type, e.g. A2, B2, G2");
    rootsys_cmd->add_option("--data", rt_data, "JSON file with explicit relative data");
    rootsys_cmd->add_option("--parabolic", rt_parab, "comma-separated F indices");
    add_common(rootsys_cmd, c_root);

    // ---- classify ----
    Common c_cls;
    std::string cl_type = "A2", cl_data, cl_parab, cl_cochar;
    std::string cl_F;
    bool cl_abscont = false;
    auto* classify_cmd = app.add_subcommand("classify", "regime verdict for a "
                                                        "translation ray");
    classify_cmd->add_option("--type", cl_type, "split type");
    classify_cmd->add_option("--data", cl_data, "JSON file with explicit relative data");
    classify_cmd->add_option("--parabolic", cl_parab, "comma-separated E indices");
    classify_cmd->add_option("--cochar", cl_cochar, "comma-separated rational entries")
        ->required();
    classify_cmd->add_flag("--abscont", cl_abscont,
                           "run the absolute-continuity checklist instead");
    classify_cmd->add_option("--F", cl_F, "target F for --abscont");
    add_common(classify_cmd, c_cls);

    // ---- asym ----
    auto* asym_cmd = app.add_subcommand("asym", "exponential-integral asymptotics");
    asym_cmd->require_subcommand(1);
    Common c_gm, c_ball, c_region;
    int gm_m = 0;
    double gm_x = 1;
    auto* gm_cmd = asym_cmd->add_subcommand("gm", "evaluate g_m(x)");
    gm_cmd->add_option("--m", gm_m)->required();
    gm_cmd->add_option("--x", gm_x)->required();
    add_common(gm_cmd, c_gm);

    int ball_dim = 3;
    double ball_R = 10;
    std::string ball_v = "1,0,0";
    auto* ball_cmd = asym_cmd->add_subcommand("ball", "ball integral vs asymptote");
    ball_cmd->add_option("--dim", ball_dim)->required();
    ball_cmd->add_option("--v", ball_v, "comma-separated vector")->required();
    ball_cmd->add_option("--R", ball_R)->required();
    add_common(ball_cmd, c_ball);

    std::string rg_m, rg_c, rg_y, rg_mode = "grid";
    double rg_T = 100;
    long rg_samples = 200000;
    auto* region_cmd = asym_cmd->add_subcommand("region", "shifted-cone integral");
    region_cmd->add_option("--m", rg_m, "comma-separated m coefficients")->required();
    region_cmd->add_option("--c", rg_c, "comma-separated c coefficients")->required();
    region_cmd->add_option("--y", rg_y, "comma-separated shift (default 0)");
    region_cmd->add_option("--T", rg_T)->required();
    region_cmd->add_option("--mode", rg_mode)->check(CLI::IsMember({"grid", "monte_carlo"}));
    region_cmd->add_option("--samples", rg_samples);
    add_common(region_cmd, c_region);

    // ---- count ----
    auto* count_cmd = app.add_subcommand("count", "enumeration experiments");
    count_cmd->require_subcommand(1);
    Common c_proj, c_flags, c_horo, c_fit;
    int pr_n = 2;
    double pr_Tmax = 512, pr_Tmin = 8;
    auto* proj_cmd = count_cmd->add_subcommand("projective", "primitive vectors mod +-");
    proj_cmd->add_option("--n", pr_n)->required();
    proj_cmd->add_option("--Tmax", pr_Tmax)->required();
    proj_cmd->add_option("--Tmin", pr_Tmin);
    add_common(proj_cmd, c_proj);

    std::string fl_c = "2,2";
    double fl_Tmax = 1e5, fl_Tmin = 8;
    auto* flags_cmd = count_cmd->add_subcommand("flags", "orthogonal-pair flags in Z^3");
    flags_cmd->add_option("--c", fl_c, "two height exponents")->required();
    flags_cmd->add_option("--Tmax", fl_Tmax)->required();
    flags_cmd->add_option("--Tmin", fl_Tmin);
    add_common(flags_cmd, c_flags);

    double ho_Rmax = 14, ho_step = 0.5;
    auto* horo_cmd = count_cmd->add_subcommand("horocycles", "horocycle lifts in a ball");
    horo_cmd->add_option("--Rmax", ho_Rmax)->required();
    horo_cmd->add_option("--step", ho_step);
    add_common(horo_cmd, c_horo);

    std::string ft_in, ft_model = "power";
    double ft_fixed_a = std::nan("");
    auto* fit_cmd = count_cmd->add_subcommand("fit", "fit a growth law to a CSV series");
    fit_cmd->add_option("--in", ft_in, "CSV file with T,N rows")->required();
    fit_cmd->add_option("--model", ft_model)
        ->check(CLI::IsMember({"power", "power_log", "exponential"}));
    fit_cmd->add_option("--fixed-a", ft_fixed_a, "pin the T-exponent (power_log)");
    add_common(fit_cmd, c_fit);

    double xi_s = 2;
    int xi_Q = 2048;
    Common c_xi;
    auto* xi_cmd = count_cmd->add_subcommand("xi", "dyadic tail check of the height series");
    xi_cmd->add_option("--s", xi_s)->required();
    xi_cmd->add_option("--Qmax", xi_Q);
    add_common(xi_cmd, c_xi);

    // ---- sim ----
    auto* sim_cmd = app.add_subcommand("sim", "equidistribution simulations");
    sim_cmd->require_subcommand(1);
    Common c_sh, c_s3;
    double sh_y0 = 1e-4, sh_h = 2;
    long sh_N = 100000;
    auto* sh_cmd = sim_cmd->add_subcommand("horocycle", "closed horocycle on the "
                                                        "modular surface");
    sh_cmd->add_option("--y0", sh_y0)->required();
    sh_cmd->add_option("--N", sh_N)->required();
    sh_cmd->add_option("--height", sh_h, "cusp height cutoff");
    add_common(sh_cmd, c_sh);

    std::string s3_theta = "1,0,-1", s3_stat = "lambda1";
    double s3_t = 10, s3_r = 1.0, s3_eps = 0.1;
    long s3_N = 1000;
    auto* s3_cmd = sim_cmd->add_subcommand("sl3", "translated lattices in dimension 3");
    s3_cmd->add_option("--theta", s3_theta, "trace-zero direction, 3 entries")->required();
    s3_cmd->add_option("--t", s3_t)->required();
    s3_cmd->add_option("--N", s3_N)->required();
    s3_cmd->add_option("--stat", s3_stat)
        ->check(CLI::IsMember({"siegel", "escape", "lambda1"}));
    s3_cmd->add_option("--r", s3_r, "ball radius for --stat siegel");
    s3_cmd->add_option("--eps", s3_eps, "threshold for --stat escape");
    add_common(s3_cmd, c_s3);

    // ---- plotdata ----
    Common c_cone;
    std::string cone_type = "A2";
    auto* cone_cmd = app.add_subcommand("cone", "chamber and dual-cone boundary rays");
    cone_cmd->add_option("--type", cone_type, "rank-2 split type");
    add_common(cone_cmd, c_cone);

    CLI11_PARSE(app, argc, argv);

    try {
        json m;
        auto with_datum = [&](const std::string& type, const std::string& data_file) {
            if (!data_file.empty()) {
                std::ifstream f(data_file);
                if (!f) throw std::invalid_argument("cannot read data file: " + data_file);
                m["data"] = json::parse(f);
            } else {
                m["type"] = type;
            }
        };
        if (rootsys_cmd->parsed()) {
            m["kind"] = "rootsys";
            with_datum(rt_type, rt_data);
            m["parabolic"] = parse_parabolic(rt_parab);
            return finish(m, c_root);
        }
        if (classify_cmd->parsed()) {
            with_datum(cl_type, cl_data);
            m["cochar"] = split_list(cl_cochar);
            if (cl_abscont) {
                m["kind"] = "abscont";
                m["E"] = parse_parabolic(cl_parab);
                m["F"] = parse_parabolic(cl_F);
            } else {
                m["kind"] = "classify";
                m["parabolic"] = parse_parabolic(cl_parab);
            }
            return finish(m, c_cls);
        }
        if (gm_cmd->parsed()) {
            m = {{"kind", "asym_gm"}, {"m", gm_m}, {"x", gm_x}};
            return finish(m, c_gm);
        }
        if (ball_cmd->parsed()) {
            std::vector<double> v;
            for (const auto& e : split_list(ball_v)) v.push_back(std::stod(e.get<std::string>()));
            m = {{"kind", "asym_ball"}, {"dim", ball_dim}, {"v", v}, {"R", ball_R}};
            return finish(m, c_ball);
        }
        if (region_cmd->parsed()) {
            std::vector<int> mv, cv;
            for (const auto& e : split_list(rg_m)) mv.push_back(std::stoi(e.get<std::string>()));
            for (const auto& e : split_list(rg_c)) cv.push_back(std::stoi(e.get<std::string>()));
            m = {{"kind", "asym_region"}, {"m", mv}, {"c", cv}, {"T", rg_T},
                 {"mode", rg_mode}, {"samples", rg_samples},
                 {"seed", c_region.seed}, {"jobs", c_region.jobs}};
            if (!rg_y.empty()) {
                std::vector<double> yv;
                for (const auto& e : split_list(rg_y)) yv.push_back(std::stod(e.get<std::string>()));
                m["y"] = yv;
            }
            return finish(m, c_region);
        }
        if (proj_cmd->parsed()) {
            m = {{"kind", "count_projective"}, {"n", pr_n}, {"Tmax", pr_Tmax},
                 {"Tmin", pr_Tmin}};
            return finish(m, c_proj);
        }
        if (flags_cmd->parsed()) {
            std::vector<int> cv;
            for (const auto& e : split_list(fl_c)) cv.push_back(std::stoi(e.get<std::string>()));
            m = {{"kind", "count_flags"}, {"c", cv}, {"Tmax", fl_Tmax}, {"Tmin", fl_Tmin}};
            return finish(m, c_flags);
        }
        if (horo_cmd->parsed()) {
            m = {{"kind", "count_horocycles"}, {"Rmax", ho_Rmax}, {"step", ho_step}};
            return finish(m, c_horo);
        }
        if (fit_cmd->parsed()) {
            std::ifstream f(ft_in);
            if (!f) throw std::invalid_argument("cannot read series file: " + ft_in);
            json series = json::array();
            std::string line;
            while (std::getline(f, line)) {
                if (line.empty() || line[0] == 'T') continue;  // header
                auto comma = line.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("bad CSV row: " + line);
                series.push_back({std::stod(line.substr(0, comma)),
                                  std::stoull(line.substr(comma + 1))});
            }
            m = {{"kind", "count_fit"}, {"series", series}, {"model", ft_model}};
            if (!std::isnan(ft_fixed_a)) m["fixed_a"] = ft_fixed_a;
            return finish(m, c_fit);
        }
        if (xi_cmd->parsed()) {
            m = {{"kind", "xi"}, {"s", xi_s}, {"Qmax", xi_Q}};
            return finish(m, c_xi);
        }
        if (sh_cmd->parsed()) {
            m = {{"kind", "sim_horocycle"}, {"y0", sh_y0}, {"N", sh_N}, {"h", sh_h}};
            return finish(m, c_sh);
        }
        if (s3_cmd->parsed()) {
            std::vector<double> tv;
            for (const auto& e : split_list(s3_theta)) tv.push_back(std::stod(e.get<std::string>()));
            m = {{"kind", "sim_sl3"}, {"theta", tv}, {"t", s3_t}, {"N", s3_N},
                 {"stat", s3_stat}, {"seed", c_s3.seed}, {"jobs", c_s3.jobs}};
            if (s3_stat == "siegel") m["r"] = s3_r;
            if (s3_stat == "escape") m["eps"] = s3_eps;
            return finish(m, c_s3);
        }
        if (cone_cmd->parsed()) {
            m = {{"kind", "plotdata_cone"}, {"type", cone_type}};
            return finish(m, c_cone);
        }
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const horocone::rootsys::ValidationError& e) {
        std::cerr << nlohmann::json{{"error", "validation"}, {"message", e.what()}}.dump()
                  << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", "validation"}, {"message", e.what()}}.dump()
                  << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << nlohmann::json{{"error", "validation"}, {"message", e.what()}}.dump()
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "runtime"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    }
}
