#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavdep/classify.hpp"
#include "uavdep/deploy.hpp"
#include "uavdep/losmodel.hpp"
#include "uavdep/sim.hpp"
#include "uavdep/terrain.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uavdep;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_outdir() {
    if (const char* env = std::getenv("UAVDEP_OUTDIR")) return env;
    return ".";
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Shared scenario/channel knobs; a JSON config file may override any of
// them, with Table II radio defaults.
struct CommonOpts {
    ScenarioConfig scenario;
    std::string config_path;
    std::string outdir = default_outdir();
};

void apply_config_file(CommonOpts& opts) {
    if (opts.config_path.empty()) return;
    json j;
    try {
        j = json::parse(read_file(opts.config_path));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    auto& ch = opts.scenario.channel;
    auto get = [&](const char* key, auto& target) {
        if (j.contains(key)) {
            try {
                target = j.at(key).get<std::decay_t<decltype(target)>>();
            } catch (const json::exception&) {
                throw ConfigError(std::string("config key has wrong type: ") +
                                  key);
            }
        }
    };
    get("tx_power_dbm", ch.tx_power_dbm);
    get("noise_dbm", ch.noise_dbm);
    get("snr_threshold_db", ch.snr_threshold_db);
    get("alpha_los", ch.alpha_los);
    get("alpha_nlos", ch.alpha_nlos);
    get("m_los", ch.m_los);
    get("m_nlos", ch.m_nlos);
    get("eta_los_db", ch.eta_los_db);
    get("eta_nlos_db", ch.eta_nlos_db);
    get("user_intensity", opts.scenario.user_intensity);
    get("building_density", opts.scenario.building_density);
    get("rayleigh_scale", opts.scenario.rayleigh_scale);
    get("side_min", opts.scenario.footprint.side_min);
    get("side_max", opts.scenario.footprint.side_max);
    double area = 0.0;
    get("area_side", area);
    if (area > 0.0) opts.scenario.area = {0.0, 0.0, area, area};
    double hmin = 0.0;
    get("h_min", hmin);
    if (hmin > 0.0) opts.scenario.h_min = hmin;
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::vector<std::string> known{
            "tx_power_dbm", "noise_dbm", "snr_threshold_db", "alpha_los",
            "alpha_nlos", "m_los", "m_nlos", "eta_los_db", "eta_nlos_db",
            "user_intensity", "building_density", "rayleigh_scale", "side_min",
            "side_max", "area_side", "h_min"};
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError("unknown config key: " + it.key());
    }
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path,
                    "JSON config file (Table II radio defaults)");
    cmd->add_option("--outdir", opts.outdir,
                    "output directory (env UAVDEP_OUTDIR)");
    cmd->add_option("--area", opts.scenario.area.x_max,
                    "square area side in meters (default 300)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--building-density", opts.scenario.building_density,
                    "buildings per m^2");
    cmd->add_option("--rayleigh", opts.scenario.rayleigh_scale,
                    "Rayleigh scale of building heights, m");
    cmd->add_option("--side-min", opts.scenario.footprint.side_min,
                    "min footprint side, m");
    cmd->add_option("--side-max", opts.scenario.footprint.side_max,
                    "max footprint side, m");
    cmd->add_option("--user-intensity", opts.scenario.user_intensity,
                    "users per m^2");
}

void finish_common(CommonOpts& opts) {
    apply_config_file(opts);
    opts.scenario.area.y_max = opts.scenario.area.x_max;
}

json position_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

json result_json(const DeploymentResult& res) {
    json j;
    j["algorithm"] = res.algorithm;
    j["position"] = position_json(res.uav_position);
    if (std::isnan(res.gamma_achieved))
        j["gamma_achieved"] = nullptr;
    else
        j["gamma_achieved"] = res.gamma_achieved;
    if (res.trajectory) {
        json t;
        t["total_length"] = res.trajectory->total_length;
        t["outcome"] = outcome_name(res.trajectory->outcome);
        t["rotation_capped"] = res.trajectory->rotation_capped;
        t["waypoints"] = json::array();
        for (const auto& w : res.trajectory->waypoints)
            t["waypoints"].push_back(position_json(w));
        j["trajectory"] = std::move(t);
    }
    if (!res.classes.empty()) {
        json c = json::array();
        for (UserClass uc : res.classes)
            c.push_back(uc == UserClass::C1 ? "C1"
                        : uc == UserClass::C2 ? "C2"
                                              : "C3");
        j["classes"] = std::move(c);
    }
    return j;
}

std::vector<Vec2> users_from_json_file(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("users parse error: ") + e.what());
    }
    std::vector<Vec2> users;
    for (const auto& jv : j)
        users.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
    return users;
}

json users_json(const std::vector<Vec2>& users) {
    json j = json::array();
    for (const auto& u : users) j.push_back({u.x, u.y});
    return j;
}

LosModelParams model_from_json_file(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("model parse error: ") + e.what());
    }
    LosModelParams m;
    m.family = family_from_name(j.at("family").get<std::string>());
    m.a = j.at("a").get<double>();
    m.b = j.at("b").get<double>();
    return m;
}

int cmd_gen_terrain(CommonOpts& opts, std::uint64_t seed,
                    const std::string& terrain_out,
                    const std::string& users_out) {
    finish_common(opts);
    const Scenario sc = generate_scenario(opts.scenario, seed);
    write_file(fs::path(opts.outdir) / terrain_out, terrain_to_json(sc.map));
    std::cout << "terrain: " << sc.map.buildings().size() << " buildings, "
              << "tallest " << sc.map.max_building_height() << " m, h_min "
              << sc.h_min << " m, seed " << seed << "\n";
    if (!users_out.empty()) {
        write_file(fs::path(opts.outdir) / users_out,
                   users_json(sc.users).dump(2) + "\n");
        std::cout << "users: " << sc.users.size() << "\n";
    }
    return 0;
}

int cmd_fit_los(CommonOpts& opts, const std::string& samples_path,
                const std::string& terrain_path, const std::string& users_path,
                std::uint64_t seed, const std::string& family_name_str,
                double lambda1, double lambda2, double a_hat, double b_hat,
                bool smooth, const std::string& out,
                const std::string& samples_out) {
    finish_common(opts);
    std::vector<ElevationSample> samples;
    if (!samples_path.empty()) {
        samples = samples_from_csv(read_file(samples_path));
    } else if (!terrain_path.empty()) {
        const TerrainMap map = load_terrain(terrain_path);
        std::vector<Vec2> users;
        if (!users_path.empty()) {
            users = users_from_json_file(users_path);
        } else {
            Rng urng(derive_seed(seed, {1}));
            for (int i = 0; i < 50; ++i) {
                for (int attempt = 0; attempt < 1000; ++attempt) {
                    const Vec2 p{
                        urng.uniform(map.area().x_min, map.area().x_max),
                        urng.uniform(map.area().y_min, map.area().y_max)};
                    if (map.inside_building(p)) continue;
                    users.push_back(p);
                    break;
                }
            }
        }
        SampleConfig scfg;
        scfg.h_lo = map.max_building_height() + 1.0;
        scfg.h_hi = scfg.h_lo + 100.0;
        // Keep only angles whose horizontal stand-off fits in the area.
        const double reach = 0.45 * std::min(map.area().width(),
                                             map.area().height());
        for (double th : default_thetas())
            if (scfg.h_lo / std::tan(th * std::numbers::pi / 180.0) <= reach)
                scfg.thetas.push_back(th);
        if (scfg.thetas.empty())
            throw ConfigError("no achievable elevation angles for this map");
        Rng rng(derive_seed(seed, {7}));
        samples = collect_samples(map, users, scfg, rng);
    } else {
        throw ConfigError("fit-los needs --samples or --terrain");
    }
    if (!samples_out.empty())
        write_file(fs::path(opts.outdir) / samples_out,
                   samples_to_csv(samples));
    if (smooth) samples = smooth_samples(samples);
    const LosFamily family = family_from_name(family_name_str);
    const FitResult res = fit(samples, family, lambda1, lambda2, a_hat, b_hat);
    const double empirical_mse =
        model_mse(samples, {family, a_hat, b_hat});
    json j;
    j["family"] = family_name_str;
    j["a"] = res.params.a;
    j["b"] = res.params.b;
    j["mse"] = res.mse;
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    j["empirical_mse"] = empirical_mse;
    j["seed"] = seed;
    write_file(fs::path(opts.outdir) / out, j.dump(2) + "\n");
    std::cout << "fit " << family_name_str << ": a=" << res.params.a
              << " b=" << res.params.b << " mse=" << res.mse
              << " (initial-parameter mse=" << empirical_mse
              << ") converged=" << (res.converged ? "yes" : "no") << "\n";
    return 0;
}

int cmd_classify(CommonOpts& opts, const std::string& terrain_path,
                 const std::string& users_path, const std::string& model_path,
                 std::uint64_t seed, double epsilon, const std::string& mode_s,
                 double h_opt, const std::string& out) {
    finish_common(opts);
    TerrainMap map;
    std::vector<Vec2> users;
    if (!terrain_path.empty()) {
        map = load_terrain(terrain_path);
        if (users_path.empty())
            throw ConfigError("classify with --terrain also needs --users");
        users = users_from_json_file(users_path);
    } else {
        const Scenario sc = generate_scenario(opts.scenario, seed);
        map = sc.map;
        users = sc.users;
    }
    LosModelParams model;
    if (!model_path.empty()) model = model_from_json_file(model_path);
    ClassificationConfig cfg;
    cfg.epsilon = epsilon;
    if (mode_s == "terrain")
        cfg.mode = ClassifyMode::Terrain;
    else if (mode_s == "nonterrain")
        cfg.mode = ClassifyMode::NonTerrain;
    else
        throw ConfigError("mode must be nonterrain|terrain");
    const ChannelParams params = make_channel_params(opts.scenario.channel);
    const double h =
        h_opt > 0.0 ? h_opt : map.max_building_height() + 1.0;
    Vec2 center{0.0, 0.0};
    if (users.empty()) throw ConfigError("classify: no users");
    for (const auto& u : users) center = center + u;
    center = center * (1.0 / static_cast<double>(users.size()));

    const ClassBoundaries b = class_boundaries(params, model, cfg, h);
    std::ostringstream csv;
    csv << "id,r,class\n";
    csv.precision(17);
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double r =
            std::sqrt((users[i] - center).dot(users[i] - center) + h * h);
        const UserClass uc = classify_user(params, model, cfg, h, r);
        csv << i << ',' << r << ','
            << (uc == UserClass::C1 ? "C1" : uc == UserClass::C2 ? "C2" : "C3")
            << '\n';
    }
    write_file(fs::path(opts.outdir) / out, csv.str());
    std::cout << "R_min=" << b.r_min << " R_max=" << b.r_max << " (h=" << h
              << ", epsilon=" << epsilon << ", mode=" << mode_s << ")\n";
    return 0;
}

int cmd_deploy(CommonOpts& opts, const std::string& algo,
               const std::string& terrain_path, const std::string& users_path,
               std::uint64_t seed, const std::string& density, double epsilon,
               double delta, double h, const std::string& out,
               CampaignConfig camp) {
    finish_common(opts);
    camp.scenario = opts.scenario;
    camp.epsilon = epsilon;
    camp.delta = delta;
    camp.bia_density = density_from_name(density);
    if (h > 0.0) camp.bia_h = h;
    Scenario sc;
    if (!terrain_path.empty()) {
        if (users_path.empty())
            throw ConfigError("deploy with --terrain also needs --users");
        sc.map = load_terrain(terrain_path);
        sc.users = users_from_json_file(users_path);
        sc.params = make_channel_params(opts.scenario.channel);
        sc.h_min = opts.scenario.h_min.value_or(sc.map.max_building_height() +
                                                1.0);
        sc.seed = seed;
    } else {
        sc = generate_scenario(opts.scenario, seed);
    }
    const RoundOutput ro = run_algorithm(sc, algo, camp);
    json j;
    j["seed"] = seed;
    j["algorithm"] = algo;
    j["h_min"] = sc.h_min;
    j["results"] = json::array();
    for (const auto& res : ro.results) j["results"].push_back(result_json(res));
    const double cov = evaluate_deployment(sc, ro.positions, camp.mode);
    j["coverage"] = cov;
    write_file(fs::path(opts.outdir) / out, j.dump(2) + "\n");
    std::cout << algo << ": position";
    for (const auto& p : ro.positions)
        std::cout << " (" << p.x << "," << p.y << "," << p.z << ")";
    std::cout << " coverage=" << cov << "\n";
    return 0;
}

CampaignConfig build_campaign(const CommonOpts& opts, int rounds,
                              const std::vector<std::string>& algos,
                              const std::string& mode_s, int n_uavs,
                              std::uint64_t seed, int workers, double delta,
                              double grid_delta, double epsilon,
                              const std::string& density, double bia_h) {
    CampaignConfig cfg;
    cfg.scenario = opts.scenario;
    cfg.rounds = rounds;
    cfg.algorithms = algos;
    if (mode_s == "basic")
        cfg.mode = BlockageMode::Basic;
    else if (mode_s == "multiple")
        cfg.mode = BlockageMode::Multiple;
    else
        throw ConfigError("mode must be basic|multiple");
    cfg.n_uavs = n_uavs;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.delta = delta;
    cfg.grid_delta = grid_delta;
    cfg.epsilon = epsilon;
    cfg.bia_density = density_from_name(density);
    cfg.bia_h = bia_h;
    return cfg;
}

json report_json(const CampaignConfig& cfg,
                 const std::vector<MonteCarloReport>& reports) {
    json j;
    j["seed"] = cfg.seed;
    j["rounds"] = cfg.rounds;
    j["n_uavs"] = cfg.n_uavs;
    j["blockage_mode"] =
        cfg.mode == BlockageMode::Basic ? "basic" : "multiple";
    j["algorithms"] = json::array();
    for (const auto& rep : reports) {
        json a;
        a["algorithm"] = rep.algorithm;
        a["mean_coverage"] = rep.mean_coverage;
        a["rounds_completed"] = rep.coverage.size();
        a["failures"] = rep.failures;
        if (!rep.lengths.empty()) {
            a["mean_length"] = rep.mean_length;
            a["shortest20"] = rep.shortest20;
            a["longest20"] = rep.longest20;
        }
        j["algorithms"].push_back(std::move(a));
    }
    return j;
}

int cmd_simulate(const CampaignConfig& cfg, const std::string& outdir) {
    const auto reports = run_campaign(cfg);
    write_file(fs::path(outdir) / "report.json",
               report_json(cfg, reports).dump(2) + "\n");
    for (const auto& rep : reports) {
        std::ostringstream csv;
        csv << "coverage,cdf\n";
        csv.precision(17);
        for (const auto& [v, p] : coverage_cdf(rep.coverage))
            csv << v << ',' << p << '\n';
        write_file(fs::path(outdir) / ("cdf_" + rep.algorithm + ".csv"),
                   csv.str());
        std::cout << rep.algorithm << ": mean coverage " << rep.mean_coverage
                  << " over " << rep.coverage.size() << " rounds ("
                  << rep.failures << " failures)";
        if (!rep.lengths.empty())
            std::cout << ", mean search length " << rep.mean_length << " m";
        std::cout << "\n";
    }
    return 0;
}

int cmd_sweep(const CampaignConfig& base, const std::string& param,
              const std::vector<double>& values, const std::string& outdir) {
    if (values.empty()) throw ConfigError("sweep: no values");
    json j;
    j["param"] = param;
    j["runs"] = json::array();
    for (double v : values) {
        CampaignConfig cfg = base;
        if (param == "n_uavs")
            cfg.n_uavs = static_cast<int>(v);
        else if (param == "bia_h")
            cfg.bia_h = v;
        else if (param == "epsilon")
            cfg.epsilon = v;
        else
            throw ConfigError("sweep param must be n_uavs|bia_h|epsilon");
        const auto reports = run_campaign(cfg);
        json run;
        run["value"] = v;
        run["report"] = report_json(cfg, reports);
        j["runs"].push_back(std::move(run));
        std::cout << param << "=" << v << ":";
        for (const auto& rep : reports)
            std::cout << " " << rep.algorithm << "=" << rep.mean_coverage;
        std::cout << "\n";
    }
    write_file(fs::path(outdir) / "sweep.json", j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terrain-aware UAV base-station placement toolkit"};
    app.require_subcommand(1);
    // Long-only help so that --h stays available as an altitude flag.
    app.set_help_flag("--help", "print help");

    CommonOpts opts;
    std::uint64_t seed = 0;

    // gen-terrain
    auto* gen = app.add_subcommand("gen-terrain",
                                   "sample a random building map (+users)");
    gen->set_help_flag("--help", "print help");
    add_common(gen, opts);
    gen->add_option("--seed", seed, "root RNG seed");
    std::string terrain_out = "terrain.json", users_out;
    gen->add_option("--out", terrain_out, "terrain JSON filename");
    gen->add_option("--users-out", users_out, "also write a users JSON file");

    // fit-los
    auto* fitc = app.add_subcommand(
        "fit-los", "fit the elevation-angle LoS probability model");
    fitc->set_help_flag("--help", "print help");
    add_common(fitc, opts);
    fitc->add_option("--seed", seed, "root RNG seed");
    std::string samples_path, fit_terrain, fit_users, samples_out;
    std::string family = "sigmoid", fit_out = "fitted.json";
    double lambda1 = 0.01, lambda2 = 0.01, a_hat = 4.88, b_hat = 0.43;
    bool smooth = false;
    fitc->add_option("--samples", samples_path, "samples CSV (theta_deg,t,n)");
    fitc->add_option("--terrain", fit_terrain,
                     "collect samples from this terrain JSON instead");
    fitc->add_option("--users", fit_users, "users JSON for collection");
    fitc->add_option("--family", family, "sigmoid|tanh|relu");
    fitc->add_option("--lambda1", lambda1, "ridge weight on a (default 0.01)");
    fitc->add_option("--lambda2", lambda2, "ridge weight on b (default 0.01)");
    fitc->add_option("--a-hat", a_hat, "initial/ridge center a (default 4.88)");
    fitc->add_option("--b-hat", b_hat, "initial/ridge center b (default 0.43)");
    fitc->add_flag("--smooth", smooth, "3-point moving average over theta");
    fitc->add_option("--out", fit_out, "fitted model JSON filename");
    fitc->add_option("--samples-out", samples_out,
                     "also write collected samples CSV");

    // classify
    auto* cls = app.add_subcommand("classify",
                                   "C1/C2/C3 user classification + boundaries");
    cls->set_help_flag("--help", "print help");
    add_common(cls, opts);
    cls->add_option("--seed", seed, "root RNG seed");
    std::string cls_terrain, cls_users, cls_model, cls_mode = "nonterrain";
    std::string cls_out = "classes.csv";
    double cls_eps = 0.1, cls_h = 0.0;
    cls->add_option("--terrain", cls_terrain, "terrain JSON");
    cls->add_option("--users", cls_users, "users JSON");
    cls->add_option("--model", cls_model, "fitted LoS model JSON");
    cls->add_option("--epsilon", cls_eps, "degree of classification");
    cls->add_option("--mode", cls_mode, "nonterrain|terrain");
    cls->add_option("--h", cls_h, "reference UAV altitude (default h_min)");
    cls->add_option("--out", cls_out, "per-user class CSV filename");

    // deploy
    auto* dep = app.add_subcommand("deploy", "run one placement algorithm");
    dep->set_help_flag("--help", "print help");
    add_common(dep, opts);
    dep->add_option("--seed", seed, "root RNG seed");
    std::string algo = "bia", dep_terrain, dep_users, density = "tri";
    std::string dep_out = "deploy.json";
    double dep_eps = 0.1, dep_delta = 1.0, dep_h = 0.0;
    dep->add_option("--algo", algo, "bia|scpa|mrsa|hda|brute")->required();
    dep->add_option("--terrain", dep_terrain, "terrain JSON");
    dep->add_option("--users", dep_users, "users JSON");
    dep->add_option("--density", density, "uniform|asc|desc|tri");
    dep->add_option("--epsilon", dep_eps, "degree of classification");
    dep->add_option("--delta", dep_delta, "search granularity, m");
    dep->add_option("--h", dep_h, "BIA altitude, m");
    dep->add_option("--out", dep_out, "result JSON filename");

    // simulate
    auto* simc = app.add_subcommand("simulate", "Monte-Carlo campaign");
    simc->set_help_flag("--help", "print help");
    add_common(simc, opts);
    simc->add_option("--seed", seed, "root RNG seed");
    int rounds = 1000, n_uavs = 1, workers = 1;
    std::vector<std::string> algos{"bia"};
    std::string mode_s = "basic";
    double sim_delta = 1.0, grid_delta = 10.0, sim_eps = 0.05, sim_bia_h = 20.0;
    std::string sim_density = "tri";
    simc->add_option("--rounds", rounds, "Monte-Carlo rounds");
    simc->add_option("--algo", algos, "algorithms (repeatable)");
    simc->add_option("--mode", mode_s, "basic|multiple blockage model");
    simc->add_option("--n-uavs", n_uavs, "1|2|4");
    simc->add_option("--workers", workers, "worker threads");
    simc->add_option("--delta", sim_delta, "search granularity, m");
    simc->add_option("--grid-delta", grid_delta, "scpa/brute grid step, m");
    simc->add_option("--epsilon", sim_eps, "mrsa/hda classification degree");
    simc->add_option("--density", sim_density, "BIA mass density");
    simc->add_option("--bia-h", sim_bia_h, "BIA altitude, m");

    // sweep
    auto* swp = app.add_subcommand("sweep", "campaign over a parameter sweep");
    swp->set_help_flag("--help", "print help");
    add_common(swp, opts);
    swp->add_option("--seed", seed, "root RNG seed");
    std::string sweep_param = "n_uavs";
    std::vector<double> sweep_values;
    swp->add_option("--param", sweep_param, "n_uavs|bia_h|epsilon");
    swp->add_option("--values", sweep_values, "sweep values")->required();
    swp->add_option("--rounds", rounds, "Monte-Carlo rounds");
    swp->add_option("--algo", algos, "algorithms (repeatable)");
    swp->add_option("--mode", mode_s, "basic|multiple blockage model");
    swp->add_option("--workers", workers, "worker threads");
    swp->add_option("--delta", sim_delta, "search granularity, m");
    swp->add_option("--grid-delta", grid_delta, "scpa/brute grid step, m");
    swp->add_option("--epsilon", sim_eps, "mrsa/hda classification degree");
    swp->add_option("--density", sim_density, "BIA mass density");
    swp->add_option("--bia-h", sim_bia_h, "BIA altitude, m");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen_terrain(opts, seed, terrain_out,
                                                  users_out);
        if (fitc->parsed())
            return cmd_fit_los(opts, samples_path, fit_terrain, fit_users,
                               seed, family, lambda1, lambda2, a_hat, b_hat,
                               smooth, fit_out, samples_out);
        if (cls->parsed())
            return cmd_classify(opts, cls_terrain, cls_users, cls_model, seed,
                                cls_eps, cls_mode, cls_h, cls_out);
        if (dep->parsed()) {
            finish_common(opts);
            CampaignConfig camp = build_campaign(
                opts, 1, {algo}, "basic", 1, seed, 1, dep_delta, 10.0, dep_eps,
                density, dep_h > 0.0 ? dep_h : 20.0);
            return cmd_deploy(opts, algo, dep_terrain, dep_users, seed,
                              density, dep_eps, dep_delta, dep_h, dep_out,
                              camp);
        }
        if (simc->parsed()) {
            finish_common(opts);
            const CampaignConfig cfg = build_campaign(
                opts, rounds, algos, mode_s, n_uavs, seed, workers, sim_delta,
                grid_delta, sim_eps, sim_density, sim_bia_h);
            return cmd_simulate(cfg, opts.outdir);
        }
        if (swp->parsed()) {
            finish_common(opts);
            const CampaignConfig cfg = build_campaign(
                opts, rounds, algos, mode_s, 1, seed, workers, sim_delta,
                grid_delta, sim_eps, sim_density, sim_bia_h);
            return cmd_sweep(cfg, sweep_param, sweep_values, opts.outdir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
