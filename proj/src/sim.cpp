#include "uavdep/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace uavdep {

Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
    Scenario sc;
    sc.seed = seed;
    sc.params = make_channel_params(cfg.channel);
    sc.map = sample_buildings(cfg.area, cfg.building_density,
                              cfg.rayleigh_scale, cfg.footprint,
                              derive_seed(seed, {0}));
    Rng rng(derive_seed(seed, {1}));
    const int count = rng.poisson(cfg.user_intensity * cfg.area.area());
    constexpr int kMaxAttempts = 1000;
    for (int i = 0; i < count; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const Vec2 p{rng.uniform(cfg.area.x_min, cfg.area.x_max),
                         rng.uniform(cfg.area.y_min, cfg.area.y_max)};
            if (sc.map.inside_building(p)) continue;
            sc.users.push_back(p);
            placed = true;
            break;
        }
        if (!placed)
            throw std::runtime_error(
                "generate_scenario: cannot place users outdoors "
                "(area fully covered by buildings?)");
    }
    sc.h_min = cfg.h_min.value_or(sc.map.max_building_height() + 1.0);
    return sc;
}

double evaluate_deployment(const Scenario& sc,
                           const std::vector<Point3>& uavs,
                           BlockageMode mode) {
    if (uavs.empty())
        throw std::domain_error("evaluate_deployment: no UAV positions");
    for (const auto& p : uavs)
        if (!(p.z > 0.0))
            throw std::domain_error("evaluate_deployment: UAV below ground");
    if (sc.users.empty())
        throw std::domain_error("evaluate_deployment: no users");
    double total = 0.0;
    for (const auto& u : sc.users) {
        double best_power = -1.0;
        double cov = 0.0;
        for (const auto& pos : uavs) {
            const LinkState s = link_state(sc.map, u, pos, mode);
            const double r = dist3({u.x, u.y, 0.0}, pos);
            const double power =
                s == LinkState::DeepBlocked
                    ? 0.0
                    : mean_received_power(sc.params, s, r);
            if (power > best_power) {
                best_power = power;
                cov = conditional_coverage(sc.params, s, r);
            }
        }
        total += cov;
    }
    return total / static_cast<double>(sc.users.size());
}

Scenario step_users(const Scenario& sc, double max_step, Rng& rng) {
    if (max_step < 0.0)
        throw std::invalid_argument("step_users: max_step must be >= 0");
    Scenario out = sc;
    constexpr int kMaxAttempts = 200;
    for (auto& u : out.users) {
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const double d = rng.uniform(0.0, max_step);
            const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const Vec2 cand{u.x + d * std::cos(az), u.y + d * std::sin(az)};
            if (!sc.map.area().contains(cand)) continue;
            if (sc.map.inside_building(cand)) continue;
            u = cand;
            break;
        }
    }
    return out;
}

std::vector<Rect> partition_multi_uav(const Rect& area, int n_uavs) {
    if (n_uavs == 1) return {area};
    const double mx = 0.5 * (area.x_min + area.x_max);
    const double my = 0.5 * (area.y_min + area.y_max);
    if (n_uavs == 2)
        return {{area.x_min, area.y_min, mx, area.y_max},
                {mx, area.y_min, area.x_max, area.y_max}};
    if (n_uavs == 4)
        return {{area.x_min, area.y_min, mx, my},
                {mx, area.y_min, area.x_max, my},
                {area.x_min, my, mx, area.y_max},
                {mx, my, area.x_max, area.y_max}};
    throw std::invalid_argument("partition_multi_uav: n_uavs must be 1, 2 or 4");
}

namespace {

// Half-open membership so shared edges assign a user to exactly one region;
// the last region keeps its closed far edges.
bool in_region(const Rect& r, const Rect& area, const Vec2& p) {
    const bool xin = p.x >= r.x_min &&
                     (r.x_max >= area.x_max ? p.x <= r.x_max : p.x < r.x_max);
    const bool yin = p.y >= r.y_min &&
                     (r.y_max >= area.y_max ? p.y <= r.y_max : p.y < r.y_max);
    return xin && yin;
}

DeploymentResult run_one(const Scenario& sc, const std::vector<Vec2>& users,
                         const Rect& region, const std::string& algo,
                         const CampaignConfig& cfg) {
    const double h_min = sc.h_min;
    const HRange h_range{h_min, h_min + cfg.scpa_h_span, cfg.scpa_h_step};
    if (users.empty()) {
        // No one to serve in this sub-region: hover over its center.
        DeploymentResult res;
        res.uav_position = {0.5 * (region.x_min + region.x_max),
                            0.5 * (region.y_min + region.y_max), h_min};
        res.algorithm = algo;
        return res;
    }
    if (algo == "bia") {
        const MassDensity md{cfg.bia_density, cfg.bia_r_min, cfg.bia_r_max,
                             cfg.bia_h};
        return bia(users, md, cfg.bia_h, 100, cfg.delta);
    }
    if (algo == "scpa")
        return scpa(users, sc.params, cfg.los_model, h_range, std::nullopt,
                    cfg.scpa_window, cfg.scpa_delta);
    if (algo == "mrsa") {
        const MassDensity md{cfg.bia_density, cfg.bia_r_min, cfg.bia_r_max,
                             h_min};
        const ClassificationConfig ccfg{cfg.epsilon, ClassifyMode::NonTerrain};
        return mrsa(sc.map, users, sc.params, md, ccfg, h_min, cfg.delta,
                    h_min, cfg.rho_cap_factor * h_min);
    }
    if (algo == "hda") {
        const ClassificationConfig ccfg{cfg.epsilon, ClassifyMode::Terrain};
        return hda(sc.map, users, sc.params, cfg.los_model, ccfg, h_range,
                   cfg.scpa_window, cfg.delta, h_min,
                   cfg.rho_cap_factor * h_min);
    }
    if (algo == "brute") {
        // Grid over this sub-region only; blockage against the full map.
        const Rect& a = region;
        double best = -1.0;
        Point3 best_pos;
        for (double hh = h_range.lo; hh <= h_range.hi + 1e-9;
             hh += h_range.step) {
            for (double x = a.x_min; x <= a.x_max + 1e-9; x += cfg.grid_delta) {
                for (double y = a.y_min; y <= a.y_max + 1e-9;
                     y += cfg.grid_delta) {
                    const Point3 pos{x, y, hh};
                    double total = 0.0;
                    for (const auto& u : users) {
                        const LinkState s =
                            link_state(sc.map, u, pos, cfg.mode);
                        total += conditional_coverage(sc.params, s,
                                                      dist3({u.x, u.y, 0.0},
                                                            pos));
                    }
                    if (total > best) {
                        best = total;
                        best_pos = pos;
                    }
                }
            }
        }
        DeploymentResult res;
        res.uav_position = best_pos;
        res.algorithm = "brute";
        return res;
    }
    throw std::invalid_argument("unknown algorithm: " + algo);
}

}  // namespace

RoundOutput run_algorithm(const Scenario& sc, const std::string& algo,
                          const CampaignConfig& cfg) {
    RoundOutput out;
    const auto regions = partition_multi_uav(sc.map.area(), cfg.n_uavs);
    for (const Rect& region : regions) {
        std::vector<Vec2> region_users;
        for (const auto& u : sc.users)
            if (in_region(region, sc.map.area(), u)) region_users.push_back(u);
        DeploymentResult res = run_one(sc, region_users, region, algo, cfg);
        out.positions.push_back(res.uav_position);
        if (res.trajectory) out.search_length += res.trajectory->total_length;
        out.results.push_back(std::move(res));
    }
    return out;
}

std::vector<std::pair<double, double>> coverage_cdf(
    const std::vector<double>& samples) {
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    return cdf;
}

namespace {

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double idx = p * (static_cast<double>(v.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

std::vector<MonteCarloReport> run_campaign(const CampaignConfig& cfg) {
    if (cfg.rounds < 1) throw std::invalid_argument("run_campaign: rounds < 1");
    if (cfg.algorithms.empty())
        throw std::invalid_argument("run_campaign: no algorithms");
    const std::size_t n_algos = cfg.algorithms.size();

    struct RoundSlot {
        std::vector<double> coverage;  // NaN on failure
        std::vector<double> length;
        bool failed = false;
    };
    std::vector<RoundSlot> slots(static_cast<std::size_t>(cfg.rounds));

    auto do_round = [&](int round) {
        RoundSlot& slot = slots[static_cast<std::size_t>(round)];
        slot.coverage.assign(n_algos,
                             std::numeric_limits<double>::quiet_NaN());
        slot.length.assign(n_algos, std::numeric_limits<double>::quiet_NaN());
        Scenario sc;
        try {
            sc = generate_scenario(
                cfg.scenario,
                derive_seed(cfg.seed, {2, static_cast<std::uint64_t>(round)}));
            if (sc.users.empty())
                throw std::runtime_error("round drew zero users");
        } catch (const std::exception&) {
            slot.failed = true;
            return;
        }
        for (std::size_t a = 0; a < n_algos; ++a) {
            try {
                const RoundOutput out =
                    run_algorithm(sc, cfg.algorithms[a], cfg);
                slot.coverage[a] =
                    evaluate_deployment(sc, out.positions, cfg.mode);
                if (cfg.algorithms[a] == "mrsa" || cfg.algorithms[a] == "hda")
                    slot.length[a] = out.search_length;
            } catch (const std::exception&) {
                // leave NaN; counted as a failure below
            }
        }
    };

    const int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        for (int r = 0; r < cfg.rounds; ++r) do_round(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= cfg.rounds) return;
                    do_round(r);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::vector<MonteCarloReport> reports(n_algos);
    for (std::size_t a = 0; a < n_algos; ++a) {
        MonteCarloReport& rep = reports[a];
        rep.algorithm = cfg.algorithms[a];
        for (const RoundSlot& slot : slots) {
            if (slot.failed || std::isnan(slot.coverage[a])) {
                ++rep.failures;
                continue;
            }
            rep.coverage.push_back(slot.coverage[a]);
            if (!std::isnan(slot.length[a]))
                rep.lengths.push_back(slot.length[a]);
        }
        if (!rep.coverage.empty()) {
            double s = 0.0;
            for (double c : rep.coverage) s += c;
            rep.mean_coverage = s / static_cast<double>(rep.coverage.size());
        }
        if (!rep.lengths.empty()) {
            double s = 0.0;
            for (double l : rep.lengths) s += l;
            rep.mean_length = s / static_cast<double>(rep.lengths.size());
            rep.shortest20 = percentile(rep.lengths, 0.2);
            rep.longest20 = percentile(rep.lengths, 0.8);
        }
    }
    return reports;
}

}  // namespace uavdep
