#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavdep/channel.hpp"
#include "uavdep/deploy.hpp"
#include "uavdep/terrain.hpp"

namespace uavdep {

struct Scenario {
    TerrainMap map;
    std::vector<Vec2> users;  // ground positions, z = 0
    ChannelParams params;
    double h_min = 1.0;
    std::uint64_t seed = 0;
};

struct ScenarioConfig {
    Rect area{0.0, 0.0, 300.0, 300.0};
    double user_intensity = 10.0 / (300.0 * 300.0);  // users per m^2
    double building_density = 1e-4;                  // buildings per m^2
    double rayleigh_scale = 15.0;
    FootprintSpec footprint{15.0, 40.0};
    ChannelConfig channel;
    std::optional<double> h_min;  // default: tallest building + 1
};

Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

// Per-user: associate to the UAV with max mean received power given the
// actual link state, then average conditional coverage (Eq. 3 weights).
double evaluate_deployment(const Scenario& sc,
                           const std::vector<Point3>& uavs, BlockageMode mode);

// Random-waypoint step: each user moves <= max_step meters, staying in the
// area and outside footprints.
Scenario step_users(const Scenario& sc, double max_step, Rng& rng);

// Equal-area axis-aligned partition for 1, 2 or 4 UAVs.
std::vector<Rect> partition_multi_uav(const Rect& area, int n_uavs);

struct CampaignConfig {
    ScenarioConfig scenario;
    int rounds = 1000;
    std::vector<std::string> algorithms;  // bia|scpa|mrsa|hda|brute
    BlockageMode mode = BlockageMode::Basic;
    int n_uavs = 1;
    std::uint64_t seed = 0;
    int workers = 1;

    // Algorithm knobs (suburban defaults; see README).
    double delta = 1.0;        // descent granularity (Alg. 1 steps)
    double grid_delta = 10.0;  // brute-force grid step
    double scpa_delta = 3.0;   // scpa window/h grid step
    double epsilon = 0.05;     // classification degree for mrsa/hda
    double rho_cap_factor = 12.0;
    double bia_h = 20.0;
    DensityKind bia_density = DensityKind::Triangular;
    double bia_r_min = 40.0;
    double bia_r_max = 126.0;
    double scpa_window = 30.0;
    double scpa_h_span = 5.0;  // h range [h_min, h_min + span]
    double scpa_h_step = 2.5;
    LosModelParams los_model{LosFamily::Sigmoid, 4.88, 0.43};
};

struct MonteCarloReport {
    std::string algorithm;
    std::vector<double> coverage;  // per completed round, round order
    std::vector<double> lengths;   // search lengths where applicable
    double mean_coverage = 0.0;
    double mean_length = 0.0;
    double shortest20 = 0.0;  // 20th percentile of lengths
    double longest20 = 0.0;   // 80th percentile of lengths
    int failures = 0;
};

std::vector<MonteCarloReport> run_campaign(const CampaignConfig& cfg);

// Sorted-sample CDF as (value, P(X <= value)) pairs.
std::vector<std::pair<double, double>> coverage_cdf(
    const std::vector<double>& samples);

// One round of a single algorithm on an existing scenario; exposed for the
// deploy subcommand and tests.
struct RoundOutput {
    std::vector<Point3> positions;
    double search_length = 0.0;
    std::vector<DeploymentResult> results;  // one per sub-region
};
RoundOutput run_algorithm(const Scenario& sc, const std::string& algo,
                          const CampaignConfig& cfg);

}  // namespace uavdep
