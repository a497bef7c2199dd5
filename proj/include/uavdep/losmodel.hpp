#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavdep/rng.hpp"
#include "uavdep/terrain.hpp"

namespace uavdep {

enum class LosFamily { Sigmoid, Tanh, ReLu };

std::string family_name(LosFamily f);
LosFamily family_from_name(const std::string& name);

struct LosModelParams {
    LosFamily family = LosFamily::Sigmoid;
    double a = 4.88;  // empirical suburban defaults
    double b = 0.43;
};

struct ElevationSample {
    double theta = 0.0;  // degrees, (0, 90]
    double t = 0.0;      // empirical LoS fraction
    int n = 0;           // sample count
};

// Eq. (6), in degrees; 90 when r == h.
double elevation_angle(double h, double r);

// Family formula clamped to [0,1]; theta in degrees.
double p_los(const LosModelParams& model, double theta_deg);

struct SampleConfig {
    double h_lo = 0.0;  // altitude range for the collecting UAV
    double h_hi = 0.0;
    std::vector<double> thetas;  // degrees
    int per_theta_count = 200;
    int max_attempts = 200;  // per placement, before a sampling error
};

std::vector<double> default_thetas();  // {5, 10, ..., 85}

std::vector<ElevationSample> collect_samples(const TerrainMap& map,
                                             const std::vector<Vec2>& users,
                                             const SampleConfig& cfg, Rng& rng);

struct FitResult {
    LosModelParams params;
    double mse = 0.0;  // unregularized mean squared residual
    bool converged = false;
    int iterations = 0;
};

// Damped Gauss-Newton with Levenberg lambda adaptation, started at
// (a_hat, b_hat); minimizes data SSE + l1 (a-a_hat)^2 + l2 (b-b_hat)^2.
FitResult fit(const std::vector<ElevationSample>& samples, LosFamily family,
              double lambda1, double lambda2, double a_hat, double b_hat);

// Unregularized MSE of a fixed model on a sample set.
double model_mse(const std::vector<ElevationSample>& samples,
                 const LosModelParams& model);

// Optional 3-point moving average over theta-sorted samples.
std::vector<ElevationSample> smooth_samples(
    const std::vector<ElevationSample>& samples);

std::string samples_to_csv(const std::vector<ElevationSample>& samples);
std::vector<ElevationSample> samples_from_csv(const std::string& text);

}  // namespace uavdep
