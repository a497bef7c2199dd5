#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavdep/channel.hpp"
#include "uavdep/classify.hpp"
#include "uavdep/losmodel.hpp"
#include "uavdep/terrain.hpp"

namespace uavdep {

enum class DensityKind { Uniform, AscendingTrapezoid, DescendingTrapezoid, Triangular };

std::string density_name(DensityKind k);
DensityKind density_from_name(const std::string& name);

struct MassDensity {
    DensityKind kind = DensityKind::Uniform;
    double r_min = 0.0;  // C1/C2 boundary
    double r_max = 0.0;  // C2/C3 boundary
    double h = 0.0;      // UAV altitude the weights are evaluated at
};

// Table-2 piecewise weight; Uniform is 1 everywhere.
double mass_density(const MassDensity& md, double r);

enum class SearchOutcome { LosFound, FallbackNadir, AltitudeCapped };

std::string outcome_name(SearchOutcome o);

struct SearchTrajectory {
    std::vector<Point3> waypoints;
    double total_length = 0.0;
    SearchOutcome outcome = SearchOutcome::LosFound;
    bool rotation_capped = false;  // a branch used up its 2*pi budget
};

struct DeploymentResult {
    Point3 uav_position;
    std::string algorithm;
    std::optional<SearchTrajectory> trajectory;
    // min over C2 users of average SNR at the output (linear); NaN when the
    // algorithm has no SNR notion (bia, scpa, brute).
    double gamma_achieved = std::numeric_limits<double>::quiet_NaN();
    std::vector<UserClass> classes;  // one entry per user for mrsa/hda
};

DeploymentResult bia(const std::vector<Vec2>& users, const MassDensity& md,
                     double h, int max_iter, double delta);

struct HRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
};

DeploymentResult scpa(const std::vector<Vec2>& users,
                      const ChannelParams& params, const LosModelParams& model,
                      const HRange& h_range, std::optional<Vec2> center_hint,
                      double window, double delta);

// Algorithm 1 in the cylindrical frame of the two users: origin at their
// midpoint, axis through them, altitude = rho * cos(theta).
DeploymentResult two_user_search(const TerrainMap& map,
                                 const ChannelParams& params, const Vec2& u1,
                                 const Vec2& u2, double start_rho,
                                 double start_theta, double delta, double h_min,
                                 double rho_cap);

Vec2 fermat_weber(const std::vector<Vec2>& points, double tol = 1e-9);

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

Circle min_enclosing_circle(const std::vector<Vec2>& points);

DeploymentResult mrsa(const TerrainMap& map, const std::vector<Vec2>& users,
                      const ChannelParams& params, const MassDensity& md,
                      const ClassificationConfig& cfg, double h, double delta,
                      double h_min, double rho_cap);

DeploymentResult hda(const TerrainMap& map, const std::vector<Vec2>& users,
                     const ChannelParams& params, const LosModelParams& model,
                     const ClassificationConfig& cfg, const HRange& h_range,
                     double window, double delta, double h_min, double rho_cap);

enum class BlockageMode { Basic, Multiple };

// Link state of a user-UAV segment under a blockage mode.
LinkState link_state(const TerrainMap& map, const Vec2& user, const Point3& uav,
                     BlockageMode mode);

DeploymentResult brute_force(const TerrainMap& map,
                             const std::vector<Vec2>& users,
                             const ChannelParams& params, double grid_step,
                             const HRange& h_range, BlockageMode mode);

}  // namespace uavdep
