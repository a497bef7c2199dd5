#pragma once

#include "uavdep/channel.hpp"
#include "uavdep/losmodel.hpp"

namespace uavdep {

enum class UserClass { C1, C2, C3 };

enum class ClassifyMode { NonTerrain, Terrain };

struct ClassificationConfig {
    double epsilon = 0.1;  // in (0, 0.5)
    ClassifyMode mode = ClassifyMode::NonTerrain;
};

// r is the 3-D distance to the reference UAV position at altitude h.
// NonTerrain: C1 iff Pc(NLoS, r) > 1-eps; C3 iff Pc(LoS, r) < eps; else C2.
// Terrain:    same thresholds on coverage_probability(h, r).
UserClass classify_user(const ChannelParams& params,
                        const LosModelParams& model,
                        const ClassificationConfig& cfg, double h, double r);

struct ClassBoundaries {
    // R_min: C1/C2 boundary distance; R_max: C2/C3 boundary distance.
    // +inf marks an open boundary (everything beyond the bracket cap stays C1
    // or C2); a value equal to h marks a region that is empty from the start.
    double r_min = 0.0;
    double r_max = 0.0;
};

ClassBoundaries class_boundaries(const ChannelParams& params,
                                 const LosModelParams& model,
                                 const ClassificationConfig& cfg, double h);

}  // namespace uavdep
