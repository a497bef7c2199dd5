#include "uavdep/classify.hpp"

#include <functional>
#include <limits>
#include <stdexcept>

namespace uavdep {

namespace {

double c1_metric(const ChannelParams& p, const LosModelParams& m,
                 ClassifyMode mode, double h, double r) {
    return mode == ClassifyMode::NonTerrain
               ? conditional_coverage(p, LinkState::NLoS, r)
               : coverage_probability(p, m, h, r);
}

double c3_metric(const ChannelParams& p, const LosModelParams& m,
                 ClassifyMode mode, double h, double r) {
    return mode == ClassifyMode::NonTerrain
               ? conditional_coverage(p, LinkState::LoS, r)
               : coverage_probability(p, m, h, r);
}

void check_cfg(const ClassificationConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 0.5))
        throw std::invalid_argument("epsilon must lie in (0, 0.5)");
}

// Smallest r in [h, cap] where metric(r) drops to the target, bisection to
// 0.01 m. Assumes the metric is nonincreasing in r.
double falling_root(const std::function<double(double)>& metric, double h,
                    double target) {
    constexpr double kCap = 1e7;  // meters; beyond this: open boundary
    constexpr double kTol = 0.01;
    if (metric(h) <= target) return h;  // region empty from the start
    double lo = h, hi = 2.0 * h + 1.0;
    while (metric(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > kCap) return std::numeric_limits<double>::infinity();
    }
    while (hi - lo > kTol) {
        const double mid = 0.5 * (lo + hi);
        (metric(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

UserClass classify_user(const ChannelParams& params,
                        const LosModelParams& model,
                        const ClassificationConfig& cfg, double h, double r) {
    check_cfg(cfg);
    if (c1_metric(params, model, cfg.mode, h, r) > 1.0 - cfg.epsilon)
        return UserClass::C1;
    if (c3_metric(params, model, cfg.mode, h, r) < cfg.epsilon)
        return UserClass::C3;
    return UserClass::C2;
}

ClassBoundaries class_boundaries(const ChannelParams& params,
                                 const LosModelParams& model,
                                 const ClassificationConfig& cfg, double h) {
    check_cfg(cfg);
    if (!(h > 0.0)) throw std::domain_error("altitude h must be > 0");
    ClassBoundaries b;
    b.r_min = falling_root(
        [&](double r) { return c1_metric(params, model, cfg.mode, h, r); }, h,
        1.0 - cfg.epsilon);
    b.r_max = falling_root(
        [&](double r) { return c3_metric(params, model, cfg.mode, h, r); }, h,
        cfg.epsilon);
    return b;
}

}  // namespace uavdep
