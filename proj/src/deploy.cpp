#include "uavdep/deploy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavdep {

std::string density_name(DensityKind k) {
    switch (k) {
        case DensityKind::Uniform: return "uniform";
        case DensityKind::AscendingTrapezoid: return "asc";
        case DensityKind::DescendingTrapezoid: return "desc";
        case DensityKind::Triangular: return "tri";
    }
    return "?";
}

DensityKind density_from_name(const std::string& name) {
    if (name == "uniform") return DensityKind::Uniform;
    if (name == "asc") return DensityKind::AscendingTrapezoid;
    if (name == "desc") return DensityKind::DescendingTrapezoid;
    if (name == "tri") return DensityKind::Triangular;
    throw std::invalid_argument("unknown mass density: " + name);
}

std::string outcome_name(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::LosFound: return "los_found";
        case SearchOutcome::FallbackNadir: return "fallback_nadir";
        case SearchOutcome::AltitudeCapped: return "altitude_capped";
    }
    return "?";
}

double mass_density(const MassDensity& md, double r) {
    if (!(r > 0.0)) throw std::domain_error("mass_density: r must be > 0");
    if (md.kind == DensityKind::Uniform) return 1.0;
    if (!(md.r_min < md.r_max))
        throw std::invalid_argument("mass_density: need r_min < r_max");
    const double lo = std::max(md.h, md.r_min);
    if (r <= lo || r > md.r_max) return 0.0;
    const double brk =
        0.5 * std::sqrt(md.r_max * md.r_max + 3.0 * md.h * md.h);
    const double horiz = std::sqrt(std::max(0.0, r * r - md.h * md.h));
    const double half_span =
        0.5 * std::sqrt(std::max(0.0, md.r_max * md.r_max - md.h * md.h));
    switch (md.kind) {
        case DensityKind::AscendingTrapezoid:
            return r <= brk ? horiz : half_span;
        case DensityKind::DescendingTrapezoid:
            return r <= brk ? half_span : 2.0 * half_span - horiz;
        case DensityKind::Triangular:
            return r <= brk ? horiz : 2.0 * half_span - horiz;
        default:
            return 1.0;
    }
}

DeploymentResult bia(const std::vector<Vec2>& users, const MassDensity& md,
                     double h, int max_iter, double delta) {
    if (users.empty()) throw std::invalid_argument("bia: need >= 1 user");
    Vec2 pos{0.0, 0.0};
    for (const auto& u : users) pos = pos + u;
    pos = pos * (1.0 / static_cast<double>(users.size()));
    for (int n = 1; n < max_iter; ++n) {
        Vec2 num{0.0, 0.0};
        double den = 0.0;
        for (const auto& u : users) {
            const double r = std::sqrt((pos - u).dot(pos - u) + h * h);
            const double w = mass_density(md, r);
            num = num + u * w;
            den += w;
        }
        if (den <= 0.0) break;  // all weights vanished: hold position
        const Vec2 next = num * (1.0 / den);
        const double move = dist2(next, pos);
        pos = next;
        if (move <= delta) break;
    }
    DeploymentResult res;
    res.uav_position = {pos.x, pos.y, h};
    res.algorithm = "bia";
    return res;
}

DeploymentResult scpa(const std::vector<Vec2>& users,
                      const ChannelParams& params, const LosModelParams& model,
                      const HRange& h_range, std::optional<Vec2> center_hint,
                      double window, double delta) {
    if (users.empty()) throw std::invalid_argument("scpa: need >= 1 user");
    if (window < delta) throw std::invalid_argument("scpa: window < delta");
    if (!(h_range.lo > 0.0) || h_range.hi < h_range.lo || !(h_range.step > 0.0))
        throw std::invalid_argument("scpa: bad altitude range");
    Vec2 center;
    if (center_hint) {
        center = *center_hint;
    } else {
        for (const auto& u : users) center = center + u;
        center = center * (1.0 / static_cast<double>(users.size()));
    }
    const int n_off = static_cast<int>(std::floor(window / delta + 1e-9));
    double best = -1.0;
    Point3 best_pos;
    // Altitude-major, then lex (x, y); first strict max implements the
    // (lowest h, then lex) tie-break.
    for (double hh = h_range.lo; hh <= h_range.hi + 1e-9; hh += h_range.step) {
        for (int ix = 0; ix <= n_off; ++ix) {
            const double x = center.x - 0.5 * window + ix * delta;
            for (int iy = 0; iy <= n_off; ++iy) {
                const double y = center.y - 0.5 * window + iy * delta;
                double total = 0.0;
                for (const auto& u : users) {
                    const double dx = x - u.x, dy = y - u.y;
                    const double r = std::sqrt(dx * dx + dy * dy + hh * hh);
                    total += coverage_probability(params, model, hh, r);
                }
                if (total > best) {
                    best = total;
                    best_pos = {x, y, hh};
                }
            }
        }
    }
    DeploymentResult res;
    res.uav_position = best_pos;
    res.algorithm = "scpa";
    return res;
}

namespace {

// Cylindrical search frame of Algorithm 1: origin on the ground, axis through
// the (two farthest) users, altitude = rho * cos(theta).
struct Frame {
    Vec2 origin;
    Vec2 n_hat;  // horizontal unit vector normal to the user axis
};

Point3 frame_pos(const Frame& f, double rho, double theta) {
    const double lateral = rho * std::sin(theta);
    return {f.origin.x + f.n_hat.x * lateral, f.origin.y + f.n_hat.y * lateral,
            rho * std::cos(theta)};
}

void push_waypoint(SearchTrajectory& tr, const Point3& p) {
    if (!tr.waypoints.empty())
        tr.total_length += dist3(tr.waypoints.back(), p);
    tr.waypoints.push_back(p);
}

// Straight flight split into <= delta hops so the waypoint-spacing invariant
// holds across branch resets and the final repositioning.
void push_segment(SearchTrajectory& tr, const Point3& to, double delta) {
    if (tr.waypoints.empty()) {
        tr.waypoints.push_back(to);
        return;
    }
    const Point3 from = tr.waypoints.back();
    const double len = dist3(from, to);
    const int hops = std::max(1, static_cast<int>(std::ceil(len / delta)));
    for (int i = 1; i <= hops; ++i) {
        const double t = static_cast<double>(i) / hops;
        push_waypoint(tr, {from.x + (to.x - from.x) * t,
                           from.y + (to.y - from.y) * t,
                           from.z + (to.z - from.z) * t});
    }
}

struct DescentOutput {
    double rho = 0.0;
    double theta = 0.0;
    SearchOutcome outcome = SearchOutcome::LosFound;
};

// Steps (3)-(25) of Algorithm 1 with the all-targets LoS predicate.
DescentOutput descend(const TerrainMap& map, const std::vector<Vec2>& targets,
                      const Frame& frame, double start_rho, double start_theta,
                      double delta, double h_min, double rho_cap,
                      SearchTrajectory& tr) {
    auto all_los = [&](double rho, double theta) {
        const Point3 pos = frame_pos(frame, rho, theta);
        for (const auto& t : targets)
            if (!map.is_los({t.x, t.y, 0.0}, pos)) return false;
        return true;
    };

    double rho = start_rho, theta = start_theta;
    push_waypoint(tr, frame_pos(frame, rho, theta));
    while (!all_los(rho, theta)) {
        rho += delta;
        if (rho > rho_cap) {
            // High-rise escape hatch: settle at altitude h_min on the
            // current bearing.
            const double capped_rho = h_min / std::cos(theta);
            push_waypoint(tr, frame_pos(frame, capped_rho, theta));
            tr.outcome = SearchOutcome::AltitudeCapped;
            return {capped_rho, theta, SearchOutcome::AltitudeCapped};
        }
        push_waypoint(tr, frame_pos(frame, rho, theta));
    }

    double best_rho = rho, best_theta = theta;
    const double rot_budget = 2.0 * std::numbers::pi;
    for (int branch = 0; branch < 2; ++branch) {
        const double sign = branch == 0 ? -1.0 : 1.0;
        double r = best_rho, th = best_theta, rot = 0.0;
        while (r * std::cos(th) > h_min) {
            if (all_los(r, th)) {
                best_rho = r;
                best_theta = th;
                r -= delta;
            } else {
                const double dth =
                    2.0 * std::asin(std::min(1.0, delta / (2.0 * r)));
                th += sign * dth;
                rot += dth;
                if (rot > rot_budget) {
                    tr.rotation_capped = true;
                    break;
                }
            }
            push_waypoint(tr, frame_pos(frame, r, th));
        }
        // Fly back to the recorded best before the right branch starts.
        if (branch == 0)
            push_segment(tr, frame_pos(frame, best_rho, best_theta), delta);
    }
    tr.outcome = SearchOutcome::LosFound;
    return {best_rho, best_theta, SearchOutcome::LosFound};
}

double min_actual_snr(const TerrainMap& map, const ChannelParams& params,
                      const std::vector<Vec2>& targets, const Point3& pos) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& t : targets) {
        const Point3 u{t.x, t.y, 0.0};
        const LinkState s =
            map.is_los(u, pos) ? LinkState::LoS : LinkState::NLoS;
        lo = std::min(lo, average_snr(params, s, dist3(u, pos)));
    }
    return lo;
}

// Shared tail of Algorithm 1 and the MRSA/HDA descent: run the plane search,
// then compare the LoS candidate against the nadir NLoS candidate.
DeploymentResult descent_result(const TerrainMap& map,
                                const ChannelParams& params,
                                const std::vector<Vec2>& targets,
                                const Frame& frame, double d, double start_rho,
                                double start_theta, double delta, double h_min,
                                double rho_cap, const std::string& tag) {
    SearchTrajectory tr;
    const DescentOutput out = descend(map, targets, frame, start_rho,
                                      start_theta, delta, h_min, rho_cap, tr);
    double rho_star = out.rho, theta_star = out.theta;
    if (out.outcome != SearchOutcome::AltitudeCapped) {
        const double snr_nlos = average_snr(
            params, LinkState::NLoS, std::sqrt(h_min * h_min + 0.25 * d * d));
        const double snr_los = average_snr(
            params, LinkState::LoS,
            std::sqrt(rho_star * rho_star + 0.25 * d * d));
        if (snr_nlos > snr_los) {
            rho_star = h_min;
            theta_star = 0.0;
            tr.outcome = SearchOutcome::FallbackNadir;
        }
    }
    const Point3 final_pos = frame_pos(frame, rho_star, theta_star);
    if (tr.waypoints.empty() || dist3(tr.waypoints.back(), final_pos) > 1e-12)
        push_segment(tr, final_pos, delta);
    DeploymentResult res;
    res.uav_position = final_pos;
    res.algorithm = tag;
    res.trajectory = std::move(tr);
    res.gamma_achieved = min_actual_snr(map, params, targets, final_pos);
    return res;
}

}  // namespace

DeploymentResult two_user_search(const TerrainMap& map,
                                 const ChannelParams& params, const Vec2& u1,
                                 const Vec2& u2, double start_rho,
                                 double start_theta, double delta, double h_min,
                                 double rho_cap) {
    const double d = dist2(u1, u2);
    if (!(d > 0.0)) throw std::invalid_argument("two_user_search: u1 == u2");
    if (start_rho * std::cos(start_theta) < h_min)
        throw std::domain_error("two_user_search: start below h_min");
    Frame frame;
    frame.origin = (u1 + u2) * 0.5;
    const Vec2 axis = (u2 - u1) * (1.0 / d);
    frame.n_hat = {-axis.y, axis.x};
    return descent_result(map, params, {u1, u2}, frame, d, start_rho,
                          start_theta, delta, h_min, rho_cap, "two_user");
}

Vec2 fermat_weber(const std::vector<Vec2>& points, double tol) {
    if (points.empty()) throw std::invalid_argument("fermat_weber: no points");
    if (points.size() == 1) return points[0];
    if (points.size() == 2) return (points[0] + points[1]) * 0.5;
    Vec2 cur{0.0, 0.0};
    for (const auto& p : points) cur = cur + p;
    cur = cur * (1.0 / static_cast<double>(points.size()));
    for (int iter = 0; iter < 1000; ++iter) {
        // Weiszfeld step with the coincidence guard.
        for (const auto& p : points) {
            if (dist2(cur, p) < tol) {
                Vec2 grad{0.0, 0.0};
                for (const auto& q : points) {
                    const double dq = dist2(p, q);
                    if (dq < tol) continue;
                    grad = grad + (q - p) * (1.0 / dq);
                }
                if (grad.norm() <= 1.0) return p;  // subgradient optimality
                cur = p + grad * (tol / grad.norm());
            }
        }
        Vec2 num{0.0, 0.0};
        double den = 0.0;
        for (const auto& p : points) {
            const double dp = std::max(dist2(cur, p), tol);
            num = num + p * (1.0 / dp);
            den += 1.0 / dp;
        }
        const Vec2 next = num * (1.0 / den);
        const double step = dist2(next, cur);
        cur = next;
        if (step < tol) break;
    }
    return cur;
}

namespace {

bool in_circle(const Circle& c, const Vec2& p) {
    return dist2(c.center, p) <= c.radius + 1e-9;
}

Circle circle_from(const Vec2& a, const Vec2& b) {
    return {(a + b) * 0.5, 0.5 * dist2(a, b)};
}

Circle circle_from(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d = 2.0 * (a - c).cross(b - c);
    if (std::abs(d) < 1e-12) {
        // Collinear: circle of the farthest pair.
        Circle best = circle_from(a, b);
        for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double a2 = (a - c).dot(a - c), b2 = (b - c).dot(b - c);
    const Vec2 ac = a - c, bc = b - c;
    const Vec2 center{c.x + (bc.y * a2 - ac.y * b2) / d,
                      c.y + (ac.x * b2 - bc.x * a2) / d};
    return {center, dist2(center, a)};
}

}  // namespace

Circle min_enclosing_circle(const std::vector<Vec2>& points) {
    if (points.empty())
        throw std::invalid_argument("min_enclosing_circle: no points");
    // Deterministic incremental construction (Welzl without shuffling).
    Circle c{points[0], 0.0};
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (in_circle(c, points[i])) continue;
        c = {points[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (in_circle(c, points[j])) continue;
            c = circle_from(points[i], points[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (in_circle(c, points[k])) continue;
                c = circle_from(points[i], points[j], points[k]);
            }
        }
    }
    return c;
}

LinkState link_state(const TerrainMap& map, const Vec2& user, const Point3& uav,
                     BlockageMode mode) {
    const int n = map.blockage_count({user.x, user.y, 0.0}, uav);
    if (n == 0) return LinkState::LoS;
    if (mode == BlockageMode::Basic || n == 1) return LinkState::NLoS;
    return LinkState::DeepBlocked;
}

namespace {

// Classification center -> descent, shared by MRSA and HDA.
DeploymentResult pipeline_tail(const TerrainMap& map,
                               const std::vector<Vec2>& users,
                               const ChannelParams& params,
                               std::vector<UserClass> classes,
                               const Vec2& center, double delta, double h_min,
                               double rho_cap, const std::string& tag) {
    std::vector<Vec2> c2;
    for (std::size_t i = 0; i < users.size(); ++i)
        if (classes[i] == UserClass::C2) c2.push_back(users[i]);

    DeploymentResult res;
    if (c2.size() <= 1) {
        const Vec2 at = c2.empty() ? center : c2[0];
        res.uav_position = {at.x, at.y, h_min};
        res.algorithm = tag;
        res.trajectory = SearchTrajectory{};  // nothing to search
        const std::vector<Vec2>& targets = c2.empty() ? users : c2;
        res.gamma_achieved =
            targets.empty()
                ? std::numeric_limits<double>::quiet_NaN()
                : min_actual_snr(map, params, targets, res.uav_position);
    } else if (c2.size() == 2 && dist2(c2[0], c2[1]) > kGeomEps) {
        res = two_user_search(map, params, c2[0], c2[1], h_min, 0.0, delta,
                              h_min, rho_cap);
        res.algorithm = tag;
    } else {
        // Enclosing circle of C2; the two farthest C2 users define the frame
        // axis, but B tests LoS of every C2 user.
        const Circle mec = min_enclosing_circle(c2);
        std::size_t fi = 0, fj = 1;
        double fd = 0.0;
        for (std::size_t i = 0; i < c2.size(); ++i)
            for (std::size_t j = i + 1; j < c2.size(); ++j) {
                const double d = dist2(c2[i], c2[j]);
                if (d > fd) {
                    fd = d;
                    fi = i;
                    fj = j;
                }
            }
        Frame frame;
        frame.origin = mec.center;
        Vec2 axis = fd > kGeomEps ? (c2[fj] - c2[fi]) * (1.0 / fd)
                                  : Vec2{1.0, 0.0};
        frame.n_hat = {-axis.y, axis.x};
        res = descent_result(map, params, c2, frame, fd, h_min, 0.0, delta,
                             h_min, rho_cap, tag);
    }
    res.classes = std::move(classes);
    return res;
}

}  // namespace

DeploymentResult mrsa(const TerrainMap& map, const std::vector<Vec2>& users,
                      const ChannelParams& params, const MassDensity& md,
                      const ClassificationConfig& cfg, double h, double delta,
                      double h_min, double rho_cap) {
    if (users.empty()) throw std::invalid_argument("mrsa: need >= 1 user");
    const DeploymentResult center = bia(users, md, h, 100, delta);
    const Vec2 c = center.uav_position.ground();
    ClassificationConfig ncfg = cfg;
    ncfg.mode = ClassifyMode::NonTerrain;
    const LosModelParams unused_model{};  // NonTerrain ignores the LoS model
    std::vector<UserClass> classes;
    classes.reserve(users.size());
    for (const auto& u : users) {
        const double r = std::sqrt((u - c).dot(u - c) + h * h);
        classes.push_back(classify_user(params, unused_model, ncfg, h, r));
    }
    return pipeline_tail(map, users, params, std::move(classes), c, delta,
                         h_min, rho_cap, "mrsa");
}

DeploymentResult hda(const TerrainMap& map, const std::vector<Vec2>& users,
                     const ChannelParams& params, const LosModelParams& model,
                     const ClassificationConfig& cfg, const HRange& h_range,
                     double window, double delta, double h_min,
                     double rho_cap) {
    if (users.empty()) throw std::invalid_argument("hda: need >= 1 user");
    const DeploymentResult center =
        scpa(users, params, model, h_range, std::nullopt, window, delta);
    const Vec2 c = center.uav_position.ground();
    const double hc = center.uav_position.z;
    ClassificationConfig tcfg = cfg;
    tcfg.mode = ClassifyMode::Terrain;
    std::vector<UserClass> classes;
    classes.reserve(users.size());
    for (const auto& u : users) {
        const double r = std::sqrt((u - c).dot(u - c) + hc * hc);
        classes.push_back(classify_user(params, model, tcfg, hc, r));
    }
    return pipeline_tail(map, users, params, std::move(classes), c, delta,
                         h_min, rho_cap, "hda");
}

DeploymentResult brute_force(const TerrainMap& map,
                             const std::vector<Vec2>& users,
                             const ChannelParams& params, double grid_step,
                             const HRange& h_range, BlockageMode mode) {
    if (users.empty()) throw std::invalid_argument("brute_force: need >= 1 user");
    if (!(grid_step > 0.0))
        throw std::invalid_argument("brute_force: grid_step must be > 0");
    const Rect& area = map.area();
    double best = -1.0;
    Point3 best_pos;
    for (double hh = h_range.lo; hh <= h_range.hi + 1e-9; hh += h_range.step) {
        for (double x = area.x_min; x <= area.x_max + 1e-9; x += grid_step) {
            for (double y = area.y_min; y <= area.y_max + 1e-9;
                 y += grid_step) {
                const Point3 pos{x, y, hh};
                double total = 0.0;
                for (const auto& u : users) {
                    const LinkState s = link_state(map, u, pos, mode);
                    const double r = dist3({u.x, u.y, 0.0}, pos);
                    total += conditional_coverage(params, s, r);
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

}  // namespace uavdep
