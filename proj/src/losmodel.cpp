#include "uavdep/losmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace uavdep {

std::string family_name(LosFamily f) {
    switch (f) {
        case LosFamily::Sigmoid: return "sigmoid";
        case LosFamily::Tanh: return "tanh";
        case LosFamily::ReLu: return "relu";
    }
    return "?";
}

LosFamily family_from_name(const std::string& name) {
    if (name == "sigmoid") return LosFamily::Sigmoid;
    if (name == "tanh") return LosFamily::Tanh;
    if (name == "relu") return LosFamily::ReLu;
    throw std::invalid_argument("unknown LoS model family: " + name);
}

double elevation_angle(double h, double r) {
    if (!(h > 0.0)) throw std::domain_error("altitude h must be > 0");
    if (h > r) throw std::domain_error("need h <= r");
    if (r == h) return 90.0;
    const double horiz = std::sqrt(r * r - h * h);
    return std::atan2(h, horiz) * 180.0 / std::numbers::pi;
}

namespace {

// Raw (unclamped) family value; the fit operates on this form so that the
// Jacobian stays smooth. p_los clamps for probability semantics.
double raw_value(LosFamily family, double a, double b, double theta) {
    switch (family) {
        case LosFamily::Sigmoid:
            return 1.0 / (1.0 + a * std::exp(-b * (theta - a)));
        case LosFamily::Tanh: {
            const double e = std::exp(2.0 * b * theta);
            return a * (e - 1.0) / (e + 1.0);
        }
        case LosFamily::ReLu:
            return std::max(0.0, a * theta + b);
    }
    return 0.0;
}

// d(raw)/da, d(raw)/db.
void raw_jacobian(LosFamily family, double a, double b, double theta,
                  double& da, double& db) {
    switch (family) {
        case LosFamily::Sigmoid: {
            const double e = std::exp(-b * (theta - a));
            const double denom = 1.0 + a * e;
            // f = 1/denom; d denom/da = e + a e b; d denom/db = -a (theta-a) e
            da = -(e + a * e * b) / (denom * denom);
            db = a * (theta - a) * e / (denom * denom);
            break;
        }
        case LosFamily::Tanh: {
            const double th = std::tanh(b * theta);
            da = th;
            const double sech2 = 1.0 - th * th;
            db = a * theta * sech2;
            break;
        }
        case LosFamily::ReLu: {
            const bool active = a * theta + b > 0.0;
            da = active ? theta : 0.0;
            db = active ? 1.0 : 0.0;
            break;
        }
    }
}

bool valid_params(LosFamily family, double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    if (family == LosFamily::Sigmoid) return a > 1e-9 && b > 0.0;
    return true;
}

}  // namespace

double p_los(const LosModelParams& model, double theta_deg) {
    const double v = raw_value(model.family, model.a, model.b, theta_deg);
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> default_thetas() {
    std::vector<double> t;
    for (int d = 5; d <= 85; d += 5) t.push_back(static_cast<double>(d));
    return t;
}

std::vector<ElevationSample> collect_samples(const TerrainMap& map,
                                             const std::vector<Vec2>& users,
                                             const SampleConfig& cfg, Rng& rng) {
    if (users.empty()) throw std::invalid_argument("collect_samples: no users");
    if (!(cfg.h_lo > 0.0) || cfg.h_hi < cfg.h_lo)
        throw std::invalid_argument("collect_samples: bad altitude range");
    constexpr double kDeg = std::numbers::pi / 180.0;
    std::vector<ElevationSample> out;
    out.reserve(cfg.thetas.size());
    for (double theta : cfg.thetas) {
        if (!(theta > 0.0) || theta > 90.0)
            throw std::invalid_argument("collect_samples: theta out of (0,90]");
        int los = 0;
        for (int i = 0; i < cfg.per_theta_count; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
                const std::size_t ui = static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<int>(users.size()) - 1));
                const Vec2& u = users[ui];
                const double h = rng.uniform(cfg.h_lo, cfg.h_hi);
                const double horiz =
                    theta >= 90.0 ? 0.0 : h / std::tan(theta * kDeg);
                const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
                const Vec2 pos{u.x + horiz * std::cos(az),
                               u.y + horiz * std::sin(az)};
                if (!map.area().contains(pos)) continue;
                if (map.is_los({u.x, u.y, 0.0}, {pos.x, pos.y, h})) ++los;
                placed = true;
                break;
            }
            if (!placed)
                throw std::runtime_error(
                    "collect_samples: placement rejection stalled at theta " +
                    std::to_string(theta));
        }
        ElevationSample s;
        s.theta = theta;
        s.n = cfg.per_theta_count;
        s.t = static_cast<double>(los) / cfg.per_theta_count;
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(),
              [](const ElevationSample& a, const ElevationSample& b) {
                  return a.theta < b.theta;
              });
    return out;
}

double model_mse(const std::vector<ElevationSample>& samples,
                 const LosModelParams& model) {
    if (samples.empty()) return 0.0;
    double sse = 0.0;
    for (const auto& s : samples) {
        const double r = s.t - raw_value(model.family, model.a, model.b, s.theta);
        sse += r * r;
    }
    return sse / static_cast<double>(samples.size());
}

FitResult fit(const std::vector<ElevationSample>& samples, LosFamily family,
              double lambda1, double lambda2, double a_hat, double b_hat) {
    if (samples.size() < 2)
        throw std::invalid_argument("fit: need at least 2 samples");
    if (lambda1 < 0.0 || lambda2 < 0.0)
        throw std::invalid_argument("fit: lambdas must be >= 0");

    auto cost = [&](double a, double b) {
        if (!valid_params(family, a, b))
            return std::numeric_limits<double>::infinity();
        double c = 0.0;
        for (const auto& s : samples) {
            const double r = s.t - raw_value(family, a, b, s.theta);
            c += r * r;
        }
        c += lambda1 * (a - a_hat) * (a - a_hat) +
             lambda2 * (b - b_hat) * (b - b_hat);
        return c;
    };

    double a = a_hat, b = b_hat;
    double c_cur = cost(a, b);
    double lm = 1e-3;  // Levenberg damping
    constexpr int kMaxIter = 200;
    constexpr double kStepTol = 1e-10;
    FitResult res;
    for (res.iterations = 0; res.iterations < kMaxIter; ++res.iterations) {
        // Normal equations of the damped Gauss-Newton step.
        double jtj00 = lambda1, jtj01 = 0.0, jtj11 = lambda2;
        double jtr0 = -lambda1 * (a - a_hat), jtr1 = -lambda2 * (b - b_hat);
        for (const auto& s : samples) {
            double da = 0.0, db = 0.0;
            raw_jacobian(family, a, b, s.theta, da, db);
            const double r = s.t - raw_value(family, a, b, s.theta);
            jtj00 += da * da;
            jtj01 += da * db;
            jtj11 += db * db;
            jtr0 += da * r;
            jtr1 += db * r;
        }
        bool accepted = false;
        double step_norm = 0.0;
        for (int inner = 0; inner < 40; ++inner) {
            const double m00 = jtj00 + lm, m11 = jtj11 + lm;
            const double det = m00 * m11 - jtj01 * jtj01;
            if (std::abs(det) < 1e-300) {
                lm *= 3.0;
                continue;
            }
            const double sa = (m11 * jtr0 - jtj01 * jtr1) / det;
            const double sb = (m00 * jtr1 - jtj01 * jtr0) / det;
            const double c_new = cost(a + sa, b + sb);
            if (c_new < c_cur) {
                a += sa;
                b += sb;
                c_cur = c_new;
                lm = std::max(lm / 3.0, 1e-12);
                step_norm = std::hypot(sa, sb);
                accepted = true;
                break;
            }
            lm *= 3.0;
        }
        if (!accepted || step_norm < kStepTol) {
            res.converged = true;
            break;
        }
    }
    res.params = {family, a, b};
    res.mse = model_mse(samples, res.params);
    return res;
}

std::vector<ElevationSample> smooth_samples(
    const std::vector<ElevationSample>& samples) {
    std::vector<ElevationSample> sorted = samples;
    std::sort(sorted.begin(), sorted.end(),
              [](const ElevationSample& a, const ElevationSample& b) {
                  return a.theta < b.theta;
              });
    std::vector<ElevationSample> out = sorted;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double sum = sorted[i].t;
        int cnt = 1;
        if (i > 0) { sum += sorted[i - 1].t; ++cnt; }
        if (i + 1 < sorted.size()) { sum += sorted[i + 1].t; ++cnt; }
        out[i].t = sum / cnt;
    }
    return out;
}

std::string samples_to_csv(const std::vector<ElevationSample>& samples) {
    std::ostringstream ss;
    ss << "theta_deg,t,n\n";
    ss.precision(17);
    for (const auto& s : samples)
        ss << s.theta << ',' << s.t << ',' << s.n << '\n';
    return ss.str();
}

std::vector<ElevationSample> samples_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ElevationSample> out;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("theta_deg", 0) == 0) continue;
        }
        std::istringstream ls(line);
        std::string f0, f1, f2;
        if (!std::getline(ls, f0, ',') || !std::getline(ls, f1, ',') ||
            !std::getline(ls, f2, ','))
            throw std::runtime_error("samples CSV: malformed line: " + line);
        ElevationSample s;
        s.theta = std::stod(f0);
        s.t = std::stod(f1);
        s.n = std::stoi(f2);
        out.push_back(s);
    }
    return out;
}

}  // namespace uavdep
