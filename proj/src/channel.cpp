#include "uavdep/channel.hpp"

#include <cmath>

#include "uavdep/losmodel.hpp"

namespace uavdep {

ChannelParams make_channel_params(const ChannelConfig& cfg) {
    if (cfg.m_los < 1 || cfg.m_nlos < 1)
        throw std::invalid_argument("Nakagami shape m must be a positive integer");
    ChannelParams p;
    p.zeta = dbm_to_watts(cfg.tx_power_dbm);
    p.sigma2 = dbm_to_watts(cfg.noise_dbm);
    p.gamma = db_to_linear(cfg.snr_threshold_db);
    p.los = {cfg.alpha_los, cfg.m_los, db_to_linear(cfg.eta_los_db)};
    p.nlos = {cfg.alpha_nlos, cfg.m_nlos, db_to_linear(cfg.eta_nlos_db)};
    if (p.nlos.alpha < p.los.alpha)
        throw std::invalid_argument("alpha_nlos must be >= alpha_los");
    return p;
}

static void check_r(double r) {
    if (!(r > 0.0)) throw std::domain_error("distance r must be > 0");
}

double mean_received_power(const ChannelParams& p, LinkState s, double r) {
    check_r(r);
    const StateParams& sp = p.state(s);
    return sp.eta * p.zeta * std::pow(r, -sp.alpha);
}

double sample_fading_gain(const ChannelParams& p, LinkState s, Rng& rng) {
    const int m = p.state(s).m;
    return rng.gamma(static_cast<double>(m), 1.0 / static_cast<double>(m));
}

double average_snr(const ChannelParams& p, LinkState s, double r) {
    return mean_received_power(p, s, r) / p.sigma2;
}

double mu(const ChannelParams& p, LinkState s, double r) {
    check_r(r);
    const StateParams& sp = p.state(s);
    return p.gamma * p.sigma2 * std::pow(r, sp.alpha) / (sp.eta * p.zeta);
}

double conditional_coverage(const ChannelParams& p, LinkState s, double r) {
    if (s == LinkState::DeepBlocked) return 0.0;
    const double u = mu(p, s, r);
    const int m = p.state(s).m;
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < m; ++n) {
        term *= u / n;
        sum += term;
    }
    const double v = std::exp(-u) * sum;
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double coverage_probability(const ChannelParams& p, const LosModelParams& model,
                            double h, double r) {
    if (!(h > 0.0)) throw std::domain_error("altitude h must be > 0");
    if (h > r) throw std::domain_error("3-D distance r must be >= h");
    const double pl = p_los(model, elevation_angle(h, r));
    return pl * conditional_coverage(p, LinkState::LoS, r) +
           (1.0 - pl) * conditional_coverage(p, LinkState::NLoS, r);
}

}  // namespace uavdep
