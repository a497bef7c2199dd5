#pragma once

#include <cmath>
#include <stdexcept>

#include "uavdep/rng.hpp"

namespace uavdep {

enum class LinkState { LoS, NLoS, DeepBlocked };

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct StateParams {
    double alpha = 2.0;  // path-loss exponent
    int m = 1;           // Nakagami shape (positive integer)
    double eta = 1.0;    // mean additional loss, linear
};

// All radio constants in linear units; dB/dBm only at the config boundary.
struct ChannelParams {
    double zeta = 1.0;      // transmit power, W
    double sigma2 = 1e-12;  // noise power, W
    double gamma = 100.0;   // SNR threshold, linear
    StateParams los;
    StateParams nlos;

    const StateParams& state(LinkState s) const {
        return s == LinkState::LoS ? los : nlos;
    }
};

// Table II defaults, dB-valued as the config file carries them.
struct ChannelConfig {
    double tx_power_dbm = 30.0;
    double noise_dbm = -98.0;
    double snr_threshold_db = 22.0;
    double alpha_los = 2.0;
    double alpha_nlos = 2.3;
    int m_los = 2;
    int m_nlos = 1;
    double eta_los_db = -35.0;
    double eta_nlos_db = -48.0;
};

ChannelParams make_channel_params(const ChannelConfig& cfg);

double mean_received_power(const ChannelParams& p, LinkState s, double r);
double sample_fading_gain(const ChannelParams& p, LinkState s, Rng& rng);
double average_snr(const ChannelParams& p, LinkState s, double r);
double mu(const ChannelParams& p, LinkState s, double r);

// Eq. (9): exp(-mu) * sum_{n<m} mu^n/n!. DeepBlocked -> 0.
double conditional_coverage(const ChannelParams& p, LinkState s, double r);

struct LosModelParams;  // losmodel.hpp
// Lemma 1: P_LoS * Pc_LoS + (1 - P_LoS) * Pc_NLoS at 3-D distance r.
double coverage_probability(const ChannelParams& p, const LosModelParams& model,
                            double h, double r);

}  // namespace uavdep
