// SPDX-License-Identifier: Apache-2.0
//
// polaric - polarimetric LOS interference channel simulator
// Copyright (C) 2026 polaric contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POLARIC_EVALUATION_HPP
#define POLARIC_EVALUATION_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polaric/zfdesign.hpp"

namespace polaric {

// High-SNR pair for slope estimation.  High enough that the log-det slope is
// within a fraction of a percent of its asymptote for effective gains down to
// around 1e-3, low enough to stay clear of double-precision overflow.
inline constexpr double kSlopeSnrLow = 1e8;
inline constexpr double kSlopeSnrHigh = 1e10;

struct RatePoint {
    double snr;      // linear total-power-to-noise ratio
    double sum_rate; // bits per channel use
};

struct RateCurve {
    std::vector<RatePoint> points; // strictly increasing in snr
    std::string scenario_id;
};

/// Estimated multiplexing gain: the rate slope between two SNR decades.
struct MuxgEstimate {
    double gamma_hat = 0.0;
    double snr_lo = kSlopeSnrLow;
    double snr_hi = kSlopeSnrHigh;
    bool residual_interference = false;
};

/// Sum rate with total power snr split equally over users and their two
/// streams: R_i = log2 det(I + (snr/2K) Lambda_i Lambda_i* (I + (snr/2K) Q_i)^-1)
/// where Q_i is the user's unit-power residual interference covariance
/// (zero for certified designs).
inline double sum_rate(const std::vector<EffectiveChannel> &effective,
                       const std::vector<Eigen::Matrix2cd> &residual, double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("snr must be > 0");
    if (residual.size() != effective.size())
        throw std::invalid_argument("residual covariance count must match user count");
    const double stream_power = snr / static_cast<double>(effective.size()) / 2.0;
    double total = 0.0;
    for (std::size_t i = 0; i < effective.size(); ++i) {
        const Eigen::Matrix2cd noise =
            Eigen::Matrix2cd::Identity() + stream_power * residual[i];
        const Eigen::Matrix2cd m =
            Eigen::Matrix2cd::Identity() +
            stream_power * effective[i].lambda * effective[i].lambda.adjoint() *
                noise.inverse();
        total += std::log2(std::max(1.0, m.determinant().real()));
    }
    return total;
}

inline double sum_rate(const std::vector<EffectiveChannel> &effective, double snr) {
    return sum_rate(effective,
                    std::vector<Eigen::Matrix2cd>(effective.size(), Eigen::Matrix2cd::Zero()),
                    snr);
}

inline MuxgEstimate estimate_muxg(const std::vector<EffectiveChannel> &effective,
                                  const std::vector<Eigen::Matrix2cd> &residual,
                                  double snr_lo = kSlopeSnrLow, double snr_hi = kSlopeSnrHigh) {
    MuxgEstimate est;
    est.snr_lo = snr_lo;
    est.snr_hi = snr_hi;
    est.gamma_hat = (sum_rate(effective, residual, snr_hi) - sum_rate(effective, residual, snr_lo)) /
                    (std::log2(snr_hi) - std::log2(snr_lo));
    for (const auto &q : residual)
        if (q.norm() > 1e-20) est.residual_interference = true;
    return est;
}

inline MuxgEstimate estimate_muxg(const ZFDesign &design, const Scenario &s,
                                  double snr_lo = kSlopeSnrLow, double snr_hi = kSlopeSnrHigh) {
    return estimate_muxg(effective_channels(design, s), residual_covariances(design, s),
                         snr_lo, snr_hi);
}

/// Slope read off an existing curve; both SNRs must be sampled in it.
inline MuxgEstimate muxg_slope(const RateCurve &curve, double snr_lo = kSlopeSnrLow,
                               double snr_hi = kSlopeSnrHigh) {
    auto rate_at = [&](double snr) {
        for (const auto &p : curve.points)
            if (std::abs(p.snr - snr) <= 1e-9 * snr) return p.sum_rate;
        throw std::invalid_argument("curve has no sample at snr " + std::to_string(snr));
    };
    MuxgEstimate est;
    est.snr_lo = snr_lo;
    est.snr_hi = snr_hi;
    est.gamma_hat =
        (rate_at(snr_hi) - rate_at(snr_lo)) / (std::log2(snr_hi) - std::log2(snr_lo));
    return est;
}

inline RateCurve rate_curve(const std::vector<EffectiveChannel> &effective,
                            const std::vector<Eigen::Matrix2cd> &residual,
                            std::vector<double> snr_grid) {
    std::sort(snr_grid.begin(), snr_grid.end());
    RateCurve curve;
    for (double snr : snr_grid) curve.points.push_back({snr, sum_rate(effective, residual, snr)});
    return curve;
}

/// Streams that actually count: direct gain above the rank floor of the raw
/// link and every cross link's contribution to the stream certified below the
/// leakage threshold.  Equals the sum of rank(Lambda_i) once a design is
/// fully certified.
inline int dof_count(const ZFDesign &design, const Scenario &s) {
    int dof = 0;
    for (int i = 0; i < s.K; ++i) {
        const Eigen::MatrixXcd direct = link_channel(s, i, i).matrix;
        const Eigen::Matrix2cd lambda =
            design.users[i].U.adjoint() * direct * design.users[i].V;
        const Eigen::VectorXd gains = singular_values(lambda);
        if (gains(0) <= 0.0) continue;
        const double gain_floor = kRankTolerance * singular_values(direct)(0);

        for (int stream = 0; stream < 2; ++stream) {
            if (gains(stream) <= gain_floor) continue;
            bool clean = true;
            for (int j = 0; j < s.K && clean; ++j) {
                if (j == i) continue;
                const Eigen::Matrix2cd g = design.users[i].U.adjoint() *
                                           link_channel(s, j, i).matrix *
                                           design.users[j].V;
                if (g.row(stream).norm() > kLeakageThreshold * gains(0)) clean = false;
            }
            if (clean) ++dof;
        }
    }
    return dof;
}

/// Component chain used by the dipole-count sweep, smallest to largest.
inline std::vector<DipoleConfig> sweep_component_chain() {
    using DC = DipoleComponent;
    return {
        {{DC::Ex, DC::Ey}, 0.0},
        {{DC::Ex, DC::Ey, DC::Mx}, 0.0},
        {{DC::Ex, DC::Ey, DC::Mx, DC::My}, 0.0},
        {{DC::Ex, DC::Ey, DC::Ez, DC::Mx, DC::My}, 0.0},
        DipoleConfig::full(),
    };
}

struct SweepRow {
    int component_count = 0;
    double mean_dof = 0.0;
};

/// Mean certified DOF of the 5-user channel versus activated dipole count,
/// best-effort designs over random generic placements.  Trials share seeds
/// across component counts so rows differ only in the configs.
inline std::vector<SweepRow> dipole_sweep(int trials, std::uint64_t seed = 0,
                                          std::vector<DipoleConfig> subsets = sweep_component_chain()) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    constexpr int kUsers = 5;
    std::vector<SweepRow> table;
    for (const auto &cfg : subsets) {
        double total = 0.0;
        for (int t = 0; t < trials; ++t) {
            Scenario s = random_generic_scenario(kUsers, 1, seed + static_cast<std::uint64_t>(t));
            s.tx_configs.assign(kUsers, cfg);
            s.rx_configs.assign(kUsers, cfg);
            const NullingAssignment assignment = assignment_for(s);
            ZfOptions opts;
            opts.allow_partial = true;
            const ZFDesign design = design_zf(s, assignment, opts);
            total += dof_count(design, s);
        }
        table.push_back({static_cast<int>(cfg.size()), total / trials});
    }
    return table;
}

} // namespace polaric

#endif
