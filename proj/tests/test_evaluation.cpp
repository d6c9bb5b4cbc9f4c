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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "polaric/certify.hpp"
#include "polaric/evaluation.hpp"

using namespace polaric;
using Catch::Approx;
using DC = DipoleComponent;

namespace {

std::vector<EffectiveChannel> diag_users(const std::vector<double> &gains) {
    std::vector<EffectiveChannel> eff;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        EffectiveChannel e;
        e.user = static_cast<int>(i);
        e.lambda = gains[i] * Eigen::Matrix2cd::Identity();
        eff.push_back(e);
    }
    return eff;
}

Scenario scenario_with(const Scenario &base, const DipoleConfig &cfg) {
    Scenario s = base;
    s.tx_configs.assign(s.K, cfg);
    s.rx_configs.assign(s.K, cfg);
    return s;
}

} // namespace

TEST_CASE("sum rate closed forms") {
    CHECK(sum_rate(diag_users({0.0, 0.0, 0.0}), 100.0) == Approx(0.0).margin(0));

    // One user, identity link: 2 log2(1 + snr/2).
    for (double snr : {1.0, 100.0, 1e6})
        CHECK(sum_rate(diag_users({1.0}), snr) == Approx(2.0 * std::log2(1.0 + snr / 2.0)));

    CHECK_THROWS_AS(sum_rate(diag_users({1.0}), 0.0), std::invalid_argument);
}

TEST_CASE("certified K=3 rate reduces to per-stream logs of the diagonal gains") {
    const Scenario s =
        scenario_with(well_separated_scenario(3, 1), DipoleConfig::in_plane_four());
    ZfOptions opts;
    opts.closed_form = true;
    const ZFDesign design = design_zf(s, assignment_for(s), opts);
    REQUIRE(design.certified());
    const std::vector<EffectiveChannel> eff = effective_channels(design, s);
    const std::vector<Eigen::Matrix2cd> residual = residual_covariances(design, s);

    for (double snr : {1e4, 1e8}) {
        double expect = 0.0;
        for (const EffectiveChannel &e : eff)
            for (int stream = 0; stream < 2; ++stream)
                expect += std::log2(1.0 + snr / 6.0 * std::norm(e.lambda(stream, stream)));
        CHECK(sum_rate(eff, residual, snr) == Approx(expect).margin(1e-6));
    }
}

TEST_CASE("sum rate increases with snr when any link is alive") {
    const std::vector<EffectiveChannel> eff = diag_users({0.0, 0.3});
    double prev = 0.0;
    for (double snr = 1.0; snr <= 1e12; snr *= 100.0) {
        const double rate = sum_rate(eff, snr);
        CHECK(rate > prev);
        prev = rate;
    }
}

TEST_CASE("slope estimates match the stream count") {
    // All gains healthy: slope within 2% of 2K.
    const std::vector<EffectiveChannel> healthy = diag_users({0.5, 0.2, 0.9});
    const std::vector<Eigen::Matrix2cd> no_resid(3, Eigen::Matrix2cd::Zero());
    const MuxgEstimate est = estimate_muxg(healthy, no_resid);
    CHECK(std::abs(est.gamma_hat - 6.0) <= 0.12);
    CHECK_FALSE(est.residual_interference);

    // One dead user: two streams gone.
    const MuxgEstimate dead = estimate_muxg(diag_users({0.5, 0.0, 0.9}), no_resid);
    CHECK(std::abs(dead.gamma_hat - 4.0) <= 0.08);

    // The keyhole ceiling holds for arbitrary gains.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> gains(4);
        for (double &g : gains)
            g = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0;
        const MuxgEstimate bounded =
            estimate_muxg(diag_users(gains), std::vector<Eigen::Matrix2cd>(4, Eigen::Matrix2cd::Zero()));
        CHECK(bounded.gamma_hat <= 2.0 * 4 + 0.01);
    }
}

TEST_CASE("slope can be read off a sampled curve") {
    const std::vector<EffectiveChannel> eff = diag_users({1.0});
    const std::vector<Eigen::Matrix2cd> residual(1, Eigen::Matrix2cd::Zero());
    const RateCurve curve = rate_curve(eff, residual, {1e2, kSlopeSnrLow, kSlopeSnrHigh});
    const MuxgEstimate est = muxg_slope(curve);
    CHECK(est.gamma_hat == Approx(estimate_muxg(eff, residual).gamma_hat));
    CHECK_THROWS_AS(muxg_slope(curve, 10.0, 1e10), std::invalid_argument);

    // Curves come out sorted and nondecreasing.
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
        CHECK(curve.points[p].snr > curve.points[p - 1].snr);
        CHECK(curve.points[p].sum_rate >= curve.points[p - 1].sum_rate);
    }
}

TEST_CASE("unnulled interference saturates the rate") {
    Scenario s = scenario_with(random_generic_scenario(5, 1, 201), DipoleConfig{{DC::Ex, DC::Ey}, 0.0});
    ZfOptions opts;
    opts.allow_partial = true;
    const ZFDesign design = design_zf(s, assignment_for(s), opts);
    const std::vector<EffectiveChannel> eff = effective_channels(design, s);
    const std::vector<Eigen::Matrix2cd> residual = residual_covariances(design, s);

    const MuxgEstimate saturated = estimate_muxg(eff, residual);
    const MuxgEstimate clean =
        estimate_muxg(eff, std::vector<Eigen::Matrix2cd>(5, Eigen::Matrix2cd::Zero()));
    CHECK(saturated.residual_interference);
    CHECK(saturated.gamma_hat < clean.gamma_hat);
    CHECK(saturated.gamma_hat < 0.5);
}

TEST_CASE("dof counting") {
    // Full six components, K=5: all ten streams certify.
    const Scenario five = well_separated_scenario(5, 1);
    const ZFDesign d5 = design_zf(five, assignment_for(five));
    CHECK(dof_count(d5, five) == 10);

    // A single keyhole link carries two streams.
    const Scenario one = well_separated_scenario(1, 1);
    const ZFDesign d1 = design_zf(one, assignment_for(one));
    CHECK(dof_count(d1, one) == 2);

    // Electric-only users never certify a stream.
    Scenario weak = scenario_with(random_generic_scenario(5, 1, 77), DipoleConfig{{DC::Ex, DC::Ey}, 0.0});
    ZfOptions opts;
    opts.allow_partial = true;
    const ZFDesign dw = design_zf(weak, assignment_for(weak), opts);
    CHECK(dof_count(dw, weak) < 10);

    // Scaling all coordinates changes phases and attenuations, not the DOF.
    Scenario scaled = five;
    for (auto &p : scaled.tx_positions) p *= 10.0;
    for (auto &p : scaled.rx_positions) p *= 10.0;
    const ZFDesign ds = design_zf(scaled, assignment_for(scaled));
    CHECK(dof_count(ds, scaled) == dof_count(d5, five));
}

TEST_CASE("gamma and dof agree on certified designs") {
    for (int K : {3, 5}) {
        const Scenario s = well_separated_scenario(K, 1);
        const ZFDesign design = design_zf(s, assignment_for(s));
        REQUIRE(design.certified());
        const int dof = dof_count(design, s);
        const MuxgEstimate est = estimate_muxg(design, s);
        CHECK(std::abs(est.gamma_hat - dof) <= 0.02 * dof);
    }
}

TEST_CASE("dipole sweep rises with the component count and tops out at ten") {
    const std::vector<SweepRow> table = dipole_sweep(3, 9);
    REQUIRE(table.size() == 5);
    CHECK(table.front().component_count == 2);
    CHECK(table.back().component_count == 6);
    CHECK(table.front().mean_dof < 10.0);
    CHECK(table.back().mean_dof == Approx(10.0));
    for (std::size_t r = 1; r < table.size(); ++r)
        CHECK(table[r].mean_dof >= table[r - 1].mean_dof);
    CHECK_THROWS_AS(dipole_sweep(0), std::invalid_argument);
}
