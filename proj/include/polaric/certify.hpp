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
//
// Numerical certification of the achievable multiplexing gain: each claim
// about a minimal antenna configuration is re-derived end to end (channels,
// beamformers, leakage, rate slope) and reported as a pass/fail check list.

#ifndef POLARIC_CERTIFY_HPP
#define POLARIC_CERTIFY_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "polaric/evaluation.hpp"
#include "polaric/zfdesign.hpp"

namespace polaric {

struct CheckReport {
    std::string title;
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string &what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string &what) { lines.push_back("     " + what); }
};

inline std::string format_value(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

/// Deterministic well-conditioned placement: transmitters on an inner ring,
/// receivers on an outer ring, with the twist and jitter chosen from a small
/// candidate grid to maximize the genericity margin.  Uniform random draws
/// cannot reach usable margins for large K within the resampling budget, so
/// the certification scenarios come from here (margins are reported).
inline Scenario well_separated_scenario(int K, int M) {
    auto build = [&](double twist, double jitter) {
        Scenario s;
        s.K = K;
        s.M = M;
        s.wavenumber = kDefaultWavenumber;
        s.antenna_offsets = detail::half_wavelength_row(M, s.wavenumber);
        s.tx_configs.assign(K, DipoleConfig::full());
        s.rx_configs.assign(K, DipoleConfig::full());
        const Eigen::Vector2d center(50.0, 50.0);
        for (int i = 0; i < K; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / K +
                                 jitter * std::sin(2.7 * i + 0.4);
            s.tx_positions.push_back(center + 30.0 * Eigen::Vector2d(std::cos(theta),
                                                                     std::sin(theta)));
            s.rx_positions.push_back(center + 46.0 * Eigen::Vector2d(std::cos(theta + twist),
                                                                     std::sin(theta + twist)));
        }
        return s;
    };

    Scenario best;
    double best_margin = -1.0;
    for (int t = 0; t < 24; ++t) {
        const double twist = (t + 1) / 25.0 * 2.0 * std::numbers::pi / K;
        for (double jitter : {0.0, 0.05, 0.11}) {
            Scenario s = build(twist, jitter);
            const double margin = genericity_margin(s);
            if (margin > best_margin) {
                best_margin = margin;
                best = s;
            }
        }
    }
    return best;
}

namespace detail {

inline void set_configs(Scenario &s, const DipoleConfig &cfg) {
    s.tx_configs.assign(s.K, cfg);
    s.rx_configs.assign(s.K, cfg);
}

} // namespace detail

/// K = 2 and K = 3 with two rotatable dipoles per node: rotation alone kills
/// every cross channel exactly and leaves equal diagonal direct gains given
/// by products of sines of the ray-angle differences.
inline CheckReport certify_optimal_placement(int K) {
    CheckReport report;
    report.title = "optimal placement, K=" + std::to_string(K) + " (2 dipoles per node)";

    Scenario base = well_separated_scenario(K, 1);
    detail::set_configs(base, {{DipoleComponent::Ex, DipoleComponent::Mx}, 0.0});
    const OptimalPlacement placement = optimal_placement_design(base);
    const Scenario rotated = apply_optimal_placement(base, placement);
    report.note("genericity margin " + format_value(genericity_margin(base)));

    double worst_cross = 0.0, worst_diag = 0.0, worst_offdiag = 0.0;
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            const Eigen::MatrixXcd h = link_channel(rotated, i, j).matrix;
            if (i != j) {
                worst_cross = std::max(worst_cross, h.cwiseAbs().maxCoeff());
            } else {
                const LinkGeometry g = link_geometry(rotated, i, i);
                const std::complex<double> expect =
                    g.attenuation * std::exp(std::complex<double>(0.0, -rotated.wavenumber * g.range)) *
                    placement.gains[i];
                worst_diag = std::max({worst_diag, std::abs(h(0, 0) - expect) / std::abs(expect),
                                       std::abs(h(1, 1) - expect) / std::abs(expect)});
                worst_offdiag = std::max(worst_offdiag,
                                         std::max(std::abs(h(0, 1)), std::abs(h(1, 0))));
            }
        }
    }
    report.check(worst_cross <= 1e-12,
                 "cross channels null after rotation (max |entry| " + format_value(worst_cross) + ")");
    report.check(worst_diag <= 1e-12,
                 "direct diagonals match sine products (rel err " + format_value(worst_diag) + ")");
    report.check(worst_offdiag <= 1e-12, "direct channels diagonal");

    // Rate slope with trivial width-2 transceivers on the 2x2 links.
    std::vector<EffectiveChannel> eff(K);
    std::vector<Eigen::Matrix2cd> residual(K, Eigen::Matrix2cd::Zero());
    for (int i = 0; i < K; ++i) {
        eff[i].user = i;
        eff[i].lambda = link_channel(rotated, i, i).matrix;
        for (int j = 0; j < K; ++j) {
            if (j == i) continue;
            const Eigen::Matrix2cd g = link_channel(rotated, j, i).matrix;
            residual[i] += g * g.adjoint();
        }
    }
    const MuxgEstimate est = estimate_muxg(eff, residual);
    report.check(std::abs(est.gamma_hat - 2.0 * K) <= 0.02 * 2.0 * K,
                 "muxg slope " + format_value(est.gamma_hat) + " within 2% of " +
                     std::to_string(2 * K));
    return report;
}

/// K = 2 or 3, fixed single polarimetric antenna, four dipole components.
/// The in-plane four certify with both the published matrices and the SVD
/// route; the three-plus-one variants certify generically; the z-axis fourth
/// dipole leaves only one component on one polarization, so nulling succeeds
/// but the direct links collapse to rank 1 and 2K is out of reach.
inline CheckReport certify_fixed_single_antenna(int K) {
    CheckReport report;
    report.title = "fixed placement M=1, K=" + std::to_string(K) + " (4 of 6 components)";
    const Scenario base = well_separated_scenario(K, 1);
    report.note("genericity margin " + format_value(genericity_margin(base)));

    using DC = DipoleComponent;
    const DipoleConfig in_plane = DipoleConfig::in_plane_four();
    const DipoleConfig three_e{{DC::Ex, DC::Ey, DC::Ez, DC::Mx}, 0.0};
    const DipoleConfig three_m{{DC::Ey, DC::Mx, DC::My, DC::Mz}, 0.0};
    const DipoleConfig z_fourth{{DC::Ex, DC::Ey, DC::Ez, DC::Mz}, 0.0};

    // In-plane four, closed-form route.
    {
        Scenario s = base;
        detail::set_configs(s, in_plane);
        const NullingAssignment assignment = assignment_for(s);
        ZfOptions opts;
        opts.closed_form = true;
        const ZFDesign design = design_zf(s, assignment, opts);
        report.check(design.certified(), "closed-form design certified (max leakage " +
                                             format_value(design.max_assigned_leakage) + ")");
        if (K == 3) {
            double worst = 0.0;
            for (const EffectiveChannel &eff : effective_channels(design, s)) {
                const std::complex<double> expect = *eff.predicted_diagonal;
                worst = std::max({worst, std::abs(eff.lambda(0, 0) - expect) / std::abs(expect),
                                  std::abs(eff.lambda(1, 1) - expect) / std::abs(expect)});
            }
            report.check(worst <= 1e-10,
                         "diagonals match sine-product gains (rel err " + format_value(worst) + ")");
        }
        const MuxgEstimate est = estimate_muxg(design, s);
        report.check(std::abs(est.gamma_hat - 2.0 * K) <= 0.02 * 2.0 * K,
                     "muxg slope " + format_value(est.gamma_hat) + " within 2% of " +
                         std::to_string(2 * K));
        report.check(dof_count(design, s) == 2 * K, "certified DOF count " + std::to_string(2 * K));

        const ZFDesign generic = design_zf(s, assignment);
        report.check(generic.certified(), "generic null-space design certified");
    }

    // Variant configs.
    for (const auto &[cfg, label] : {std::pair{three_e, "3 electric + 1 in-plane magnetic"},
                                     std::pair{three_m, "3 magnetic + 1 in-plane electric"}}) {
        Scenario s = base;
        detail::set_configs(s, cfg);
        const ZFDesign design = design_zf(s, assignment_for(s));
        const MuxgEstimate est = estimate_muxg(design, s);
        report.check(design.certified() && std::abs(est.gamma_hat - 2.0 * K) <= 0.02 * 2.0 * K,
                     std::string(label) + ": certified, muxg " + format_value(est.gamma_hat));
    }

    // z-axis fourth dipole: one polarization keeps a single component, so the
    // nulled direction drags the direct link's vertical path down with it.
    {
        Scenario s = base;
        detail::set_configs(s, z_fourth);
        const ZFDesign design = design_zf(s, assignment_for(s));
        const MuxgEstimate est = estimate_muxg(design, s);
        const int dof = dof_count(design, s);
        report.check(dof < 2 * K && est.gamma_hat < 0.98 * 2.0 * K,
                     "z-axis fourth dipole falls short of 2K (dof " + std::to_string(dof) +
                         ", muxg " + format_value(est.gamma_hat) + ")");
        report.note("z-config leakage stays at " + format_value(design.max_assigned_leakage) +
                    ": nulling works, the direct links lose rank instead");
    }
    return report;
}

/// K = 4 or 5 with all six components: each side cancels up to two links and
/// the dual-null design certifies the full 2K.
inline CheckReport certify_fixed_full_six(int K) {
    CheckReport report;
    report.title = "fixed placement M=1, K=" + std::to_string(K) + " (all 6 components)";
    Scenario s = well_separated_scenario(K, 1);
    report.note("genericity margin " + format_value(genericity_margin(s)));

    const NullingAssignment assignment = assignment_for(s);
    const ZFDesign design = design_zf(s, assignment);
    report.check(design.certified(), "generic design certified (max leakage " +
                                         format_value(design.max_assigned_leakage) + ")");
    report.check(dof_count(design, s) == 2 * K, "certified DOF count " + std::to_string(2 * K));
    const MuxgEstimate est = estimate_muxg(design, s);
    report.check(std::abs(est.gamma_hat - 2.0 * K) <= 0.02 * 2.0 * K,
                 "muxg slope " + format_value(est.gamma_hat) + " within 2% of " +
                     std::to_string(2 * K));

    if (K == 5) {
        // Published dual-null route, including the printed column scaling.
        ZfOptions opts;
        opts.closed_form = true;
        const ZFDesign cf = design_zf(s, assignment, opts);
        report.check(cf.certified(), "closed-form dual-null design certified");
        double worst = 0.0;
        for (const EffectiveChannel &eff : effective_channels(cf, s)) {
            const std::complex<double> expect = *eff.predicted_diagonal;
            worst = std::max({worst, std::abs(eff.lambda(0, 0) - expect) / std::abs(expect),
                              std::abs(eff.lambda(1, 1) - expect) / std::abs(expect)});
        }
        report.check(worst <= 1e-8,
                     "diagonals match the dual-form gain products (rel err " +
                         format_value(worst) + ")");
    }
    return report;
}

/// The antenna count that completes the assignment: ceil((K+1)/6) polarimetric
/// antennas per node, checked end to end for K up to 13 and arithmetically up
/// to K = 30.
inline CheckReport certify_antenna_scaling(bool end_to_end = true) {
    CheckReport report;
    report.title = "multiple polarimetric antennas: M = ceil((K+1)/6)";

    bool identity_ok = true;
    for (int K = 2; K <= 30; ++K) {
        int smallest = 0;
        for (int M = 1; M <= 7; ++M) {
            if (assign_nulling(K, M).complete()) {
                smallest = M;
                break;
            }
        }
        if (smallest != (K + 6) / 6) identity_ok = false;
    }
    report.check(identity_ok, "smallest complete M equals ceil((K+1)/6) for K = 2..30");

    if (!end_to_end) return report;
    for (int K = 6; K <= 13; ++K) {
        const int m_star = (K + 6) / 6;
        report.check(!assign_nulling(K, m_star - 1).complete(),
                     "K=" + std::to_string(K) + ": M=" + std::to_string(m_star - 1) +
                         " leaves links unassigned");
        Scenario s = well_separated_scenario(K, m_star);
        const ZFDesign design = design_zf(s, assign_nulling(K, m_star));
        const int dof = dof_count(design, s);
        report.check(design.certified() && dof == 2 * K,
                     "K=" + std::to_string(K) + ", M=" + std::to_string(m_star) +
                         ": certified, DOF " + std::to_string(dof) + " (leakage " +
                         format_value(design.max_assigned_leakage) + ")");
        if (K == 7) {
            const MuxgEstimate est = estimate_muxg(design, s);
            report.check(std::abs(est.gamma_hat - 14.0) <= 0.02 * 14.0,
                         "K=7, M=2 end to end: muxg slope " + format_value(est.gamma_hat) +
                             " within 2% of 14");
        }
    }
    return report;
}

/// Full proposition suite; restrict to one K in 2..13 with the filter
/// (0 = all).
inline std::vector<CheckReport> certify_propositions(int only_k = 0) {
    std::vector<CheckReport> reports;
    auto want = [&](int K) { return only_k == 0 || only_k == K; };
    for (int K : {2, 3})
        if (want(K)) reports.push_back(certify_optimal_placement(K));
    for (int K : {2, 3})
        if (want(K)) reports.push_back(certify_fixed_single_antenna(K));
    for (int K : {4, 5})
        if (want(K)) reports.push_back(certify_fixed_full_six(K));
    if (only_k == 0 || (only_k >= 6 && only_k <= 13))
        reports.push_back(certify_antenna_scaling());
    return reports;
}

} // namespace polaric

#endif
