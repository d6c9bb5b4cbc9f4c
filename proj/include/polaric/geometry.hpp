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

#ifndef POLARIC_GEOMETRY_HPP
#define POLARIC_GEOMETRY_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "polaric/dipole.hpp"
#include "polaric/errors.hpp"

namespace polaric {

// Default carrier: 2 GHz (lambda = 0.15 m).
inline constexpr double kDefaultWavenumber = 2.0 * std::numbers::pi / 0.15;
// Random node placements are drawn from this square, in meters.
inline constexpr double kPlacementBox = 100.0;
inline constexpr double kDefaultMinAngleSep = 0.05;
inline constexpr int kResampleBudget = 1000;

/// Separation a uniform draw can actually reach within the resampling budget.
/// The number of angle pairs that must all clear the margin grows like K^3,
/// so the feasible separation shrinks roughly as 1/K^2.
inline double feasible_angle_sep(int k_users) {
    return std::min(kDefaultMinAngleSep, 0.35 / (static_cast<double>(k_users) * k_users));
}

/// One transmitter-to-receiver ray in the azimuth plane.  The angle follows
/// the propagation direction; the receive pattern is evaluated at the same
/// angle (this matches the symmetric channel form; the opposite convention
/// only flips signs of half the receive rows and changes nothing measurable).
struct LinkGeometry {
    double phi;         // ray angle in [0, 2pi)
    double range;       // distance in meters, > 0
    double attenuation; // free-space field amplitude decay 1/range
};

/// A K-pair interference scenario: planar node positions, the per-node dipole
/// configurations, and the array layout shared by every node.
struct Scenario {
    int K = 0;
    int M = 1;
    std::vector<Eigen::Vector2d> tx_positions;
    std::vector<Eigen::Vector2d> rx_positions;
    std::vector<Eigen::Vector2d> antenna_offsets; // offsets[0] must be the origin
    double wavenumber = kDefaultWavenumber;
    std::vector<DipoleConfig> tx_configs;
    std::vector<DipoleConfig> rx_configs;
    std::uint64_t seed = 0;

    void validate() const {
        if (K < 1) throw ScenarioError("K must be >= 1");
        if (M < 1) throw ScenarioError("M must be >= 1");
        if (static_cast<int>(tx_positions.size()) != K ||
            static_cast<int>(rx_positions.size()) != K)
            throw ScenarioError("positions: need exactly K transmitters and K receivers");
        if (static_cast<int>(antenna_offsets.size()) != M)
            throw ScenarioError("antenna_offsets: need exactly M entries");
        if (antenna_offsets[0].norm() != 0.0)
            throw ScenarioError("antenna_offsets[0] must be the origin");
        if (!(wavenumber > 0.0)) throw ScenarioError("wavenumber must be > 0");
        if (static_cast<int>(tx_configs.size()) != K ||
            static_cast<int>(rx_configs.size()) != K)
            throw ScenarioError("configs: need one dipole config per node");
        for (const auto &c : tx_configs) c.validate();
        for (const auto &c : rx_configs) c.validate();
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                if ((rx_positions[j] - tx_positions[i]).norm() == 0.0)
                    throw ScenarioError("transmitter " + std::to_string(i) +
                                        " is co-located with receiver " + std::to_string(j));
        for (const auto &p : tx_positions)
            if (!p.allFinite()) throw ScenarioError("non-finite transmitter position");
        for (const auto &p : rx_positions)
            if (!p.allFinite()) throw ScenarioError("non-finite receiver position");
    }
};

inline double normalize_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    return a;
}

/// Ray from transmitter i toward receiver j (0-based indices).
inline LinkGeometry link_geometry(const Scenario &s, int i, int j) {
    const Eigen::Vector2d d = s.rx_positions[j] - s.tx_positions[i];
    const double r = d.norm();
    if (r == 0.0)
        throw DegenerateGeometryError("tx " + std::to_string(i) + " and rx " +
                                      std::to_string(j) + " coincide");
    return {normalize_angle(std::atan2(d.y(), d.x())), r, 1.0 / r};
}

/// Smallest pairwise angular separation across all rays incident to any one
/// node, measured as asin(min |sin(phi_a - phi_b)|).  Zero flags a placement
/// where two incident rays coincide modulo pi and some null space collapses
/// onto a direct link.  K = 1 has no angle pairs and returns pi/2.
inline double genericity_margin(const Scenario &s) {
    std::vector<std::vector<double>> phi(s.K, std::vector<double>(s.K));
    for (int i = 0; i < s.K; ++i)
        for (int j = 0; j < s.K; ++j) phi[i][j] = link_geometry(s, i, j).phi;

    double min_sin = 1.0;
    auto visit_pairs = [&](auto angle_of) {
        for (int a = 0; a < s.K; ++a)
            for (int b = a + 1; b < s.K; ++b)
                min_sin = std::min(min_sin, std::abs(std::sin(angle_of(a) - angle_of(b))));
    };
    for (int i = 0; i < s.K; ++i) {
        visit_pairs([&](int j) { return phi[i][j]; }); // rays leaving tx i
        visit_pairs([&](int a) { return phi[a][i]; }); // rays entering rx i
    }
    return std::asin(std::min(1.0, min_sin));
}

namespace detail {

// One uniform double in [0, 1); keeps the draw order independent of any
// library distribution implementation.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<Eigen::Vector2d> half_wavelength_row(int m, double wavenumber) {
    std::vector<Eigen::Vector2d> offsets(m);
    const double spacing = std::numbers::pi / wavenumber; // lambda / 2
    for (int q = 0; q < m; ++q) offsets[q] = Eigen::Vector2d(q * spacing, 0.0);
    return offsets;
}

} // namespace detail

/// Draws node positions uniformly in the placement box and resamples until
/// the genericity margin reaches min_angle_sep.  Deterministic in the seed;
/// draw order is tx0.x, tx0.y, ..., rx0.x, rx0.y, ... per attempt.
inline Scenario random_generic_scenario(int K, int M, std::uint64_t seed,
                                        double min_angle_sep = kDefaultMinAngleSep) {
    if (K < 1 || M < 1) throw ScenarioError("K and M must be >= 1");
    if (!(min_angle_sep > 0.0)) throw ScenarioError("min_angle_sep must be > 0");

    Scenario s;
    s.K = K;
    s.M = M;
    s.wavenumber = kDefaultWavenumber;
    s.antenna_offsets = detail::half_wavelength_row(M, s.wavenumber);
    s.tx_configs.assign(K, DipoleConfig::full());
    s.rx_configs.assign(K, DipoleConfig::full());
    s.seed = seed;

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        s.tx_positions.clear();
        s.rx_positions.clear();
        for (int i = 0; i < K; ++i)
            s.tx_positions.emplace_back(detail::uniform01(rng) * kPlacementBox,
                                        detail::uniform01(rng) * kPlacementBox);
        for (int i = 0; i < K; ++i)
            s.rx_positions.emplace_back(detail::uniform01(rng) * kPlacementBox,
                                        detail::uniform01(rng) * kPlacementBox);

        bool separated = true;
        for (int i = 0; i < K && separated; ++i)
            for (int j = 0; j < K && separated; ++j)
                if ((s.rx_positions[j] - s.tx_positions[i]).norm() < 1e-9) separated = false;
        if (!separated) continue;

        if (genericity_margin(s) >= min_angle_sep) return s;
    }
    throw NonGenericGeometryError(
        "no placement with angle separation >= " + std::to_string(min_angle_sep) +
        " found in " + std::to_string(kResampleBudget) + " attempts (K=" +
        std::to_string(K) + ")");
}

} // namespace polaric

#endif
