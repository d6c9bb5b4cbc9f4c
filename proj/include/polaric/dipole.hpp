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

#ifndef POLARIC_DIPOLE_HPP
#define POLARIC_DIPOLE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "polaric/errors.hpp"

namespace polaric {

/// The six co-located radiators of one polarimetric antenna: three orthogonal
/// electric dipoles and three orthogonal magnetic dipoles (current loops).
/// This global ordering is fixed; every closed-form matrix indexes against it.
enum class DipoleComponent { Ex, Ey, Ez, Mx, My, Mz };

inline constexpr std::array<DipoleComponent, 6> kAllComponents = {
    DipoleComponent::Ex, DipoleComponent::Ey, DipoleComponent::Ez,
    DipoleComponent::Mx, DipoleComponent::My, DipoleComponent::Mz};

inline bool is_in_plane(DipoleComponent c) {
    return c != DipoleComponent::Ez && c != DipoleComponent::Mz;
}

inline const char *component_token(DipoleComponent c) {
    switch (c) {
    case DipoleComponent::Ex: return "ex";
    case DipoleComponent::Ey: return "ey";
    case DipoleComponent::Ez: return "ez";
    case DipoleComponent::Mx: return "mx";
    case DipoleComponent::My: return "my";
    case DipoleComponent::Mz: return "mz";
    }
    return "?";
}

inline DipoleComponent component_from_token(const std::string &tok) {
    for (DipoleComponent c : kAllComponents)
        if (tok == component_token(c)) return c;
    throw std::invalid_argument("unknown dipole component token: " + tok);
}

/// Far-field pattern of one unit-excited dipole, as (theta-hat, phi-hat)
/// field components at direction (theta, phi).  Excitation constants and the
/// free-space impedance are normalized to 1; the distance/phase factor
/// e^{-jkr}/r is applied by the channel builder, not here.
///
///   component   E_theta              E_phi
///   Ex          -cos(th) cos(ph)      sin(ph)
///   Ey          -cos(th) sin(ph)     -cos(ph)
///   Ez           sin(th)              0
///   Mx           sin(ph)              cos(th) cos(ph)
///   My          -cos(ph)              cos(th) sin(ph)
///   Mz           0                   -sin(th)
struct FieldPattern {
    double e_theta;
    double e_phi;
};

inline FieldPattern pattern_3d(DipoleComponent c, double theta, double phi) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    switch (c) {
    case DipoleComponent::Ex: return {-ct * cp, sp};
    case DipoleComponent::Ey: return {-ct * sp, -cp};
    case DipoleComponent::Ez: return {st, 0.0};
    case DipoleComponent::Mx: return {sp, ct * cp};
    case DipoleComponent::My: return {-cp, ct * sp};
    case DipoleComponent::Mz: return {0.0, -st};
    }
    return {0.0, 0.0};
}

/// An ordered subset of dipole components activated at a node, plus a physical
/// rotation of the antenna assembly about the z axis.  The rotation shifts the
/// azimuth seen by the in-plane dipoles; Ez and Mz are rotation invariant.
struct DipoleConfig {
    std::vector<DipoleComponent> components;
    double azimuth_rotation = 0.0;

    static DipoleConfig full() {
        return {{kAllComponents.begin(), kAllComponents.end()}, 0.0};
    }
    static DipoleConfig in_plane_four() {
        return {{DipoleComponent::Ex, DipoleComponent::Ey, DipoleComponent::Mx,
                 DipoleComponent::My},
                0.0};
    }

    std::size_t size() const { return components.size(); }

    void validate() const {
        if (components.empty() || components.size() > 6)
            throw ScenarioError("dipole config must have 1..6 components");
        for (std::size_t a = 0; a < components.size(); ++a)
            for (std::size_t b = a + 1; b < components.size(); ++b)
                if (components[a] == components[b])
                    throw ScenarioError("dipole config has a repeated component");
        if (!std::isfinite(azimuth_rotation))
            throw ScenarioError("dipole rotation must be finite");
    }
};

/// Azimuth-plane (theta = pi/2) responses of a configured node toward angle
/// phi: one entry per configured component, split by polarization.
/// For the full unrotated config in global order the two rows are
/// vertical   [0, 0, 1, sin(ph), -cos(ph), 0] and
/// horizontal [sin(ph), -cos(ph), 0, 0, 0, -1].
struct PatternRows {
    std::vector<double> vertical;   // theta-hat polarized entries
    std::vector<double> horizontal; // phi-hat polarized entries
};

inline PatternRows azimuth_rows(const DipoleConfig &cfg, double phi) {
    PatternRows rows;
    rows.vertical.reserve(cfg.components.size());
    rows.horizontal.reserve(cfg.components.size());
    for (DipoleComponent c : cfg.components) {
        const double a = is_in_plane(c) ? phi - cfg.azimuth_rotation : phi;
        // pattern_3d at theta = pi/2 with cos(theta) taken as exactly zero,
        // so the plane's structural zeros stay bit-exact.
        double v = 0.0, h = 0.0;
        switch (c) {
        case DipoleComponent::Ex: h = std::sin(a); break;
        case DipoleComponent::Ey: h = -std::cos(a); break;
        case DipoleComponent::Ez: v = 1.0; break;
        case DipoleComponent::Mx: v = std::sin(a); break;
        case DipoleComponent::My: v = -std::cos(a); break;
        case DipoleComponent::Mz: h = -1.0; break;
        }
        rows.vertical.push_back(v);
        rows.horizontal.push_back(h);
    }
    return rows;
}

/// Electric loop current that realizes a given magnetic current, from the
/// equivalence I_m * lambda / 2 = j pi a (2 pi f)^2 mu0 * I_l.  The returned
/// current lags the magnetic current by 90 degrees.
inline std::complex<double> loop_current_equivalent(double magnetic_current_volts,
                                                    double loop_radius_m,
                                                    double frequency_hz) {
    if (loop_radius_m <= 0.0) throw std::invalid_argument("loop radius must be > 0");
    if (frequency_hz <= 0.0) throw std::invalid_argument("frequency must be > 0");
    constexpr double c0 = 299792458.0;
    constexpr double mu0 = 4.0e-7 * std::numbers::pi;
    const double lambda = c0 / frequency_hz;
    const double omega = 2.0 * std::numbers::pi * frequency_hz;
    const double magnitude =
        magnetic_current_volts * lambda /
        (2.0 * std::numbers::pi * loop_radius_m * omega * omega * mu0);
    return {0.0, -magnitude}; // division by j
}

} // namespace polaric

#endif
