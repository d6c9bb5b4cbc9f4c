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
// Interference-nulling transceiver design.  Every user sends two streams
// (the keyhole ceiling per link); each cross link is cancelled either at its
// transmitter or at its receiver, and the side that cancels spends two of its
// antenna-space dimensions on the link's null space.

#ifndef POLARIC_ZFDESIGN_HPP
#define POLARIC_ZFDESIGN_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polaric/channel.hpp"
#include "polaric/numeric.hpp"

namespace polaric {

// An assigned link certifies as nulled when its residual, relative to the
// transmitter's own direct-link response, stays below this.
inline constexpr double kLeakageThreshold = 1e-10;

enum class NullSide { Unassigned, TxNulls, RxNulls };

/// Which ordered cross link (i -> j) is cancelled by which side, bounded per
/// node by how many links its antenna space can absorb: a node with d = c*M
/// dimensions keeps 2 for its own streams and spends 2 per nulled link.
struct NullingAssignment {
    int K = 0;
    int capacity = 0;
    std::vector<std::vector<NullSide>> side; // side[i][j], diagonal unused

    NullSide at(int i, int j) const { return side[i][j]; }

    int tx_load(int i) const {
        int n = 0;
        for (int j = 0; j < K; ++j)
            if (j != i && side[i][j] == NullSide::TxNulls) ++n;
        return n;
    }
    int rx_load(int j) const {
        int n = 0;
        for (int i = 0; i < K; ++i)
            if (i != j && side[i][j] == NullSide::RxNulls) ++n;
        return n;
    }
    std::vector<int> tx_targets(int i) const {
        std::vector<int> t;
        for (int d = 1; d < K; ++d) {
            const int j = (i + d) % K;
            if (side[i][j] == NullSide::TxNulls) t.push_back(j);
        }
        return t;
    }
    std::vector<int> rx_sources(int j) const {
        std::vector<int> s;
        for (int d = 1; d < K; ++d) {
            const int i = (j + d) % K;
            if (side[i][j] == NullSide::RxNulls) s.push_back(i);
        }
        return s;
    }
    std::vector<std::pair<int, int>> unassigned() const {
        std::vector<std::pair<int, int>> u;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                if (i != j && side[i][j] == NullSide::Unassigned) u.emplace_back(i, j);
        return u;
    }
    bool complete() const { return unassigned().empty(); }
};

/// Links a node with c components and M antennas can null: (c*M - 2) / 2.
inline int nulling_capacity(int components, int m_antennas) {
    return std::max(0, (components * m_antennas - 2) / 2);
}

/// Cyclic rule: transmitter i nulls its links to receivers i+1 ... i+ceil((K-1)/2)
/// (mod K) and receivers null the rest, which balances both sides whenever it
/// fits the capacity.  Otherwise a greedy pass assigns each link to the side
/// with more residual capacity and leaves the overflow unassigned.
inline NullingAssignment assign_nulling_with_capacity(int K, int capacity) {
    NullingAssignment a;
    a.K = K;
    a.capacity = capacity;
    a.side.assign(K, std::vector<NullSide>(K, NullSide::Unassigned));
    if (K < 2) return a;

    const int tx_share = K / 2; // ceil((K-1)/2)
    const int rx_share = K - 1 - tx_share;
    if (tx_share <= capacity && rx_share <= capacity) {
        for (int i = 0; i < K; ++i) {
            for (int d = 1; d < K; ++d) {
                const int j = (i + d) % K;
                a.side[i][j] = d <= tx_share ? NullSide::TxNulls : NullSide::RxNulls;
            }
        }
        return a;
    }

    std::vector<int> tx_used(K, 0), rx_used(K, 0);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            if (i == j) continue;
            const int tx_res = capacity - tx_used[i];
            const int rx_res = capacity - rx_used[j];
            if (tx_res <= 0 && rx_res <= 0) continue;
            if (tx_res >= rx_res) {
                a.side[i][j] = NullSide::TxNulls;
                ++tx_used[i];
            } else {
                a.side[i][j] = NullSide::RxNulls;
                ++rx_used[j];
            }
        }
    }
    return a;
}

/// Assignment for nodes using all six components: capacity 3M - 1.
inline NullingAssignment assign_nulling(int K, int m_antennas) {
    return assign_nulling_with_capacity(K, 3 * m_antennas - 1);
}

/// Assignment sized to the scenario's weakest node.
inline NullingAssignment assignment_for(const Scenario &s) {
    int cap = std::numeric_limits<int>::max();
    for (const auto &c : s.tx_configs)
        cap = std::min(cap, nulling_capacity(static_cast<int>(c.size()), s.M));
    for (const auto &c : s.rx_configs)
        cap = std::min(cap, nulling_capacity(static_cast<int>(c.size()), s.M));
    return assign_nulling_with_capacity(s.K, cap);
}

// ---------------------------------------------------------------------------
// Closed-form beamformers (single polarimetric antenna, unrotated configs)
// ---------------------------------------------------------------------------

/// Precoder that nulls the single link at angle phi for an (Ex, Ey, Mx, My)
/// node.  Columns are orthonormal as printed.
inline Eigen::MatrixXcd closed_form_tx_single(double phi) {
    Eigen::MatrixXd v(4, 2);
    const double c = std::cos(phi), s = std::sin(phi);
    v << c, 0, s, 0, 0, c, 0, s;
    return v.cast<std::complex<double>>();
}

/// Combiner that nulls the interferer arriving along angle phi; the channel's
/// symmetry makes it the same matrix as the transmit form.
inline Eigen::MatrixXcd closed_form_rx_single(double phi) {
    return closed_form_tx_single(phi);
}

/// Unnormalized dual-null matrix for a full 6-component node: column 1 kills
/// the horizontal polarization toward both angles, column 2 the vertical.
/// The published form carries a sign error in row 6 of column 1 (with
/// +sin(phi1 - phi2) there the horizontal rows do not annihilate); the entry
/// here is negated, which restores exact nulling.  Columns are orthogonal
/// with equal norm sqrt(2 - 2cos(d) + sin^2(d)), d = phi1 - phi2.
inline Eigen::MatrixXd dual_null_matrix(double phi1, double phi2) {
    const double d = phi1 - phi2;
    const double dc = std::cos(phi1) - std::cos(phi2);
    const double ds = std::sin(phi1) - std::sin(phi2);
    Eigen::MatrixXd v(6, 2);
    v << dc, 0,
         ds, 0,
         0, std::sin(d),
         0, dc,
         0, ds,
         -std::sin(d), 0;
    return v;
}

/// The column scaling printed alongside the dual-null matrix,
/// 1 / sqrt(1 + sin^2(phi1 - phi2)).  It does not normalize the columns to
/// unit length; it is kept for reproducing the published effective-channel
/// prefactor.
inline double dual_null_printed_scale(double phi1, double phi2) {
    const double s = std::sin(phi1 - phi2);
    return 1.0 / std::sqrt(1.0 + s * s);
}

/// Orthonormal dual-null precoder for a 6-component node nulling the links at
/// phi_ij and phi_ik.  Degenerates when the two rays coincide modulo pi (the
/// two null spaces collapse onto each other).
inline Eigen::MatrixXcd closed_form_tx_dual(double phi_ij, double phi_ik) {
    if (std::abs(std::sin(phi_ij - phi_ik)) < 1e-12)
        throw DegenerateGeometryError("dual-null directions coincide modulo pi");
    const Eigen::MatrixXd raw = dual_null_matrix(phi_ij, phi_ik);
    return (raw / raw.col(0).norm()).cast<std::complex<double>>();
}

/// Orthonormal dual-null combiner against interferers arriving along phi_li
/// and phi_mi; by channel symmetry it is the transmit form at those angles.
inline Eigen::MatrixXcd closed_form_rx_dual(double phi_li, double phi_mi) {
    return closed_form_tx_dual(phi_li, phi_mi);
}

// ---------------------------------------------------------------------------
// Generic null-space beamforming
// ---------------------------------------------------------------------------

/// Width-2 orthonormal basis of the joint null space of the stacked
/// constraint matrices, taken from the right singular vectors with the
/// smallest singular values (ascending, then by index - deterministic).
/// An empty stack yields the first two canonical basis vectors.
inline Eigen::MatrixXcd nullspace_beamformer(const std::vector<Eigen::MatrixXcd> &constraints,
                                             long node_dim) {
    long rows = 0;
    for (const auto &c : constraints) rows += c.rows();
    Eigen::MatrixXcd stacked(rows, node_dim);
    long at = 0;
    for (const auto &c : constraints) {
        stacked.middleRows(at, c.rows()) = c;
        at += c.rows();
    }
    const Eigen::MatrixXcd basis = null_space_basis(stacked, node_dim);
    if (basis.cols() < 2)
        throw InfeasibleNullingError("null space has dimension " +
                                     std::to_string(basis.cols()) +
                                     " < 2 at rank tolerance");
    return basis.leftCols(2);
}

inline Eigen::MatrixXcd nullspace_beamformer(const std::vector<PolarizationChannel> &stacked,
                                             long node_dim) {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(stacked.size());
    for (const auto &ch : stacked) mats.push_back(ch.matrix);
    return nullspace_beamformer(mats, node_dim);
}

// ---------------------------------------------------------------------------
// Whole-scenario design
// ---------------------------------------------------------------------------

enum class BeamformerRoute { Generic, ClosedFormSingle, ClosedFormDual };

/// One user's transceiver: a width-2 precoder on its transmit antenna space
/// and a width-2 combiner on its receive antenna space, both orthonormal.
struct Beamformer {
    Eigen::MatrixXcd V;
    Eigen::MatrixXcd U;
    BeamformerRoute v_route = BeamformerRoute::Generic;
    BeamformerRoute u_route = BeamformerRoute::Generic;
};

struct LinkLeakage {
    int tx = 0;
    int rx = 0;
    NullSide side = NullSide::Unassigned;
    double relative = 0.0; // ||U_j* H_ij V_i||_F / ||U_i* H_ii V_i||_F
};

struct ZFDesign {
    std::vector<Beamformer> users;
    NullingAssignment assignment;
    std::vector<LinkLeakage> leakage; // all K(K-1) cross links, (i, j) ordered
    double max_assigned_leakage = 0.0;
    double genericity = 0.0;
    bool degenerate_geometry = false;

    bool certified() const {
        return assignment.complete() && max_assigned_leakage <= kLeakageThreshold;
    }
};

struct ZfOptions {
    bool closed_form = false;  // use the published matrices where they exist
    bool allow_partial = false; // accept incomplete assignments (best effort)
};

namespace detail {

inline bool components_are(const DipoleConfig &cfg,
                           std::initializer_list<DipoleComponent> want) {
    if (cfg.azimuth_rotation != 0.0 || cfg.size() != want.size()) return false;
    return std::equal(cfg.components.begin(), cfg.components.end(), want.begin());
}

inline bool is_in_plane_four(const DipoleConfig &cfg) {
    return components_are(cfg, {DipoleComponent::Ex, DipoleComponent::Ey,
                                DipoleComponent::Mx, DipoleComponent::My});
}

inline bool is_full_six(const DipoleConfig &cfg) {
    return components_are(cfg, {DipoleComponent::Ex, DipoleComponent::Ey,
                                DipoleComponent::Ez, DipoleComponent::Mx,
                                DipoleComponent::My, DipoleComponent::Mz});
}

// Orthonormal width-2 basis inside the null space Q that carries the most
// direct-link energy.  With exactly two null dimensions this is Q itself; a
// node with spare dimensions would otherwise risk landing its streams inside
// the direct link's own null space (the direct channel only has rank 2).
inline Eigen::MatrixXcd align_to_direct_tx(const Eigen::MatrixXcd &q,
                                           const Eigen::MatrixXcd &direct) {
    if (q.cols() == 2) return q;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(direct * q, Eigen::ComputeFullV);
    return q * svd.matrixV().leftCols(2);
}

inline Eigen::MatrixXcd align_to_direct_rx(const Eigen::MatrixXcd &q,
                                           const Eigen::MatrixXcd &direct) {
    if (q.cols() == 2) return q;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(q.adjoint() * direct, Eigen::ComputeFullU);
    return q * svd.matrixU().leftCols(2);
}

} // namespace detail

/// Builds precoders and combiners for every user under the given assignment
/// and reports the relative leakage of every cross link.  The generic route
/// computes each side from the SVD null space of its stacked constraints;
/// the closed-form route substitutes the published matrices where the node's
/// load and config admit them (single-null on the in-plane-four config,
/// dual-null on the full six) and falls back to the generic route for
/// unloaded nodes.
inline ZFDesign design_zf(const Scenario &s, const NullingAssignment &assignment,
                          const ZfOptions &options = {}) {
    s.validate();
    if (!options.allow_partial && !assignment.complete())
        throw InfeasibleNullingError(
            "assignment leaves " + std::to_string(assignment.unassigned().size()) +
            " cross links unassigned (capacity " + std::to_string(assignment.capacity) + ")");

    const int K = s.K;
    std::vector<std::vector<Eigen::MatrixXcd>> H(K, std::vector<Eigen::MatrixXcd>(K));
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) H[i][j] = link_channel(s, i, j).matrix;

    ZFDesign design;
    design.assignment = assignment;
    design.genericity = genericity_margin(s);
    design.degenerate_geometry = design.genericity < 1e-12;
    design.users.resize(K);

    for (int i = 0; i < K; ++i) {
        const long tx_dim = static_cast<long>(s.tx_configs[i].size()) * s.M;
        const std::vector<int> targets = assignment.tx_targets(i);
        Beamformer &bf = design.users[i];

        if (options.closed_form && s.M == 1 && targets.size() == 1 &&
            detail::is_in_plane_four(s.tx_configs[i])) {
            bf.V = closed_form_tx_single(link_geometry(s, i, targets[0]).phi);
            bf.v_route = BeamformerRoute::ClosedFormSingle;
        } else if (options.closed_form && s.M == 1 && targets.size() == 2 &&
                   detail::is_full_six(s.tx_configs[i])) {
            bf.V = closed_form_tx_dual(link_geometry(s, i, targets[0]).phi,
                                       link_geometry(s, i, targets[1]).phi);
            bf.v_route = BeamformerRoute::ClosedFormDual;
        } else {
            std::vector<Eigen::MatrixXcd> constraints;
            for (int j : targets) constraints.push_back(H[i][j]);
            long rows = 0;
            for (const auto &c : constraints) rows += c.rows();
            Eigen::MatrixXcd stacked(rows, tx_dim);
            long at = 0;
            for (const auto &c : constraints) {
                stacked.middleRows(at, c.rows()) = c;
                at += c.rows();
            }
            const Eigen::MatrixXcd q = null_space_basis(stacked, tx_dim);
            if (q.cols() < 2)
                throw InfeasibleNullingError("transmitter " + std::to_string(i) +
                                             ": null space narrower than 2 streams");
            bf.V = detail::align_to_direct_tx(q, H[i][i]);
            bf.v_route = BeamformerRoute::Generic;
        }
    }

    for (int j = 0; j < K; ++j) {
        const long rx_dim = static_cast<long>(s.rx_configs[j].size()) * s.M;
        const std::vector<int> sources = assignment.rx_sources(j);
        Beamformer &bf = design.users[j];

        if (options.closed_form && s.M == 1 && sources.size() == 1 &&
            detail::is_in_plane_four(s.rx_configs[j])) {
            bf.U = closed_form_rx_single(link_geometry(s, sources[0], j).phi);
            bf.u_route = BeamformerRoute::ClosedFormSingle;
        } else if (options.closed_form && s.M == 1 && sources.size() == 2 &&
                   detail::is_full_six(s.rx_configs[j])) {
            bf.U = closed_form_rx_dual(link_geometry(s, sources[0], j).phi,
                                       link_geometry(s, sources[1], j).phi);
            bf.u_route = BeamformerRoute::ClosedFormDual;
        } else {
            long rows = 0;
            for (int i : sources) rows += H[i][j].cols();
            Eigen::MatrixXcd stacked(rows, rx_dim);
            long at = 0;
            for (int i : sources) {
                stacked.middleRows(at, H[i][j].cols()) = H[i][j].adjoint();
                at += H[i][j].cols();
            }
            const Eigen::MatrixXcd q = null_space_basis(stacked, rx_dim);
            if (q.cols() < 2)
                throw InfeasibleNullingError("receiver " + std::to_string(j) +
                                             ": null space narrower than 2 streams");
            bf.U = detail::align_to_direct_rx(q, H[j][j]);
            bf.u_route = BeamformerRoute::Generic;
        }
    }

    std::vector<double> direct_norm(K);
    for (int i = 0; i < K; ++i)
        direct_norm[i] = (design.users[i].U.adjoint() * H[i][i] * design.users[i].V).norm();

    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            if (i == j) continue;
            const double residual =
                (design.users[j].U.adjoint() * H[i][j] * design.users[i].V).norm();
            LinkLeakage entry;
            entry.tx = i;
            entry.rx = j;
            entry.side = assignment.at(i, j);
            if (direct_norm[i] > 0.0)
                entry.relative = residual / direct_norm[i];
            else
                entry.relative = residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            design.leakage.push_back(entry);
            if (entry.side != NullSide::Unassigned)
                design.max_assigned_leakage = std::max(design.max_assigned_leakage, entry.relative);
        }
    }
    return design;
}

// ---------------------------------------------------------------------------
// Effective channels
// ---------------------------------------------------------------------------

/// 2x2 direct-link matrix of one user after precoding and combining.  When
/// both sides came from closed forms the diagonal has a known sine-product
/// value, recorded here for cross-checking.
struct EffectiveChannel {
    int user = 0;
    Eigen::Matrix2cd lambda;
    std::optional<double> closed_form_gain;                 // lambda or gamma product
    std::optional<std::complex<double>> predicted_diagonal; // includes prefactor
};

inline std::vector<EffectiveChannel> effective_channels(const ZFDesign &design,
                                                        const Scenario &s) {
    std::vector<EffectiveChannel> out;
    out.reserve(s.K);
    for (int i = 0; i < s.K; ++i) {
        EffectiveChannel eff;
        eff.user = i;
        const Eigen::MatrixXcd direct = link_channel(s, i, i).matrix;
        eff.lambda = design.users[i].U.adjoint() * direct * design.users[i].V;

        const LinkGeometry g = link_geometry(s, i, i);
        const std::complex<double> prefactor =
            g.attenuation * std::exp(std::complex<double>(0.0, -s.wavenumber * g.range));
        const auto &bf = design.users[i];
        const std::vector<int> targets = design.assignment.tx_targets(i);
        const std::vector<int> sources = design.assignment.rx_sources(i);

        if (bf.v_route == BeamformerRoute::ClosedFormSingle &&
            bf.u_route == BeamformerRoute::ClosedFormSingle) {
            const double phi_ij = link_geometry(s, i, targets[0]).phi;
            const double phi_ki = link_geometry(s, sources[0], i).phi;
            const double gain = std::sin(g.phi - phi_ij) * std::sin(g.phi - phi_ki);
            eff.closed_form_gain = gain;
            eff.predicted_diagonal = prefactor * gain;
        } else if (bf.v_route == BeamformerRoute::ClosedFormDual &&
                   bf.u_route == BeamformerRoute::ClosedFormDual) {
            const double phi_ij = link_geometry(s, i, targets[0]).phi;
            const double phi_ik = link_geometry(s, i, targets[1]).phi;
            const double phi_li = link_geometry(s, sources[0], i).phi;
            const double phi_mi = link_geometry(s, sources[1], i).phi;
            const double gain =
                (std::sin(g.phi - phi_ij) - std::sin(g.phi - phi_ik) + std::sin(phi_ij - phi_ik)) *
                (std::sin(g.phi - phi_li) - std::sin(g.phi - phi_mi) + std::sin(phi_li - phi_mi));
            eff.closed_form_gain = gain;
            // The stored beamformers carry unit columns, not the printed
            // scaling, so the prediction divides by the raw column norms.
            const double nt = dual_null_matrix(phi_ij, phi_ik).col(0).norm();
            const double nr = dual_null_matrix(phi_li, phi_mi).col(0).norm();
            eff.predicted_diagonal = prefactor * gain / (nt * nr);
        }
        out.push_back(eff);
    }
    return out;
}

/// Per-user sum over interferers of G G* with G = U_i* H_ji V_j, the
/// combined cross-link responses at unit stream power.  Zero for certified
/// designs; the rate computation scales it by the per-stream power.
inline std::vector<Eigen::Matrix2cd> residual_covariances(const ZFDesign &design,
                                                          const Scenario &s) {
    std::vector<Eigen::Matrix2cd> q(s.K, Eigen::Matrix2cd::Zero());
    for (int i = 0; i < s.K; ++i) {
        for (int j = 0; j < s.K; ++j) {
            if (i == j) continue;
            const Eigen::Matrix2cd g = design.users[i].U.adjoint() *
                                       link_channel(s, j, i).matrix * design.users[j].V;
            q[i] += g * g.adjoint();
        }
    }
    return q;
}

// ---------------------------------------------------------------------------
// Optimal antenna placement (2-dipole nodes, K <= 3)
// ---------------------------------------------------------------------------

/// Rotations that cancel all interference purely by pointing dipole axes
/// along the rays to be nulled, plus the direct-link gains they leave.
struct OptimalPlacement {
    std::vector<double> tx_axes; // absolute axis angle per transmitter
    std::vector<double> rx_axes; // absolute axis angle per receiver
    std::vector<double> gains;   // predicted equal diagonal per user
    bool degenerate = false;     // some gain vanished (a sine factor is zero)
};

namespace detail {

inline void require_two_dipole_config(const DipoleConfig &cfg) {
    if (cfg.size() != 2)
        throw std::invalid_argument("optimal placement needs 2-dipole nodes");
    const bool e0 = cfg.components[0] == DipoleComponent::Ex ||
                    cfg.components[0] == DipoleComponent::Ey;
    const bool m1 = cfg.components[1] == DipoleComponent::Mx ||
                    cfg.components[1] == DipoleComponent::My;
    const bool m0 = cfg.components[0] == DipoleComponent::Mx ||
                    cfg.components[0] == DipoleComponent::My;
    const bool e1 = cfg.components[1] == DipoleComponent::Ex ||
                    cfg.components[1] == DipoleComponent::Ey;
    if (!((e0 && m1) || (m0 && e1)))
        throw std::invalid_argument(
            "optimal placement needs one in-plane electric plus one in-plane magnetic dipole");
}

} // namespace detail

/// K = 2: each transmitter points both dipoles along its cross link so it
/// radiates nothing toward the other receiver, and each receiver turns
/// broadside to its direct ray for maximum gain.  K = 3: two interference
/// links per user, so both ends must spend their rotation on nulling -
/// transmitter i points at receiver i+1's ray and receiver i at the ray
/// arriving from transmitter i+1, covering all six cross links.  Axes are
/// absolute directions; each node's electric and magnetic dipole share the
/// axis (a pair that cannot co-align, such as Ex with My, is equivalent to
/// an axis-aligned pair with its components relabeled).
inline OptimalPlacement optimal_placement_design(const Scenario &s) {
    if (s.K != 2 && s.K != 3)
        throw std::invalid_argument("optimal placement covers K = 2 and K = 3 only");
    if (s.M != 1) throw std::invalid_argument("optimal placement uses M = 1");
    for (const auto &c : s.tx_configs) detail::require_two_dipole_config(c);
    for (const auto &c : s.rx_configs) detail::require_two_dipole_config(c);

    OptimalPlacement p;
    p.tx_axes.resize(s.K);
    p.rx_axes.resize(s.K);
    p.gains.resize(s.K);
    for (int i = 0; i < s.K; ++i) {
        const double phi_ii = link_geometry(s, i, i).phi;
        if (s.K == 2) {
            p.tx_axes[i] = link_geometry(s, i, 1 - i).phi;
            p.rx_axes[i] = phi_ii + std::numbers::pi / 2.0;
        } else {
            p.tx_axes[i] = link_geometry(s, i, (i + 1) % 3).phi;
            p.rx_axes[i] = link_geometry(s, (i + 1) % 3, i).phi;
        }
        p.gains[i] = std::sin(phi_ii - p.tx_axes[i]) * std::sin(phi_ii - p.rx_axes[i]);
        if (p.gains[i] == 0.0) p.degenerate = true;
    }
    return p;
}

/// Scenario realizing the placement: per-node (Ex, Mx) pairs rotated onto the
/// computed axes.
inline Scenario apply_optimal_placement(const Scenario &s, const OptimalPlacement &p) {
    Scenario rotated = s;
    for (int i = 0; i < s.K; ++i) {
        rotated.tx_configs[i] = {{DipoleComponent::Ex, DipoleComponent::Mx}, p.tx_axes[i]};
        rotated.rx_configs[i] = {{DipoleComponent::Ex, DipoleComponent::Mx}, p.rx_axes[i]};
    }
    return rotated;
}

} // namespace polaric

#endif
