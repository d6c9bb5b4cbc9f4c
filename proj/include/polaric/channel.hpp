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

#ifndef POLARIC_CHANNEL_HPP
#define POLARIC_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "polaric/dipole.hpp"
#include "polaric/geometry.hpp"

namespace polaric {

/// Complex voltage-response matrix of one LOS link, shape
/// (M * c_rx) x (M * c_tx), antenna-major blocks of c_rx x c_tx.
/// Its rank never exceeds 2 (one dimension per polarization), no matter how
/// many components or antennas either end activates.
struct PolarizationChannel {
    Eigen::MatrixXcd matrix;
    int tx = -1;
    int rx = -1;
    LinkGeometry geometry{};
};

/// H = a * e^{-jkr} * (v_rx^T v_tx + h_rx^T h_tx) with (v, h) the azimuth
/// pattern rows of each end evaluated at the ray angle.
inline PolarizationChannel single_antenna_channel(const LinkGeometry &link,
                                                  const DipoleConfig &tx_cfg,
                                                  const DipoleConfig &rx_cfg,
                                                  double wavenumber = kDefaultWavenumber) {
    const PatternRows t = azimuth_rows(tx_cfg, link.phi);
    const PatternRows r = azimuth_rows(rx_cfg, link.phi);
    const auto vt = Eigen::Map<const Eigen::RowVectorXd>(t.vertical.data(), t.vertical.size());
    const auto ht = Eigen::Map<const Eigen::RowVectorXd>(t.horizontal.data(), t.horizontal.size());
    const auto vr = Eigen::Map<const Eigen::VectorXd>(r.vertical.data(), r.vertical.size());
    const auto hr = Eigen::Map<const Eigen::VectorXd>(r.horizontal.data(), r.horizontal.size());

    const std::complex<double> scale =
        link.attenuation * std::exp(std::complex<double>(0.0, -wavenumber * link.range));
    PolarizationChannel ch;
    ch.geometry = link;
    ch.matrix = scale * (vr * vt + hr * ht).cast<std::complex<double>>();
    return ch;
}

/// M-antenna link: far-field planar-wave phases never add rank, so the array
/// channel is the rank-1 phase outer product Kronecker the single-antenna
/// matrix.  Phase sign is exp(-jk * proj) at the transmit side (delay) and
/// exp(+jk * proj) at the receive side, with proj the offset projected onto
/// the propagation direction.
inline PolarizationChannel array_channel(const LinkGeometry &link,
                                         const DipoleConfig &tx_cfg,
                                         const DipoleConfig &rx_cfg,
                                         const std::vector<Eigen::Vector2d> &offsets,
                                         double wavenumber) {
    const PolarizationChannel base = single_antenna_channel(link, tx_cfg, rx_cfg, wavenumber);
    const int m = static_cast<int>(offsets.size());
    if (m <= 1) return base;

    const Eigen::Vector2d dir(std::cos(link.phi), std::sin(link.phi));
    Eigen::VectorXcd tx_phase(m), rx_phase(m);
    for (int q = 0; q < m; ++q) {
        const double proj = offsets[q].dot(dir);
        tx_phase(q) = std::exp(std::complex<double>(0.0, -wavenumber * proj));
        rx_phase(q) = std::exp(std::complex<double>(0.0, +wavenumber * proj));
    }

    const long rows = base.matrix.rows(), cols = base.matrix.cols();
    PolarizationChannel ch;
    ch.geometry = link;
    ch.matrix.resize(m * rows, m * cols);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            ch.matrix.block(a * rows, b * cols, rows, cols) =
                rx_phase(a) * tx_phase(b) * base.matrix;
    return ch;
}

/// Channel of link i -> j under the scenario's configs and array layout.
inline PolarizationChannel link_channel(const Scenario &s, int i, int j) {
    PolarizationChannel ch = array_channel(link_geometry(s, i, j), s.tx_configs[i],
                                           s.rx_configs[j], s.antenna_offsets, s.wavenumber);
    ch.tx = i;
    ch.rx = j;
    return ch;
}

} // namespace polaric

#endif
