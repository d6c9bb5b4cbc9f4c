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

#ifndef POLARIC_NUMERIC_HPP
#define POLARIC_NUMERIC_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace polaric {

// A singular value counts as nonzero iff it exceeds this fraction of the
// largest one.  An order of magnitude above the double-precision SVD noise
// floor for the matrix sizes that occur here (at most a few hundred rows).
inline constexpr double kRankTolerance = 1e-8;

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd &m) {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

inline int numerical_rank(const Eigen::MatrixXcd &m, double tol = kRankTolerance) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const Eigen::VectorXd sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

/// Orthonormal basis of the numerical null space of m (right singular vectors
/// whose singular values fall below tolerance), ordered by ascending singular
/// value.  An empty m (zero rows) yields the identity: the whole space.
inline Eigen::MatrixXcd null_space_basis(const Eigen::MatrixXcd &m, long dim,
                                         double tol = kRankTolerance) {
    if (m.rows() == 0) return Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    int rank = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    const long null_dim = dim - rank;
    Eigen::MatrixXcd basis(dim, null_dim);
    for (long q = 0; q < null_dim; ++q) basis.col(q) = svd.matrixV().col(dim - 1 - q);
    return basis;
}

/// Largest principal angle between the column spans of two orthonormal
/// matrices, computed through its sine so that near-identical spans do not
/// lose precision to an acos near 1.
inline double max_principal_angle(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    const Eigen::MatrixXcd residual = a - b * (b.adjoint() * a);
    const Eigen::VectorXd sv = singular_values(residual);
    const double s = sv.size() > 0 ? std::clamp(sv(0), 0.0, 1.0) : 0.0;
    return std::asin(s);
}

inline bool has_orthonormal_columns(const Eigen::MatrixXcd &m, double tol = 1e-12) {
    const Eigen::MatrixXcd gram = m.adjoint() * m;
    return (gram - Eigen::MatrixXcd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

} // namespace polaric

#endif
