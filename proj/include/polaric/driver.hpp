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
// Subcommand implementations behind the command-line front end.  Kept as
// ordinary functions over streams so tests can drive them directly.

#ifndef POLARIC_DRIVER_HPP
#define POLARIC_DRIVER_HPP

#include <fstream>
#include <iostream>
#include <ostream>
#include <string>

#include "polaric/certify.hpp"
#include "polaric/scenario_io.hpp"

namespace polaric {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;       // malformed input or invalid scenario
inline constexpr int kExitInfeasible = 3;  // assignment or null space cannot fit
inline constexpr int kExitCertificate = 4; // a design failed its certificates

struct DriverArgs {
    std::string scenario_path;
    std::string design_path;
    std::string out_path; // empty = stdout
    int k_filter = 0;
    int trials = 20;
    std::uint64_t seed = 0;                    // fig5 base seed
    std::optional<std::uint64_t> seed_override; // replaces the file's seed
    double snr_lo = kSlopeSnrLow;
    double snr_hi = kSlopeSnrHigh;
};

namespace detail {

inline void write_output(const DriverArgs &args, const std::string &content, std::ostream &out) {
    if (args.out_path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(args.out_path);
    if (!file) throw std::runtime_error("cannot write " + args.out_path);
    file << content;
}

/// Scheme dispatch: fixed-zf runs the null-space design; optimal-placement
/// derives the rotations, realizes them, and certifies with trivial width-2
/// transceivers (the rotated links are 2x2 already).
inline std::pair<Scenario, ZFDesign> design_for(const ScenarioDoc &doc) {
    if (doc.scheme == Scheme::FixedZf) {
        const NullingAssignment assignment = assignment_for(doc.scenario);
        return {doc.scenario, design_zf(doc.scenario, assignment)};
    }

    const OptimalPlacement placement = optimal_placement_design(doc.scenario);
    const Scenario rotated = apply_optimal_placement(doc.scenario, placement);
    ZFDesign design;
    design.assignment = assign_nulling_with_capacity(rotated.K, 1);
    design.genericity = genericity_margin(rotated);
    design.degenerate_geometry = design.genericity < 1e-12;
    design.users.resize(rotated.K);
    for (int i = 0; i < rotated.K; ++i) {
        design.users[i].V = Eigen::Matrix2cd::Identity();
        design.users[i].U = Eigen::Matrix2cd::Identity();
    }
    std::vector<double> direct_norm(rotated.K);
    for (int i = 0; i < rotated.K; ++i)
        direct_norm[i] = link_channel(rotated, i, i).matrix.norm();
    for (int i = 0; i < rotated.K; ++i) {
        for (int j = 0; j < rotated.K; ++j) {
            if (i == j) continue;
            LinkLeakage entry;
            entry.tx = i;
            entry.rx = j;
            entry.side = design.assignment.at(i, j);
            const double residual = link_channel(rotated, i, j).matrix.norm();
            entry.relative = direct_norm[i] > 0.0
                                 ? residual / direct_norm[i]
                                 : (residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            design.leakage.push_back(entry);
            if (entry.side != NullSide::Unassigned)
                design.max_assigned_leakage = std::max(design.max_assigned_leakage, entry.relative);
        }
    }
    return {rotated, design};
}

inline ResultRecord record_for(const ScenarioDoc &doc, const Scenario &realized,
                               const ZFDesign &design, const DriverArgs &args) {
    ResultRecord rec;
    rec.scenario_id = doc.id;
    rec.K = realized.K;
    rec.M = realized.M;
    rec.components = static_cast<int>(doc.scenario.tx_configs[0].size());
    rec.scheme = doc.scheme == Scheme::FixedZf ? "fixed-zf" : "optimal-placement";
    rec.leakage_max = design.max_assigned_leakage;
    rec.dof = dof_count(design, realized);
    rec.gamma_hat = estimate_muxg(design, realized, args.snr_lo, args.snr_hi).gamma_hat;
    rec.genericity = design.genericity;
    rec.seed = realized.seed;
    return rec;
}

} // namespace detail

/// design: build beamformers for the scenario, print its result record, and
/// write the design file (beamformers, assignment, leakage) to --out.
inline int run_design(const DriverArgs &args, std::ostream &out, std::ostream &err) {
    try {
        const ScenarioDoc doc = parse_scenario_file(args.scenario_path, args.seed_override);
        const auto [realized, design] = detail::design_for(doc);
        if (!args.out_path.empty()) {
            std::ofstream file(args.out_path);
            if (!file) throw std::runtime_error("cannot write " + args.out_path);
            file << emit_design(design);
        }
        out << result_csv_header() << "\n"
            << detail::record_for(doc, realized, design, args).csv_row() << "\n";
        return kExitOk;
    } catch (const InfeasibleNullingError &e) {
        err << "design: infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NonGenericGeometryError &e) {
        err << "design: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception &e) {
        err << "design: " << e.what() << "\n";
        return kExitParse;
    }
}

/// verify: re-derive the channels from the scenario and re-check a stored
/// design's certificates (orthonormal columns, assigned-link leakage).
inline int run_verify(const DriverArgs &args, std::ostream &out, std::ostream &err) {
    try {
        const ScenarioDoc doc = parse_scenario_file(args.scenario_path);
        std::ifstream in(args.design_path);
        if (!in) throw std::runtime_error("cannot open design file: " + args.design_path);
        const DesignFile file = parse_design(in);

        const Scenario realized = doc.scheme == Scheme::FixedZf
                                      ? doc.scenario
                                      : apply_optimal_placement(
                                            doc.scenario, optimal_placement_design(doc.scenario));
        if (file.K != realized.K) {
            err << "verify: design is for K=" << file.K << ", scenario has K=" << realized.K << "\n";
            return kExitCertificate;
        }

        int violations = 0;
        for (int i = 0; i < file.K; ++i) {
            if (!has_orthonormal_columns(file.users[i].V) ||
                !has_orthonormal_columns(file.users[i].U)) {
                err << "verify: user " << i + 1 << " beamformer columns not orthonormal\n";
                ++violations;
            }
        }
        std::vector<double> direct_norm(file.K);
        for (int i = 0; i < file.K; ++i)
            direct_norm[i] = (file.users[i].U.adjoint() * link_channel(realized, i, i).matrix *
                              file.users[i].V)
                                 .norm();
        for (int i = 0; i < file.K; ++i) {
            for (int j = 0; j < file.K; ++j) {
                if (i == j || file.assignment.at(i, j) == NullSide::Unassigned) continue;
                const double residual = (file.users[j].U.adjoint() *
                                         link_channel(realized, i, j).matrix * file.users[i].V)
                                            .norm();
                const double rel = direct_norm[i] > 0.0 ? residual / direct_norm[i]
                                                        : std::numeric_limits<double>::infinity();
                if (rel > kLeakageThreshold) {
                    err << "verify: link " << i + 1 << "->" << j + 1 << " leakage "
                        << ioutil::fmt_double(rel) << " above threshold\n";
                    ++violations;
                }
            }
        }
        if (violations > 0) return kExitCertificate;
        out << "verify: OK (" << file.K << " users, all certificates hold)\n";
        return kExitOk;
    } catch (const std::exception &e) {
        err << "verify: " << e.what() << "\n";
        return kExitParse;
    }
}

/// sweep: rate curve of the scenario's design over its snr_grid, as CSV.
inline int run_sweep(const DriverArgs &args, std::ostream &out, std::ostream &err) {
    try {
        const ScenarioDoc doc = parse_scenario_file(args.scenario_path, args.seed_override);
        const auto [realized, design] = detail::design_for(doc);
        RateCurve curve = rate_curve(effective_channels(design, realized),
                                     residual_covariances(design, realized), doc.snr_grid);
        curve.scenario_id = doc.id;
        detail::write_output(args, rate_curve_csv(curve), out);
        return kExitOk;
    } catch (const InfeasibleNullingError &e) {
        err << "sweep: infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NonGenericGeometryError &e) {
        err << "sweep: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception &e) {
        err << "sweep: " << e.what() << "\n";
        return kExitParse;
    }
}

/// fig5: 5-user dipole-count sweep (mean certified DOF per component count).
inline int run_fig5(const DriverArgs &args, std::ostream &out, std::ostream &err) {
    try {
        detail::write_output(args, sweep_csv(dipole_sweep(args.trials, args.seed)), out);
        return kExitOk;
    } catch (const std::exception &e) {
        err << "fig5: " << e.what() << "\n";
        return kExitParse;
    }
}

/// props: run the proposition certification suite; nonzero exit when any
/// certificate fails.
inline int run_props(const DriverArgs &args, std::ostream &out, std::ostream &err) {
    try {
        const std::vector<CheckReport> reports = certify_propositions(args.k_filter);
        if (reports.empty()) {
            err << "props: no proposition covers --k " << args.k_filter << "\n";
            return kExitParse;
        }
        bool all_pass = true;
        for (const CheckReport &r : reports) {
            out << (r.pass ? "PASS " : "FAIL ") << r.title << "\n";
            for (const std::string &line : r.lines) out << "  " << line << "\n";
            all_pass = all_pass && r.pass;
        }
        out << (all_pass ? "all propositions certified\n" : "certification FAILED\n");
        return all_pass ? kExitOk : kExitCertificate;
    } catch (const std::exception &e) {
        err << "props: " << e.what() << "\n";
        return kExitParse;
    }
}

} // namespace polaric

#endif
