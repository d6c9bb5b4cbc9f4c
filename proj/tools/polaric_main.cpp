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

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>

#include "polaric/driver.hpp"

int main(int argc, char **argv) {
    CLI::App app{"polaric - K-user LOS interference channels with polarimetric antennas"};
    app.require_subcommand(1);

    polaric::DriverArgs args;
    std::uint64_t seed_override = 0;

    CLI::App *design = app.add_subcommand("design", "build interference-nulling beamformers");
    design->add_option("--scenario", args.scenario_path, "scenario file")->required();
    design->add_option("--out", args.out_path, "design file to write");
    CLI::Option *design_seed =
        design->add_option("--seed", seed_override, "override the scenario's placement seed");
    design->add_option("--snr-lo", args.snr_lo, "lower SNR of the slope estimate");
    design->add_option("--snr-hi", args.snr_hi, "upper SNR of the slope estimate");

    CLI::App *verify = app.add_subcommand("verify", "re-check a stored design's certificates");
    verify->add_option("--scenario", args.scenario_path, "scenario file")->required();
    verify->add_option("--design", args.design_path, "design file")->required();

    CLI::App *sweep = app.add_subcommand("sweep", "sum-rate curve over the scenario's snr_grid");
    sweep->add_option("--scenario", args.scenario_path, "scenario file")->required();
    sweep->add_option("--out", args.out_path, "CSV output path (default stdout)");
    CLI::Option *sweep_seed =
        sweep->add_option("--seed", seed_override, "override the scenario's placement seed");

    CLI::App *fig5 = app.add_subcommand("fig5", "5-user DOF versus dipole count");
    fig5->add_option("--trials", args.trials, "random scenarios per component count");
    fig5->add_option("--seed", args.seed, "base seed");
    fig5->add_option("--out", args.out_path, "CSV output path (default stdout)");

    CLI::App *props = app.add_subcommand("props", "certify the achievable multiplexing gains");
    props->add_option("--k", args.k_filter, "restrict to one user count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : polaric::kExitParse;
    }

    if (design->parsed()) {
        if (design_seed->count() > 0) args.seed_override = seed_override;
        return polaric::run_design(args, std::cout, std::cerr);
    }
    if (verify->parsed()) return polaric::run_verify(args, std::cout, std::cerr);
    if (sweep->parsed()) {
        if (sweep_seed->count() > 0) args.seed_override = seed_override;
        return polaric::run_sweep(args, std::cout, std::cerr);
    }
    if (fig5->parsed()) return polaric::run_fig5(args, std::cout, std::cerr);
    if (props->parsed()) return polaric::run_props(args, std::cout, std::cerr);
    return polaric::kExitParse;
}
