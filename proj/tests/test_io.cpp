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
#include <sstream>

#include "polaric/certify.hpp"
#include "polaric/scenario_io.hpp"

using namespace polaric;
using Catch::Approx;
using DC = DipoleComponent;

namespace {

ScenarioDoc parse_text(const std::string &text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

} // namespace

TEST_CASE("minimal scenario file fills in every default") {
    const ScenarioDoc doc = parse_text("k: 3\n");
    CHECK(doc.scenario.K == 3);
    CHECK(doc.scenario.M == 1);
    CHECK(doc.scenario.seed == 0);
    CHECK(doc.scenario.tx_configs[0].size() == 6);
    CHECK(doc.scheme == Scheme::FixedZf);
    CHECK(doc.placement == PlacementKind::Random);
    CHECK(doc.min_angle_sep == Approx(feasible_angle_sep(3)));
    CHECK(genericity_margin(doc.scenario) >= doc.min_angle_sep);
    CHECK(doc.id == "k3m1s0");
    CHECK(doc.snr_grid.size() == 5);
}

TEST_CASE("component lists, comments, and per-node overrides parse") {
    const ScenarioDoc doc = parse_text(
        "# five users, two dipoles\n"
        "k: 5\n"
        "components: ex ey   # global\n"
        "components.tx2: ex ey ez\n"
        "rotation.rx1: 0.25\n"
        "seed: 3\n");
    CHECK(doc.scenario.tx_configs[0].size() == 2);
    CHECK(doc.scenario.tx_configs[1].size() == 3);
    CHECK(doc.scenario.tx_configs[1].components[2] == DC::Ez);
    CHECK(doc.scenario.rx_configs[0].azimuth_rotation == Approx(0.25));
    CHECK(doc.scenario.rx_configs[1].azimuth_rotation == 0.0);
}

TEST_CASE("unknown keys and malformed lines carry line numbers") {
    try {
        parse_text("k: 3\nfrequency: 2e9\n");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_text("k: 3\njust words\n"), ParseError);
    CHECK_THROWS_AS(parse_text("k: 3\ncomponents: ew\n"), ParseError);
    CHECK_THROWS_AS(parse_text("k: 3\nm: zero\n"), ParseError);
    CHECK_THROWS_AS(parse_text("m: 1\n"), ParseError);            // missing k
    CHECK_THROWS_AS(parse_text("k: 2\ntx9: 1 2\n"), ParseError);  // node out of range
}

TEST_CASE("explicit placement requires every coordinate and validates") {
    const std::string text =
        "k: 2\nplacement: explicit\n"
        "tx1: 0 0\nrx1: 5 0\ntx2: 5 3\nrx2: 0 3\n";
    const ScenarioDoc doc = parse_text(text);
    CHECK(doc.scenario.tx_positions[1].x() == 5.0);
    CHECK(genericity_margin(doc.scenario) == Approx(std::numbers::pi / 2));

    CHECK_THROWS_AS(parse_text("k: 2\nplacement: explicit\ntx1: 0 0\nrx1: 5 0\n"),
                    ScenarioError);
    // Coincident endpoints violate a scenario invariant.
    CHECK_THROWS_AS(parse_text("k: 1\nplacement: explicit\ntx1: 1 1\nrx1: 1 1\n"),
                    ScenarioError);
    // Coordinates clash with random placement.
    CHECK_THROWS_AS(parse_text("k: 1\ntx1: 0 0\n"), ScenarioError);
}

TEST_CASE("emitting and reparsing reproduces the scenario exactly") {
    ScenarioDoc doc = parse_text(
        "k: 3\nm: 2\nseed: 11\nscheme: optimal-placement\n"
        "components.tx1: ex mx\ncomponents.tx2: ex mx\ncomponents.tx3: ex mx\n"
        "components.rx1: ex mx\ncomponents.rx2: ex mx\ncomponents.rx3: ex mx\n"
        "rotation.tx2: 1.25\nsnr_grid: 1e4 1e8 1e10\n");
    const std::string emitted = emit_scenario(doc);
    const ScenarioDoc again = parse_text(emitted);

    CHECK(again.scheme == doc.scheme);
    CHECK(again.min_angle_sep == doc.min_angle_sep);
    CHECK(again.snr_grid == doc.snr_grid);
    CHECK(again.id == doc.id);
    const Scenario &a = doc.scenario, &b = again.scenario;
    CHECK(a.K == b.K);
    CHECK(a.M == b.M);
    CHECK(a.seed == b.seed);
    CHECK(a.wavenumber == b.wavenumber);
    for (int i = 0; i < a.K; ++i) {
        CHECK(a.tx_positions[i] == b.tx_positions[i]); // bitwise through the text form
        CHECK(a.rx_positions[i] == b.rx_positions[i]);
        CHECK(a.tx_configs[i].components == b.tx_configs[i].components);
        CHECK(a.tx_configs[i].azimuth_rotation == b.tx_configs[i].azimuth_rotation);
        CHECK(a.rx_configs[i].components == b.rx_configs[i].components);
    }
    for (int q = 0; q < a.M; ++q) CHECK(a.antenna_offsets[q] == b.antenna_offsets[q]);

    // Emission is deterministic text.
    CHECK(emit_scenario(again) == emitted);
}

TEST_CASE("complex tokens round trip") {
    for (const std::complex<double> z :
         {std::complex<double>(0.5, -0.25), std::complex<double>(-1.5e-11, 3.25e4),
          std::complex<double>(0.0, 0.0), std::complex<double>(-2.0, -1e-300)}) {
        const std::string tok = ioutil::fmt_complex(z);
        CHECK(ioutil::parse_complex(tok, 1) == z);
    }
    CHECK(ioutil::fmt_complex({1.0, 2.0}) == "1+2j");
    CHECK(ioutil::fmt_complex({1.0, -2.0}) == "1-2j");
    CHECK_THROWS_AS(ioutil::parse_complex("1+2i", 4), ParseError);
    CHECK_THROWS_AS(ioutil::parse_complex("nope", 4), ParseError);
}

TEST_CASE("design files round trip and keep column-major token order") {
    const Scenario s = well_separated_scenario(3, 1);
    const ZFDesign design = design_zf(s, assignment_for(s));
    const std::string text = emit_design(design);

    std::istringstream in(text);
    const DesignFile file = parse_design(in);
    CHECK(file.K == 3);
    CHECK(file.assignment.complete());
    for (int i = 0; i < 3; ++i) {
        CHECK((file.users[i].V - design.users[i].V).cwiseAbs().maxCoeff() == 0.0);
        CHECK((file.users[i].U - design.users[i].U).cwiseAbs().maxCoeff() == 0.0);
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(file.assignment.at(i, j) == design.assignment.at(i, j));
    }

    // The first token after a matrix header is its (0,0) entry and the second
    // its (1,0) entry: column-major.
    std::istringstream scan(text);
    std::string line;
    while (std::getline(scan, line) && line.rfind("matrix V 1 ", 0) != 0) {
    }
    std::getline(scan, line);
    std::istringstream toks(line);
    std::string t0, t1;
    toks >> t0 >> t1;
    CHECK(ioutil::parse_complex(t0, 1) == design.users[0].V(0, 0));
    CHECK(ioutil::parse_complex(t1, 1) == design.users[0].V(1, 0));

    CHECK_THROWS_AS(
        [&] {
            std::istringstream bad("polaric-design: 1\nnull 1 2 tx\n");
            return parse_design(bad);
        }(),
        ParseError);
}

TEST_CASE("csv emission is deterministic and single-headered") {
    const std::vector<SweepRow> rows = {{2, 0.0}, {4, 2.0}, {6, 10.0}};
    const std::string a = sweep_csv(rows), b = sweep_csv(rows);
    CHECK(a == b);
    CHECK(a.find("components,mean_dof") == 0);
    CHECK(a.find("components", 5) == std::string::npos); // header once

    RateCurve curve;
    curve.points = {{1e2, 1.5}, {1e4, 3.25}};
    CHECK(rate_curve_csv(curve) == "snr,sum_rate\n100,1.5\n10000,3.25\n");

    ResultRecord rec;
    rec.scenario_id = "demo";
    rec.K = 3;
    rec.M = 1;
    rec.components = 4;
    rec.scheme = "fixed-zf";
    rec.leakage_max = 1.25e-15;
    rec.dof = 6;
    rec.gamma_hat = 5.97;
    rec.genericity = 0.25;
    rec.seed = 7;
    CHECK(rec.csv_row() == "demo,3,1,4,fixed-zf,1.25e-15,6,5.97,0.25,7");
}
