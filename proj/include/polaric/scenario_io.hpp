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
// Plain-text scenario documents, beamformer design files, and CSV emission.
//
// Scenario files are "key: value" lines, '#' starts a comment.  Keys:
//
//   id: demo                      optional label for result records
//   k: 3                          user pairs (required)
//   m: 1                          polarimetric antennas per node
//   wavenumber: 41.887902         radians per meter
//   placement: random | explicit
//   seed: 7                       random placement seed
//   min_angle_sep: 0.05           random placement angle margin
//   scheme: fixed-zf | optimal-placement
//   components: ex ey mx my       global dipole subset
//   components.tx1: ex mx         per-node override (1-based nodes)
//   rotation.rx2: 1.5708          azimuth rotation, radians
//   tx1: 12.5 30.0                explicit coordinates, meters
//   rx1: 80.0 55.0
//   offset2: 0.075 0.0            array offsets 2..M (offset 1 is the origin)
//   snr_grid: 1e2 1e4 1e6 1e8 1e10
//
// Unknown keys are rejected with the offending line number.

#ifndef POLARIC_SCENARIO_IO_HPP
#define POLARIC_SCENARIO_IO_HPP

#include <charconv>
#include <complex>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polaric/evaluation.hpp"
#include "polaric/zfdesign.hpp"

namespace polaric {

enum class Scheme { FixedZf, OptimalPlacement };
enum class PlacementKind { Random, Explicit };

struct ScenarioDoc {
    Scenario scenario;
    Scheme scheme = Scheme::FixedZf;
    PlacementKind placement = PlacementKind::Random;
    double min_angle_sep = kDefaultMinAngleSep; // defaulted per K at parse time
    std::vector<double> snr_grid = {1e2, 1e4, 1e6, 1e8, 1e10};
    std::string id;
};

namespace ioutil {

inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_complex(std::complex<double> z) {
    std::string s = fmt_double(z.real());
    const std::string im = fmt_double(z.imag());
    if (!im.empty() && im[0] != '-') s += '+';
    return s + im + 'j';
}

inline double parse_double(const std::string &tok, int line) {
    // from_chars does not take an explicit leading plus.
    const bool plus = !tok.empty() && tok[0] == '+';
    const char *begin = tok.data() + (plus ? 1 : 0);
    const char *end = tok.data() + tok.size();
    double v = 0.0;
    const auto res = std::from_chars(begin, end, v);
    if (begin == end || res.ec != std::errc{} || res.ptr != end)
        throw ParseError(line, "expected a number, got '" + tok + "'");
    return v;
}

inline long long parse_int(const std::string &tok, int line) {
    long long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
}

inline std::complex<double> parse_complex(const std::string &tok, int line) {
    if (tok.empty() || tok.back() != 'j')
        throw ParseError(line, "expected re+imj token, got '" + tok + "'");
    const std::string body = tok.substr(0, tok.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < body.size(); ++p) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E')
            split = p; // keep the last sign: real part may carry an exponent
    }
    if (split == std::string::npos)
        throw ParseError(line, "expected re+imj token, got '" + tok + "'");
    return {parse_double(body.substr(0, split), line),
            parse_double(body.substr(split), line)};
}

inline std::vector<std::string> split_ws(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
}

struct KeyLine {
    std::string key;
    std::string value;
    int line;
};

inline std::vector<KeyLine> read_key_lines(std::istream &in) {
    std::vector<KeyLine> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw ParseError(line, "expected 'key: value', got '" + text + "'");
        out.push_back({trim(text.substr(0, colon)), trim(text.substr(colon + 1)), line});
    }
    return out;
}

// Matches "<prefix><N>" with N in 1..count; returns the 0-based index.
inline std::optional<int> node_suffix(const std::string &key, const std::string &prefix,
                                      int count, int line) {
    if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    const std::string digits = key.substr(prefix.size());
    for (char c : digits)
        if (c < '0' || c > '9') return std::nullopt;
    const long long n = parse_int(digits, line);
    if (n < 1 || n > count)
        throw ParseError(line, "node index out of range in '" + key + "'");
    return static_cast<int>(n - 1);
}

inline std::vector<DipoleComponent> parse_components(const std::string &value, int line) {
    std::vector<DipoleComponent> comps;
    for (const std::string &tok : split_ws(value)) {
        try {
            comps.push_back(component_from_token(tok));
        } catch (const std::invalid_argument &e) {
            throw ParseError(line, e.what());
        }
    }
    if (comps.empty()) throw ParseError(line, "components list is empty");
    return comps;
}

} // namespace ioutil

inline ScenarioDoc parse_scenario(std::istream &in,
                                  std::optional<std::uint64_t> seed_override = std::nullopt) {
    using namespace ioutil;
    const std::vector<KeyLine> lines = read_key_lines(in);

    ScenarioDoc doc;
    Scenario &s = doc.scenario;

    // First pass: scalar keys that shape the rest of the document.
    int k = 0, m = 1;
    for (const KeyLine &kl : lines) {
        if (kl.key == "k") k = static_cast<int>(parse_int(kl.value, kl.line));
        if (kl.key == "m") m = static_cast<int>(parse_int(kl.value, kl.line));
    }
    if (k < 1) throw ParseError(lines.empty() ? 1 : lines.front().line, "missing or invalid 'k'");
    if (m < 1) throw ParseError(1, "'m' must be >= 1");
    s.K = k;
    s.M = m;
    doc.min_angle_sep = feasible_angle_sep(k);

    std::vector<std::optional<Eigen::Vector2d>> tx(k), rx(k);
    std::vector<std::optional<Eigen::Vector2d>> offsets(m);
    std::vector<std::optional<std::vector<DipoleComponent>>> tx_comps(k), rx_comps(k);
    std::vector<double> tx_rot(k, 0.0), rx_rot(k, 0.0);
    std::optional<std::vector<DipoleComponent>> global_comps;

    auto parse_point = [&](const KeyLine &kl) {
        const auto toks = split_ws(kl.value);
        if (toks.size() != 2) throw ParseError(kl.line, "expected two coordinates");
        return Eigen::Vector2d(parse_double(toks[0], kl.line), parse_double(toks[1], kl.line));
    };

    for (const KeyLine &kl : lines) {
        if (kl.key == "k" || kl.key == "m") continue;
        if (kl.key == "id") { doc.id = kl.value; continue; }
        if (kl.key == "wavenumber") { s.wavenumber = parse_double(kl.value, kl.line); continue; }
        if (kl.key == "seed") { s.seed = static_cast<std::uint64_t>(parse_int(kl.value, kl.line)); continue; }
        if (kl.key == "min_angle_sep") { doc.min_angle_sep = parse_double(kl.value, kl.line); continue; }
        if (kl.key == "placement") {
            if (kl.value == "random") doc.placement = PlacementKind::Random;
            else if (kl.value == "explicit") doc.placement = PlacementKind::Explicit;
            else throw ParseError(kl.line, "placement must be 'random' or 'explicit'");
            continue;
        }
        if (kl.key == "scheme") {
            if (kl.value == "fixed-zf") doc.scheme = Scheme::FixedZf;
            else if (kl.value == "optimal-placement") doc.scheme = Scheme::OptimalPlacement;
            else throw ParseError(kl.line, "scheme must be 'fixed-zf' or 'optimal-placement'");
            continue;
        }
        if (kl.key == "components") { global_comps = parse_components(kl.value, kl.line); continue; }
        if (kl.key == "snr_grid") {
            doc.snr_grid.clear();
            for (const std::string &tok : split_ws(kl.value))
                doc.snr_grid.push_back(parse_double(tok, kl.line));
            if (doc.snr_grid.empty()) throw ParseError(kl.line, "snr_grid is empty");
            continue;
        }
        if (auto i = node_suffix(kl.key, "components.tx", k, kl.line)) {
            tx_comps[*i] = parse_components(kl.value, kl.line);
            continue;
        }
        if (auto i = node_suffix(kl.key, "components.rx", k, kl.line)) {
            rx_comps[*i] = parse_components(kl.value, kl.line);
            continue;
        }
        if (auto i = node_suffix(kl.key, "rotation.tx", k, kl.line)) {
            tx_rot[*i] = parse_double(kl.value, kl.line);
            continue;
        }
        if (auto i = node_suffix(kl.key, "rotation.rx", k, kl.line)) {
            rx_rot[*i] = parse_double(kl.value, kl.line);
            continue;
        }
        if (auto i = node_suffix(kl.key, "tx", k, kl.line)) {
            tx[*i] = parse_point(kl);
            continue;
        }
        if (auto i = node_suffix(kl.key, "rx", k, kl.line)) {
            rx[*i] = parse_point(kl);
            continue;
        }
        if (auto i = node_suffix(kl.key, "offset", m, kl.line)) {
            offsets[*i] = parse_point(kl);
            continue;
        }
        throw ParseError(kl.line, "unknown key '" + kl.key + "'");
    }

    if (seed_override) s.seed = *seed_override;
    if (doc.placement == PlacementKind::Explicit) {
        s.tx_positions.resize(k);
        s.rx_positions.resize(k);
        for (int i = 0; i < k; ++i) {
            if (!tx[i] || !rx[i])
                throw ScenarioError("explicit placement: missing tx" + std::to_string(i + 1) +
                                    " or rx" + std::to_string(i + 1));
            s.tx_positions[i] = *tx[i];
            s.rx_positions[i] = *rx[i];
        }
        s.antenna_offsets = detail::half_wavelength_row(m, s.wavenumber);
    } else {
        for (int i = 0; i < k; ++i)
            if (tx[i] || rx[i])
                throw ScenarioError("random placement: coordinate keys are not allowed");
        const Scenario drawn = random_generic_scenario(k, m, s.seed, doc.min_angle_sep);
        s.tx_positions = drawn.tx_positions;
        s.rx_positions = drawn.rx_positions;
        s.antenna_offsets = drawn.antenna_offsets;
    }
    for (int q = 1; q < m; ++q)
        if (offsets[q]) s.antenna_offsets[q] = *offsets[q];
    if (offsets[0] && offsets[0]->norm() != 0.0)
        throw ScenarioError("offset1 must stay at the origin");

    const std::vector<DipoleComponent> default_comps =
        global_comps ? *global_comps
                     : std::vector<DipoleComponent>(kAllComponents.begin(), kAllComponents.end());
    s.tx_configs.resize(k);
    s.rx_configs.resize(k);
    for (int i = 0; i < k; ++i) {
        s.tx_configs[i] = {tx_comps[i] ? *tx_comps[i] : default_comps, tx_rot[i]};
        s.rx_configs[i] = {rx_comps[i] ? *rx_comps[i] : default_comps, rx_rot[i]};
    }

    if (doc.id.empty())
        doc.id = "k" + std::to_string(k) + "m" + std::to_string(m) + "s" + std::to_string(s.seed);
    s.validate();
    return doc;
}

inline ScenarioDoc parse_scenario_file(const std::string &path,
                                        std::optional<std::uint64_t> seed_override = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    return parse_scenario(in, seed_override);
}

/// Canonical explicit-placement form; parsing it back reproduces the scenario
/// exactly (coordinates are written with shortest round-trip precision).
inline std::string emit_scenario(const ScenarioDoc &doc) {
    using ioutil::fmt_double;
    const Scenario &s = doc.scenario;
    std::ostringstream out;
    out << "id: " << doc.id << "\n";
    out << "k: " << s.K << "\n";
    out << "m: " << s.M << "\n";
    out << "wavenumber: " << fmt_double(s.wavenumber) << "\n";
    out << "placement: explicit\n";
    out << "seed: " << s.seed << "\n";
    out << "min_angle_sep: " << fmt_double(doc.min_angle_sep) << "\n";
    out << "scheme: " << (doc.scheme == Scheme::FixedZf ? "fixed-zf" : "optimal-placement") << "\n";

    auto components_line = [](const DipoleConfig &cfg) {
        std::string line;
        for (DipoleComponent c : cfg.components) {
            if (!line.empty()) line += ' ';
            line += component_token(c);
        }
        return line;
    };
    bool uniform = true;
    for (int i = 0; i < s.K && uniform; ++i)
        uniform = components_line(s.tx_configs[i]) == components_line(s.tx_configs[0]) &&
                  components_line(s.rx_configs[i]) == components_line(s.tx_configs[0]);
    if (uniform) {
        out << "components: " << components_line(s.tx_configs[0]) << "\n";
    } else {
        for (int i = 0; i < s.K; ++i)
            out << "components.tx" << i + 1 << ": " << components_line(s.tx_configs[i]) << "\n";
        for (int i = 0; i < s.K; ++i)
            out << "components.rx" << i + 1 << ": " << components_line(s.rx_configs[i]) << "\n";
    }
    for (int i = 0; i < s.K; ++i) {
        if (s.tx_configs[i].azimuth_rotation != 0.0)
            out << "rotation.tx" << i + 1 << ": " << fmt_double(s.tx_configs[i].azimuth_rotation) << "\n";
        if (s.rx_configs[i].azimuth_rotation != 0.0)
            out << "rotation.rx" << i + 1 << ": " << fmt_double(s.rx_configs[i].azimuth_rotation) << "\n";
    }
    for (int i = 0; i < s.K; ++i)
        out << "tx" << i + 1 << ": " << fmt_double(s.tx_positions[i].x()) << " "
            << fmt_double(s.tx_positions[i].y()) << "\n";
    for (int i = 0; i < s.K; ++i)
        out << "rx" << i + 1 << ": " << fmt_double(s.rx_positions[i].x()) << " "
            << fmt_double(s.rx_positions[i].y()) << "\n";
    for (int q = 1; q < s.M; ++q)
        out << "offset" << q + 1 << ": " << fmt_double(s.antenna_offsets[q].x()) << " "
            << fmt_double(s.antenna_offsets[q].y()) << "\n";
    out << "snr_grid:";
    for (double snr : doc.snr_grid) out << " " << fmt_double(snr);
    out << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Design files: beamformers, assignment, leakage
// ---------------------------------------------------------------------------

inline void write_matrix(std::ostream &out, const std::string &name, int user_1based,
                         const Eigen::MatrixXcd &m) {
    out << "matrix " << name << " " << user_1based << " " << m.rows() << " " << m.cols() << "\n";
    bool first = true;
    for (long c = 0; c < m.cols(); ++c) { // column-major token order
        for (long r = 0; r < m.rows(); ++r) {
            out << (first ? "" : " ") << ioutil::fmt_complex(m(r, c));
            first = false;
        }
    }
    out << "\n";
}

inline std::string emit_design(const ZFDesign &design) {
    std::ostringstream out;
    const int K = design.assignment.K;
    out << "polaric-design: 1\n";
    out << "k: " << K << "\n";
    out << "capacity: " << design.assignment.capacity << "\n";
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            if (i == j || design.assignment.at(i, j) == NullSide::Unassigned) continue;
            out << "null " << i + 1 << " " << j + 1 << " "
                << (design.assignment.at(i, j) == NullSide::TxNulls ? "tx" : "rx") << "\n";
        }
    }
    for (int i = 0; i < K; ++i) {
        write_matrix(out, "V", i + 1, design.users[i].V);
        write_matrix(out, "U", i + 1, design.users[i].U);
    }
    for (const LinkLeakage &l : design.leakage)
        out << "leakage " << l.tx + 1 << " " << l.rx + 1 << " " << ioutil::fmt_double(l.relative)
            << (l.side == NullSide::Unassigned ? " unassigned" : " assigned") << "\n";
    out << "max_assigned_leakage: " << ioutil::fmt_double(design.max_assigned_leakage) << "\n";
    return out.str();
}

/// Design as stored on disk; leakage lines are informational and re-derived
/// on verification.
struct DesignFile {
    int K = 0;
    NullingAssignment assignment;
    std::vector<Beamformer> users;
};

inline DesignFile parse_design(std::istream &in) {
    using namespace ioutil;
    DesignFile file;
    std::string raw;
    int line = 0;
    bool have_header = false;

    auto next_tokens = [&](std::optional<std::vector<std::string>> &out) {
        out.reset();
        while (std::getline(in, raw)) {
            ++line;
            const std::string text = trim(raw);
            if (text.empty()) continue;
            out = split_ws(text);
            return;
        }
    };

    std::optional<std::vector<std::string>> toks;
    for (next_tokens(toks); toks; next_tokens(toks)) {
        const std::vector<std::string> &t = *toks;
        if (t[0] == "polaric-design:") { have_header = true; continue; }
        if (!have_header) throw ParseError(line, "missing polaric-design header");
        if (t[0] == "k:") {
            file.K = static_cast<int>(parse_int(t.at(1), line));
            file.assignment.K = file.K;
            file.assignment.side.assign(file.K, std::vector<NullSide>(file.K, NullSide::Unassigned));
            file.users.resize(file.K);
            continue;
        }
        if (t[0] == "capacity:") {
            file.assignment.capacity = static_cast<int>(parse_int(t.at(1), line));
            continue;
        }
        if (t[0] == "null") {
            if (file.K == 0) throw ParseError(line, "'null' before 'k:'");
            const int i = static_cast<int>(parse_int(t.at(1), line)) - 1;
            const int j = static_cast<int>(parse_int(t.at(2), line)) - 1;
            if (i < 0 || i >= file.K || j < 0 || j >= file.K || i == j)
                throw ParseError(line, "bad link indices");
            file.assignment.side[i][j] = t.at(3) == "tx" ? NullSide::TxNulls : NullSide::RxNulls;
            continue;
        }
        if (t[0] == "matrix") {
            if (file.K == 0) throw ParseError(line, "'matrix' before 'k:'");
            const std::string name = t.at(1);
            const int user = static_cast<int>(parse_int(t.at(2), line)) - 1;
            const long rows = parse_int(t.at(3), line), cols = parse_int(t.at(4), line);
            if (user < 0 || user >= file.K || rows < 1 || cols < 1)
                throw ParseError(line, "bad matrix header");
            std::vector<std::string> entry_toks;
            while (static_cast<long>(entry_toks.size()) < rows * cols) {
                std::optional<std::vector<std::string>> more;
                next_tokens(more);
                if (!more) throw ParseError(line, "matrix body truncated");
                entry_toks.insert(entry_toks.end(), more->begin(), more->end());
            }
            Eigen::MatrixXcd m(rows, cols);
            long at = 0;
            for (long c = 0; c < cols; ++c)
                for (long r = 0; r < rows; ++r) m(r, c) = parse_complex(entry_toks[at++], line);
            if (name == "V") file.users[user].V = m;
            else if (name == "U") file.users[user].U = m;
            else throw ParseError(line, "matrix name must be V or U");
            continue;
        }
        if (t[0] == "leakage" || t[0] == "max_assigned_leakage:") continue;
        throw ParseError(line, "unknown design entry '" + t[0] + "'");
    }
    if (file.K == 0) throw ParseError(line, "design file has no 'k:' line");
    for (int i = 0; i < file.K; ++i)
        if (file.users[i].V.size() == 0 || file.users[i].U.size() == 0)
            throw ParseError(line, "user " + std::to_string(i + 1) + " is missing V or U");
    return file;
}

// ---------------------------------------------------------------------------
// CSV result records
// ---------------------------------------------------------------------------

inline const char *result_csv_header() {
    return "scenario,k,m,components,scheme,leakage_max,dof,gamma_hat,genericity_margin,seed";
}

struct ResultRecord {
    std::string scenario_id;
    int K = 0;
    int M = 0;
    int components = 0;
    std::string scheme;
    double leakage_max = 0.0;
    int dof = 0;
    double gamma_hat = 0.0;
    double genericity = 0.0;
    std::uint64_t seed = 0;

    std::string csv_row() const {
        std::ostringstream os;
        os << scenario_id << ',' << K << ',' << M << ',' << components << ',' << scheme << ','
           << ioutil::fmt_double(leakage_max) << ',' << dof << ','
           << ioutil::fmt_double(gamma_hat) << ',' << ioutil::fmt_double(genericity) << ','
           << seed;
        return os.str();
    }
};

inline std::string rate_curve_csv(const RateCurve &curve) {
    std::string out = "snr,sum_rate\n";
    for (const RatePoint &p : curve.points)
        out += ioutil::fmt_double(p.snr) + "," + ioutil::fmt_double(p.sum_rate) + "\n";
    return out;
}

inline std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out = "components,mean_dof\n";
    for (const SweepRow &r : rows)
        out += std::to_string(r.component_count) + "," + ioutil::fmt_double(r.mean_dof) + "\n";
    return out;
}

} // namespace polaric

#endif
