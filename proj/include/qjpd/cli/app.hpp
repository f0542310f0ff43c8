// Copyright 2026 The qjpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Job description and command dispatch for the qjpd tool.
//
// Exit codes: 0 success, 1 numerical failure (rank-deficient tomography,
// divergence-flagged output), 2 malformed input, 3 invalid input.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "qjpd/cli/io.hpp"

namespace qjpd::cli {

enum class Command { Compute, Marginals, Tomography, Rank, Verify, Charfunc, Degeneracy, ScanRealness };
enum class OutputFormat { Csv, Json };

inline constexpr std::array<std::pair<Command, const char*>, 8> kCommandNames{{
    {Command::Compute, "compute"},
    {Command::Marginals, "marginals"},
    {Command::Tomography, "tomography"},
    {Command::Rank, "rank"},
    {Command::Verify, "verify"},
    {Command::Charfunc, "charfunc"},
    {Command::Degeneracy, "degeneracy"},
    {Command::ScanRealness, "scan-realness"},
}};

inline const char* to_string(Command c) {
    for (const auto& [cmd, name] : kCommandNames) {
        if (cmd == c) return name;
    }
    return "?";
}

inline Command parse_command(const std::string& s) {
    for (const auto& [cmd, name] : kCommandNames) {
        if (s == name) return cmd;
    }
    throw ParseError("unknown command '" + s + "'");
}

inline const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ParseError("unknown output format '" + s + "'");
}

inline constexpr const char* kDefaultScanGrid = "0:3.141592653589793:5,0:5.497787143782138:8,0:1:3";

struct JobConfig {
    Command command = Command::Compute;
    /// Paths to observable JSON files, or built-in tokens such as "spin:1/2:1".
    std::vector<std::string> observables;
    std::string state;
    /// A scheme name (kirkwood, s_alpha, margenau_hill, born_jordan, wigner)
    /// or a path to a scheme JSON file.
    std::string scheme;
    std::optional<double> alpha;
    std::optional<int> nodes;
    std::string out;
    OutputFormat format = OutputFormat::Csv;
    std::optional<double> tol_support;
    std::optional<double> tol_real;
    std::string grid;
    std::optional<int> n, n_a, n_b;
    int samples = 16;
    std::uint64_t seed = 1;

    bool operator==(const JobConfig&) const = default;
};

namespace detail {

template <class T>
json optional_to_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const json& v = j.at(key);
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ParseError(std::string("config.") + key + ": expected an integer");
    } else {
        if (!v.is_number()) throw ParseError(std::string("config.") + key + ": expected a number");
    }
    return v.get<T>();
}

inline std::string string_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return {};
    if (!j.at(key).is_string()) throw ParseError(std::string("config.") + key + ": expected a string");
    return j.at(key).get<std::string>();
}

}  // namespace detail

/// Canonical form: every field present, keys sorted.
inline json to_json(const JobConfig& c) {
    return {{"command", to_string(c.command)},
            {"observables", c.observables},
            {"state", c.state},
            {"scheme", c.scheme},
            {"alpha", detail::optional_to_json(c.alpha)},
            {"nodes", detail::optional_to_json(c.nodes)},
            {"out", c.out},
            {"format", to_string(c.format)},
            {"tol_support", detail::optional_to_json(c.tol_support)},
            {"tol_real", detail::optional_to_json(c.tol_real)},
            {"grid", c.grid},
            {"N", detail::optional_to_json(c.n)},
            {"NA", detail::optional_to_json(c.n_a)},
            {"NB", detail::optional_to_json(c.n_b)},
            {"samples", c.samples},
            {"seed", c.seed}};
}

inline JobConfig job_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("config: expected an object");
    JobConfig c;
    c.command = parse_command(detail::string_from_json(j, "command"));
    if (j.contains("observables")) {
        const json& obs = j.at("observables");
        if (!obs.is_array()) throw ParseError("config.observables: expected an array");
        for (const auto& o : obs) {
            if (!o.is_string()) throw ParseError("config.observables: expected strings");
            c.observables.push_back(o.get<std::string>());
        }
    }
    c.state = detail::string_from_json(j, "state");
    c.scheme = detail::string_from_json(j, "scheme");
    c.alpha = detail::optional_from_json<double>(j, "alpha");
    c.nodes = detail::optional_from_json<int>(j, "nodes");
    c.out = detail::string_from_json(j, "out");
    const std::string fmt = detail::string_from_json(j, "format");
    c.format = fmt.empty() ? OutputFormat::Csv : parse_format(fmt);
    c.tol_support = detail::optional_from_json<double>(j, "tol_support");
    c.tol_real = detail::optional_from_json<double>(j, "tol_real");
    c.grid = detail::string_from_json(j, "grid");
    c.n = detail::optional_from_json<int>(j, "N");
    c.n_a = detail::optional_from_json<int>(j, "NA");
    c.n_b = detail::optional_from_json<int>(j, "NB");
    c.samples = detail::optional_from_json<int>(j, "samples").value_or(16);
    c.seed = detail::optional_from_json<std::uint64_t>(j, "seed").value_or(1);
    return c;
}

/// Result of one command: a table for CSV, a document for JSON, an exit code.
struct Output {
    Table table;
    json doc;
    int code = 0;
};

namespace detail {

inline bool is_named_scheme(const std::string& s) {
    return s == "kirkwood" || s == "s_alpha" || s == "margenau_hill" || s == "born_jordan" || s == "wigner";
}

inline std::vector<HermitianObservable> load_observables(const JobConfig& job) {
    std::vector<HermitianObservable> out;
    for (std::size_t i = 0; i < job.observables.size(); ++i) {
        const std::string& src = job.observables[i];
        const std::string field = "--obs[" + std::to_string(i) + "]";
        if (src.rfind("spin:", 0) == 0 && !std::filesystem::exists(src)) {
            out.push_back(builtin_observable(src, 0, field));
        } else {
            out.push_back(parse_observable(load_json_file(src), field));
        }
    }
    if (out.empty()) throw ValidationError("--obs", "at least one observable is required");
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].dim() != out[0].dim()) {
            throw ValidationError("--obs[" + std::to_string(i) + "]", "dimension differs from --obs[0]");
        }
    }
    return out;
}

inline DensityState load_state(const JobConfig& job, std::size_t dim) {
    if (job.state.empty()) throw ValidationError("--state", "a state file is required");
    DensityState rho = parse_state(load_json_file(job.state), "--state");
    if (rho.dim() != dim) throw ValidationError("--state", "dimension does not match the observables");
    return rho;
}

inline HashedSpec load_scheme(const JobConfig& job, std::size_t n_vars) {
    if (job.scheme.empty()) throw ValidationError("--scheme", "a scheme is required");
    json j;
    if (is_named_scheme(job.scheme)) {
        j = {{"name", job.scheme}};
        if (job.alpha) j["alpha"] = *job.alpha;
        if (job.nodes) j["nodes"] = *job.nodes;
    } else {
        j = load_json_file(job.scheme);
    }
    HashedSpec spec = parse_scheme(j, n_vars, "--scheme");
    const std::size_t want = std::visit([](const auto& s) { return s.n_vars; }, spec);
    if (want != n_vars) {
        throw ValidationError("--obs", "scheme expects " + std::to_string(want) + " observables, got " +
                                           std::to_string(n_vars));
    }
    return spec;
}

inline SchemeSpec require_product_form(const HashedSpec& spec, const char* command) {
    if (const auto* s = std::get_if<SchemeSpec>(&spec)) return *s;
    throw ValidationError("--scheme", std::string("the wigner scheme has no atoms; '") + command +
                                          "' needs a product-form scheme");
}

inline std::vector<std::string> key_value_header() { return {"key", "value"}; }

inline void add_kv(Output& o, const std::string& key, const json& value) {
    std::string cell;
    if (value.is_number_float()) {
        cell = format_double(value.get<double>());
    } else if (value.is_string()) {
        cell = value.get<std::string>();
    } else {
        cell = value.dump();
    }
    o.table.rows.push_back({key, cell});
    o.doc[key] = value;
}

inline std::string point_text(const SupportPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_double(p[i]);
    return s + ")";
}

inline Output compute(const JobConfig& job) {
    const auto obs = load_observables(job);
    const DensityState rho = load_state(job, obs.front().dim());
    const HashedSpec spec = load_scheme(job, obs.size());
    Output o;
    if (std::holds_alternative<WignerSpec>(spec)) {
        if (job.grid.empty()) throw ValidationError("--grid", "the wigner scheme needs a parameter grid");
        const auto axes = parse_grid(job.grid);
        if (axes.size() != obs.size()) throw ValidationError("--grid", "one axis per observable is required");
        std::vector<std::vector<double>> values;
        for (const auto& a : obs) values.push_back(a.eigenvalues());
        std::vector<SupportPoint> x_points{{}};
        for (const auto& vs : values) {
            std::vector<SupportPoint> next;
            for (const auto& p : x_points) {
                for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
                    SupportPoint q = p;
                    q.push_back(qjpd::detail::snap_to_grid(*it));
                    next.push_back(std::move(q));
                }
            }
            x_points = std::move(next);
        }
        const GridDensity g = wigner_windowed_density(obs, rho, axes, x_points);
        for (std::size_t k = 0; k < obs.size(); ++k) o.table.header.push_back("x" + std::to_string(k + 1));
        o.table.header.insert(o.table.header.end(), {"weight_re", "weight_im"});
        o.table.preamble = {"scheme=wigner", "approximate=true", "possibly_divergent=true",
                            "note=Hann-windowed discrete transform of the characteristic function"};
        json rows = json::array();
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            std::vector<std::string> row;
            for (double x : g.points[i]) row.push_back(format_double(x));
            row.push_back(format_double(g.values[i].real()));
            row.push_back(format_double(g.values[i].imag()));
            o.table.rows.push_back(std::move(row));
            rows.push_back({{"point", g.points[i]}, {"value", complex_to_json(g.values[i])}});
        }
        o.doc = {{"metadata", {{"scheme", "wigner"}, {"approximate", true}, {"possibly_divergent", true}}},
                 {"points", std::move(rows)}};
        o.code = 1;
        return o;
    }
    const OperatorAtomSet atoms = build_atoms(std::get<SchemeSpec>(spec), obs);
    const QuasiDistribution dist = evaluate_distribution(atoms, rho);
    o.table = distribution_table(dist);
    o.doc = distribution_to_json(dist);
    return o;
}

inline Output marginals(const JobConfig& job) {
    const auto obs = load_observables(job);
    const DensityState rho = load_state(job, obs.front().dim());
    const SchemeSpec spec = require_product_form(load_scheme(job, obs.size()), "marginals");
    const QuasiDistribution dist = evaluate_distribution(build_atoms(spec, obs), rho);
    Output o;
    o.table.header = {"var", "x", "weight_re", "weight_im", "born"};
    o.table.preamble = info_lines(dist.info);
    json vars = json::array();
    double worst = 0.0;
    for (std::size_t v = 0; v < obs.size(); ++v) {
        const QuasiDistribution m = marginal(dist, v);
        const QuasiDistribution born = born_distribution(obs[v], rho);
        json rows = json::array();
        for (const auto& b : born.atoms) {
            const Complex w = m.weight_at(b.point);
            worst = std::max(worst, std::abs(w - b.weight));
            o.table.rows.push_back({std::to_string(v + 1), format_double(b.point[0]), format_double(w.real()),
                                    format_double(w.imag()), format_double(b.weight.real())});
            rows.push_back({{"x", b.point[0]}, {"weight", complex_to_json(w)}, {"born", b.weight.real()}});
        }
        for (const auto& a : m.atoms) {
            const bool on_born = std::any_of(born.atoms.begin(), born.atoms.end(), [&](const WeightedPoint& b) {
                return points_close(b.point, a.point, kSupportMergeTol);
            });
            if (!on_born && std::abs(a.weight) > 0.0) {
                worst = std::max(worst, std::abs(a.weight));
                o.table.rows.push_back({std::to_string(v + 1), format_double(a.point[0]),
                                        format_double(a.weight.real()), format_double(a.weight.imag()), "0"});
                rows.push_back({{"x", a.point[0]}, {"weight", complex_to_json(a.weight)}, {"born", 0.0}});
            }
        }
        vars.push_back({{"var", v + 1}, {"rows", std::move(rows)}});
    }
    o.table.footer.push_back("max_deviation=" + format_double(worst));
    o.doc = {{"metadata", info_to_json(dist.info)}, {"marginals", std::move(vars)}, {"max_deviation", worst}};
    return o;
}

inline Output tomography(const JobConfig& job) {
    const auto obs = load_observables(job);
    const DensityState rho = load_state(job, obs.front().dim());
    const SchemeSpec spec = require_product_form(load_scheme(job, obs.size()), "tomography");
    const ReconstructionMap map = reconstruction_map(obs, spec);
    const DensityState rec = reconstruct_state(map, evaluate_distribution(map.atoms, rho));
    const double residual = max_norm(ComplexMatrix(rec.matrix() - rho.matrix()));
    Output o;
    o.table.header = {"row", "col", "re", "im"};
    o.table.preamble = {"scheme=" + spec.label, "rank=" + std::to_string(map.rank)};
    for (Eigen::Index r = 0; r < rec.matrix().rows(); ++r) {
        for (Eigen::Index c = 0; c < rec.matrix().cols(); ++c) {
            o.table.rows.push_back({std::to_string(r + 1), std::to_string(c + 1),
                                    format_double(rec.matrix()(r, c).real()),
                                    format_double(rec.matrix()(r, c).imag())});
        }
    }
    o.table.footer.push_back("residual=" + format_double(residual));
    o.doc = {{"scheme", spec.label},
             {"rank", map.rank},
             {"density", matrix_to_json(rec.matrix())},
             {"residual", residual}};
    return o;
}

inline Output rank(const JobConfig& job) {
    const auto obs = load_observables(job);
    const SchemeSpec spec = require_product_form(load_scheme(job, obs.size()), "rank");
    const ReconstructionMap map = reconstruction_map(obs, spec);
    Output o;
    o.table.header = key_value_header();
    add_kv(o, "scheme", spec.label);
    add_kv(o, "dim", map.dim());
    add_kv(o, "rank", map.rank);
    add_kv(o, "parameters", param_length(map.dim()));
    add_kv(o, "support_size", map.support.size());
    add_kv(o, "full_rank", map.full_rank());
    return o;
}

inline Output verify(const JobConfig& job) {
    const auto obs = load_observables(job);
    const DensityState rho = load_state(job, obs.front().dim());
    const SchemeSpec spec = require_product_form(load_scheme(job, obs.size()), "verify");
    const QuasiDistribution dist = evaluate_distribution(build_atoms(spec, obs), rho);
    const SupportReport support = verify_support(dist, obs, job.tol_support.value_or(kPruneTol));
    Output o;
    o.table.header = key_value_header();
    o.table.preamble = info_lines(dist.info);
    add_kv(o, "support_ok", support.ok);
    std::string offending;
    json offending_json = json::array();
    for (const auto& p : support.offending) {
        offending += (offending.empty() ? "" : " ") + point_text(p);
        offending_json.push_back(p);
    }
    o.table.rows.push_back({"offending_points", offending});
    o.doc["offending_points"] = offending_json;
    add_kv(o, "max_abs_imag", dist.max_abs_imag());
    add_kv(o, "is_real", is_real(dist, job.tol_real.value_or(kRealTol)));
    add_kv(o, "scheme_is_real", scheme_is_real(spec, obs, static_cast<std::size_t>(job.samples), job.seed));
    if (obs.front().dim() == 2 && spec.n_vars == 2) {
        add_kv(o, "diag_equality", diag_equality_check(spec, obs, static_cast<std::size_t>(job.samples), job.seed));
    }
    return o;
}

inline Output charfunc(const JobConfig& job) {
    const auto obs = load_observables(job);
    const DensityState rho = load_state(job, obs.front().dim());
    const HashedSpec spec = load_scheme(job, obs.size());
    if (job.grid.empty()) throw ValidationError("--grid", "a parameter grid is required");
    const auto axes = parse_grid(job.grid);
    if (axes.size() != obs.size()) throw ValidationError("--grid", "one axis per observable is required");
    const auto points = grid_points(axes);
    const auto values = characteristic_function(spec, obs, rho, points);
    Output o;
    for (std::size_t k = 0; k < axes.size(); ++k) o.table.header.push_back("s" + std::to_string(k + 1));
    o.table.header.insert(o.table.header.end(), {"re", "im"});
    json rows = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::string> row;
        for (double s : points[i]) row.push_back(format_double(s));
        row.push_back(format_double(values[i].real()));
        row.push_back(format_double(values[i].imag()));
        o.table.rows.push_back(std::move(row));
        rows.push_back({{"s", points[i]}, {"value", complex_to_json(values[i])}});
    }
    o.doc = {{"points", std::move(rows)}};
    return o;
}

inline Output degeneracy(const JobConfig& job) {
    int n = 0, n_a = 0, n_b = 0;
    if (job.n && job.n_a && job.n_b) {
        n = *job.n;
        n_a = *job.n_a;
        n_b = *job.n_b;
    } else if (job.observables.size() == 2) {
        const auto obs = load_observables(job);
        n = static_cast<int>(obs[0].dim());
        n_a = static_cast<int>(obs[0].eigenvalues().size());
        n_b = static_cast<int>(obs[1].eigenvalues().size());
    } else {
        throw ValidationError("--N", "give --N, --NA and --NB, or two observables");
    }
    FeasibilityReport r;
    try {
        r = degeneracy_feasible(n, n_a, n_b);
    } catch (const Error& e) {
        throw ValidationError("--NA/--NB", e.what());
    }
    Output o;
    o.table.header = key_value_header();
    add_kv(o, "N", r.n);
    add_kv(o, "NA", r.n_a);
    add_kv(o, "NB", r.n_b);
    add_kv(o, "lhs", r.lhs);
    add_kv(o, "rhs", r.rhs);
    add_kv(o, "feasible", r.feasible);
    add_kv(o, "same_count_threshold", same_count_threshold(n));
    add_kv(o, "nondegenerate_partner_threshold", nondegenerate_partner_threshold(n));
    return o;
}

inline Output scan_realness(const JobConfig& job) {
    const auto axes = parse_grid(job.grid.empty() ? kDefaultScanGrid : job.grid);
    if (axes.size() != 3) throw ValidationError("--grid", "expected theta, phi and m axes");
    const SpinTriple spin = spin_operators(1);
    const std::vector<HermitianObservable> pair{spin.J1, spin.J2};
    const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(2), pair);
    const double tol = job.tol_real.value_or(kRealTol);
    Output o;
    o.table.header = {"theta", "phi", "m", "max_imag", "expect_j3", "is_real"};
    o.table.preamble = {"scheme=kirkwood", "observables=spin:1/2:1;spin:1/2:2"};
    json rows = json::array();
    for (const auto& p : grid_points(axes)) {
        DensityState rho = DensityState::maximally_mixed(2);
        try {
            rho = bloch_state(p[0], p[1], p[2]);
        } catch (const Error& e) {
            throw ValidationError("--grid", e.what());
        }
        const QuasiDistribution dist = evaluate_distribution(atoms, rho);
        const double imag = dist.max_abs_imag();
        const double jz = expectation(spin.J3, rho);
        const bool real = imag <= tol;
        o.table.rows.push_back({format_double(p[0]), format_double(p[1]), format_double(p[2]), format_double(imag),
                                format_double(jz), real ? "true" : "false"});
        rows.push_back({{"theta", p[0]}, {"phi", p[1]}, {"m", p[2]}, {"max_imag", imag}, {"expect_j3", jz},
                        {"is_real", real}});
    }
    o.doc = {{"rows", std::move(rows)}};
    return o;
}

inline Output dispatch(const JobConfig& job) {
    switch (job.command) {
        case Command::Compute: return compute(job);
        case Command::Marginals: return marginals(job);
        case Command::Tomography: return tomography(job);
        case Command::Rank: return rank(job);
        case Command::Verify: return verify(job);
        case Command::Charfunc: return charfunc(job);
        case Command::Degeneracy: return degeneracy(job);
        case Command::ScanRealness: return scan_realness(job);
    }
    throw ParseError("unknown command");
}

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::RankDeficient:
        case ErrorKind::ConvergenceFailure:
        case ErrorKind::InconsistentScheme:
        case ErrorKind::NonRealExpectation:
            return 1;
        default:
            return 3;
    }
}

}  // namespace detail

inline void write_output(const Output& o, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::Csv) {
        write_csv(os, o.table);
    } else {
        os << o.doc.dump(2) << '\n';
    }
}

/// Runs one job, writing the result to job.out (or `out` when empty) and
/// diagnostics to `err`. Returns the process exit code.
inline int run(const JobConfig& job, std::ostream& out, std::ostream& err) {
    try {
        const Output o = detail::dispatch(job);
        if (job.out.empty()) {
            write_output(o, job.format, out);
        } else {
            std::ofstream file(job.out, std::ios::binary);
            if (!file) throw ParseError("cannot write '" + job.out + "'");
            write_output(o, job.format, file);
        }
        if (o.code != 0) err << "warning: output is approximate and possibly divergent\n";
        return o.code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return detail::exit_code_for(e.kind());
    }
}

}  // namespace qjpd::cli
