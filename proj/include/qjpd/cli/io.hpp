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


// JSON input parsing and CSV/JSON table output for the command-line tool.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qjpd/analysis.hpp"

namespace qjpd::cli {

using json = nlohmann::json;

/// Malformed input: unreadable file, bad JSON, wrong shape. Exit code 2.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain rule. Exit code 3.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Shortest round-trippable decimal form.
inline std::string format_double(double x) {
    if (x == 0.0) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(field + ": missing key '" + key + "'");
    return j.at(key);
}

inline double as_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ParseError(field + ": expected a number");
    return j.get<double>();
}

inline int as_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ParseError(field + ": expected an integer");
    return j.get<int>();
}

}  // namespace detail

/// A complex number as [re, im] or a bare real.
inline Complex parse_complex(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw ParseError(field + ": expected [re, im]");
    return {detail::as_number(j[0], field + "[0]"), detail::as_number(j[1], field + "[1]")};
}

inline json complex_to_json(Complex z) {
    return json::array({z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()});
}

inline ComplexMatrix parse_matrix(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw ParseError(field + ": expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError(row_field + ": expected " + std::to_string(n) + " entries");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], row_field + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Field path of the entry that breaks Hermiticity the most.
inline std::string worst_hermitian_entry(const ComplexMatrix& m, const std::string& field) {
    double worst = -1.0;
    Eigen::Index wr = 0, wc = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = r; c < m.cols(); ++c) {
            const double d = std::abs(m(r, c) - std::conj(m(c, r)));
            if (d > worst) {
                worst = d;
                wr = r;
                wc = c;
            }
        }
    }
    return field + "[" + std::to_string(wr) + "][" + std::to_string(wc) + "]";
}

/// Twice the spin from "1/2", "1", "3/2", ...
inline int parse_spin_twice(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            const int j = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return 2 * j;
        }
        const int num = std::stoi(text.substr(0, slash), &used);
        if (used != slash || text.substr(slash + 1) != "2") throw std::invalid_argument(text);
        return num;
    } catch (const std::logic_error&) {
        throw ParseError(field + ": cannot read spin '" + text + "'");
    }
}

/// "spin:J" or "spin:J:K" where K is 1, 2 or 3.
inline HermitianObservable builtin_observable(const std::string& token, int component, const std::string& field) {
    if (token.rfind("spin:", 0) != 0) throw ParseError(field + ": unknown built-in '" + token + "'");
    std::string rest = token.substr(5);
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
        try {
            std::size_t used = 0;
            component = std::stoi(rest.substr(colon + 1), &used);
            if (used != rest.size() - colon - 1) throw std::invalid_argument(rest);
        } catch (const std::logic_error&) {
            throw ParseError(field + ": bad component in '" + token + "'");
        }
        rest = rest.substr(0, colon);
    }
    const int twice = parse_spin_twice(rest, field);
    if (twice < 1) throw ValidationError(field, "spin must be at least 1/2");
    if (component < 1 || component > 3) throw ValidationError(field + ".component", "must be 1, 2 or 3");
    return spin_operators(twice).component(component);
}

inline HermitianObservable parse_observable(const json& j, const std::string& field) {
    if (j.is_string()) return builtin_observable(j.get<std::string>(), 0, field);
    if (!j.is_object()) throw ParseError(field + ": expected an object");
    if (j.contains("builtin")) {
        const json& b = j.at("builtin");
        if (!b.is_string()) throw ParseError(field + ".builtin: expected a string");
        const int component = j.contains("component") ? detail::as_int(j.at("component"), field + ".component") : 0;
        return builtin_observable(b.get<std::string>(), component, field + ".builtin");
    }
    const ComplexMatrix m = parse_matrix(detail::require(j, "matrix", field), field + ".matrix");
    if (j.contains("dim") && detail::as_int(j.at("dim"), field + ".dim") != m.rows()) {
        throw ValidationError(field + ".dim", "does not match the matrix size");
    }
    if (hermitian_deviation(m) > kHermitianTol * std::max(1.0, max_norm(m))) {
        throw ValidationError(worst_hermitian_entry(m, field + ".matrix"), "matrix is not Hermitian");
    }
    const std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>()
                                                                               : field;
    return HermitianObservable(m, label);
}

inline DensityState parse_state(const json& j, const std::string& field) {
    if (!j.is_object()) throw ParseError(field + ": expected an object");
    if (j.contains("bloch")) {
        const json& b = j.at("bloch");
        const double theta = detail::as_number(detail::require(b, "theta", field + ".bloch"), field + ".bloch.theta");
        const double phi = detail::as_number(detail::require(b, "phi", field + ".bloch"), field + ".bloch.phi");
        const double m = b.contains("m") ? detail::as_number(b.at("m"), field + ".bloch.m") : 1.0;
        try {
            return bloch_state(theta, phi, m);
        } catch (const Error& e) {
            throw ValidationError(field + ".bloch", e.what());
        }
    }
    const ComplexMatrix rho = parse_matrix(detail::require(j, "density", field), field + ".density");
    if (hermitian_deviation(rho) > kHermitianTol) {
        throw ValidationError(worst_hermitian_entry(rho, field + ".density"), "density matrix is not Hermitian");
    }
    try {
        return DensityState(rho);
    } catch (const Error& e) {
        throw ValidationError(field + ".density", e.what());
    }
}

inline SchemeSpec parse_explicit_scheme(const json& j, const std::string& field) {
    SchemeSpec spec;
    const json& terms = detail::require(j, "terms", field);
    if (!terms.is_array() || terms.empty()) throw ParseError(field + ".terms: expected a non-empty array");
    std::size_t max_index = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string tf = field + ".terms[" + std::to_string(t) + "]";
        SchemeTerm term;
        term.weight = parse_complex(detail::require(terms[t], "weight", tf), tf + ".weight");
        const json& word = detail::require(terms[t], "word", tf);
        if (!word.is_array()) throw ParseError(tf + ".word: expected an array");
        for (std::size_t k = 0; k < word.size(); ++k) {
            const std::string ff = tf + ".word[" + std::to_string(k) + "]";
            const int var = detail::as_int(detail::require(word[k], "var", ff), ff + ".var");
            const int obs = detail::as_int(detail::require(word[k], "obs", ff), ff + ".obs");
            if (var < 0 || obs < 0) throw ValidationError(ff, "indices must be non-negative");
            const double coeff = detail::as_number(detail::require(word[k], "coeff", ff), ff + ".coeff");
            term.word.push_back({static_cast<std::size_t>(var), coeff, static_cast<std::size_t>(obs)});
            max_index = std::max({max_index, static_cast<std::size_t>(var), static_cast<std::size_t>(obs)});
        }
        spec.terms.push_back(std::move(term));
    }
    spec.n_vars = j.contains("n_vars") ? static_cast<std::size_t>(detail::as_int(j.at("n_vars"), field + ".n_vars"))
                                       : max_index + 1;
    spec.label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "explicit";
    try {
        spec.validate();
    } catch (const Error& e) {
        throw ValidationError(field + ".terms", e.what());
    }
    return spec;
}

/// Named or explicit scheme. `n_vars` is the number of observables supplied
/// and only matters for the Kirkwood-Dirac and Wigner schemes.
inline HashedSpec parse_scheme(const json& j, std::size_t n_vars, const std::string& field) {
    if (j.is_object() && j.contains("terms")) return parse_explicit_scheme(j, field);
    if (!j.is_object()) throw ParseError(field + ": expected an object");
    const json& name_json = detail::require(j, "name", field);
    if (!name_json.is_string()) throw ParseError(field + ".name: expected a string");
    const std::string name = name_json.get<std::string>();
    auto alpha = [&](double fallback) {
        return j.contains("alpha") ? detail::as_number(j.at("alpha"), field + ".alpha") : fallback;
    };
    if (name == "kirkwood") return scheme_kirkwood(std::max<std::size_t>(n_vars, 1));
    if (name == "s_alpha") return scheme_s_alpha(alpha(0.5));
    if (name == "margenau_hill") return scheme_margenau_hill(alpha(0.0));
    if (name == "born_jordan") {
        const int nodes = j.contains("nodes") ? detail::as_int(j.at("nodes"), field + ".nodes") : 201;
        if (nodes < 1) throw ValidationError(field + ".nodes", "must be positive");
        return scheme_born_jordan(static_cast<std::size_t>(nodes));
    }
    if (name == "wigner") return WignerSpec{std::max<std::size_t>(n_vars, 1)};
    throw ValidationError(field + ".name", "unknown scheme '" + name + "'");
}

/// "lo:hi:steps,lo:hi:steps,..."
inline std::vector<AxisGrid> parse_grid(const std::string& text, const std::string& field = "--grid") {
    std::vector<AxisGrid> axes;
    std::stringstream all(text);
    std::string axis;
    while (std::getline(all, axis, ',')) {
        std::stringstream parts(axis);
        std::string lo, hi, steps;
        if (!std::getline(parts, lo, ':') || !std::getline(parts, hi, ':') || !std::getline(parts, steps, ':')) {
            throw ParseError(field + ": axis '" + axis + "' is not lo:hi:steps");
        }
        AxisGrid g;
        try {
            std::size_t used = 0;
            g.lo = std::stod(lo, &used);
            if (used != lo.size()) throw std::invalid_argument(lo);
            g.hi = std::stod(hi, &used);
            if (used != hi.size()) throw std::invalid_argument(hi);
            const long n = std::stol(steps, &used);
            if (used != steps.size()) throw std::invalid_argument(steps);
            if (n < 1) throw ValidationError(field, "axis '" + axis + "' needs at least one step");
            g.steps = static_cast<std::size_t>(n);
        } catch (const std::logic_error&) {
            throw ParseError(field + ": axis '" + axis + "' has a malformed number");
        }
        axes.push_back(g);
    }
    if (axes.empty()) throw ParseError(field + ": empty grid");
    return axes;
}

/// A plain table: header, rows of already formatted cells, comment lines.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> preamble;
    std::vector<std::string> footer;
};

inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& line : t.preamble) os << "# " << line << '\n';
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    for (const auto& line : t.footer) os << "# " << line << '\n';
}

inline std::vector<std::string> info_lines(const DistributionInfo& info) {
    std::vector<std::string> out{"scheme=" + info.scheme};
    std::string obs;
    for (std::size_t i = 0; i < info.observables.size(); ++i) obs += (i ? ";" : "") + info.observables[i];
    out.push_back("observables=" + obs);
    out.push_back(std::string("approximate=") + (info.approximate ? "true" : "false"));
    if (!info.note.empty()) out.push_back("note=" + info.note);
    return out;
}

inline Table distribution_table(const QuasiDistribution& dist) {
    Table t;
    for (std::size_t k = 0; k < dist.n_vars; ++k) t.header.push_back("x" + std::to_string(k + 1));
    t.header.insert(t.header.end(), {"weight_re", "weight_im"});
    t.preamble = info_lines(dist.info);
    for (const auto& a : dist.atoms) {
        std::vector<std::string> row;
        for (double x : a.point) row.push_back(format_double(x));
        row.push_back(format_double(a.weight.real()));
        row.push_back(format_double(a.weight.imag()));
        t.rows.push_back(std::move(row));
    }
    const Complex total = dist.total();
    t.footer.push_back("weight_sum=" + format_double(total.real()) + "," + format_double(total.imag()));
    return t;
}

inline json info_to_json(const DistributionInfo& info) {
    return {{"scheme", info.scheme},
            {"observables", info.observables},
            {"approximate", info.approximate},
            {"note", info.note}};
}

inline json distribution_to_json(const QuasiDistribution& dist) {
    json atoms = json::array();
    for (const auto& a : dist.atoms) atoms.push_back({{"point", a.point}, {"weight", complex_to_json(a.weight)}});
    return {{"n_vars", dist.n_vars},
            {"metadata", info_to_json(dist.info)},
            {"atoms", std::move(atoms)},
            {"weight_sum", complex_to_json(dist.total())}};
}

}  // namespace qjpd::cli
