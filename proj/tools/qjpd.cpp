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


// qjpd: quasi-joint-probability distributions from the command line.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qjpd/cli/app.hpp"

namespace {

template <class T>
void apply_if_set(const CLI::Option* opt, const T& value, std::optional<T>& target) {
    if (opt->count() > 0) target = value;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qjpd::cli;

    CLI::App app{"Quasi-joint-probability distributions of non-commuting observables"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path;
    bool dump_config = false;
    std::vector<std::string> observables;
    std::string state, scheme, out, format = "csv", grid;
    double alpha = 0.0, tol_support = 0.0, tol_real = 0.0;
    int nodes = 0, n = 0, n_a = 0, n_b = 0, samples = 16;
    std::uint64_t seed = 1;

    app.add_option("--config", config_path, "Job configuration JSON; flags override its fields");
    app.add_flag("--dump-config", dump_config, "Print the canonical job configuration and exit");
    auto* obs_opt = app.add_option("--obs", observables, "Observable JSON file or built-in such as spin:1/2:1");
    auto* state_opt = app.add_option("--state", state, "State JSON file");
    auto* scheme_opt = app.add_option(
        "--scheme", scheme, "kirkwood | s_alpha | margenau_hill | born_jordan | wigner, or a scheme JSON file");
    auto* alpha_opt = app.add_option("--alpha", alpha, "Parameter of s_alpha and margenau_hill");
    auto* nodes_opt = app.add_option("--nodes", nodes, "Quadrature nodes for born_jordan");
    auto* out_opt = app.add_option("--out", out, "Output path (default: standard output)");
    auto* format_opt = app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    auto* tol_support_opt = app.add_option("--tol-support", tol_support, "Weight threshold for support checks");
    auto* tol_real_opt = app.add_option("--tol-real", tol_real, "Imaginary-part threshold for realness");
    auto* grid_opt = app.add_option("--grid", grid, "Parameter grid lo:hi:steps,... (charfunc, wigner, scan)");
    auto* n_opt = app.add_option("--N", n, "Hilbert-space dimension (degeneracy)");
    auto* na_opt = app.add_option("--NA", n_a, "Distinct eigenvalues of A (degeneracy)");
    auto* nb_opt = app.add_option("--NB", n_b, "Distinct eigenvalues of B (degeneracy)");
    auto* samples_opt = app.add_option("--samples", samples, "Random parameter samples for scheme checks");
    auto* seed_opt = app.add_option("--seed", seed, "Random seed for scheme checks");

    for (const auto& [cmd, name] : kCommandNames) app.add_subcommand(name, "")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    JobConfig job;
    try {
        if (!config_path.empty()) job = job_from_json(load_json_file(config_path));
        const auto chosen = app.get_subcommands();
        if (!chosen.empty()) {
            job.command = parse_command(chosen.front()->get_name());
        } else if (config_path.empty()) {
            throw ParseError("a subcommand is required");
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    }

    if (obs_opt->count() > 0) job.observables = observables;
    if (state_opt->count() > 0) job.state = state;
    if (scheme_opt->count() > 0) job.scheme = scheme;
    apply_if_set(alpha_opt, alpha, job.alpha);
    apply_if_set(nodes_opt, nodes, job.nodes);
    if (out_opt->count() > 0) job.out = out;
    if (format_opt->count() > 0) job.format = parse_format(format);
    apply_if_set(tol_support_opt, tol_support, job.tol_support);
    apply_if_set(tol_real_opt, tol_real, job.tol_real);
    if (grid_opt->count() > 0) job.grid = grid;
    apply_if_set(n_opt, n, job.n);
    apply_if_set(na_opt, n_a, job.n_a);
    apply_if_set(nb_opt, n_b, job.n_b);
    if (samples_opt->count() > 0) job.samples = samples;
    if (seed_opt->count() > 0) job.seed = seed;

    if (dump_config) {
        std::cout << to_json(job).dump(2) << '\n';
        return 0;
    }
    return run(job, std::cout, std::cerr);
}
