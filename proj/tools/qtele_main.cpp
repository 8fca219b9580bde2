// Copyright 2026 The qtele authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qtele: teleportation-protocol experiments from the command line.
//
// Subcommands: teleport, witness, noise-compare, sweep. A JSON config file
// (--config) mirrors the flags; flags given on the command line override it.
// Exit codes: 0 success, 1 configuration error, 2 numerical-invariant
// violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qtele/serialize.hpp"

namespace {

using nlohmann::json;

struct CliOptions {
    std::string protocol = "box";
    int n = 6;
    std::string mode = "exact";
    std::uint64_t shots = 8192;
    std::uint64_t reps = 10;
    std::optional<std::uint64_t> seed;
    std::string noise;
    std::string out;
    std::string format = "json";
    std::string config_path;
    bool emit_branches = false;
    std::string witness_state = "cluster";
    bool extrapolated = false;
    std::string chi_path;
    std::vector<std::string> kinds = {"box", "chain"};
    std::vector<int> n_values;
};

qtele::ClusterKind parse_protocol(const std::string &s) {
    if (s == "box") {
        return qtele::ClusterKind::Box;
    }
    if (s == "chain") {
        return qtele::ClusterKind::Chain;
    }
    throw std::invalid_argument("protocol must be 'box' or 'chain', got '" + s + "'");
}

qtele::RunMode parse_mode(const std::string &s) {
    if (s == "exact") {
        return qtele::RunMode::Exact;
    }
    if (s == "sampled") {
        return qtele::RunMode::Sampled;
    }
    throw std::invalid_argument("mode must be 'exact' or 'sampled', got '" + s + "'");
}

qtele::NoiseKind parse_noise_kind(const std::string &s) {
    if (s == "depolarizing") {
        return qtele::NoiseKind::Depolarizing;
    }
    if (s == "phase-damping") {
        return qtele::NoiseKind::PhaseDamping;
    }
    if (s == "amplitude-damping") {
        return qtele::NoiseKind::AmplitudeDamping;
    }
    throw std::invalid_argument(
        "noise kind must be depolarizing|phase-damping|amplitude-damping, got '" + s + "'");
}

// "kind" or "kind:strength".
qtele::NoiseSpec parse_noise(const std::string &s) {
    const auto colon = s.find(':');
    qtele::NoiseSpec spec{parse_noise_kind(s.substr(0, colon)), std::nullopt};
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s.substr(colon + 1), &used);
            if (used != s.size() - colon - 1) {
                throw std::invalid_argument("");
            }
            spec.strength = v;
        } catch (const std::exception &) {
            throw std::invalid_argument("noise strength must be a number in [0, 1]");
        }
    }
    spec.channel(); // validate strength range now
    return spec;
}

qtele::WitnessStateKind parse_witness_state(const std::string &s) {
    if (s == "cluster") {
        return qtele::WitnessStateKind::Cluster;
    }
    if (s == "product-plus") {
        return qtele::WitnessStateKind::ProductPlus;
    }
    throw std::invalid_argument("state must be 'cluster' or 'product-plus', got '" + s + "'");
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in.good()) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    return json::parse(in);
}

// Fills options from the config file for every flag the user did not pass
// explicitly; command-line flags win.
void merge_config(const json &j, CLI::App *sub, CliOptions &o) {
    auto overridable = [&](const char *flag) {
        const CLI::Option *opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() == 0;
    };
    if (j.contains("protocol") && overridable("--protocol")) {
        o.protocol = j.at("protocol").get<std::string>();
    }
    if (j.contains("n") && overridable("--n")) {
        o.n = j.at("n").get<int>();
    }
    if (j.contains("mode") && overridable("--mode")) {
        o.mode = j.at("mode").get<std::string>();
    }
    if (j.contains("shots") && overridable("--shots")) {
        o.shots = j.at("shots").get<std::uint64_t>();
    }
    if (j.contains("reps") && overridable("--reps")) {
        o.reps = j.at("reps").get<std::uint64_t>();
    }
    if (j.contains("seed") && !j.at("seed").is_null() && overridable("--seed")) {
        o.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("noise") && !j.at("noise").is_null() && overridable("--noise")) {
        const json &nj = j.at("noise");
        if (nj.is_string()) {
            o.noise = nj.get<std::string>();
        } else {
            o.noise = nj.at("kind").get<std::string>();
            if (nj.contains("strength") && !nj.at("strength").is_null()) {
                o.noise += ":" + std::to_string(nj.at("strength").get<double>());
            }
        }
    }
    if (j.contains("out") && overridable("--out")) {
        o.out = j.at("out").get<std::string>();
    }
    if (j.contains("format") && overridable("--format")) {
        o.format = j.at("format").get<std::string>();
    }
    if (j.contains("emit_branches") && overridable("--emit-branches")) {
        o.emit_branches = j.at("emit_branches").get<bool>();
    }
    if (j.contains("state") && overridable("--state")) {
        o.witness_state = j.at("state").get<std::string>();
    }
    if (j.contains("extrapolated") && overridable("--extrapolated")) {
        o.extrapolated = j.at("extrapolated").get<bool>();
    }
    if (j.contains("kinds") && overridable("--kinds")) {
        o.kinds = j.at("kinds").get<std::vector<std::string>>();
    }
    if (j.contains("n_values") && overridable("--n-values")) {
        o.n_values = j.at("n_values").get<std::vector<int>>();
    }
}

qtele::ExperimentConfig make_experiment_config(const CliOptions &o) {
    qtele::ExperimentConfig cfg;
    cfg.kind = parse_protocol(o.protocol);
    cfg.n = o.n;
    cfg.mode = parse_mode(o.mode);
    cfg.shots = o.shots;
    cfg.reps = o.reps;
    cfg.seed = o.seed;
    if (!o.noise.empty()) {
        cfg.noise = parse_noise(o.noise);
    }
    cfg.emit_branches = o.emit_branches;
    cfg.witness_state = parse_witness_state(o.witness_state);
    cfg.allow_extrapolated_witness = o.extrapolated;
    return cfg;
}

void write_output(const std::string &payload, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out.good()) {
        throw std::invalid_argument("cannot open output file: " + out_path);
    }
    out << payload;
}

void require_json_format(const CliOptions &o) {
    if (o.format != "json") {
        throw std::invalid_argument("format '" + o.format +
                                    "' is not available for this command (csv is sweep-only)");
    }
}

void add_common_options(CLI::App *sub, CliOptions &o, bool with_protocol = true) {
    if (with_protocol) {
        sub->add_option("--protocol", o.protocol, "Cluster family: box or chain");
        sub->add_option("--n", o.n, "Cluster size (even)");
    }
    sub->add_option("--mode", o.mode, "exact or sampled");
    sub->add_option("--shots", o.shots, "Shots per repetition (default 8192)");
    sub->add_option("--reps", o.reps, "Repetitions (default 10)");
    sub->add_option("--seed", o.seed, "RNG seed (mandatory in sampled mode)");
    sub->add_option("--out", o.out, "Output path (default: stdout)");
    sub->add_option("--format", o.format, "json or csv (csv: sweep only)");
    sub->add_option("--config", o.config_path, "JSON config file mirroring the flags");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact and shot-sampled simulation of teleportation over cluster states"};
    app.require_subcommand(1);
    CliOptions o;

    CLI::App *teleport = app.add_subcommand(
        "teleport", "Teleport the four canonical inputs and run full tomography");
    add_common_options(teleport, o);
    teleport->add_option("--noise", o.noise,
                         "Noise on Bob's qubit: kind[:strength] (sampled mode only)");
    teleport->add_flag("--emit-branches", o.emit_branches, "Include the branch table");

    CLI::App *witness = app.add_subcommand("witness", "Evaluate the cluster-state witness");
    add_common_options(witness, o);
    witness->add_option("--state", o.witness_state, "State under test: cluster or product-plus");
    witness->add_flag("--extrapolated", o.extrapolated, "Allow the generalized witness (n != 6)");

    CLI::App *noise_compare = app.add_subcommand(
        "noise-compare", "Uhlmann fidelity of a chi matrix against the reference channels");
    add_common_options(noise_compare, o);
    noise_compare->add_option("--noise", o.noise,
                              "Noise for the fresh run when no --chi file is given");
    noise_compare->add_option("--chi", o.chi_path,
                              "JSON file holding a chi object (or a saved teleport report)");

    CLI::App *sweep = app.add_subcommand("sweep", "Teleport fidelity over a grid of (kind, n)");
    add_common_options(sweep, o, /*with_protocol=*/false);
    sweep->add_option("--noise", o.noise, "Noise on Bob's qubit (sampled mode only)");
    sweep->add_option("--kinds", o.kinds, "Cluster families to sweep")->delimiter(',');
    sweep->add_option("--n-values", o.n_values, "Cluster sizes (default: per-family standard set)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App *active = app.get_subcommands().front();
        if (!o.config_path.empty()) {
            merge_config(read_json_file(o.config_path), active, o);
        }

        std::string payload;
        if (active == teleport) {
            require_json_format(o);
            const auto report = qtele::run_teleport_experiment(make_experiment_config(o));
            payload = qtele::teleport_report_to_json(report).dump(2) + "\n";
        } else if (active == witness) {
            require_json_format(o);
            const auto report = qtele::run_witness_experiment(make_experiment_config(o));
            payload = qtele::witness_report_to_json(report).dump(2) + "\n";
        } else if (active == noise_compare) {
            require_json_format(o);
            qtele::NoiseCompareReport report = [&] {
                if (!o.chi_path.empty()) {
                    const qtele::ProcessMatrix chi = qtele::chi_from_json(read_json_file(o.chi_path));
                    return qtele::compare_channels(chi, "file:" + o.chi_path);
                }
                const auto tele = qtele::run_teleport_experiment(make_experiment_config(o));
                return qtele::compare_channels(tele.chi, "run");
            }();
            payload = qtele::noise_compare_report_to_json(report).dump(2) + "\n";
        } else {
            if (o.format != "json" && o.format != "csv") {
                throw std::invalid_argument("format must be json or csv");
            }
            std::vector<qtele::ClusterKind> kinds;
            for (const auto &k : o.kinds) {
                kinds.push_back(parse_protocol(k));
            }
            std::optional<std::vector<int>> ns;
            if (!o.n_values.empty()) {
                ns = o.n_values;
            }
            const auto report = qtele::run_sweep(make_experiment_config(o), kinds, ns);
            payload = o.format == "csv" ? qtele::sweep_report_to_csv(report)
                                        : qtele::sweep_report_to_json(report).dump(2) + "\n";
        }
        write_output(payload, o.out);
        return 0;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qtele::InvariantViolation &e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
