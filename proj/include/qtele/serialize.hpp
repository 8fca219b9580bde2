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

/**
 * @file serialize.hpp
 * JSON report emitters (schema_version 1) and the sweep CSV writer.
 * Matrices serialize as row-major [re, im] pairs; chi objects carry the
 * operator basis they are expressed in. Field order is fixed so identical
 * runs produce byte-identical documents (wall_seconds is the only
 * run-dependent field).
 */
#pragma once

#include <cstdio>
#include <string>

#include "json.hpp"

#include "qtele/harness.hpp"

namespace qtele {

inline constexpr int kSchemaVersion = 1;

using ojson = nlohmann::ordered_json;

inline ojson matrix_to_json(const MatrixXc &m) {
    ojson j;
    j["dim"] = m.rows();
    ojson data = ojson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back(ojson::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    j["data"] = data;
    return j;
}

inline ojson chi_to_json(const ProcessMatrix &chi) {
    ojson j;
    j["basis"] = {"I", "X", "-iY", "Z"};
    ojson m = matrix_to_json(chi.matrix());
    j["dim"] = m["dim"];
    j["data"] = m["data"];
    return j;
}

/// Parses a chi object ({"basis", "dim", "data"}), accepting either the bare
/// object or any document containing it under a "chi" key, so saved teleport
/// reports can be fed straight back in.
inline ProcessMatrix chi_from_json(const nlohmann::json &doc) {
    const nlohmann::json &j = doc.contains("chi") ? doc.at("chi") : doc;
    if (!j.contains("dim") || !j.contains("data")) {
        throw std::invalid_argument("chi_from_json: missing dim/data fields");
    }
    if (j.at("dim").get<int>() != 4) {
        throw std::invalid_argument("chi_from_json: chi must be 4x4");
    }
    const auto &data = j.at("data");
    if (!data.is_array() || data.size() != 16) {
        throw std::invalid_argument("chi_from_json: data must hold 16 [re, im] pairs");
    }
    Matrix4c m;
    for (int k = 0; k < 16; ++k) {
        const auto &cell = data.at(static_cast<std::size_t>(k));
        if (!cell.is_array() || cell.size() != 2) {
            throw std::invalid_argument("chi_from_json: each entry must be [re, im]");
        }
        m(k / 4, k % 4) = cdouble{cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
    return ProcessMatrix(m); // validates Hermiticity, trace, PSD
}

inline ojson noise_spec_to_json(const std::optional<NoiseSpec> &spec) {
    if (!spec) {
        return nullptr;
    }
    ojson j;
    j["kind"] = noise_kind_name(spec->kind);
    j["strength"] = spec->effective_strength();
    return j;
}

inline ojson config_to_json(const ExperimentConfig &cfg, bool witness_fields = false) {
    ojson j;
    j["protocol"] = cluster_kind_name(cfg.kind);
    j["n"] = cfg.n;
    j["mode"] = run_mode_name(cfg.mode);
    j["shots"] = cfg.shots;
    j["reps"] = cfg.reps;
    if (cfg.seed) {
        j["seed"] = *cfg.seed;
    } else {
        j["seed"] = nullptr;
    }
    j["noise"] = noise_spec_to_json(cfg.noise);
    if (witness_fields) {
        j["state"] = witness_state_name(cfg.witness_state);
        j["extrapolated_allowed"] = cfg.allow_extrapolated_witness;
    }
    return j;
}

inline std::string bell_label(int j) {
    static const char *labels[4] = {"00", "01", "10", "11"};
    if (j < 0 || j > 3) {
        throw std::invalid_argument("bell_label: j outside 0..3");
    }
    return labels[j];
}

inline ojson branch_table_to_json(const std::vector<BranchRecord> &branches) {
    ojson rows = ojson::array();
    for (const auto &b : branches) {
        ojson row;
        row["j"] = bell_label(b.j);
        row["m"] = b.m;
        row["probability"] = b.probability;
        row["word"] = b.word.str();
        row["correction"] = b.correction.str();
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ojson teleport_report_to_json(const TeleportReport &r) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "teleport";
    j["config"] = config_to_json(r.config);
    ojson inputs = ojson::array();
    for (const auto &in : r.inputs) {
        ojson item;
        item["label"] = input_label_name(in.label);
        item["rho_out"] = matrix_to_json(in.rho_out.matrix());
        item["state_fidelity"] = in.state_fidelity;
        item["state_fidelity_error"] = in.state_fidelity_error;
        inputs.push_back(std::move(item));
    }
    j["inputs"] = inputs;
    j["chi"] = chi_to_json(r.chi);
    j["process_fidelity"] = r.f_process;
    j["process_fidelity_error"] = r.f_process_error;
    j["avg_state_fidelity"] = r.f_avg_state;
    j["avg_state_fidelity_error"] = r.f_avg_state_error;
    j["thresholds"] = {{"process", r.classification.f_process_threshold},
                       {"avg_state", r.classification.f_avg_state_threshold}};
    j["surpasses_classical"] = r.classification.surpasses_classical;
    j["channel_fidelities"] = {{"depolarizing", r.fid_vs_depolarizing},
                               {"amplitude-damping", r.fid_vs_amplitude_damping},
                               {"phase-damping", r.fid_vs_phase_damping}};
    if (r.config.emit_branches) {
        j["branches"] = branch_table_to_json(r.branch_table);
    }
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline ojson witness_report_to_json(const WitnessReport &r) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "witness";
    j["config"] = config_to_json(r.config, /*witness_fields=*/true);
    ojson w;
    w["protocol"] = cluster_kind_name(r.witness.kind);
    w["n"] = r.witness.n;
    w["constant"] = r.witness.constant;
    w["settings"] = {r.witness.settings[0], r.witness.settings[1]};
    w["extrapolated"] = r.witness.extrapolated;
    ojson terms = ojson::array();
    for (std::size_t t = 0; t < r.witness.terms.size(); ++t) {
        ojson term;
        term["pauli"] = r.witness.terms[t].str();
        term["value"] = r.term_values[t];
        term["error"] = r.term_errors[t];
        terms.push_back(std::move(term));
    }
    w["terms"] = terms;
    w["value"] = r.value;
    w["error"] = r.error;
    j["witness"] = w;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline ojson noise_compare_report_to_json(const NoiseCompareReport &r) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "noise-compare";
    j["chi_source"] = r.source;
    j["chi"] = chi_to_json(r.chi);
    j["channel_fidelities"] = {{"depolarizing", r.fid_vs_depolarizing},
                               {"amplitude-damping", r.fid_vs_amplitude_damping},
                               {"phase-damping", r.fid_vs_phase_damping}};
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline ojson sweep_report_to_json(const SweepReport &r) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "sweep";
    j["config"] = config_to_json(r.base);
    ojson rows = ojson::array();
    for (const auto &row : r.rows) {
        ojson item;
        item["protocol"] = cluster_kind_name(row.kind);
        item["n"] = row.n;
        item["f_process"] = row.f_process;
        item["f_process_error"] = row.f_process_error;
        item["avg_state_fidelity"] = row.f_avg_state;
        item["f_process_threshold"] = kClassicalProcessFidelity;
        item["surpasses_classical"] = row.surpasses_classical;
        rows.push_back(std::move(item));
    }
    j["rows"] = rows;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

/// CSV form of the sweep, one row per (protocol, n); numbers use 6 decimals.
inline std::string sweep_report_to_csv(const SweepReport &r) {
    std::string out =
        "protocol,n,mode,f_process,f_process_error,avg_state_fidelity,f_process_threshold,"
        "surpasses_classical\n";
    char line[256];
    for (const auto &row : r.rows) {
        std::snprintf(line, sizeof(line), "%s,%d,%s,%.6f,%.6f,%.6f,%.6f,%s\n",
                      cluster_kind_name(row.kind), row.n, run_mode_name(r.base.mode),
                      row.f_process, row.f_process_error, row.f_avg_state,
                      kClassicalProcessFidelity, row.surpasses_classical ? "true" : "false");
        out += line;
    }
    return out;
}

} // namespace qtele
