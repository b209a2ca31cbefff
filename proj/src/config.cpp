// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "eewf/error.hpp"

namespace eewf {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw invalid_input("cannot open config file: " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw invalid_input("config file " + path + ": " + e.what());
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.contains(key)) {
            throw invalid_input(where + ": unknown key \"" + key + "\"");
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& target) {
    if (obj.contains(key)) {
        try {
            target = obj.at(key).get<T>();
        } catch (const json::exception& e) {
            throw invalid_input(std::string("config key \"") + key + "\": " + e.what());
        }
    }
}

void read_solver(const json& obj, SolveSettings& s, const std::string& where) {
    reject_unknown(obj, {"eta_tol", "root_tol", "max_outer", "sigma2", "p_r"}, where);
    read(obj, "eta_tol", s.eta_tol);
    read(obj, "root_tol", s.root_tol);
    read(obj, "max_outer", s.max_outer);
    read(obj, "sigma2", s.sigma2);
    read(obj, "p_r", s.p_r);
}

} // namespace

SimConfig load_sim_config(const std::string& path) {
    const json doc = parse_file(path);
    if (!doc.is_object()) {
        throw invalid_input("config file " + path + ": expected a JSON object");
    }
    reject_unknown(doc,
                   {"antenna_counts", "snr_grid_db", "p_r", "p_t", "trials", "seed",
                    "truncation_cut", "pilot_trials", "solver"},
                   path);

    SimConfig cfg;
    read(doc, "antenna_counts", cfg.antenna_counts);
    read(doc, "snr_grid_db", cfg.snr_grid_db);
    read(doc, "p_r", cfg.p_r);
    read(doc, "p_t", cfg.p_t);
    read(doc, "trials", cfg.trials);
    read(doc, "seed", cfg.seed);
    read(doc, "truncation_cut", cfg.truncation_cut);
    read(doc, "pilot_trials", cfg.pilot_trials);
    if (doc.contains("solver")) {
        read_solver(doc.at("solver"), cfg.solver, path + ": solver");
    }
    cfg.validate();
    return cfg;
}

StaticSettings load_static_settings(const std::string& path) {
    const json doc = parse_file(path);
    if (!doc.is_object()) {
        throw invalid_input("settings file " + path + ": expected a JSON object");
    }
    reject_unknown(doc, {"eta_tol", "root_tol", "max_outer", "sigma2", "p_r", "p_t"},
                   path);

    StaticSettings s;
    read(doc, "eta_tol", s.solver.eta_tol);
    read(doc, "root_tol", s.solver.root_tol);
    read(doc, "max_outer", s.solver.max_outer);
    read(doc, "sigma2", s.solver.sigma2);
    read(doc, "p_r", s.solver.p_r);
    if (doc.contains("p_t")) {
        double v = 0.0;
        read(doc, "p_t", v);
        s.p_t = v;
    }
    s.solver.validate();
    return s;
}

} // namespace eewf
