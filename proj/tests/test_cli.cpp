// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eewf/commands.hpp"
#include "eewf/config.hpp"

using namespace eewf;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("static command reproduces the closed forms") {
    const std::string path = "cli_static_iso.json";
    // identity scaled to trace 4: lambda = (2, 2)
    write_file(path, "[[1.4142135623730951,0],[0,0],[0,0],[1.4142135623730951,0]]");

    std::stringstream out, err;
    const int rc = cmd_static(path, StaticSettings{}, std::nullopt, out, err);
    CHECK(rc == kExitOk);
    CHECK(out.str().find("eta=2.33985000288") != std::string::npos);
    CHECK(out.str().find("ptx=0.5") != std::string::npos);

    // all-ones matrix: rank-1 with lambda1 = 4
    write_file(path, "[[1,0],[1,0],[1,0],[1,0]]");
    std::stringstream out2;
    CHECK(cmd_static(path, StaticSettings{}, std::nullopt, out2, err) == kExitOk);
    CHECK(out2.str().find("eta=4") != std::string::npos);

    write_file(path, "{broken");
    CHECK(cmd_static(path, StaticSettings{}, std::nullopt, out, err) == kExitInputError);

    std::remove(path.c_str());
}

TEST_CASE("config files reject unknown keys by name") {
    const std::string path = "cli_config.json";
    write_file(path, R"({"trials": 10, "typo_key": 1})");
    try {
        load_sim_config(path);
        FAIL("expected invalid_input");
    } catch (const invalid_input& e) {
        CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }

    write_file(path, R"({"trials": 25, "seed": 3, "solver": {"eta_tol": 1e-9}})");
    const auto cfg = load_sim_config(path);
    CHECK(cfg.trials == 25);
    CHECK(cfg.seed == 3);
    CHECK(cfg.solver.eta_tol == 1e-9);

    write_file(path, R"({"sigma2": 2.0, "p_t": 0.5, "oops": []})");
    CHECK_THROWS_AS(load_static_settings(path), invalid_input);
    write_file(path, R"({"sigma2": 2.0, "p_t": 0.5})");
    const auto st = load_static_settings(path);
    CHECK(st.solver.sigma2 == 2.0);
    CHECK(st.p_t.has_value());

    std::remove(path.c_str());
}

TEST_CASE("sweep command writes identical artifacts on reruns") {
    SimConfig cfg;
    cfg.trials = 40;
    cfg.pilot_trials = 20;
    cfg.antenna_counts = {2};
    cfg.snr_grid_db = {0.0, 10.0};
    cfg.seed = 11;

    std::stringstream out, err;
    const std::string path = "cli_sweep.csv";
    REQUIRE(cmd_sweep(cfg, path, true, out, err) == kExitOk);
    const std::string first = slurp(path);
    CHECK(first.find("algorithm,n,target_snr_db") == 0);

    cfg.workers = 2;
    REQUIRE(cmd_sweep(cfg, path, true, out, err) == kExitOk);
    CHECK(slurp(path) == first);

    CHECK(slurp(path + ".meta.json").find("\"seed\": 11") != std::string::npos);

    CHECK(cmd_sweep(cfg, "no_such_dir/x.csv", true, out, err) == kExitInputError);

    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
}

TEST_CASE("closed-form command prints the table") {
    std::stringstream out;
    CHECK(cmd_closed_form({1, 2}, 1.0, 1.0, out) == kExitOk);
    CHECK(out.str().find("isotropic") != std::string::npos);
    CHECK(out.str().find("rank-1") != std::string::npos);
    CHECK(out.str().find("2.33985000288") != std::string::npos);
}

TEST_CASE("verify command passes on a fresh build") {
    VerifyOptions opts;
    opts.oracle_instances = 6;
    opts.oracle_resolution = 100;
    opts.kkt_instances = 40;
    opts.root_instances = 60;
    opts.inequality_instances = 300;

    std::stringstream out, err;
    CHECK(cmd_verify(opts, out, err) == kExitOk);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(out.str().find("FAIL") == std::string::npos);

    opts.oracle_dim = 5;
    CHECK(cmd_verify(opts, out, err) == kExitInputError);
}

TEST_CASE("bounds command stays inside the corollary bounds") {
    SimConfig cfg;
    cfg.trials = 1500;
    cfg.seed = 21;

    std::stringstream out, err;
    const std::string path = "cli_bounds.csv";
    CHECK(cmd_bounds(cfg, path, false, out, err) == kExitOk);
    CHECK(out.str().find("NO") == std::string::npos);
    CHECK(slurp(path).find("snr_db,inv_lambda_mean") == 0);
    std::remove(path.c_str());
}

TEST_CASE("binary end-to-end") {
    const std::string bin = EEWF_CLI_PATH;
    CHECK(std::system((bin + " closed-form --n 2 > cli_e2e.txt").c_str()) == 0);
    CHECK(slurp("cli_e2e.txt").find("isotropic") != std::string::npos);
    std::remove("cli_e2e.txt");

    // malformed matrix file exits with the input-error code
    write_file("cli_bad.json", "not json");
    const int rc = std::system((bin + " static cli_bad.json 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(rc) == kExitInputError);
    std::remove("cli_bad.json");
}
