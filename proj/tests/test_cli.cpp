#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string cmd =
        std::string(QCFIELD_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_test_stderr.tmp";
    const int raw = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WEXITSTATUS(raw);
    res.out = slurp(out_path);
    return res;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("estimate emits the expected single row") {
    const auto res = run_cli("estimate --dim 3p1 --L 1 --T 4");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "C_total");
    CHECK(std::stod(rows[1][0]) == doctest::Approx(0.636619772368).epsilon(1e-10));
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.477464829276).epsilon(1e-10));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.159154943092).epsilon(1e-10));
}

TEST_CASE("estimate in 1+1") {
    const auto res = run_cli("estimate --dim 1p1 --L 1 --T 2 --S 0");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.out);
    CHECK(std::stod(rows[1][0]) == doctest::Approx(2.0));
    CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(1.0));
}

TEST_CASE("missing required separation is a usage error") {
    const auto res = run_cli("estimate --dim 3p1 --T 4");
    CHECK(res.exit_code != 0);
}

TEST_CASE("unknown dim is an error with JSON diagnostics") {
    const auto res = run_cli("estimate --dim 2p1 --L 1 --T 4");
    CHECK(res.exit_code != 0);
    const std::string err = slurp("cli_test_stderr.tmp");
    CHECK(json::parse(err).contains("error"));
}

TEST_CASE("sweep columns: retro plateau and kink behaviour") {
    const auto res = run_cli("sweep --dim 3p1 --L 1 --Tmin 0 --Tmax 10 --steps 201");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 202);
    CHECK(rows[0] == std::vector<std::string>{"T", "C_total", "C_causal", "C_retro", "ratio_rc",
                                              "ratio_rtotal"});
    const double plateau = 1.0 / (2.0 * M_PI);
    double prev_t = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = std::stod(rows[i][0]);
        CHECK(t > prev_t);  // ordered by duration
        prev_t = t;
        if (t >= 2.0) {
            CHECK(std::stod(rows[i][3]) == doctest::Approx(plateau).epsilon(1e-12));
        }
    }
    // causal slope doubles across the kink at T = 2L
    auto causal_at = [&](std::size_t i) { return std::stod(rows[i][2]); };
    const double h = 0.05;
    const double slope_below = (causal_at(30) - causal_at(29)) / h;  // T ~ 1.45
    const double slope_above = (causal_at(180) - causal_at(179)) / h;  // T ~ 8.95
    CHECK(slope_above / slope_below == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("nonpert sweep: modulus columns shift by one separation") {
    const auto res = run_cli(
        "sweep --dim 3p1 --L 1 --Tmin 2.5 --Tmax 12.5 --steps 101 --mode nonpert --lambda 0.8");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.out);
    CHECK(rows[0] == std::vector<std::string>{"T", "N_a", "N_a_causal", "theta_a", "theta_c",
                                              "theta_r"});
    // grid step is 0.1, so T + L sits 10 rows later
    for (std::size_t i = 1; i + 10 < rows.size(); ++i) {
        const double n_total_here = std::stod(rows[i][1]);
        const double n_causal_later = std::stod(rows[i + 10][2]);
        CHECK(n_total_here == doctest::Approx(n_causal_later).epsilon(1e-9));
    }
}

TEST_CASE("consecutive sweeps are byte-identical") {
    const auto r1 = run_cli("sweep --dim 3p1 --L 1 --Tmin 0 --Tmax 10 --steps 200 --out sweep1.csv");
    const auto r2 = run_cli("sweep --dim 3p1 --L 1 --Tmin 0 --Tmax 10 --steps 200 --out sweep2.csv");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp("sweep1.csv") == slurp("sweep2.csv"));
    CHECK(!slurp("sweep1.csv").empty());
    std::remove("sweep1.csv");
    std::remove("sweep2.csv");
}

TEST_CASE("unwritable output path fails with a nonzero exit") {
    const auto res = run_cli("estimate --dim 3p1 --L 1 --T 4 --out /nonexistent_dir/x.csv");
    CHECK(res.exit_code != 0);
}

TEST_CASE("evolve emits a schema-tagged JSON document with matrices") {
    const auto res = run_cli("evolve --dim 3p1 --L 1 --T 4 --lambda 1 --alpha-a 1 --beta-re-a 0");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["schema"] == "qcc-1");
    CHECK(doc["delta_ab"].get<double>() == doctest::Approx(2.0 / M_PI));
    CHECK(doc["rho_final"].size() == 4);
    CHECK(doc["rho_final"][0].size() == 4);
    CHECK(doc["rho_a"].size() == 2);
    CHECK(doc["rho_a"][0][0].contains("re"));
    CHECK(doc["rho_a"][0][0].contains("im"));
    // unitarity leaves the trace intact
    const double tr = doc["rho_final"][0][0]["re"].get<double>() +
                      doc["rho_final"][1][1]["re"].get<double>() +
                      doc["rho_final"][2][2]["re"].get<double>() +
                      doc["rho_final"][3][3]["re"].get<double>();
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("audit of the field-mediated model reports an inert sub-window") {
    const auto res = run_cli("audit --model qft --geometry fig2 --dim 3p1 --L 1 --T 4");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["geometry_class"] == "retro_subregion_inert");
    CHECK(doc["witness_norm"].get<double>() == 0.0);
    CHECK(doc["retro_window"]["lo"].get<double>() == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("audit of the direct coupling in a one-way geometry is active") {
    const auto res = run_cli(
        "audit --model qc --geometry fig1 --dim 3p1 --L 1 --T 2 --Tb 4 --beta-re-b 0.3");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["geometry_class"] == "retro_subregion_active");
    CHECK(doc["witness_norm"].get<double>() > 0.0);
}

TEST_CASE("gme regime report") {
    const auto res = run_cli("gme --m1 1e-14 --m2 1e-14 --L 1e-6 --T 1");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["T_over_Lc"].get<double>() == doctest::Approx(2.998e14).epsilon(1e-3));
    CHECK(doc["qc_indistinguishable"].get<bool>());
}

TEST_CASE("hdiff reports quarter ratios") {
    const auto res = run_cli("hdiff --T 1 --T 2");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    REQUIRE(doc["ratios"].size() == 1);
    CHECK(doc["ratios"][0].get<double>() == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("config file supplies values and flags override it") {
    {
        std::ofstream cfg("cli_test_config.json");
        cfg << R"({"L": 1.0, "T": 4.0, "dim": "3p1"})";
    }
    const auto res = run_cli("estimate --config cli_test_config.json");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.out);
    CHECK(std::stod(rows[1][0]) == doctest::Approx(2.0 / M_PI).epsilon(1e-10));

    const auto overridden = run_cli("estimate --config cli_test_config.json --T 8");
    REQUIRE(overridden.exit_code == 0);
    const auto rows2 = parse_csv(overridden.out);
    CHECK(std::stod(rows2[1][0]) == doctest::Approx(4.0 / M_PI).epsilon(1e-10));
    std::remove("cli_test_config.json");
}
