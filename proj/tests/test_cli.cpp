#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string cli_path() {
    const char* env = std::getenv("LTFSK_CLI");
    return env ? env : "./ltfsk";
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    std::array<char, 512> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (const char c : text) lines += (c == '\n');
    return lines;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
    CHECK(run_cli("characterize").exit_code == 2); // missing --out
    CHECK(run_cli("table2 --ebn0-list '' --out x.csv --profile missing.csv").exit_code == 2);
    CHECK(run_cli("energy --scheme nonsense --out x.csv").exit_code == 2);
    CHECK(run_cli("energy --scheme bch:trel(6,[53 75]) --out x.csv").exit_code == 2);
}

TEST_CASE("characterize writes a profile CSV with manifest, reproducibly") {
    const std::string out = "cli_profile_test.csv";
    const std::string flags =
        "characterize --m 2 --k 64 --trials 10 --gamma-grid 0:12:4 --seed 9 --out " + out;
    REQUIRE(run_cli(flags).exit_code == 0);
    const std::string first = slurp(out);
    CHECK(first.rfind("gamma_db,min_rate\n", 0) == 0);
    CHECK(count_lines(first) == 5); // header + 4 grid points

    const std::string manifest = slurp(out + ".manifest");
    CHECK(manifest.find("seed=9") != std::string::npos);
    CHECK(manifest.find("k=64") != std::string::npos);

    REQUIRE(run_cli(flags).exit_code == 0);
    CHECK(slurp(out) == first);

    REQUIRE(run_cli("characterize --m 2 --k 64 --trials 10 --gamma-grid 10:10:1 --seed 9 "
                    "--out " + out).exit_code == 0);
    CHECK(count_lines(slurp(out)) == 2); // single-point grid -> one data row

    std::remove(out.c_str());
    std::remove((out + ".manifest").c_str());
}

TEST_CASE("pmf command reuses a profile and emits a normalized pmf") {
    const std::string prof = "cli_pmf_profile.csv";
    {
        std::ofstream p(prof);
        p << "gamma_db,min_rate\n-10,0\n0,0.25\n10,0.7\n20,0.95\n30,0.95\n40,0.95\n50,0.95\n";
    }
    const std::string out = "cli_pmf_test.csv";
    REQUIRE(run_cli("pmf --m 2 --avg-ebn0 16 --profile " + prof + " --out " + out).exit_code ==
            0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("rate,prob\n", 0) == 0);
    double mass = 0.0;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        const auto comma = line.find(',');
        mass += std::stod(line.substr(comma + 1));
    }
    CHECK(std::abs(mass - 1.0) < 1e-6);
    std::remove(prof.c_str());
    std::remove(out.c_str());
    std::remove((out + ".manifest").c_str());
}

TEST_CASE("energy sweep covers schemes per distance with M=2 chosen") {
    const std::string out = "cli_energy_test.csv";
    REQUIRE(run_cli("energy --scheme uncoded --scheme lt '--scheme=conv:trel(7,[133 171])' "
                    "--d-range 40:40:1 --out " + out).exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(count_lines(csv) == 4); // header + 3 schemes at one distance
    CHECK(csv.find("40,uncoded,2,") != std::string::npos);
    CHECK(csv.find("40,lt,2,") != std::string::npos);
    CHECK(csv.find("40,trel(7,[133 171]),2,") != std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".manifest").c_str());
}

TEST_CASE("threshold prints a crossover or NONE") {
    const auto same = run_cli("threshold --scheme-a uncoded --scheme-b uncoded");
    CHECK(same.exit_code == 0);
    CHECK(same.output.find("d_T = NONE") != std::string::npos);

    const auto conv =
        run_cli("threshold --scheme-a uncoded '--scheme-b=conv:trel(7,[133 171])'");
    CHECK(conv.exit_code == 0);
    CHECK(conv.output.find("d_T = 42.5") != std::string::npos);
}
