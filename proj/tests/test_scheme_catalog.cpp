#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "ltfsk/csv.hpp"
#include "ltfsk/errors.hpp"
#include "ltfsk/scheme_catalog.hpp"

using namespace ltfsk;

namespace {

struct TempConfig {
    std::string path;
    explicit TempConfig(const std::string& content) {
        static int counter = 0;
        path = "ltfsk_test_cfg_" + std::to_string(counter++) + ".tmp";
        std::ofstream out(path);
        out << content;
    }
    ~TempConfig() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("built-in defaults carry the evaluation constants") {
    const SystemParams sys = load_params(std::nullopt);
    CHECK(sys.bandwidth_hz == 62500.0);
    CHECK(sys.n_bits == 8192);
    CHECK(sys.t_n_s == 1.4);
    CHECK(sys.t_tr_s == 5e-6);
    CHECK(sys.alpha == 0.33);
    CHECK(sys.channel.eta == 3.5);
    CHECK(sys.channel.ml_db == 40.0);
    CHECK(sys.channel.l1_db == 30.0);
    CHECK(sys.channel.omega == 1.0);
    CHECK(sys.channel.n0_w_per_hz == doctest::Approx(1e-21).epsilon(1e-12));
    CHECK(sys.p_sy_w == 10e-3);
    CHECK(sys.p_filt_w == 2.5e-3);
    CHECK(sys.p_filr_w == 2.5e-3);
    CHECK(sys.p_lna_w == 9e-3);
    CHECK(sys.p_ed_w == 3e-3);
    CHECK(sys.p_ifa_w == 3e-3);
    CHECK(sys.p_adc_w == 7e-3);
    CHECK(sys.target_ber == 1e-3);
}

TEST_CASE("config overrides and validation") {
    {
        TempConfig cfg("# comment\neta=2.0\n");
        const SystemParams sys = load_params(cfg.path);
        CHECK(sys.channel.eta == 2.0);
        CHECK(sys.channel.ml_db == 40.0);
    }
    {
        TempConfig cfg("eta=-1\n");
        try {
            static_cast<void>(load_params(cfg.path));
            FAIL("expected bad_value");
        } catch (const error& e) {
            CHECK(e.code() == errc::bad_value);
            CHECK(std::string(e.what()).find("eta") != std::string::npos);
        }
    }
    {
        TempConfig cfg("no_such_knob=1\n");
        try {
            static_cast<void>(load_params(cfg.path));
            FAIL("expected unknown_key");
        } catch (const error& e) {
            CHECK(e.code() == errc::unknown_key);
        }
    }
    try {
        static_cast<void>(load_params(std::string("definitely_missing_file.cfg")));
        FAIL("expected unreadable_file");
    } catch (const error& e) {
        CHECK(e.code() == errc::unreadable_file);
    }
    {
        TempConfig cfg(
            "lt.k=4096\nlt.trials=50\nlt.seed=9\n"
            "degree.dist=1:0.5,2:0.5\n"
            "e_enc_j_per_bit.lt=1e-7\ne_dec_j_per_bit.BCH(15,7,2)=2e-7\n"
            "n0_dbm_hz=-174\n");
        const Config c = load_config(cfg.path);
        CHECK(c.lt.k == 4096);
        CHECK(c.lt.trials == 50);
        CHECK(c.lt.seed == 9);
        CHECK(c.degree.mean() == doctest::Approx(1.5));
        CHECK(c.e_enc_j_per_bit.at("lt") == 1e-7);
        CHECK(c.e_dec_j_per_bit.at("BCH(15,7,2)") == 2e-7);
        CHECK(c.sys.channel.n0_w_per_hz == doctest::Approx(db_to_linear(-204.0)));
    }
}

TEST_CASE("fixed-rate gain lookups") {
    {
        const auto [rate, gain] = fixed_gain("BCH(15,7,2)", 2, 1e-3);
        CHECK(rate == doctest::Approx(0.467));
        CHECK(gain == doctest::Approx(2.4));
    }
    {
        const auto [rate, gain] = fixed_gain("trel(7,[133 171])", 2, 1e-4);
        CHECK(rate == doctest::Approx(0.5));
        CHECK(gain == doctest::Approx(4.7));
    }
    {
        const auto [rate, gain] = fixed_gain("BCH(7,4,1)", 16, 1e-3);
        CHECK(rate == doctest::Approx(0.571));
        CHECK(gain == 0.0);
    }
    try {
        static_cast<void>(fixed_gain("BCH(1,1,1)", 2, 1e-3));
        FAIL("expected unknown_code");
    } catch (const error& e) {
        CHECK(e.code() == errc::unknown_code);
    }
    try {
        static_cast<void>(fixed_gain("BCH(15,7,2)", 2, 1e-5));
        FAIL("expected missing_cell");
    } catch (const error& e) {
        CHECK(e.code() == errc::missing_cell);
    }
}

TEST_CASE("catalog gains are non-increasing in M at both BER targets") {
    for (const auto& table : fixed_rate_catalog()) {
        for (const double ber : {1e-3, 1e-4}) {
            double prev = 1e9;
            for (const int m : {2, 4, 8, 16, 32, 64}) {
                const double g = table.gain_db(m, ber);
                CHECK(g <= prev);
                prev = g;
            }
        }
    }
    CHECK(fixed_rate_catalog().size() == 14);
}

TEST_CASE("gain tables round-trip through CSV byte-identically") {
    std::ostringstream first;
    export_gain_tables_csv(first);
    std::istringstream back(first.str());
    const auto parsed = parse_gain_tables_csv(back);
    REQUIRE(parsed.size() == fixed_rate_catalog().size());
    // re-exporting the parsed tables reproduces the bytes
    std::ostringstream second;
    second << "code_name,rc,m,gain_db_1e3,gain_db_1e4\n";
    for (const auto& t : parsed) {
        int mi = 0;
        for (const int m : {2, 4, 8, 16, 32, 64}) {
            second << '"' << t.code_name << "\"," << fmt_g6(t.rate) << ',' << m << ','
                   << fmt_g6(t.gains_db[static_cast<std::size_t>(mi)][0]) << ','
                   << fmt_g6(t.gains_db[static_cast<std::size_t>(mi)][1]) << '\n';
            ++mi;
        }
    }
    CHECK(first.str() == second.str());
}

TEST_CASE("bundled rateless operating tables are sane") {
    const auto& tables = lt_reference_operating_tables();
    REQUIRE(tables.size() == 4);
    for (const auto& [m, rows] : tables) {
        CHECK((m == 2 || m == 4 || m == 8 || m == 16));
        CHECK(rows.size() == 21);
        double prev_rate = -1.0, prev_ebn0 = -1e9;
        for (const auto& row : rows) {
            CHECK(row.average_rate >= 0.0);
            CHECK(row.average_rate <= 1.0);
            CHECK(row.average_rate >= prev_rate);
            CHECK(row.ebn0_db > prev_ebn0);
            prev_rate = row.average_rate;
            prev_ebn0 = row.ebn0_db;
        }
    }
}

TEST_CASE("computation energy composes the profiling relations") {
    CHECK(computation_energy(10, 100, 1e-9, 100) == doctest::Approx(1e-9));
    CHECK(computation_energy(10, 0, 1e-9, 100) == 0.0);
    CHECK(computation_energy(20, 100, 1e-9, 100) ==
          doctest::Approx(computation_energy(10, 100, 1e-9, 100)));
    CHECK_THROWS_AS(static_cast<void>(computation_energy(0, 1, 1e-9, 8)), error);
    CHECK_THROWS_AS(static_cast<void>(computation_energy(1, 1, 1e-9, 0)), error);
}
