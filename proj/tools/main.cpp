// Command-line surface: every subcommand is a seeded, reproducible run that
// emits one CSV plus a .manifest sidecar describing the resolved parameters.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ltfsk/csv.hpp"
#include "ltfsk/energy_model.hpp"
#include "ltfsk/errors.hpp"
#include "ltfsk/manifest.hpp"
#include "ltfsk/rate_profile.hpp"
#include "ltfsk/scheme_catalog.hpp"

namespace {

using namespace ltfsk;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(errc code) {
    switch (code) {
        case errc::no_convergence:
        case errc::insufficient_coverage:
        case errc::duration_overflow:
        case errc::bound_too_small:
        case errc::no_crossover:
        case errc::m_out_of_range:
            return kExitNumerical;
        default:
            return kExitUsage;
    }
}

std::vector<double> parse_range(const std::string& text) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
        fail(errc::bad_value, "expected LO:HI:STEP, got '" + text + "'");
    if (!(step > 0.0) || hi < lo) fail(errc::bad_value, "bad range '" + text + "'");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = lo + step * i;
        if (v > hi + step * 1e-9) break;
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail(errc::bad_value, "bad number '" + item + "' in list");
        }
    }
    return out;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::optional<std::string> config_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("LT_ENERGY_CONFIG")) return std::string(env);
    return std::nullopt;
}

void add_system_params(RunManifest& man, const SystemParams& sys) {
    man.add("bandwidth_hz", sys.bandwidth_hz);
    man.add("n_bits", static_cast<long long>(sys.n_bits));
    man.add("t_n_s", sys.t_n_s);
    man.add("t_tr_s", sys.t_tr_s);
    man.add("alpha", sys.alpha);
    man.add("eta", sys.channel.eta);
    man.add("ml_db", sys.channel.ml_db);
    man.add("l1_db", sys.channel.l1_db);
    man.add("omega", sys.channel.omega);
    man.add("n0_w_per_hz", sys.channel.n0_w_per_hz);
    man.add("p_sy_w", sys.p_sy_w);
    man.add("p_filt_w", sys.p_filt_w);
    man.add("p_filr_w", sys.p_filr_w);
    man.add("p_lna_w", sys.p_lna_w);
    man.add("p_ed_w", sys.p_ed_w);
    man.add("p_ifa_w", sys.p_ifa_w);
    man.add("p_adc_w", sys.p_adc_w);
    man.add("target_ber", sys.target_ber);
}

void emit(const std::string& out_path, const std::string& csv, RunManifest& man) {
    man.finished_utc = utc_timestamp_now();
    write_file_atomic(out_path, csv);
    write_manifest(out_path, man);
}

struct ProfileFlags {
    int m = 2;
    double target_ber = -1.0; // <0: take from config
    int k = 0;                // 0: take from config
    int trials = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string gamma_grid = "-10:50:0.5";
    int threads = 0;
    std::string profile_csv; // reuse instead of simulating

    void attach(CLI::App* cmd) {
        cmd->add_option("--m", m, "constellation size")->check(CLI::IsMember({2, 4, 8, 16}));
        cmd->add_option("--target-ber", target_ber, "target decoded BER");
        cmd->add_option("--k", k, "message block length");
        cmd->add_option("--trials", trials, "Monte Carlo trials per (gamma, rate) cell");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [this](std::uint64_t v) { seed = v; seed_set = true; }, "base seed");
        cmd->add_option("--gamma-grid", gamma_grid, "instantaneous SNR grid LO:HI:STEP (dB)");
        cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
        cmd->add_option("--profile", profile_csv,
                        "reuse a characterize CSV instead of simulating");
    }

    void resolve(const Config& cfg) {
        if (target_ber < 0.0) target_ber = cfg.sys.target_ber;
        if (k == 0) k = cfg.lt.k;
        if (trials == 0) trials = cfg.lt.trials;
        if (!seed_set) seed = cfg.lt.seed;
    }
};

RateProfile load_profile_csv(const std::string& path, int m, double target_ber) {
    std::ifstream in(path);
    if (!in) fail(errc::unreadable_file, "cannot read profile '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "gamma_db,min_rate")
        fail(errc::bad_value, "profile CSV '" + path + "': bad header");
    RateProfile profile;
    profile.m = m;
    profile.target_ber = target_ber;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            fail(errc::bad_value, "profile CSV '" + path + "': malformed row");
        RateProfile::Entry entry;
        entry.gamma_db = std::stod(line.substr(0, comma));
        const double rate = std::stod(line.substr(comma + 1));
        if (rate > 0.0) entry.min_rate = rate;
        profile.entries.push_back(entry);
    }
    if (profile.entries.empty()) fail(errc::bad_value, "profile CSV '" + path + "': no rows");
    return profile;
}

RateProfile obtain_profile(const ProfileFlags& flags, const Config& cfg, RunManifest& man) {
    man.add("m", static_cast<long long>(flags.m));
    man.add("target_ber", flags.target_ber);
    if (!flags.profile_csv.empty()) {
        man.add("profile", flags.profile_csv);
        return load_profile_csv(flags.profile_csv, flags.m, flags.target_ber);
    }
    SimSettings sim;
    sim.k = flags.k;
    sim.trials = flags.trials;
    sim.seed = flags.seed;
    sim.threads = flags.threads;
    const auto gamma_grid = parse_range(flags.gamma_grid);
    const auto rate_grid = default_rate_grid();
    man.add("k", static_cast<long long>(sim.k));
    man.add("trials", static_cast<long long>(sim.trials));
    man.add("gamma_grid", flags.gamma_grid);
    man.add("degree_dist", "bsc-ternary-v1");
    return build_profile(gamma_grid, flags.m, flags.target_ber, cfg.degree, sim, rate_grid);
}

std::string profile_to_csv(const RateProfile& profile) {
    std::string csv = "gamma_db,min_rate\n";
    for (const auto& entry : profile.entries) {
        csv += fmt_g6(entry.gamma_db);
        csv += ',';
        csv += fmt_g6(entry.min_rate.value_or(0.0));
        csv += '\n';
    }
    return csv;
}

SchemeSpec parse_scheme(const std::string& text, const Config& cfg) {
    SchemeSpec scheme;
    if (text == "uncoded") {
        scheme = make_uncoded_scheme();
    } else if (text == "lt") {
        scheme = make_lt_scheme();
    } else if (text.rfind("bch:", 0) == 0 || text.rfind("conv:", 0) == 0) {
        const bool bch = text[0] == 'b';
        const std::string name = text.substr(bch ? 4 : 5);
        if (bch != (name.rfind("BCH", 0) == 0))
            fail(errc::unknown_scheme, "'" + name + "' does not belong to the " +
                                           std::string(bch ? "bch" : "conv") + " family");
        try {
            scheme = make_fixed_rate_scheme(name);
        } catch (const error&) {
            fail(errc::unknown_scheme, "unknown scheme '" + text + "'");
        }
    } else {
        fail(errc::unknown_scheme,
             "unknown scheme '" + text + "' (expected uncoded | lt | bch:NAME | conv:NAME)");
    }
    const std::string key = scheme.label();
    if (const auto it = cfg.e_enc_j_per_bit.find(key); it != cfg.e_enc_j_per_bit.end())
        scheme.e_enc_j_per_bit = it->second;
    if (const auto it = cfg.e_dec_j_per_bit.find(key); it != cfg.e_dec_j_per_bit.end())
        scheme.e_dec_j_per_bit = it->second;
    return scheme;
}

std::vector<OperatingRow> load_operating_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::unreadable_file, "cannot read operating table '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "ebn0_db,avg_rate,gain_db")
        fail(errc::bad_value, "operating table CSV '" + path + "': bad header");
    std::vector<OperatingRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        OperatingRow row;
        char c1 = 0, c2 = 0;
        std::istringstream is(line);
        if (!(is >> row.ebn0_db >> c1 >> row.average_rate >> c2 >> row.gain_db) || c1 != ',' ||
            c2 != ',')
            fail(errc::bad_value, "operating table CSV '" + path + "': malformed row");
        rows.push_back(row);
    }
    if (rows.empty()) fail(errc::bad_value, "operating table CSV '" + path + "': no rows");
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"LT-coded MFSK link characterization and energy evaluation"};
    app.require_subcommand(1);

    std::string config_flag;
    app.add_option("--config", config_flag, "key=value config file");

    auto* c_char = app.add_subcommand("characterize",
                                      "simulate the min decodable rate per instantaneous SNR");
    ProfileFlags char_flags;
    char_flags.attach(c_char);
    std::string char_out;
    c_char->add_option("--out", char_out, "output CSV path")->required();

    auto* c_tbl = app.add_subcommand("table2", "average rate and coding gain per Eb/N0");
    ProfileFlags tbl_flags;
    tbl_flags.attach(c_tbl);
    std::string tbl_out, tbl_list;
    c_tbl->add_option("--ebn0-list", tbl_list, "comma-separated Eb/N0 values (dB)")->required();
    c_tbl->add_option("--out", tbl_out, "output CSV path")->required();

    auto* c_pmf = app.add_subcommand("pmf", "rate pmf at an average Eb/N0");
    ProfileFlags pmf_flags;
    pmf_flags.attach(c_pmf);
    double pmf_ebn0 = 16.0;
    std::string pmf_out;
    c_pmf->add_option("--avg-ebn0", pmf_ebn0, "average Eb/N0 (dB)")->required();
    c_pmf->add_option("--out", pmf_out, "output CSV path")->required();

    auto* c_en = app.add_subcommand("energy", "optimized total energy vs distance");
    std::vector<std::string> en_schemes;
    std::string en_range = "5:150:5", en_out, en_lt_table;
    int en_lt_table_m = 2;
    c_en->add_option("--scheme", en_schemes, "uncoded | lt | bch:NAME | conv:NAME (repeatable)")
        ->required();
    c_en->add_option("--d-range", en_range, "distance sweep LO:HI:STEP (m)");
    c_en->add_option("--out", en_out, "output CSV path")->required();
    c_en->add_option("--lt-table", en_lt_table, "operating-table CSV overriding the bundled one");
    c_en->add_option("--lt-table-m", en_lt_table_m, "M the --lt-table applies to");

    auto* c_th = app.add_subcommand("threshold", "crossover distance between two schemes");
    std::string th_a, th_b, th_out;
    double th_lo = 1.0, th_hi = 1000.0;
    int th_scan = 65;
    c_th->add_option("--scheme-a", th_a, "first scheme")->required();
    c_th->add_option("--scheme-b", th_b, "second scheme")->required();
    c_th->add_option("--d-lo", th_lo, "scan range low (m)");
    c_th->add_option("--d-hi", th_hi, "scan range high (m)");
    c_th->add_option("--scan-points", th_scan, "log-spaced scan points");
    c_th->add_option("--out", th_out, "optional CSV point output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Config cfg = load_config(config_path_or_env(config_flag));

    RunManifest man;
    man.command_line = join_args(argc, argv);
    man.started_utc = utc_timestamp_now();

    if (*c_char) {
        char_flags.resolve(cfg);
        man.seed = char_flags.seed;
        const RateProfile profile = obtain_profile(char_flags, cfg, man);
        emit(char_out, profile_to_csv(profile), man);
    } else if (*c_tbl) {
        tbl_flags.resolve(cfg);
        man.seed = tbl_flags.seed;
        const auto ebn0_list = parse_list(tbl_list);
        if (ebn0_list.empty()) fail(errc::bad_value, "--ebn0-list must not be empty");
        const RateProfile profile = obtain_profile(tbl_flags, cfg, man);
        man.add("ebn0_list", tbl_list);
        const auto rows =
            lt_operating_table(tbl_flags.m, tbl_flags.target_ber, ebn0_list, profile);
        std::string csv = "ebn0_db,avg_rate,gain_db\n";
        for (const auto& row : rows)
            csv += fmt_g6(row.ebn0_db) + "," + fmt_g6(row.average_rate) + "," +
                   fmt_g6(row.gain_db) + "\n";
        emit(tbl_out, csv, man);
    } else if (*c_pmf) {
        pmf_flags.resolve(cfg);
        man.seed = pmf_flags.seed;
        const RateProfile profile = obtain_profile(pmf_flags, cfg, man);
        man.add("avg_ebn0_db", pmf_ebn0);
        const RatePmf pmf = rate_pmf(profile, pmf_ebn0, pmf_flags.m);
        std::string csv = "rate,prob\n";
        for (const auto& bin : pmf.bins)
            csv += fmt_g6(bin.rate) + "," + fmt_g6(bin.probability) + "\n";
        emit(pmf_out, csv, man);
    } else if (*c_en) {
        man.seed = cfg.lt.seed;
        add_system_params(man, cfg.sys);
        man.add("d_range", en_range);
        std::vector<SchemeSpec> schemes;
        for (const auto& s : en_schemes) {
            SchemeSpec scheme = parse_scheme(s, cfg);
            if (!en_lt_table.empty() && std::holds_alternative<RatelessScheme>(scheme.kind))
                std::get<RatelessScheme>(scheme.kind).tables[en_lt_table_m] =
                    load_operating_csv(en_lt_table);
            man.add("scheme", s);
            schemes.push_back(std::move(scheme));
        }
        const auto distances = parse_range(en_range);
        std::string csv =
            "d_m,scheme,chosen_m,rf_j,circuit_j,transient_j,computation_j,total_j,"
            "operating_ebn0_db\n";
        for (const double d : distances) {
            for (const auto& scheme : schemes) {
                const auto [m, e] = optimize_m(scheme, d, cfg.sys);
                csv += fmt_g6(d) + "," + scheme.label() + "," + std::to_string(m) + "," +
                       fmt_g6(e.rf_j) + "," + fmt_g6(e.circuit_j) + "," + fmt_g6(e.transient_j) +
                       "," + fmt_g6(e.computation_j) + "," + fmt_g6(e.total_j) + ",";
                if (e.chosen_operating_row) csv += fmt_g6(e.chosen_operating_row->ebn0_db);
                csv += '\n';
            }
        }
        emit(en_out, csv, man);
    } else if (*c_th) {
        man.seed = cfg.lt.seed;
        add_system_params(man, cfg.sys);
        const SchemeSpec a = parse_scheme(th_a, cfg);
        const SchemeSpec b = parse_scheme(th_b, cfg);
        man.add("scheme_a", th_a);
        man.add("scheme_b", th_b);
        const auto d_t = threshold_numeric(a, b, cfg.sys, th_lo, th_hi, th_scan);
        if (d_t)
            std::cout << "d_T = " << fmt_g6(*d_t) << " m\n";
        else
            std::cout << "d_T = NONE\n";
        if (!th_out.empty()) {
            std::string csv = "scheme_a,scheme_b,d_t_m\n";
            csv += th_a + "," + th_b + "," + (d_t ? fmt_g6(*d_t) : "NONE") + "\n";
            emit(th_out, csv, man);
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ltfsk::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
