#include "ltfsk/scheme_catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ltfsk/csv.hpp"
#include "ltfsk/errors.hpp"

namespace ltfsk {

namespace {

constexpr std::array<int, 6> kMLadder = {2, 4, 8, 16, 32, 64};

int m_index(int m) {
    for (std::size_t i = 0; i < kMLadder.size(); ++i)
        if (kMLadder[i] == m) return static_cast<int>(i);
    fail(errc::unsupported_m, "constellation size " + std::to_string(m) + " not in catalog");
}

int ber_index(double target_ber) {
    if (target_ber == 1e-3) return 0;
    if (target_ber == 1e-4) return 1;
    fail(errc::missing_cell, "gain tables carry BER targets 1e-3 and 1e-4 only");
}

GainTable make_row(const char* name, double rate,
                   std::initializer_list<std::array<double, 2>> cells) {
    GainTable t;
    t.code_name = name;
    t.rate = rate;
    std::size_t i = 0;
    for (const auto& c : cells) t.gains_db[i++] = c;
    return t;
}

void validate_monotone(const GainTable& t) {
    for (int b = 0; b < 2; ++b)
        for (std::size_t i = 1; i < t.gains_db.size(); ++i)
            if (t.gains_db[i][b] > t.gains_db[i - 1][b] + 1e-12)
                fail(errc::bad_value, "gain table " + t.code_name +
                                          " is not non-increasing in M at BER index " +
                                          std::to_string(b));
}

} // namespace

double GainTable::gain_db(int m, double target_ber) const {
    return gains_db[static_cast<std::size_t>(m_index(m))]
                   [static_cast<std::size_t>(ber_index(target_ber))];
}

const std::vector<GainTable>& fixed_rate_catalog() {
    static const std::vector<GainTable> catalog = [] {
        std::vector<GainTable> v = {
            make_row("BCH(7,4,1)", 0.571,
                     {{2.5, 2.8}, {0.3, 0.4}, {0.1, 0.2}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}),
            make_row("BCH(15,11,1)", 0.733,
                     {{1.4, 1.6}, {0.2, 0.3}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}),
            make_row("BCH(15,7,2)", 0.467,
                     {{2.4, 3.3}, {2.0, 2.3}, {0.8, 1.0}, {0.3, 0.4}, {0.0, 0.0}, {0.0, 0.0}}),
            make_row("BCH(15,5,3)", 0.333,
                     {{4.1, 4.6}, {2.7, 2.9}, {2.0, 2.1}, {1.5, 1.6}, {0.7, 0.8}, {0.2, 0.2}}),
            make_row("BCH(31,26,1)", 0.839,
                     {{1.2, 1.5}, {0.2, 0.2}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}),
            make_row("BCH(31,21,2)", 0.677,
                     {{2.3, 2.9}, {1.7, 2.0}, {0.7, 0.8}, {0.2, 0.2}, {0.0, 0.0}, {0.0, 0.0}}),
            make_row("BCH(31,16,3)", 0.516,
                     {{2.9, 3.1}, {2.1, 2.2}, {1.5, 1.6}, {1.3, 1.4}, {0.6, 0.7}, {0.1, 0.1}}),
            make_row("BCH(31,11,5)", 0.355,
                     {{4.1, 4.4}, {3.5, 4.2}, {2.2, 2.3}, {2.0, 2.1}, {1.8, 2.0}, {1.1, 1.3}}),
            make_row("BCH(31,6,7)", 0.194,
                     {{5.4, 5.9}, {4.3, 4.8}, {3.5, 3.8}, {3.2, 3.3}, {2.7, 2.8}, {2.3, 2.4}}),
            make_row("trel(6,[53 75])", 0.500,
                     {{3.8, 4.6}, {2.7, 3.1}, {2.1, 2.3}, {1.8, 2.0}, {1.4, 1.5}, {1.4, 1.4}}),
            make_row("trel(7,[133 171])", 0.500,
                     {{4.0, 4.7}, {3.0, 3.5}, {2.2, 2.4}, {1.8, 2.0}, {1.5, 1.6}, {1.4, 1.5}}),
            make_row("trel(7,[133 165 171])", 0.333,
                     {{5.7, 6.4}, {4.8, 5.1}, {3.7, 3.9}, {3.1, 3.3}, {2.7, 2.8}, {2.5, 2.6}}),
            make_row("trel([4 3],[4 5 17;7 4 2])", 0.667,
                     {{2.2, 2.6}, {1.5, 1.7}, {0.9, 1.1}, {0.6, 0.6}, {0.5, 0.5}, {0.5, 0.5}}),
            make_row("trel([5 4],[23 35 0;0 5 13])", 0.667,
                     {{2.9, 3.5}, {1.9, 2.4}, {1.4, 1.8}, {1.1, 1.2}, {0.8, 0.9}, {0.7, 0.8}}),
        };
        for (const auto& t : v) validate_monotone(t);
        return v;
    }();
    return catalog;
}

std::pair<double, double> fixed_gain(const std::string& code_name, int m, double target_ber) {
    for (const auto& t : fixed_rate_catalog())
        if (t.code_name == code_name) return {t.rate, t.gain_db(m, target_ber)};
    fail(errc::unknown_code, "unknown code '" + code_name + "'");
}

const std::map<int, std::vector<OperatingRow>>& lt_reference_operating_tables() {
    static const std::map<int, std::vector<OperatingRow>> tables = {
        {2,
         {{5, 0.2560, 25},    {6, 0.3174, 24},  {7, 0.3819, 23},  {8, 0.4475, 22},
          {9, 0.5120, 21},    {10, 0.5738, 20}, {11, 0.6315, 19}, {12, 0.6840, 18},
          {13, 0.7307, 17},   {14, 0.7716, 16}, {15, 0.8067, 15}, {16, 0.8365, 14},
          {17, 0.8614, 13},   {18, 0.8821, 12}, {19, 0.8991, 11}, {20, 0.9130, 10},
          {22, 0.9333, 8},    {24, 0.9466, 6},  {26, 0.9551, 4},  {28, 0.9606, 2},
          {30, 0.9640, 0}}},
        {4,
         {{0, 0.0028, 33.87},  {2, 0.0140, 31.87},  {4, 0.0460, 29.87},  {6, 0.1100, 27.87},
          {8, 0.2100, 25.87},  {10, 0.3300, 23.87}, {12, 0.4600, 21.87}, {14, 0.5900, 19.87},
          {16, 0.7000, 17.87}, {18, 0.7800, 15.87}, {20, 0.8500, 13.87}, {22, 0.8900, 11.87},
          {24, 0.9200, 9.87},  {26, 0.9400, 7.87},  {28, 0.9500, 5.87},  {30, 0.9600, 3.87},
          {32, 0.9600, 1.87},  {34, 0.9600, -0.13}, {36, 0.9700, -2.13}, {38, 0.9700, -4.13},
          {40, 0.9700, -6.13}}},
        {8,
         {{0, 0.0012, 36.46},  {2, 0.0024, 34.46},  {4, 0.0095, 32.46},  {6, 0.0330, 30.46},
          {8, 0.0870, 28.46},  {10, 0.1800, 26.46}, {12, 0.3000, 24.46}, {14, 0.4400, 22.46},
          {16, 0.5700, 20.46}, {18, 0.6800, 18.46}, {20, 0.7700, 16.46}, {22, 0.8400, 14.46},
          {24, 0.8800, 12.46}, {26, 0.9100, 10.46}, {28, 0.9300, 8.46},  {30, 0.9500, 6.46},
          {32, 0.9500, 4.46},  {34, 0.9600, 2.46},  {36, 0.9600, 0.46},  {38, 0.9700, -1.54},
          {40, 0.9700, -3.54}}},
        {16,
         {{0, 0.0012, 38.48},  {2, 0.0012, 36.48},  {4, 0.0021, 34.48},  {6, 0.0086, 32.48},
          {8, 0.0320, 30.48},  {10, 0.0870, 28.48}, {12, 0.1800, 26.48}, {14, 0.3100, 24.48},
          {16, 0.4500, 22.48}, {18, 0.5800, 20.48}, {20, 0.6900, 18.48}, {22, 0.7800, 16.48},
          {24, 0.8400, 14.48}, {26, 0.8800, 12.48}, {28, 0.9200, 10.48}, {30, 0.9400, 8.48},
          {32, 0.9500, 6.48},  {34, 0.9500, 4.48},  {36, 0.9600, 2.48},  {38, 0.9600, 0.48},
          {40, 0.9700, -1.52}}},
    };
    return tables;
}

double computation_energy(double n_o, double n_c, double e_hz, long block_bits) {
    if (!(n_o > 0.0)) fail(errc::bad_value, "computation_energy: n_o must be > 0");
    if (n_c < 0.0) fail(errc::bad_value, "computation_energy: n_c must be >= 0");
    if (e_hz < 0.0) fail(errc::bad_value, "computation_energy: e_hz must be >= 0");
    if (block_bits <= 0) fail(errc::bad_value, "computation_energy: block_bits must be > 0");
    // E_block = n_o * (n_c / n_o) * E_Hz; n_o cancels
    return n_c * e_hz / static_cast<double>(block_bits);
}

namespace {

void apply_key(Config& cfg, const std::string& key, const std::string& raw, double num,
               bool numeric) {
    auto need_num = [&]() {
        if (!numeric) fail(errc::bad_value, "value for '" + key + "' is not a number: " + raw);
        return num;
    };
    auto positive = [&](double v) {
        if (!(v > 0.0)) fail(errc::bad_value, "value for '" + key + "' must be > 0");
        return v;
    };
    auto non_negative = [&](double v) {
        if (v < 0.0) fail(errc::bad_value, "value for '" + key + "' must be >= 0");
        return v;
    };

    SystemParams& sys = cfg.sys;
    if (key == "bandwidth_hz") sys.bandwidth_hz = positive(need_num());
    else if (key == "n_bits") sys.n_bits = static_cast<long>(positive(need_num()));
    else if (key == "t_n_s") sys.t_n_s = positive(need_num());
    else if (key == "t_tr_s") sys.t_tr_s = non_negative(need_num());
    else if (key == "alpha") sys.alpha = non_negative(need_num());
    else if (key == "eta") sys.channel.eta = positive(need_num());
    else if (key == "ml_db") sys.channel.ml_db = need_num();
    else if (key == "l1_db") sys.channel.l1_db = need_num();
    else if (key == "omega") sys.channel.omega = positive(need_num());
    else if (key == "n0_dbm_hz") sys.channel.n0_w_per_hz = db_to_linear(need_num() - 30.0);
    else if (key == "p_sy_w") sys.p_sy_w = non_negative(need_num());
    else if (key == "p_filt_w") sys.p_filt_w = non_negative(need_num());
    else if (key == "p_filr_w") sys.p_filr_w = non_negative(need_num());
    else if (key == "p_lna_w") sys.p_lna_w = non_negative(need_num());
    else if (key == "p_ed_w") sys.p_ed_w = non_negative(need_num());
    else if (key == "p_ifa_w") sys.p_ifa_w = non_negative(need_num());
    else if (key == "p_adc_w") sys.p_adc_w = non_negative(need_num());
    else if (key == "target_ber") {
        const double v = need_num();
        if (!(v > 0.0) || !(v < 0.5)) fail(errc::bad_value, "target_ber must be in (0, 0.5)");
        sys.target_ber = v;
    } else if (key == "lt.k") {
        const double v = positive(need_num());
        cfg.lt.k = static_cast<int>(v);
    } else if (key == "lt.trials") {
        cfg.lt.trials = static_cast<int>(positive(need_num()));
    } else if (key == "lt.seed") {
        cfg.lt.seed = static_cast<std::uint64_t>(non_negative(need_num()));
    } else if (key == "degree.dist") {
        cfg.degree = DegreeDistribution::parse(raw);
    } else if (key.rfind("e_enc_j_per_bit.", 0) == 0) {
        cfg.e_enc_j_per_bit[key.substr(16)] = non_negative(need_num());
    } else if (key.rfind("e_dec_j_per_bit.", 0) == 0) {
        cfg.e_dec_j_per_bit[key.substr(16)] = non_negative(need_num());
    } else {
        fail(errc::unknown_key, "unknown config key '" + key + "'");
    }
}

} // namespace

Config load_config(const std::optional<std::string>& path) {
    Config cfg;
    if (!path) return cfg;
    std::ifstream in(*path);
    if (!in) fail(errc::unreadable_file, "cannot read config file '" + *path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(errc::bad_value,
                 *path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        double num = 0.0;
        bool numeric = false;
        try {
            std::size_t used = 0;
            num = std::stod(value, &used);
            numeric = (used == value.size());
        } catch (const std::exception&) {
        }
        apply_key(cfg, key, value, num, numeric);
    }
    return cfg;
}

SystemParams load_params(const std::optional<std::string>& path) {
    return load_config(path).sys;
}

void export_gain_tables_csv(std::ostream& os) {
    os << "code_name,rc,m,gain_db_1e3,gain_db_1e4\n";
    for (const auto& t : fixed_rate_catalog())
        for (std::size_t i = 0; i < kMLadder.size(); ++i)
            os << '"' << t.code_name << "\"," << fmt_g6(t.rate) << ',' << kMLadder[i] << ','
               << fmt_g6(t.gains_db[i][0]) << ',' << fmt_g6(t.gains_db[i][1]) << '\n';
}

std::vector<GainTable> parse_gain_tables_csv(std::istream& is) {
    std::vector<GainTable> out;
    std::string line;
    if (!std::getline(is, line) || line != "code_name,rc,m,gain_db_1e3,gain_db_1e4")
        fail(errc::bad_value, "gain table CSV: bad header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() != '"') fail(errc::bad_value, "gain table CSV: expected quoted name");
        const auto close = line.find('"', 1);
        if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',')
            fail(errc::bad_value, "gain table CSV: malformed row");
        const std::string name = line.substr(1, close - 1);
        std::istringstream rest(line.substr(close + 2));
        std::string rc_s, m_s, g3_s, g4_s;
        if (!std::getline(rest, rc_s, ',') || !std::getline(rest, m_s, ',') ||
            !std::getline(rest, g3_s, ',') || !std::getline(rest, g4_s))
            fail(errc::bad_value, "gain table CSV: malformed row");
        if (out.empty() || out.back().code_name != name) {
            GainTable t;
            t.code_name = name;
            t.rate = std::stod(rc_s);
            out.push_back(t);
        }
        const int mi = m_index(std::stoi(m_s));
        out.back().gains_db[static_cast<std::size_t>(mi)] = {std::stod(g3_s), std::stod(g4_s)};
    }
    return out;
}

} // namespace ltfsk
