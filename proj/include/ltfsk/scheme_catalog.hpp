#ifndef LTFSK_SCHEME_CATALOG_HPP
#define LTFSK_SCHEME_CATALOG_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltfsk/channel.hpp"
#include "ltfsk/degree.hpp"
#include "ltfsk/rate_profile.hpp"

namespace ltfsk {

// All radio/circuit/channel constants plus message length and BER target.
struct SystemParams {
    double bandwidth_hz = 62.5e3;
    long n_bits = 8192;
    double t_n_s = 1.4;
    double t_tr_s = 5e-6;
    double alpha = 0.33; // amplifier overhead
    double p_sy_w = 10e-3;
    double p_filt_w = 2.5e-3;
    double p_filr_w = 2.5e-3;
    double p_lna_w = 9e-3;
    double p_ed_w = 3e-3;
    double p_ifa_w = 3e-3;
    double p_adc_w = 7e-3;
    ChannelParams channel;
    double target_ber = 1e-3;
};

// Coding gains of one fixed-rate code, per constellation size and target BER
// (cells carry the 1e-3 and 1e-4 values). Gains are non-increasing in M.
struct GainTable {
    std::string code_name;
    double rate = 1.0;
    // index 0..5 -> M = 2,4,8,16,32,64; pair = (gain at BER 1e-3, at 1e-4)
    std::array<std::array<double, 2>, 6> gains_db{};

    double gain_db(int m, double target_ber) const;
};

// Built-in catalog of BCH and convolutional reference codes (hard-decision
// decoding over Rayleigh fading). Validated for gain monotonicity in M.
const std::vector<GainTable>& fixed_rate_catalog();

// Looks up (R_c, gain_dB) for a catalog code. target_ber must be 1e-3 or 1e-4.
std::pair<double, double> fixed_gain(const std::string& code_name, int m, double target_ber);

// Reference operating points of the rateless scheme with the bsc-ternary-v1
// distribution over Rayleigh fading, keyed by constellation size. These are
// the bundled measurement results; `ltfsk table2` regenerates them by
// simulation.
const std::map<int, std::vector<OperatingRow>>& lt_reference_operating_tables();

// Per-information-bit computation energy from processor profiling counters:
// n_c clock cycles over a block of block_bits bits at e_hz joules per hertz.
// (The per-operation split n_o cancels.)
double computation_energy(double n_o, double n_c, double e_hz, long block_bits);

struct LtSimSettings {
    int k = 8192;
    int trials = 200;
    std::uint64_t seed = 1;
};

// Everything a run can configure: system constants plus simulation settings,
// per-scheme computation energies and the degree distribution.
struct Config {
    SystemParams sys;
    LtSimSettings lt;
    DegreeDistribution degree = DegreeDistribution::bsc_ternary_v1();
    std::map<std::string, double> e_enc_j_per_bit; // keyed by scheme name
    std::map<std::string, double> e_dec_j_per_bit;
};

// Parses flat `key=value` lines ('#' comments allowed) on top of the built-in
// defaults. Unknown keys and out-of-range values are rejected.
Config load_config(const std::optional<std::string>& path);
SystemParams load_params(const std::optional<std::string>& path);

// Round-trippable CSV image of the fixed-rate catalog.
void export_gain_tables_csv(std::ostream& os);
std::vector<GainTable> parse_gain_tables_csv(std::istream& is);

} // namespace ltfsk

#endif
