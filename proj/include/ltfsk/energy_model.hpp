#ifndef LTFSK_ENERGY_MODEL_HPP
#define LTFSK_ENERGY_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltfsk/rate_profile.hpp"
#include "ltfsk/scheme_catalog.hpp"

namespace ltfsk {

struct EnergyBreakdown {
    double rf_j = 0.0;
    double circuit_j = 0.0;
    double transient_j = 0.0;
    double computation_j = 0.0;
    double total_j = 0.0;
    int chosen_m = 0;
    std::optional<OperatingRow> chosen_operating_row;
};

struct UncodedScheme {};

struct FixedRateScheme {
    std::string code_name;
    double rate = 1.0;
    GainTable gain_table;
};

struct RatelessScheme {
    std::map<int, std::vector<OperatingRow>> tables; // keyed by M
};

struct SchemeSpec {
    std::variant<UncodedScheme, FixedRateScheme, RatelessScheme> kind;
    double e_enc_j_per_bit = 0.0;
    double e_dec_j_per_bit = 0.0;

    std::string label() const;
    bool supports_m(int m) const;
};

SchemeSpec make_uncoded_scheme();
SchemeSpec make_fixed_rate_scheme(const std::string& code_name);
SchemeSpec make_lt_scheme(); // backed by the bundled reference operating tables

// Time spent transmitting the N-bit message: M N / (B log2(M) R_c) seconds.
double active_duration(int m, long n_bits, double bandwidth_hz, double rate);

// Largest power-of-two constellation whose active duration fits the period:
// max M = 2^b with 2^b / b <= (B R_c / N) (T_N / R_c - T_tr). When both M = 2
// and M = 4 sit exactly on the bound the tie goes to the smaller one.
int compute_mmax(double bandwidth_hz, long n_bits, double t_n_s, double t_tr_s, double rate);

// Total energy of uncoded MFSK for one N-bit message: RF output (with
// amplifier overhead), circuit power over the active duration, and the
// synthesizer transient. Computation is zero.
EnergyBreakdown uncoded_energy(double d, int m, const SystemParams& sys);

// Fixed-rate coded MFSK: RF shrinks by the coding gain but 1/R_c more bits go
// out, circuit time scales by 1/R_c, transient is unchanged, and the codec
// charges (E_enc + E_dec) per information bit over 1/R_c.
EnergyBreakdown coded_energy(double d, int m, const SchemeSpec& scheme, const SystemParams& sys);

// Rateless scheme: evaluates the coded-energy form for every operating row of
// the table for m and returns the row minimizing the total.
EnergyBreakdown lt_energy(double d, int m, const SchemeSpec& scheme, const SystemParams& sys);

// Dispatch on the scheme kind.
EnergyBreakdown scheme_energy(double d, int m, const SchemeSpec& scheme, const SystemParams& sys);

// Exhaustive scan over M in {2, 4, ..., M_max} (restricted to sizes the
// scheme supports); ties break toward smaller M.
std::pair<int, EnergyBreakdown> optimize_m(const SchemeSpec& scheme, double d,
                                           const SystemParams& sys);

// Closed-form crossover distance between the uncoded and a fixed-rate coded
// scheme at its operating (gain, rate):
//   d' = [Y (a2 (1 - R) + N (E_enc + E_dec)) / (a1 (Y R - 1))]^(1/eta)
// Requires Y R > 1, otherwise there is no finite crossover.
double threshold_closed_form(const SchemeSpec& fixed_rate_scheme, int m, const SystemParams& sys);

// Distance where total_a(d) - total_b(d) changes sign (each scheme optimized
// over M per distance): log-spaced scan for a bracket, then bisection.
// nullopt when no strict sign change exists on the range.
std::optional<double> threshold_numeric(const SchemeSpec& scheme_a, const SchemeSpec& scheme_b,
                                        const SystemParams& sys, double d_lo = 1.0,
                                        double d_hi = 1000.0, int scan_points = 65);

} // namespace ltfsk

#endif
