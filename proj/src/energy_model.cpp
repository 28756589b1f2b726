#include "ltfsk/energy_model.hpp"

#include <algorithm>
#include <cmath>

#include "ltfsk/errors.hpp"

namespace ltfsk {

namespace {

double log2i(int m) { return std::log2(static_cast<double>(m)); }

// circuit power without the amplifier term: P_c - P_Amp
double circuit_power(int m, const SystemParams& sys) {
    return sys.p_sy_w + sys.p_filt_w + sys.p_lna_w +
           m * (sys.p_filr_w + sys.p_ed_w) + sys.p_ifa_w + sys.p_adc_w;
}

// the average-SNR requirement bracket of the uncoded RF term
double snr_bracket(double target_ber, int m) { return required_avg_snr_approx(target_ber, m); }

void check_duration(double d_unused, int m, double rate, const SystemParams& sys) {
    (void)d_unused;
    const int mmax = compute_mmax(sys.bandwidth_hz, sys.n_bits, sys.t_n_s, sys.t_tr_s, rate);
    if (m < 2 || m > mmax)
        fail(errc::m_out_of_range, "M=" + std::to_string(m) + " outside [2, " +
                                       std::to_string(mmax) + "]");
    const double dur = active_duration(m, sys.n_bits, sys.bandwidth_hz, rate);
    if (dur > sys.t_n_s / rate - sys.t_tr_s + 1e-12)
        fail(errc::duration_overflow, "active duration exceeds the period at M=" +
                                          std::to_string(m));
}

EnergyBreakdown coded_form(double d, int m, double gain_db, double rate, double e_enc,
                           double e_dec, const SystemParams& sys) {
    check_duration(d, m, rate, sys);
    const double b = log2i(m);
    const double n = static_cast<double>(sys.n_bits);
    const double gain = db_to_linear(gain_db);
    const double ld = path_loss(d, sys.channel);

    EnergyBreakdown e;
    e.rf_j = (1.0 + sys.alpha) * snr_bracket(sys.target_ber, m) * ld * sys.channel.n0_w_per_hz /
             (sys.channel.omega * gain) * n / (rate * b);
    e.circuit_j = circuit_power(m, sys) * m * n / (sys.bandwidth_hz * rate * b);
    e.transient_j = 2.0 * sys.p_sy_w * sys.t_tr_s;
    e.computation_j = n * (e_enc + e_dec) / rate;
    e.total_j = e.rf_j + e.circuit_j + e.transient_j + e.computation_j;
    e.chosen_m = m;
    return e;
}

} // namespace

std::string SchemeSpec::label() const {
    if (std::holds_alternative<UncodedScheme>(kind)) return "uncoded";
    if (std::holds_alternative<RatelessScheme>(kind)) return "lt";
    return std::get<FixedRateScheme>(kind).code_name;
}

bool SchemeSpec::supports_m(int m) const {
    if (const auto* lt = std::get_if<RatelessScheme>(&kind)) return lt->tables.count(m) > 0;
    return true;
}

SchemeSpec make_uncoded_scheme() { return SchemeSpec{UncodedScheme{}, 0.0, 0.0}; }

SchemeSpec make_fixed_rate_scheme(const std::string& code_name) {
    for (const auto& t : fixed_rate_catalog())
        if (t.code_name == code_name)
            return SchemeSpec{FixedRateScheme{t.code_name, t.rate, t}, 0.0, 0.0};
    fail(errc::unknown_code, "unknown code '" + code_name + "'");
}

SchemeSpec make_lt_scheme() {
    return SchemeSpec{RatelessScheme{lt_reference_operating_tables()}, 0.0, 0.0};
}

double active_duration(int m, long n_bits, double bandwidth_hz, double rate) {
    if (m < 2 || (m & (m - 1)) != 0) fail(errc::unsupported_m, "M must be a power of two >= 2");
    if (!(rate > 0.0) || rate > 1.0) fail(errc::bad_value, "rate must be in (0, 1]");
    return m * static_cast<double>(n_bits) / (bandwidth_hz * log2i(m) * rate);
}

int compute_mmax(double bandwidth_hz, long n_bits, double t_n_s, double t_tr_s, double rate) {
    if (!(bandwidth_hz > 0.0) || n_bits <= 0 || !(t_n_s > 0.0) || t_tr_s < 0.0 ||
        !(rate > 0.0) || rate > 1.0)
        fail(errc::bad_value, "compute_mmax: arguments out of range");
    const double bound = bandwidth_hz * rate / static_cast<double>(n_bits) *
                         (t_n_s / rate - t_tr_s);
    if (bound < 2.0) fail(errc::bound_too_small, "no power-of-two constellation fits the period");
    int best_b = 1;
    double best_ratio = 2.0;
    for (int b = 1; b <= 30; ++b) {
        const double ratio = std::ldexp(1.0, b) / b; // 2^b / b
        if (ratio <= bound && ratio > best_ratio) {
            best_ratio = ratio;
            best_b = b;
        }
    }
    return 1 << best_b;
}

EnergyBreakdown uncoded_energy(double d, int m, const SystemParams& sys) {
    check_duration(d, m, 1.0, sys);
    const double b = log2i(m);
    const double n = static_cast<double>(sys.n_bits);
    const double ld = path_loss(d, sys.channel);

    EnergyBreakdown e;
    e.rf_j = (1.0 + sys.alpha) * snr_bracket(sys.target_ber, m) * ld * sys.channel.n0_w_per_hz /
             sys.channel.omega * n / b;
    e.circuit_j = circuit_power(m, sys) * m * n / (sys.bandwidth_hz * b);
    e.transient_j = 2.0 * sys.p_sy_w * sys.t_tr_s;
    e.computation_j = 0.0;
    e.total_j = e.rf_j + e.circuit_j + e.transient_j + e.computation_j;
    e.chosen_m = m;
    return e;
}

EnergyBreakdown coded_energy(double d, int m, const SchemeSpec& scheme, const SystemParams& sys) {
    const auto* fixed = std::get_if<FixedRateScheme>(&scheme.kind);
    if (!fixed) fail(errc::bad_value, "coded_energy needs a fixed-rate scheme");
    double gain_db = 0.0;
    try {
        gain_db = fixed->gain_table.gain_db(m, sys.target_ber);
    } catch (const error& err) {
        fail(errc::missing_gain, std::string("no gain for ") + fixed->code_name + ": " +
                                     err.what());
    }
    return coded_form(d, m, gain_db, fixed->rate, scheme.e_enc_j_per_bit,
                      scheme.e_dec_j_per_bit, sys);
}

EnergyBreakdown lt_energy(double d, int m, const SchemeSpec& scheme, const SystemParams& sys) {
    const auto* lt = std::get_if<RatelessScheme>(&scheme.kind);
    if (!lt) fail(errc::bad_value, "lt_energy needs a rateless scheme");
    const auto it = lt->tables.find(m);
    if (it == lt->tables.end() || it->second.empty())
        fail(errc::empty_table, "no operating table for M=" + std::to_string(m));

    std::optional<EnergyBreakdown> best;
    for (const auto& row : it->second) {
        EnergyBreakdown e = coded_form(d, m, row.gain_db, row.average_rate,
                                       scheme.e_enc_j_per_bit, scheme.e_dec_j_per_bit, sys);
        e.chosen_operating_row = row;
        if (!best || e.total_j < best->total_j) best = e;
    }
    return *best;
}

EnergyBreakdown scheme_energy(double d, int m, const SchemeSpec& scheme,
                              const SystemParams& sys) {
    if (std::holds_alternative<UncodedScheme>(scheme.kind)) return uncoded_energy(d, m, sys);
    if (std::holds_alternative<FixedRateScheme>(scheme.kind))
        return coded_energy(d, m, scheme, sys);
    return lt_energy(d, m, scheme, sys);
}

std::pair<int, EnergyBreakdown> optimize_m(const SchemeSpec& scheme, double d,
                                           const SystemParams& sys) {
    std::optional<std::pair<int, EnergyBreakdown>> best;
    for (int m = 2; m <= 64; m *= 2) {
        if (!scheme.supports_m(m)) continue;
        EnergyBreakdown e;
        try {
            e = scheme_energy(d, m, scheme, sys);
        } catch (const error& err) {
            if (err.code() == errc::m_out_of_range || err.code() == errc::duration_overflow)
                continue;
            throw;
        }
        if (!best || e.total_j < best->second.total_j) best = {m, e};
    }
    if (!best) fail(errc::m_out_of_range, "no feasible constellation size for the scheme");
    return *best;
}

double threshold_closed_form(const SchemeSpec& fixed_rate_scheme, int m,
                             const SystemParams& sys) {
    const auto* fixed = std::get_if<FixedRateScheme>(&fixed_rate_scheme.kind);
    if (!fixed) fail(errc::bad_value, "threshold_closed_form needs a fixed-rate scheme");
    const double gain = db_to_linear(fixed->gain_table.gain_db(m, sys.target_ber));
    const double rate = fixed->rate;
    if (!(gain * rate > 1.0))
        fail(errc::no_crossover, "gain * rate <= 1: coded never beats uncoded on RF");

    const double b = log2i(m);
    const double n = static_cast<double>(sys.n_bits);
    const double a1 = (1.0 + sys.alpha) * snr_bracket(sys.target_ber, m) *
                      db_to_linear(sys.channel.l1_db) * db_to_linear(sys.channel.ml_db) / b * n *
                      sys.channel.n0_w_per_hz / sys.channel.omega;
    const double a2 = circuit_power(m, sys) * m * n / (sys.bandwidth_hz * b);
    const double e_comp =
        n * (fixed_rate_scheme.e_enc_j_per_bit + fixed_rate_scheme.e_dec_j_per_bit);
    return std::pow(gain * (a2 * (1.0 - rate) + e_comp) / (a1 * (gain * rate - 1.0)),
                    1.0 / sys.channel.eta);
}

std::optional<double> threshold_numeric(const SchemeSpec& scheme_a, const SchemeSpec& scheme_b,
                                        const SystemParams& sys, double d_lo, double d_hi,
                                        int scan_points) {
    if (!(d_lo > 0.0) || !(d_hi > d_lo) || scan_points < 2)
        fail(errc::bad_value, "threshold_numeric: bad distance range");
    auto diff = [&](double d) {
        return optimize_m(scheme_a, d, sys).second.total_j -
               optimize_m(scheme_b, d, sys).second.total_j;
    };
    const double log_lo = std::log(d_lo), log_hi = std::log(d_hi);
    double prev_d = d_lo, prev_f = diff(d_lo);
    for (int i = 1; i < scan_points; ++i) {
        const double d = std::exp(log_lo + (log_hi - log_lo) * i / (scan_points - 1));
        const double f = diff(d);
        if (prev_f != 0.0 && f != 0.0 && std::signbit(prev_f) != std::signbit(f)) {
            double lo = prev_d, hi = d, flo = prev_f;
            while (hi - lo > 1e-3) {
                const double mid = 0.5 * (lo + hi);
                const double fm = diff(mid);
                if (fm == 0.0) return mid;
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_d = d;
        prev_f = f;
    }
    return std::nullopt;
}

} // namespace ltfsk
