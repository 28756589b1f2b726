#include "ltfsk/channel.hpp"

#include <algorithm>
#include <quadmath.h>

#include "ltfsk/errors.hpp"

namespace ltfsk {

namespace {

void check_m(int m) {
    if (m != 2 && m != 4 && m != 8 && m != 16 && m != 32 && m != 64)
        fail(errc::unsupported_m, "constellation size must be in {2,4,8,16,32,64}, got " +
                                      std::to_string(m));
}

// The alternating binomial series below cancels catastrophically in double
// for M >= 32 (C(63,31) ~ 9e17 against results of order one), so both sums
// run in quad precision. C(63, j) is an exact integer well inside the
// 113-bit mantissa.
__float128 binom_q(int n, int j) {
    __float128 v = 1;
    for (int i = 1; i <= j; ++i) v = v * (n - i + 1) / i;
    return v;
}

} // namespace

double path_loss(double d, const ChannelParams& params) {
    if (!(d > 0.0)) fail(errc::non_positive_distance, "path_loss: distance must be > 0");
    return db_to_linear(params.ml_db) * std::pow(d, params.eta) * db_to_linear(params.l1_db);
}

double sample_instant_snr(double avg_snr, Rng& rng) {
    if (!(avg_snr > 0.0)) fail(errc::bad_value, "sample_instant_snr: mean must be > 0");
    return rng.exponential(avg_snr);
}

double ser_instantaneous(double gamma, int m) {
    check_m(m);
    if (gamma < 0.0) fail(errc::bad_value, "ser_instantaneous: gamma must be >= 0");
    const __float128 g = gamma;
    __float128 sum = 0;
    for (int j = 1; j <= m - 1; ++j) {
        const __float128 term = binom_q(m - 1, j) / (j + 1) * expq(-g * j / (j + 1));
        sum += (j % 2 == 1) ? term : -term;
    }
    return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

double ser_rayleigh_avg(double avg_gamma, int m) {
    check_m(m);
    if (avg_gamma < 0.0) fail(errc::bad_value, "ser_rayleigh_avg: mean must be >= 0");
    const __float128 g = avg_gamma;
    __float128 sum = 0;
    for (int j = 1; j <= m - 1; ++j) {
        const __float128 term = binom_q(m - 1, j) / (j + 1 + j * g);
        sum += (j % 2 == 1) ? term : -term;
    }
    return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

double ber_ser_convert(double value, int m, ConvertDirection direction) {
    check_m(m);
    if (value < 0.0 || value > 1.0) fail(errc::bad_value, "ber_ser_convert: value not in [0,1]");
    const double factor = 2.0 * (m - 1) / m;
    const double out =
        (direction == ConvertDirection::ber_to_ser) ? value * factor : value / factor;
    return std::clamp(out, 0.0, 1.0);
}

double required_avg_snr_approx(double target_ber, int m) {
    check_m(m);
    const double ber_sup = m / (2.0 * (m - 1));
    if (!(target_ber > 0.0) || !(target_ber < ber_sup))
        fail(errc::ber_out_of_range, "required_avg_snr_approx: target BER out of range");
    const double ps = 2.0 * (m - 1) / m * target_ber;
    return 1.0 / (1.0 - std::pow(1.0 - ps, 1.0 / (m - 1))) - 2.0;
}

double required_avg_snr_exact(double target_ber, int m) {
    check_m(m);
    const double ber_sup = m / (2.0 * (m - 1));
    if (!(target_ber > 0.0) || !(target_ber < ber_sup))
        fail(errc::ber_out_of_range, "required_avg_snr_exact: target BER out of range");
    const double ps = 2.0 * (m - 1) / m * target_ber;

    double lo_db = -10.0, hi_db = 80.0;
    // ser_rayleigh_avg decreases in the mean, so f is increasing in dB
    auto f = [&](double snr_db) { return ps - ser_rayleigh_avg(db_to_linear(snr_db), m); };
    if (f(lo_db) > 0.0 || f(hi_db) < 0.0)
        fail(errc::no_convergence,
             "required_avg_snr_exact: no root in [-10, 80] dB for the requested BER");
    for (int it = 0; it < 200 && hi_db - lo_db > 1e-4; ++it) {
        const double mid = 0.5 * (lo_db + hi_db);
        (f(mid) < 0.0 ? lo_db : hi_db) = mid;
    }
    return db_to_linear(0.5 * (lo_db + hi_db));
}

double crossover_prob(double gamma, int m) {
    return ber_ser_convert(ser_instantaneous(gamma, m), m, ConvertDirection::ser_to_ber);
}

Trits harden(const Bits& bits, double p, Rng& rng) {
    if (!(p >= 0.0) || p > 0.5) fail(errc::bad_value, "harden: p must be in [0, 0.5]");
    Trits out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const std::int8_t trit = bits[i] ? -1 : 1;
        out[i] = rng.bernoulli(p) ? static_cast<std::int8_t>(-trit) : trit;
    }
    return out;
}

} // namespace ltfsk
