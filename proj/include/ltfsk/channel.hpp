#ifndef LTFSK_CHANNEL_HPP
#define LTFSK_CHANNEL_HPP

#include <cmath>

#include "ltfsk/lt_codec.hpp"
#include "ltfsk/rng.hpp"

namespace ltfsk {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

struct ChannelParams {
    double eta = 3.5;           // path-loss exponent
    double ml_db = 40.0;        // gain margin
    double l1_db = 30.0;        // reference gain at 1 m
    double omega = 1.0;         // mean-square fading gain
    double n0_w_per_hz = 1e-21; // noise spectral density
};

// Linear transmit/receive power ratio at distance d (meters).
double path_loss(double d, const ChannelParams& params);

// One draw of the instantaneous SNR under Rayleigh fading: exponential with
// the given mean.
double sample_instant_snr(double avg_snr, Rng& rng);

// Conditional symbol error probability of non-coherent MFSK at instantaneous
// SNR gamma. M must be a power of two in [2, 64].
double ser_instantaneous(double gamma, int m);

// Symbol error probability averaged over the exponential SNR distribution
// with mean avg_gamma.
double ser_rayleigh_avg(double avg_gamma, int m);

enum class ConvertDirection { ser_to_ber, ber_to_ser };

// P_s = 2(M-1)/M * P_b, applied in either direction; result clipped to [0, 1].
double ber_ser_convert(double value, int m, ConvertDirection direction);

// Average-SNR requirement from the closed-form inversion
// (1 - (1 - P_s)^(1/(M-1)))^(-1) - 2 at P_s = 2(M-1)/M * target_ber.
// Exact for M = 2, conservative for larger M.
double required_avg_snr_approx(double target_ber, int m);

// Average-SNR requirement from numeric inversion of ser_rayleigh_avg
// (bisection on [-10 dB, +80 dB]; the averaged SER is strictly decreasing).
double required_avg_snr_exact(double target_ber, int m);

// Per-coded-bit hard-decision error probability at instantaneous SNR gamma.
double crossover_prob(double gamma, int m);

// Maps each bit to +/-1 and flips the sign independently with probability p.
// Never emits erasures.
Trits harden(const Bits& bits, double p, Rng& rng);

} // namespace ltfsk

#endif
