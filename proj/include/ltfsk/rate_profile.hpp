#ifndef LTFSK_RATE_PROFILE_HPP
#define LTFSK_RATE_PROFILE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ltfsk/channel.hpp"
#include "ltfsk/degree.hpp"

namespace ltfsk {

// One operating point of the rateless scheme: at average Eb/N0 the code runs
// at this average rate with this coding gain over the uncoded requirement.
struct OperatingRow {
    double ebn0_db = 0.0;
    double average_rate = 0.0; // in [0, 1]
    double gain_db = 0.0;      // negative gains are legal
};

// Monotone map from instantaneous symbol SNR to the highest decodable rate at
// the target BER. min_rate is nullopt where no grid rate qualifies.
struct RateProfile {
    struct Entry {
        double gamma_db = 0.0;
        std::optional<double> min_rate;
    };
    int m = 2;
    double target_ber = 1e-3;
    int k = 0;
    std::vector<double> rate_grid; // descending, in (0, 1]
    std::vector<Entry> entries;    // gamma_db ascending

    // Step lookup: the entry whose gamma cell contains gamma_db (clamped at
    // both ends). Cells are bounded by dB midpoints between grid points.
    std::optional<double> rate_at(double gamma_db) const;
};

struct RatePmf {
    struct Bin {
        double rate = 0.0; // 0 stands for "no rate qualifies"
        double probability = 0.0;
    };
    double avg_ebn0_db = 0.0;
    std::vector<Bin> bins; // ascending by rate, probabilities sum to 1
};

struct SimSettings {
    int k = 8192;
    int trials = 200;
    // converging decodes at k = 8192 settle within ~80 sweeps even at the
    // plateau edge; non-converging ones wander indefinitely, so 200 separates
    // the two without burning time on the latter
    int max_iterations = 200;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
};

std::vector<double> default_rate_grid();      // 0.97, 0.96, ..., 0.01
std::vector<double> default_gamma_grid_db();  // -10 .. 50 dB, step 0.5

// Eb/N0 -> average symbol SNR convention used throughout:
//   gamma_symbol(dB) = Eb/N0(dB) - 10 log10(log2 M)
double ebn0_to_symbol_snr_db(double ebn0_db, int m);

// Walks rate_grid from highest to lowest; for each rate r sets n = ceil(k/r),
// runs `trials` seeded encode -> harden -> decode passes and measures the mean
// decoded BER (a failed decode contributes the resolved-bit errors plus half
// an error per unresolved bit). Returns the first rate whose BER is at or
// below target_ber, or nullopt if none qualifies.
std::optional<double> min_rate_at_snr(double gamma, int m, double target_ber, int k, int trials,
                                      std::span<const double> rate_grid, std::uint64_t seed,
                                      const DegreeDistribution& dist, int max_iterations = 200,
                                      int gamma_index = 0);

// min_rate_at_snr per grid point (parallelized over points, schedule
// independent), then an isotonic clean-up pass: running max over ascending
// gamma, since the physical quantity is monotone.
RateProfile build_profile(std::span<const double> gamma_grid_db, int m, double target_ber,
                          const DegreeDistribution& dist, const SimSettings& sim,
                          std::span<const double> rate_grid);

// Integrates the exponential SNR density over the profile's gamma cells and
// assigns each cell's mass to its min_rate bin (nullopt mass goes to rate 0).
// The bottom cell extends to zero and the top cell to infinity, so the bins
// always sum to one; the tail beyond the grid top lands on the plateau rate.
// Fails with insufficient_coverage if that tail exceeds 0.1% of the mass.
RatePmf rate_pmf(const RateProfile& profile, double avg_ebn0_db, int m);

double average_rate(const RatePmf& pmf);

// Coding gain of the rateless scheme at the given operating Eb/N0: the exact
// uncoded average-SNR requirement (dB) minus the operating symbol SNR (dB).
// Affine in Eb/N0 with slope -1.
double lt_coding_gain(double ebn0_db, int m, double target_ber);

// One row per Eb/N0 value: average rate via the pmf, gain via lt_coding_gain.
std::vector<OperatingRow> lt_operating_table(int m, double target_ber,
                                             std::span<const double> ebn0_list,
                                             const RateProfile& profile);

} // namespace ltfsk

#endif
