#include "ltfsk/rate_profile.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "ltfsk/errors.hpp"

namespace ltfsk {

namespace {

// Per-trial error contribution: wrong resolved bits count one, unresolved
// bits count half. Deterministic penalty for non-convergence, no random fill.
double trial_errors(double crossover_p, int k, int n, const DegreeDistribution& dist,
                    std::uint64_t trial_seed, int max_iterations) {
    Rng rng(trial_seed);
    const BipartiteGraph graph = build_graph(k, n, dist, rng.next_u64());
    Bits message(static_cast<std::size_t>(k));
    for (auto& bit : message) bit = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    const Bits codeword = encode(message, graph);
    const Trits received = harden(codeword, crossover_p, rng);
    const DecodeResult result = decode_ternary(received, graph, max_iterations);

    double errors = 0.5 * result.unresolved_count;
    for (int i = 0; i < k; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (result.resolved[idx] && result.message_estimate[idx] != message[idx]) errors += 1.0;
    }
    return errors;
}

// True iff the mean BER over `trials` runs is at or below target. Aborts as
// soon as the running error total exceeds the budget; later trials cannot
// lower it, so the verdict is identical to the full run.
bool rate_qualifies(double crossover_p, int k, int n, int trials,
                    const DegreeDistribution& dist, std::uint64_t base_seed, int gamma_index,
                    int rate_index, double target_ber, int max_iterations) {
    const double budget = target_ber * static_cast<double>(trials) * static_cast<double>(k);
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(base_seed, static_cast<std::uint64_t>(gamma_index),
                                            static_cast<std::uint64_t>(rate_index),
                                            static_cast<std::uint64_t>(t));
        total += trial_errors(crossover_p, k, n, dist, s, max_iterations);
        if (total > budget) return false;
    }
    return true;
}

} // namespace

std::vector<double> default_rate_grid() {
    std::vector<double> grid;
    grid.reserve(97);
    for (int i = 97; i >= 1; --i) grid.push_back(i / 100.0);
    return grid;
}

std::vector<double> default_gamma_grid_db() {
    std::vector<double> grid;
    grid.reserve(121);
    for (int i = 0; i <= 120; ++i) grid.push_back(-10.0 + 0.5 * i);
    return grid;
}

double ebn0_to_symbol_snr_db(double ebn0_db, int m) {
    return ebn0_db - 10.0 * std::log10(std::log2(static_cast<double>(m)));
}

std::optional<double> min_rate_at_snr(double gamma, int m, double target_ber, int k, int trials,
                                      std::span<const double> rate_grid, std::uint64_t seed,
                                      const DegreeDistribution& dist, int max_iterations,
                                      int gamma_index) {
    if (trials < 1) fail(errc::bad_value, "min_rate_at_snr: trials must be >= 1");
    if (k < 64) fail(errc::bad_value, "min_rate_at_snr: k must be >= 64");
    if (rate_grid.empty()) fail(errc::bad_value, "min_rate_at_snr: empty rate grid");
    const double p = std::min(crossover_prob(gamma, m), 0.5);
    for (std::size_t ri = 0; ri < rate_grid.size(); ++ri) {
        const double rate = rate_grid[ri];
        if (!(rate > 0.0) || rate > 1.0)
            fail(errc::bad_value, "min_rate_at_snr: rates must be in (0, 1]");
        const int n = static_cast<int>(std::ceil(static_cast<double>(k) / rate));
        if (rate_qualifies(p, k, n, trials, dist, seed, gamma_index, static_cast<int>(ri),
                           target_ber, max_iterations))
            return rate;
    }
    return std::nullopt;
}

RateProfile build_profile(std::span<const double> gamma_grid_db, int m, double target_ber,
                          const DegreeDistribution& dist, const SimSettings& sim,
                          std::span<const double> rate_grid) {
    if (gamma_grid_db.empty()) fail(errc::bad_value, "build_profile: empty gamma grid");
    if (!std::is_sorted(gamma_grid_db.begin(), gamma_grid_db.end()))
        fail(errc::bad_value, "build_profile: gamma grid must be ascending");

    RateProfile profile;
    profile.m = m;
    profile.target_ber = target_ber;
    profile.k = sim.k;
    profile.rate_grid.assign(rate_grid.begin(), rate_grid.end());
    profile.entries.resize(gamma_grid_db.size());
    for (std::size_t i = 0; i < gamma_grid_db.size(); ++i)
        profile.entries[i].gamma_db = gamma_grid_db[i];

    const unsigned hw = std::thread::hardware_concurrency();
    const int threads =
        sim.threads > 0 ? sim.threads : static_cast<int>(hw > 0 ? hw : 1);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t gi = next.fetch_add(1);
            if (gi >= gamma_grid_db.size()) return;
            profile.entries[gi].min_rate = min_rate_at_snr(
                db_to_linear(gamma_grid_db[gi]), m, target_ber, sim.k, sim.trials, rate_grid,
                sim.seed, dist, sim.max_iterations, static_cast<int>(gi));
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // isotonic clean-up: the physical quantity is non-decreasing in gamma, so
    // take the running max over ascending gamma (Monte Carlo noise can dip)
    std::optional<double> running;
    for (auto& entry : profile.entries) {
        if (entry.min_rate && (!running || *entry.min_rate > *running))
            running = entry.min_rate;
        else
            entry.min_rate = running;
    }
    return profile;
}

std::optional<double> RateProfile::rate_at(double gamma_db) const {
    if (entries.empty()) return std::nullopt;
    // cell boundaries at dB midpoints; ends extend to +/- infinity
    std::size_t lo = 0, hi = entries.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        const double boundary = 0.5 * (entries[mid - 1].gamma_db + entries[mid].gamma_db);
        (gamma_db < boundary ? hi : lo) = mid;
    }
    return entries[lo].min_rate;
}

RatePmf rate_pmf(const RateProfile& profile, double avg_ebn0_db, int m) {
    if (profile.entries.empty()) fail(errc::bad_value, "rate_pmf: empty profile");
    const double avg_snr = db_to_linear(ebn0_to_symbol_snr_db(avg_ebn0_db, m));
    const double top = db_to_linear(profile.entries.back().gamma_db);
    if (std::exp(-top / avg_snr) > 1e-3)
        fail(errc::insufficient_coverage,
             "profile gamma grid covers less than 99.9% of the SNR mass at Eb/N0 = " +
                 std::to_string(avg_ebn0_db));

    std::map<double, double> mass; // rate (0 = none) -> probability
    const std::size_t count = profile.entries.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double lo =
            (i == 0) ? 0.0
                     : db_to_linear(0.5 * (profile.entries[i - 1].gamma_db +
                                           profile.entries[i].gamma_db));
        const bool last = (i + 1 == count);
        const double hi = last ? 0.0
                               : db_to_linear(0.5 * (profile.entries[i].gamma_db +
                                                     profile.entries[i + 1].gamma_db));
        const double cell =
            std::exp(-lo / avg_snr) - (last ? 0.0 : std::exp(-hi / avg_snr));
        mass[profile.entries[i].min_rate.value_or(0.0)] += cell;
    }

    RatePmf pmf;
    pmf.avg_ebn0_db = avg_ebn0_db;
    pmf.bins.reserve(mass.size());
    for (const auto& [rate, probability] : mass) pmf.bins.push_back({rate, probability});
    return pmf;
}

double average_rate(const RatePmf& pmf) {
    double acc = 0.0;
    for (const auto& bin : pmf.bins) acc += bin.rate * bin.probability;
    return acc;
}

double lt_coding_gain(double ebn0_db, int m, double target_ber) {
    const double required_db = linear_to_db(required_avg_snr_exact(target_ber, m));
    return required_db - ebn0_to_symbol_snr_db(ebn0_db, m);
}

std::vector<OperatingRow> lt_operating_table(int m, double target_ber,
                                             std::span<const double> ebn0_list,
                                             const RateProfile& profile) {
    std::vector<OperatingRow> rows;
    rows.reserve(ebn0_list.size());
    for (const double ebn0 : ebn0_list) {
        OperatingRow row;
        row.ebn0_db = ebn0;
        row.average_rate = average_rate(rate_pmf(profile, ebn0, m));
        row.gain_db = lt_coding_gain(ebn0, m, target_ber);
        rows.push_back(row);
    }
    return rows;
}

} // namespace ltfsk
