#include <cmath>
#include <cstdio>
#include <map>

#include "doctest.h"

#include "ltfsk/degree.hpp"
#include "ltfsk/errors.hpp"
#include "ltfsk/lt_codec.hpp"

using namespace ltfsk;

namespace {

// chi-square 0.999 quantile, 7 degrees of freedom
constexpr double kChi2Crit7 = 24.3219;

DegreeDistribution from_histogram(const std::map<int, long>& counts, long total) {
    std::vector<std::pair<int, double>> entries;
    for (const auto& [degree, count] : counts)
        entries.emplace_back(degree, static_cast<double>(count) / static_cast<double>(total));
    return DegreeDistribution::make(std::move(entries));
}

} // namespace

TEST_CASE("bundled distribution is accepted and sums to one at printed precision") {
    const auto& dist = DegreeDistribution::bsc_ternary_v1();
    CHECK(dist.entries().size() == 8);
    double sum = 0.0;
    for (const auto& e : dist.entries()) sum += e.probability;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.5f", sum);
    CHECK(std::string(buf) == "1.00000");
}

TEST_CASE("make validates") {
    CHECK_NOTHROW(DegreeDistribution::make({{1, 1.0}}));

    CHECK_THROWS_WITH_AS(static_cast<void>(DegreeDistribution::make({})),
                         doctest::Contains("at least one entry"), error);

    try {
        static_cast<void>(DegreeDistribution::make({{2, 0.5}, {3, 0.4}}));
        FAIL("expected not_normalized");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_normalized);
        CHECK(std::string(e.what()).find("0.9") != std::string::npos);
    }

    try {
        static_cast<void>(DegreeDistribution::make({{1, 0.5}, {2, -0.5}}));
        FAIL("expected non_positive_probability");
    } catch (const error& e) {
        CHECK(e.code() == errc::non_positive_probability);
    }

    CHECK_THROWS_AS(static_cast<void>(DegreeDistribution::make({{0, 1.0}})), error);
    CHECK_THROWS_AS(static_cast<void>(DegreeDistribution::make({{2, 0.5}, {2, 0.5}})), error);
}

TEST_CASE("parse round-trips text literals") {
    const auto dist = DegreeDistribution::parse("1:0.25,4:0.75");
    CHECK(dist.entries().size() == 2);
    CHECK(dist.mean() == doctest::Approx(0.25 + 3.0));
    CHECK(DegreeDistribution::parse("bsc-ternary-v1").mean() ==
          doctest::Approx(DegreeDistribution::bsc_ternary_v1().mean()));
    CHECK_THROWS_AS(static_cast<void>(DegreeDistribution::parse("1;0.25")), error);
}

TEST_CASE("mean degree") {
    CHECK(std::fabs(DegreeDistribution::bsc_ternary_v1().mean() - 7.3081) < 1e-4);
    CHECK(DegreeDistribution::make({{1, 1.0}}).mean() == 1.0);
    CHECK(DegreeDistribution::make({{2, 0.5}, {4, 0.5}}).mean() == 3.0);
}

TEST_CASE("sampling: point mass and marginal frequencies") {
    Rng rng(42);
    const auto point = DegreeDistribution::make({{1, 1.0}});
    for (int i = 0; i < 100; ++i) CHECK(point.sample(rng) == 1);

    const auto& dist = DegreeDistribution::bsc_ternary_v1();
    const long draws = 1'000'000;
    std::map<int, long> counts;
    for (long i = 0; i < draws; ++i) ++counts[dist.sample(rng)];

    // every sampled degree is an entry with positive probability
    for (const auto& [degree, count] : counts) {
        bool known = false;
        for (const auto& e : dist.entries()) known |= (e.degree == degree);
        CHECK(known);
    }

    const double freq2 = static_cast<double>(counts[2]) / draws;
    CHECK(std::fabs(freq2 - 0.55545) < 0.005);

    double chi2 = 0.0;
    for (const auto& e : dist.entries()) {
        const double expected = e.probability * draws;
        const double observed = static_cast<double>(counts[e.degree]);
        chi2 += (observed - expected) * (observed - expected) / expected;
    }
    CHECK(chi2 < kChi2Crit7);
}

TEST_CASE("asymptotic rate: ratios of means") {
    const auto half = DegreeDistribution::make({{2, 0.5}, {4, 0.5}}); // mean 3
    const auto six = DegreeDistribution::make({{6, 1.0}});            // mean 6
    CHECK(asymptotic_rate(half, six) == doctest::Approx(0.5));
    CHECK(asymptotic_rate(six, six) == doctest::Approx(1.0));
}

TEST_CASE("edge conservation and the empirical input distribution on a large graph") {
    const auto& out_dist = DegreeDistribution::bsc_ternary_v1();
    const int k = 10'000;
    const int n = 2 * k;
    const auto graph = build_graph(k, n, out_dist, 20'240'607);

    // exact edge-count identity: output side == input side
    std::vector<long> input_degree(static_cast<std::size_t>(k), 0);
    for (const auto i : graph.neighbors) ++input_degree[static_cast<std::size_t>(i)];
    long input_edges = 0;
    for (const long d : input_degree) input_edges += d;
    CHECK(input_edges == graph.edge_count());

    // empirical input mean approaches n * O_ave / k within 1%
    const double in_mean = static_cast<double>(input_edges) / k;
    const double predicted = n * out_dist.mean() / k;
    CHECK(std::fabs(in_mean - predicted) / predicted < 0.01);

    // measured distributions reproduce k/n through the mean-degree ratio
    std::map<int, long> out_hist, in_hist;
    for (int j = 0; j < n; ++j)
        ++out_hist[static_cast<int>(graph.neighbors_of(j).size())];
    long covered = 0;
    for (const long d : input_degree)
        if (d > 0) {
            ++in_hist[static_cast<int>(d)];
            ++covered;
        }
    const auto out_emp = from_histogram(out_hist, n);
    const auto in_emp = from_histogram(in_hist, covered);
    CHECK(std::fabs(asymptotic_rate(out_emp, in_emp) - static_cast<double>(k) / n) < 0.02);
}
