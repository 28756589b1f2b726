#include "ltfsk/degree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltfsk/errors.hpp"

namespace ltfsk {

DegreeDistribution DegreeDistribution::make(std::vector<std::pair<int, double>> entries) {
    if (entries.empty())
        fail(errc::empty_distribution, "degree distribution needs at least one entry");
    std::sort(entries.begin(), entries.end());
    DegreeDistribution dist;
    dist.entries_.reserve(entries.size());
    dist.cdf_.reserve(entries.size());
    double sum = 0.0;
    int prev_degree = 0;
    for (const auto& [degree, probability] : entries) {
        if (degree < 1)
            fail(errc::bad_value, "degree must be >= 1, got " + std::to_string(degree));
        if (degree == prev_degree)
            fail(errc::bad_value, "duplicate degree " + std::to_string(degree));
        if (!(probability > 0.0) || probability > 1.0)
            fail(errc::non_positive_probability,
                 "probability for degree " + std::to_string(degree) + " must be in (0, 1]");
        sum += probability;
        dist.entries_.push_back({degree, probability});
        dist.cdf_.push_back(sum);
        prev_degree = degree;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "probabilities sum to " << sum << ", not 1";
        fail(errc::not_normalized, os.str());
    }
    return dist;
}

DegreeDistribution DegreeDistribution::parse(const std::string& text) {
    if (text == "bsc-ternary-v1") return bsc_ternary_v1();
    std::vector<std::pair<int, double>> entries;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            fail(errc::bad_value, "degree distribution entry '" + item + "' is not DEGREE:PROB");
        try {
            entries.emplace_back(std::stoi(item.substr(0, colon)),
                                 std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            fail(errc::bad_value, "cannot parse degree distribution entry '" + item + "'");
        }
    }
    return make(std::move(entries));
}

const DegreeDistribution& DegreeDistribution::bsc_ternary_v1() {
    static const DegreeDistribution dist = make({{1, 0.00466},
                                                 {2, 0.55545},
                                                 {3, 0.09743},
                                                 {5, 0.17506},
                                                 {8, 0.03774},
                                                 {14, 0.08202},
                                                 {33, 0.01775},
                                                 {100, 0.02989}});
    return dist;
}

int DegreeDistribution::sample(Rng& rng) const {
    const double u = rng.next_unit();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf_.begin());
    // u can exceed cdf_.back() only by round-off; the last entry owns that sliver
    return entries_[std::min(idx, entries_.size() - 1)].degree;
}

double DegreeDistribution::mean() const {
    double m = 0.0;
    for (const auto& e : entries_) m += e.degree * e.probability;
    return m;
}

double asymptotic_rate(const DegreeDistribution& out_dist, const DegreeDistribution& in_dist) {
    return out_dist.mean() / in_dist.mean();
}

} // namespace ltfsk
