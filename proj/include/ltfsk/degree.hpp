#ifndef LTFSK_DEGREE_HPP
#define LTFSK_DEGREE_HPP

#include <string>
#include <utility>
#include <vector>

#include "ltfsk/rng.hpp"

namespace ltfsk {

/// Output-node degree distribution of a fountain code: a probability vector
/// over degrees, validated at construction and immutable afterwards. Sampling
/// uses inverse-CDF lookup over the sorted entry list.
class DegreeDistribution {
  public:
    struct Entry {
        int degree;
        double probability;
    };

    // Validates and builds. Degrees must be >= 1 and pairwise distinct,
    // probabilities in (0, 1], and the probability sum within 1e-9 of one.
    // The sum is never silently renormalized.
    static DegreeDistribution make(std::vector<std::pair<int, double>> entries);

    // Parses "1:0.00466,2:0.55545,..." or the name of a built-in distribution.
    static DegreeDistribution parse(const std::string& text);

    // Built-in default: the hard-decision/BSC-optimized distribution shipped
    // with this library ("bsc-ternary-v1").
    static const DegreeDistribution& bsc_ternary_v1();

    const std::vector<Entry>& entries() const { return entries_; }

    int sample(Rng& rng) const;

    // Sum of degree * probability (derivative of the generating polynomial at 1).
    double mean() const;

    int max_degree() const { return entries_.back().degree; }

  private:
    DegreeDistribution() = default;
    std::vector<Entry> entries_; // sorted by degree, strictly increasing
    std::vector<double> cdf_;    // cumulative probabilities, same order
};

// Ratio of the mean output-node degree to the mean input-node degree: the
// asymptotic code rate implied by edge conservation in the bipartite graph.
double asymptotic_rate(const DegreeDistribution& out_dist, const DegreeDistribution& in_dist);

} // namespace ltfsk

#endif
