#ifndef LTFSK_LT_CODEC_HPP
#define LTFSK_LT_CODEC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ltfsk/degree.hpp"

namespace ltfsk {

using Bits = std::vector<std::uint8_t>;  // one bit per element, values 0/1
using Trits = std::vector<std::int8_t>;  // +1 = bit 0, -1 = bit 1, 0 = erasure

// Seeded encoder/decoder graph: n output nodes, each holding a sorted list of
// distinct input-node indices. Stored in CSR form. Rebuilding with the same
// (k, n, dist, seed) yields identical adjacency, which is the seed-sharing
// contract between encoder and decoder.
struct BipartiteGraph {
    int k = 0;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::int32_t> offsets;   // size n + 1
    std::vector<std::int32_t> neighbors; // size offsets[n], sorted per node

    std::span<const std::int32_t> neighbors_of(int j) const {
        return {neighbors.data() + offsets[j],
                static_cast<std::size_t>(offsets[j + 1] - offsets[j])};
    }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(neighbors.size()); }
};

// Draws a degree from dist for every output node (clamped to k), then that
// many distinct inputs uniformly without replacement.
BipartiteGraph build_graph(int k, int n, const DegreeDistribution& dist, std::uint64_t seed);

// Coded bit j is the XOR of the message bits listed in adjacency[j].
Bits encode(const Bits& message, const BipartiteGraph& graph);

enum class DecodeStatus { success, failure };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::failure;
    Bits message_estimate;               // per input; meaningful where resolved
    int iterations_used = 0;
    int unresolved_count = 0;            // inputs whose final aggregate is zero
    std::vector<std::uint8_t> resolved;  // 1 where the final aggregate is nonzero
};

// Ternary message passing over the graph with a flooding schedule.
//
//   output -> input: product of the channel trit and the messages from the
//                    node's other neighbors; any zero factor yields zero
//   input -> output: sign of the sum of messages from the other neighboring
//                    outputs; a zero sum sends zero
//
// Input nodes carry no channel observation, so the initial input-to-output
// messages are all zero and the first sweep resolves exactly the degree-1
// output nodes. Stops early once a full sweep changes no message. The final
// per-input decision is the sign of the sum of all incoming messages; any
// zero aggregate means failure (no tie-break).
DecodeResult decode_ternary(std::span<const std::int8_t> received, const BipartiteGraph& graph,
                            int max_iterations = 50);

} // namespace ltfsk

#endif
