#include "ltfsk/lt_codec.hpp"

#include <algorithm>

#include "ltfsk/errors.hpp"

namespace ltfsk {

BipartiteGraph build_graph(int k, int n, const DegreeDistribution& dist, std::uint64_t seed) {
    if (k < 1) fail(errc::bad_value, "build_graph: k must be >= 1");
    if (n < 1) fail(errc::bad_value, "build_graph: n must be >= 1");

    BipartiteGraph g;
    g.k = k;
    g.n = n;
    g.seed = seed;
    g.offsets.resize(static_cast<std::size_t>(n) + 1);
    g.neighbors.reserve(static_cast<std::size_t>(n) *
                        static_cast<std::size_t>(std::min(8, k)));

    Rng rng(seed);
    std::vector<std::int32_t> pick;
    g.offsets[0] = 0;
    for (int j = 0; j < n; ++j) {
        const int degree = std::min(dist.sample(rng), k);
        pick.clear();
        while (static_cast<int>(pick.size()) < degree) {
            const auto v = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(k)));
            const auto it = std::lower_bound(pick.begin(), pick.end(), v);
            if (it == pick.end() || *it != v) pick.insert(it, v);
        }
        g.neighbors.insert(g.neighbors.end(), pick.begin(), pick.end());
        g.offsets[static_cast<std::size_t>(j) + 1] =
            static_cast<std::int32_t>(g.neighbors.size());
    }
    return g;
}

Bits encode(const Bits& message, const BipartiteGraph& graph) {
    if (static_cast<int>(message.size()) != graph.k)
        fail(errc::length_mismatch, "encode: message length " + std::to_string(message.size()) +
                                        " != k " + std::to_string(graph.k));
    Bits out(static_cast<std::size_t>(graph.n));
    for (int j = 0; j < graph.n; ++j) {
        std::uint8_t acc = 0;
        for (const auto i : graph.neighbors_of(j)) acc ^= message[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

DecodeResult decode_ternary(std::span<const std::int8_t> received, const BipartiteGraph& graph,
                            int max_iterations) {
    if (static_cast<int>(received.size()) != graph.n)
        fail(errc::length_mismatch,
             "decode_ternary: received length " + std::to_string(received.size()) + " != n " +
                 std::to_string(graph.n));
    if (max_iterations < 1) fail(errc::bad_value, "decode_ternary: max_iterations must be >= 1");

    const std::size_t edges = graph.neighbors.size();
    const int k = graph.k;
    const int n = graph.n;

    // input-side CSR: edge ids grouped by input node (counting sort)
    std::vector<std::int32_t> in_offsets(static_cast<std::size_t>(k) + 1, 0);
    for (const auto i : graph.neighbors) ++in_offsets[static_cast<std::size_t>(i) + 1];
    for (int i = 0; i < k; ++i)
        in_offsets[static_cast<std::size_t>(i) + 1] += in_offsets[static_cast<std::size_t>(i)];
    std::vector<std::int32_t> in_edges(edges);
    {
        std::vector<std::int32_t> cursor(in_offsets.begin(), in_offsets.end() - 1);
        for (std::size_t e = 0; e < edges; ++e) {
            const auto i = static_cast<std::size_t>(graph.neighbors[e]);
            in_edges[static_cast<std::size_t>(cursor[i]++)] = static_cast<std::int32_t>(e);
        }
    }
    std::vector<std::int32_t> edge_output(edges);
    for (int j = 0; j < n; ++j)
        for (std::int32_t e = graph.offsets[j]; e < graph.offsets[j + 1]; ++e)
            edge_output[static_cast<std::size_t>(e)] = j;

    std::vector<std::int8_t> to_input(edges, 0);  // output -> input, edge-indexed
    std::vector<std::int8_t> to_output(edges, 0); // input -> output, edge-indexed

    // Event-driven flooding: a node's outgoing messages can only change when
    // one of its incoming messages changed, so each sweep recomputes exactly
    // the nodes invalidated by the previous half-sweep. This yields the same
    // state trajectory as recomputing every message each iteration.
    std::vector<std::int32_t> dirty_outputs(static_cast<std::size_t>(n));
    std::vector<std::int32_t> dirty_inputs;
    std::vector<std::int32_t> output_epoch(static_cast<std::size_t>(n), 0);
    std::vector<std::int32_t> input_epoch(static_cast<std::size_t>(k), 0);
    dirty_inputs.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < n; ++j) dirty_outputs[static_cast<std::size_t>(j)] = j;

    int iterations = 0;
    while (iterations < max_iterations) {
        ++iterations;

        dirty_inputs.clear();
        for (const std::int32_t j : dirty_outputs) {
            const auto lo = static_cast<std::size_t>(graph.offsets[j]);
            const auto hi = static_cast<std::size_t>(graph.offsets[j + 1]);
            int zeros = 0;
            int prod = 1; // over the nonzero incoming messages
            for (std::size_t e = lo; e < hi; ++e) {
                const std::int8_t v = to_output[e];
                zeros += (v == 0);
                prod *= (v != 0) ? v : 1;
            }
            const int y = received[static_cast<std::size_t>(j)];
            for (std::size_t e = lo; e < hi; ++e) {
                const std::int8_t v = to_output[e];
                std::int8_t next = 0;
                if (zeros == (v == 0 ? 1 : 0))
                    next = static_cast<std::int8_t>(y * ((v != 0) ? prod * v : prod));
                if (next != to_input[e]) {
                    to_input[e] = next;
                    const auto i = static_cast<std::size_t>(graph.neighbors[e]);
                    if (input_epoch[i] != iterations) {
                        input_epoch[i] = iterations;
                        dirty_inputs.push_back(static_cast<std::int32_t>(i));
                    }
                }
            }
        }

        dirty_outputs.clear();
        for (const std::int32_t i : dirty_inputs) {
            const auto lo = static_cast<std::size_t>(in_offsets[i]);
            const auto hi = static_cast<std::size_t>(in_offsets[static_cast<std::size_t>(i) + 1]);
            int sum = 0;
            for (std::size_t t = lo; t < hi; ++t)
                sum += to_input[static_cast<std::size_t>(in_edges[t])];
            for (std::size_t t = lo; t < hi; ++t) {
                const auto e = static_cast<std::size_t>(in_edges[t]);
                const int extrinsic = sum - to_input[e];
                const auto next = static_cast<std::int8_t>((extrinsic > 0) - (extrinsic < 0));
                if (next != to_output[e]) {
                    to_output[e] = next;
                    const auto j = static_cast<std::size_t>(edge_output[e]);
                    if (output_epoch[j] != iterations) {
                        output_epoch[j] = iterations;
                        dirty_outputs.push_back(static_cast<std::int32_t>(j));
                    }
                }
            }
        }

        if (dirty_inputs.empty() && dirty_outputs.empty()) break;
    }

    DecodeResult result;
    result.iterations_used = iterations;
    result.message_estimate.assign(static_cast<std::size_t>(k), 0);
    result.resolved.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        const auto lo = static_cast<std::size_t>(in_offsets[i]);
        const auto hi = static_cast<std::size_t>(in_offsets[static_cast<std::size_t>(i) + 1]);
        int sum = 0;
        for (std::size_t t = lo; t < hi; ++t)
            sum += to_input[static_cast<std::size_t>(in_edges[t])];
        if (sum == 0) {
            ++result.unresolved_count;
        } else {
            result.resolved[static_cast<std::size_t>(i)] = 1;
            result.message_estimate[static_cast<std::size_t>(i)] = (sum < 0) ? 1 : 0;
        }
    }
    result.status =
        (result.unresolved_count == 0) ? DecodeStatus::success : DecodeStatus::failure;
    return result;
}

} // namespace ltfsk
