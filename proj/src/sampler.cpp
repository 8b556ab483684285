#include "irsub/sampler.hpp"

#include <algorithm>
#include <string>

#include "irsub/error.hpp"

namespace irsub {

WeightAssignment sample_weights(std::uint32_t n, Stream& stream) {
    if (n == 0) throw InvalidArgument("sample_weights: n must be positive");
    WeightAssignment w;
    w.x.resize(n);
    for (auto& value : w.x) value = stream.uniform();
    return w;
}

WeightAssignment sample_weights(std::uint32_t n, std::uint64_t master_seed, std::uint64_t trial) {
    Stream stream(master_seed, trial);
    auto w = sample_weights(n, stream);
    w.master_seed = master_seed;
    w.trial = trial;
    return w;
}

std::vector<std::uint32_t> subgraph_degrees(const Graph& g, std::span<const double> x) {
    if (x.size() != g.n()) {
        throw InvalidArgument("subgraph_degrees: " + std::to_string(x.size()) + " weights for " +
                              std::to_string(g.n()) + " vertices");
    }
    std::vector<std::uint32_t> degrees(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        const double xv = x[v];
        std::uint32_t count = 0;
        for (const Vertex u : g.neighbors(v)) count += edge_kept(x[u], xv) ? 1 : 0;
        degrees[v] = count;
    }
    return degrees;
}

DegreeHistogram degree_histogram(std::span<const std::uint32_t> degrees, std::uint32_t d) {
    DegreeHistogram h;
    h.counts.assign(std::size_t{d} + 1, 0);
    for (std::size_t v = 0; v < degrees.size(); ++v) {
        if (degrees[v] > d) {
            throw InvalidArgument("degree_histogram: vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(degrees[v]) + " > " + std::to_string(d));
        }
        ++h.counts[degrees[v]];
    }
    h.max_count = *std::max_element(h.counts.begin(), h.counts.end());
    return h;
}

}  // namespace irsub
