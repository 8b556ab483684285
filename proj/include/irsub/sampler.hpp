#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irsub/graph.hpp"
#include "irsub/rng.hpp"

namespace irsub {

/// i.i.d. vertex weights x(v).
///
/// Draws are uniform on the half-open [0, 1) with 53-bit resolution; the
/// missing endpoint 1.0 has probability zero under the continuous model.
struct WeightAssignment {
    std::vector<double> x;
    std::uint64_t master_seed = 0;
    std::uint64_t trial = 0;
};

/// m(H, k) for k = 0..d, plus m(H) = max_k m(H, k).
struct DegreeHistogram {
    std::vector<std::uint32_t> counts;
    std::uint32_t max_count = 0;
};

WeightAssignment sample_weights(std::uint32_t n, Stream& stream);

/// Convenience: weights for trial `trial` of an experiment seeded `master_seed`.
WeightAssignment sample_weights(std::uint32_t n, std::uint64_t master_seed, std::uint64_t trial);

/// Edge rule of the model; ties (sum exactly 1) keep the edge.
constexpr bool edge_kept(double xu, double xv) noexcept { return xu + xv >= 1.0; }

/// deg_H(v) = #{u in N(v) : x(u) + x(v) >= 1}.
std::vector<std::uint32_t> subgraph_degrees(const Graph& g, std::span<const double> x);

DegreeHistogram degree_histogram(std::span<const std::uint32_t> degrees, std::uint32_t d);

}  // namespace irsub
