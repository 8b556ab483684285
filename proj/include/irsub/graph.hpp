#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace irsub {

using Vertex = std::uint32_t;

/// Immutable simple d-regular graph in compressed-row layout.
///
/// Neighbor lists are sorted ascending, so membership and neighbor-rank
/// queries are binary searches. Vertices are 0..n-1.
class Graph {
public:
    /// Builds from an undirected edge list; throws InvalidArgument unless the
    /// result is simple and d-regular. The message names the first offending
    /// vertex.
    static Graph from_edges(std::uint32_t n, std::uint32_t d,
                            std::span<const std::pair<Vertex, Vertex>> edges,
                            std::string descriptor);

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t d() const noexcept { return d_; }
    std::uint64_t edge_count() const noexcept { return std::uint64_t{n_} * d_ / 2; }
    const std::string& descriptor() const noexcept { return descriptor_; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adjacency_.data() + std::size_t{v} * d_, d_};
    }
    bool adjacent(Vertex u, Vertex v) const noexcept;

    /// Edges (u, v) with u < v in row order.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Raw row-major adjacency (n * d entries); equal graphs compare equal here.
    std::span<const Vertex> adjacency() const noexcept { return adjacency_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.adjacency_ == b.adjacency_;
    }

private:
    Graph() = default;

    std::uint32_t n_ = 0;
    std::uint32_t d_ = 0;
    std::vector<Vertex> adjacency_;
    std::string descriptor_;
};

enum class GraphFamily {
    complete,            // K_n; params {n}
    circulant,           // params {n, offsets...}
    complete_bipartite,  // K_{a,a}; params {a}
    hypercube,           // Q_dim; params {dim}
    random_regular,      // params {n, d}; uses seed
    disjoint_cliques,    // count copies of K_size; params {count, size}
    from_file,           // path
};

enum class RegularStrategy {
    automatic,       // exact pairing rejection when cheap, Steger-Wormald otherwise
    pairing,         // configuration model, whole-graph restart on any loop or multi-edge
    steger_wormald,  // sequential suitable-pair matching, restart when stuck
};

struct GraphFamilySpec {
    GraphFamily family = GraphFamily::complete;
    std::vector<std::int64_t> parameters;
    std::uint64_t seed = 0;
    std::filesystem::path path;
    RegularStrategy strategy = RegularStrategy::automatic;
};

inline constexpr int kRandomRegularRetryLimit = 10'000;

Graph build_graph(const GraphFamilySpec& spec);

/// Parses "complete", "random-regular", "random_regular", ...
GraphFamily parse_family(const std::string& name);
std::string family_name(GraphFamily family);

/// |N(u) ∩ N(v)|; throws InvalidArgument when u == v.
std::uint32_t codegree(const Graph& g, Vertex u, Vertex v);

/// Sum over ordered pairs u != v of codegree(u, v), by direct pair summation.
std::uint64_t codegree_sum(const Graph& g);

/// Same quantity through the wedge count 2 * sum_w C(|N(w)|, 2).
std::uint64_t codegree_sum_by_wedges(const Graph& g);

// Edge-list text format: "n d" header, then "u v" with u < v, one per line.
void write_edge_list(const Graph& g, std::ostream& out);
std::string edge_list_text(const Graph& g);
Graph read_edge_list(std::istream& in, std::string descriptor);
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path);

}  // namespace irsub
