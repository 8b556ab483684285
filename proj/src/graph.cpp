#include "irsub/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "irsub/error.hpp"
#include "irsub/rng.hpp"

namespace irsub {

namespace {

std::string join(std::span<const std::int64_t> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::uint64_t pair_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t{u} << 32) | v;
}

void require_params(const GraphFamilySpec& spec, std::size_t count, const char* family) {
    if (spec.parameters.size() != count) {
        throw InvalidArgument(std::string(family) + " expects " + std::to_string(count) +
                              " parameter(s), got " + std::to_string(spec.parameters.size()));
    }
}

std::uint32_t checked_count(std::int64_t value, const char* what, std::int64_t min_value) {
    if (value < min_value || value > (std::int64_t{1} << 30)) {
        throw InvalidArgument(std::string(what) + " out of range: " + std::to_string(value));
    }
    return static_cast<std::uint32_t>(value);
}

Graph complete(const GraphFamilySpec& spec) {
    require_params(spec, 1, "complete");
    const auto n = checked_count(spec.parameters[0], "complete: n", 1);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, n - 1, edges, "complete(n=" + std::to_string(n) + ")");
}

Graph circulant(const GraphFamilySpec& spec) {
    if (spec.parameters.size() < 2) throw InvalidArgument("circulant expects n and at least one offset");
    const auto n = checked_count(spec.parameters[0], "circulant: n", 2);
    std::vector<std::int64_t> offsets(spec.parameters.begin() + 1, spec.parameters.end());
    std::sort(offsets.begin(), offsets.end());
    if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
        throw InvalidArgument("circulant: offsets must be distinct");
    std::uint32_t d = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto off : offsets) {
        if (off < 1 || 2 * off > n)
            throw InvalidArgument("circulant: offset " + std::to_string(off) + " not in [1, n/2]");
        const bool antipodal = 2 * off == n;
        d += antipodal ? 1 : 2;
        const Vertex limit = antipodal ? n / 2 : n;
        for (Vertex u = 0; u < limit; ++u) {
            const Vertex v = static_cast<Vertex>((u + off) % n);
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
    }
    return Graph::from_edges(n, d, edges,
                             "circulant(n=" + std::to_string(n) + ";offsets=" + join(offsets) + ")");
}

Graph complete_bipartite(const GraphFamilySpec& spec) {
    require_params(spec, 1, "complete_bipartite");
    const auto a = checked_count(spec.parameters[0], "complete_bipartite: side", 1);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = a; v < 2 * a; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(2 * a, a, edges, "complete_bipartite(a=" + std::to_string(a) + ")");
}

Graph hypercube(const GraphFamilySpec& spec) {
    require_params(spec, 1, "hypercube");
    const auto dim = checked_count(spec.parameters[0], "hypercube: dim", 1);
    if (dim > 24) throw InvalidArgument("hypercube: dim too large");
    const Vertex n = Vertex{1} << dim;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (std::uint32_t b = 0; b < dim; ++b) {
            const Vertex v = u ^ (Vertex{1} << b);
            if (u < v) edges.emplace_back(u, v);
        }
    return Graph::from_edges(n, dim, edges, "hypercube(dim=" + std::to_string(dim) + ")");
}

Graph disjoint_cliques(const GraphFamilySpec& spec) {
    require_params(spec, 2, "disjoint_cliques");
    const auto count = checked_count(spec.parameters[0], "disjoint_cliques: count", 1);
    const auto size = checked_count(spec.parameters[1], "disjoint_cliques: size", 1);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex c = 0; c < count; ++c)
        for (Vertex i = 0; i < size; ++i)
            for (Vertex j = i + 1; j < size; ++j) edges.emplace_back(c * size + i, c * size + j);
    return Graph::from_edges(count * size, size - 1, edges,
                             "disjoint_cliques(count=" + std::to_string(count) +
                                 ";size=" + std::to_string(size) + ")");
}

// One attempt of the configuration model: shuffle the n*d points and pair
// them consecutively. Empty result on a loop or a repeated pair.
std::vector<std::pair<Vertex, Vertex>> pairing_attempt(std::uint32_t n, std::uint32_t d, Stream& rng) {
    std::vector<Vertex> points;
    points.reserve(std::size_t{n} * d);
    for (Vertex v = 0; v < n; ++v) points.insert(points.end(), d, v);
    rng.shuffle(std::span<Vertex>(points));
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(points.size() / 2);
    for (std::size_t i = 0; i < points.size(); i += 2) {
        const Vertex u = points[i];
        const Vertex v = points[i + 1];
        if (u == v || !seen.insert(pair_key(u, v)).second) return {};
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return edges;
}

// One attempt of Steger-Wormald: repeatedly shuffle the unmatched points and
// keep every consecutive pair that is suitable (distinct, not yet adjacent).
// Empty result when the leftover points admit no suitable pair.
std::vector<std::pair<Vertex, Vertex>> steger_wormald_attempt(std::uint32_t n, std::uint32_t d,
                                                              Stream& rng) {
    std::vector<Vertex> stubs;
    stubs.reserve(std::size_t{n} * d);
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<Vertex, Vertex>> edges;
    while (!stubs.empty()) {
        rng.shuffle(std::span<Vertex>(stubs));
        std::vector<Vertex> leftover;
        for (std::size_t i = 0; i < stubs.size(); i += 2) {
            const Vertex u = stubs[i];
            const Vertex v = stubs[i + 1];
            if (u != v && seen.insert(pair_key(u, v)).second) {
                edges.emplace_back(std::min(u, v), std::max(u, v));
            } else {
                leftover.push_back(u);
                leftover.push_back(v);
            }
        }
        if (leftover.empty()) break;
        std::vector<Vertex> distinct = leftover;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        bool suitable = false;
        for (std::size_t i = 0; i < distinct.size() && !suitable; ++i)
            for (std::size_t j = i + 1; j < distinct.size() && !suitable; ++j)
                suitable = !seen.contains(pair_key(distinct[i], distinct[j]));
        if (!suitable) return {};
        std::sort(leftover.begin(), leftover.end());
        stubs = std::move(leftover);
    }
    return edges;
}

Graph random_regular(const GraphFamilySpec& spec) {
    require_params(spec, 2, "random_regular");
    const auto n = checked_count(spec.parameters[0], "random_regular: n", 1);
    const auto d = checked_count(spec.parameters[1], "random_regular: d", 0);
    if (d >= n) throw InvalidArgument("random_regular: need d < n");
    if ((std::uint64_t{n} * d) % 2 != 0) throw InvalidArgument("random_regular: n*d must be even");

    RegularStrategy strategy = spec.strategy;
    if (strategy == RegularStrategy::automatic) {
        // Whole-graph rejection succeeds with probability ~exp(-(d^2-1)/4).
        const double expected_attempts = std::exp((double(d) * d - 1.0) / 4.0);
        strategy = expected_attempts <= 1000.0 ? RegularStrategy::pairing : RegularStrategy::steger_wormald;
    }
    Stream rng(spec.seed, 0);
    for (int attempt = 0; attempt < kRandomRegularRetryLimit; ++attempt) {
        auto edges = strategy == RegularStrategy::pairing ? pairing_attempt(n, d, rng)
                                                          : steger_wormald_attempt(n, d, rng);
        if (edges.empty() && d > 0) continue;
        return Graph::from_edges(n, d, edges,
                                 "random_regular(n=" + std::to_string(n) + ";d=" + std::to_string(d) +
                                     ";seed=" + std::to_string(spec.seed) + ")");
    }
    throw RetryLimitExceeded("random_regular: no simple graph after " +
                             std::to_string(kRandomRegularRetryLimit) + " restarts (n=" +
                             std::to_string(n) + ", d=" + std::to_string(d) +
                             "); d is too large for rejection sampling");
}

}  // namespace

Graph Graph::from_edges(std::uint32_t n, std::uint32_t d,
                        std::span<const std::pair<Vertex, Vertex>> edges, std::string descriptor) {
    if ((std::uint64_t{n} * d) % 2 != 0) throw InvalidArgument("n*d must be even");
    if (d >= n && !(n == 0 && d == 0)) throw InvalidArgument("degree must be below n");
    if (edges.size() != std::uint64_t{n} * d / 2) {
        throw InvalidArgument("expected " + std::to_string(std::uint64_t{n} * d / 2) + " edges, got " +
                              std::to_string(edges.size()));
    }
    std::vector<std::uint32_t> fill(n, 0);
    Graph g;
    g.n_ = n;
    g.d_ = d;
    g.descriptor_ = std::move(descriptor);
    g.adjacency_.assign(std::size_t{n} * d, 0);
    auto push = [&](Vertex from, Vertex to) {
        if (fill[from] == d) {
            throw InvalidArgument("vertex " + std::to_string(from) + " has degree above " +
                                  std::to_string(d));
        }
        g.adjacency_[std::size_t{from} * d + fill[from]++] = to;
    };
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") has an endpoint outside [0, " + std::to_string(n) + ")");
        }
        if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
        push(u, v);
        push(v, u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto row = g.adjacency_.begin() + std::ptrdiff_t{v} * d;
        std::sort(row, row + d);
        if (std::adjacent_find(row, row + d) != row + d)
            throw InvalidArgument("duplicate edge at vertex " + std::to_string(v));
    }
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n_; ++u)
        for (const Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

GraphFamily parse_family(const std::string& name) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "complete") return GraphFamily::complete;
    if (key == "circulant") return GraphFamily::circulant;
    if (key == "complete_bipartite") return GraphFamily::complete_bipartite;
    if (key == "hypercube") return GraphFamily::hypercube;
    if (key == "random_regular") return GraphFamily::random_regular;
    if (key == "disjoint_cliques") return GraphFamily::disjoint_cliques;
    if (key == "from_file") return GraphFamily::from_file;
    throw InvalidArgument("unknown graph family '" + name + "'");
}

std::string family_name(GraphFamily family) {
    switch (family) {
        case GraphFamily::complete: return "complete";
        case GraphFamily::circulant: return "circulant";
        case GraphFamily::complete_bipartite: return "complete_bipartite";
        case GraphFamily::hypercube: return "hypercube";
        case GraphFamily::random_regular: return "random_regular";
        case GraphFamily::disjoint_cliques: return "disjoint_cliques";
        case GraphFamily::from_file: return "from_file";
    }
    return "unknown";
}

Graph build_graph(const GraphFamilySpec& spec) {
    switch (spec.family) {
        case GraphFamily::complete: return complete(spec);
        case GraphFamily::circulant: return circulant(spec);
        case GraphFamily::complete_bipartite: return complete_bipartite(spec);
        case GraphFamily::hypercube: return hypercube(spec);
        case GraphFamily::random_regular: return random_regular(spec);
        case GraphFamily::disjoint_cliques: return disjoint_cliques(spec);
        case GraphFamily::from_file: return load_graph(spec.path);
    }
    throw InvalidArgument("unknown graph family");
}

std::uint32_t codegree(const Graph& g, Vertex u, Vertex v) {
    if (u == v) throw InvalidArgument("codegree needs two distinct vertices");
    if (u >= g.n() || v >= g.n()) throw InvalidArgument("codegree: vertex out of range");
    const auto a = g.neighbors(u);
    const auto b = g.neighbors(v);
    std::uint32_t common = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return common;
}

std::uint64_t codegree_sum(const Graph& g) {
    // Only pairs at distance <= 2 can share a neighbor.
    std::uint64_t total = 0;
    std::vector<std::uint8_t> marked(g.n(), 0);
    for (Vertex u = 0; u < g.n(); ++u) {
        std::vector<Vertex> candidates;
        for (const Vertex w : g.neighbors(u))
            for (const Vertex v : g.neighbors(w))
                if (v != u && !marked[v]) {
                    marked[v] = 1;
                    candidates.push_back(v);
                }
        for (const Vertex v : candidates) {
            total += codegree(g, u, v);
            marked[v] = 0;
        }
    }
    return total;
}

std::uint64_t codegree_sum_by_wedges(const Graph& g) {
    std::uint64_t total = 0;
    for (Vertex w = 0; w < g.n(); ++w) {
        const std::uint64_t deg = g.neighbors(w).size();
        total += deg * (deg - (deg > 0 ? 1 : 0));
    }
    return total;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.n() << ' ' << g.d() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string edge_list_text(const Graph& g) {
    std::ostringstream out;
    write_edge_list(g, out);
    return out.str();
}

Graph read_edge_list(std::istream& in, std::string descriptor) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw InvalidArgument("graph file: missing 'n d' header");
    std::int64_t n = 0;
    std::int64_t d = 0;
    {
        std::istringstream header(line);
        std::string extra;
        if (!(header >> n >> d) || (header >> extra) || n < 1 || d < 0 || n > (1 << 30))
            throw InvalidArgument("graph file line 1: expected 'n d'");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::uint32_t> degree(static_cast<std::size_t>(n), 0);
    std::unordered_set<std::uint64_t> seen;
    while (next_line()) {
        std::istringstream row(line);
        std::int64_t u = 0;
        std::int64_t v = 0;
        std::string extra;
        if (!(row >> u >> v) || (row >> extra))
            throw InvalidArgument("graph file line " + std::to_string(line_no) + ": expected 'u v'");
        if (!(0 <= u && u < v && v < n)) {
            throw InvalidArgument("graph file line " + std::to_string(line_no) +
                                  ": need 0 <= u < v < n");
        }
        if (!seen.insert(pair_key(Vertex(u), Vertex(v))).second)
            throw InvalidArgument("graph file line " + std::to_string(line_no) + ": duplicate edge");
        ++degree[u];
        ++degree[v];
        edges.emplace_back(Vertex(u), Vertex(v));
    }
    for (std::size_t v = 0; v < degree.size(); ++v) {
        if (degree[v] != d) {
            throw InvalidArgument("graph is not " + std::to_string(d) + "-regular: vertex " +
                                  std::to_string(v) + " has degree " + std::to_string(degree[v]));
        }
    }
    return Graph::from_edges(Vertex(n), Vertex(d), edges, std::move(descriptor));
}

Graph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open graph file " + path.string());
    return read_edge_list(in, "from_file(" + path.filename().string() + ")");
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write graph file " + path.string());
    write_edge_list(g, out);
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace irsub
