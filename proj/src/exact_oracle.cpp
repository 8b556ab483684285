#include "irsub/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "irsub/error.hpp"
#include "irsub/parallel.hpp"

namespace irsub {

namespace {

mpq_class ratio(std::uint64_t count, std::uint64_t total) {
    mpq_class q{mpz_class(std::to_string(count)), mpz_class(std::to_string(total))};
    q.canonicalize();
    return q;
}

void check_vertex(const OracleTables& t, Vertex v) {
    if (v >= t.n) throw InvalidArgument("oracle: vertex " + std::to_string(v) + " out of range");
}

struct Accumulator {
    std::vector<std::uint64_t> vertex_degree;
    std::vector<std::uint64_t> joint;
    std::vector<std::uint64_t> count_distribution;
};

}  // namespace

ExactProbability::ExactProbability(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

ExactProbability::ExactProbability(std::uint64_t numerator, std::uint64_t denominator)
    : value_(ratio(numerator, denominator)) {
    if (denominator == 0) throw InvalidArgument("ExactProbability: zero denominator");
}

std::string ExactProbability::str() const { return fraction_string(value_); }

std::string fraction_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

OrderType order_type_of(std::span<const double> x) {
    const std::size_t n = x.size();
    OrderType ot;
    ot.positive.resize(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        ot.positive[i] = x[i] > 0.5;
        dist[i] = ot.positive[i] ? x[i] - 0.5 : 0.5 - x[i];
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return dist[a] < dist[b]; });
    ot.rank.resize(n);
    for (std::uint32_t r = 0; r < n; ++r) ot.rank[order[r]] = r;
    return ot;
}

std::uint64_t order_type_count(std::uint32_t n) {
    if (n > 20) throw InvalidArgument("order_type_count: n too large");
    std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint32_t i = 2; i <= n; ++i) total *= i;
    return total;
}

double enumeration_cost(std::uint32_t n, std::uint32_t d) {
    double total = std::ldexp(1.0, static_cast<int>(n));
    for (std::uint32_t i = 2; i <= n; ++i) total *= i;
    return total * n * std::max<std::uint32_t>(d, 1);
}

void check_oracle_cap(const Graph& g, std::uint32_t cap) {
    if (cap > kMaxOracleCap) {
        throw InvalidArgument("oracle cap " + std::to_string(cap) + " above the supported maximum " +
                              std::to_string(kMaxOracleCap));
    }
    if (g.n() > cap) {
        char cost[64];
        std::snprintf(cost, sizeof cost, "%.3g", enumeration_cost(g.n(), g.d()));
        throw CapExceeded("exact oracle refuses n=" + std::to_string(g.n()) + " above cap " +
                          std::to_string(cap) + ": enumeration would visit n!*2^n order types, about " +
                          cost + " basic operations");
    }
}

std::vector<std::uint32_t> degrees_of_order_type(const Graph& g, const OrderType& ot, std::uint32_t cap) {
    check_oracle_cap(g, cap);
    if (ot.rank.size() != g.n() || ot.positive.size() != g.n())
        throw InvalidArgument("degrees_of_order_type: order type size does not match the graph");
    std::vector<std::uint32_t> degrees(g.n(), 0);
    for (const auto& [i, j] : g.edges()) {
        const bool si = ot.positive[i];
        const bool sj = ot.positive[j];
        const bool kept = (si && sj) || (si && !sj && ot.rank[i] > ot.rank[j]) ||
                          (!si && sj && ot.rank[j] > ot.rank[i]);
        if (kept) {
            ++degrees[i];
            ++degrees[j];
        }
    }
    return degrees;
}

std::uint64_t OracleTables::joint_count(Vertex u, Vertex v, std::uint32_t k) const {
    if (u > v) std::swap(u, v);
    return joint[(std::size_t{u} * n + v) * (d + 1) + k];
}

OracleTables enumerate_order_types(const Graph& g, const OracleOptions& options) {
    check_oracle_cap(g, options.cap);
    const std::uint32_t n = g.n();
    const std::uint32_t d = g.d();
    const std::uint32_t kd = d + 1;
    const auto edges = g.edges();
    const std::uint64_t masks = std::uint64_t{1} << n;

    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(masks)));
    std::vector<Accumulator> acc(workers);
    for (auto& a : acc) {
        a.vertex_degree.assign(std::size_t{n} * kd, 0);
        a.joint.assign(std::size_t{n} * n * kd, 0);
        a.count_distribution.assign(std::size_t{kd} * (n + 1), 0);
    }

    parallel_for(masks, workers, [&](std::size_t mask, unsigned worker) {
        Accumulator& a = acc[worker];
        std::vector<std::uint32_t> base(n, 0);
        std::vector<std::pair<Vertex, Vertex>> mixed;  // (positive end, negative end)
        for (const auto& [i, j] : edges) {
            const bool si = (mask >> i) & 1u;
            const bool sj = (mask >> j) & 1u;
            if (si && sj) {
                ++base[i];
                ++base[j];
            } else if (si != sj) {
                mixed.emplace_back(si ? i : j, si ? j : i);
            }
        }
        std::vector<std::uint32_t> rank(n);
        std::iota(rank.begin(), rank.end(), 0u);
        std::vector<std::uint32_t> deg(n);
        std::vector<std::uint32_t> per_k(kd);
        do {
            std::copy(base.begin(), base.end(), deg.begin());
            for (const auto& [p, q] : mixed) {
                if (rank[p] > rank[q]) {
                    ++deg[p];
                    ++deg[q];
                }
            }
            std::fill(per_k.begin(), per_k.end(), 0u);
            for (Vertex v = 0; v < n; ++v) {
                ++a.vertex_degree[std::size_t{v} * kd + deg[v]];
                ++per_k[deg[v]];
            }
            for (std::uint32_t k = 0; k < kd; ++k) ++a.count_distribution[std::size_t{k} * (n + 1) + per_k[k]];
            for (Vertex u = 0; u < n; ++u) {
                const std::uint32_t du = deg[u];
                if (per_k[du] < 2) continue;
                for (Vertex v = u + 1; v < n; ++v)
                    if (deg[v] == du) ++a.joint[(std::size_t{u} * n + v) * kd + du];
            }
        } while (std::next_permutation(rank.begin(), rank.end()));
    });

    OracleTables t;
    t.n = n;
    t.d = d;
    t.total = order_type_count(n);
    t.vertex_degree = std::move(acc[0].vertex_degree);
    t.joint = std::move(acc[0].joint);
    t.count_distribution = std::move(acc[0].count_distribution);
    for (std::size_t w = 1; w < acc.size(); ++w) {
        for (std::size_t i = 0; i < t.vertex_degree.size(); ++i) t.vertex_degree[i] += acc[w].vertex_degree[i];
        for (std::size_t i = 0; i < t.joint.size(); ++i) t.joint[i] += acc[w].joint[i];
        for (std::size_t i = 0; i < t.count_distribution.size(); ++i)
            t.count_distribution[i] += acc[w].count_distribution[i];
    }
    return t;
}

std::vector<ExactProbability> exact_degree_pmf(const OracleTables& tables, Vertex v) {
    check_vertex(tables, v);
    std::vector<ExactProbability> pmf;
    pmf.reserve(tables.d + 1);
    for (std::uint32_t k = 0; k <= tables.d; ++k)
        pmf.emplace_back(tables.vertex_count(v, k), tables.total);
    return pmf;
}

std::vector<ExactProbability> exact_degree_pmf(const Graph& g, Vertex v, const OracleOptions& options) {
    if (v >= g.n()) throw InvalidArgument("exact_degree_pmf: vertex out of range");
    return exact_degree_pmf(enumerate_order_types(g, options), v);
}

ExactProbability exact_joint(const OracleTables& tables, Vertex u, Vertex v, std::uint32_t k) {
    check_vertex(tables, u);
    check_vertex(tables, v);
    if (u == v) throw InvalidArgument("exact_joint needs two distinct vertices");
    if (k > tables.d) throw InvalidArgument("exact_joint: k above d");
    return {tables.joint_count(u, v, k), tables.total};
}

ExactProbability exact_joint(const Graph& g, Vertex u, Vertex v, std::uint32_t k, const OracleOptions& options) {
    if (u == v) throw InvalidArgument("exact_joint needs two distinct vertices");
    if (u >= g.n() || v >= g.n()) throw InvalidArgument("exact_joint: vertex out of range");
    return exact_joint(enumerate_order_types(g, options), u, v, k);
}

std::vector<mpq_class> exact_count_distribution(const OracleTables& tables, std::uint32_t k) {
    if (k > tables.d) throw InvalidArgument("exact_count_distribution: k above d");
    std::vector<mpq_class> dist;
    dist.reserve(tables.n + 1);
    for (std::uint32_t m = 0; m <= tables.n; ++m) dist.push_back(ratio(tables.distribution_count(k, m), tables.total));
    return dist;
}

ExactMoments exact_mean_var(const OracleTables& tables, std::uint32_t k) {
    if (k > tables.d) throw InvalidArgument("exact_mean_var: k above d");
    mpz_class s1 = 0;
    mpz_class s2 = 0;
    for (std::uint32_t m = 0; m <= tables.n; ++m) {
        const mpz_class c(std::to_string(tables.distribution_count(k, m)));
        s1 += c * m;
        s2 += c * m * m;
    }
    const mpz_class total(std::to_string(tables.total));
    ExactMoments out;
    out.mean = mpq_class(s1, total);
    out.mean.canonicalize();
    mpq_class second(s2, total);
    second.canonicalize();
    out.variance = second - out.mean * out.mean;
    return out;
}

ExactMoments exact_mean_var(const Graph& g, std::uint32_t k, const OracleOptions& options) {
    if (k > g.d()) throw InvalidArgument("exact_mean_var: k above d");
    return exact_mean_var(enumerate_order_types(g, options), k);
}

mpq_class variance_from_joints(const OracleTables& tables, std::uint32_t k) {
    if (k > tables.d) throw InvalidArgument("variance_from_joints: k above d");
    mpz_class singles = 0;
    mpz_class pairs = 0;
    for (Vertex u = 0; u < tables.n; ++u) {
        singles += mpz_class(std::to_string(tables.vertex_count(u, k)));
        for (Vertex v = u + 1; v < tables.n; ++v) pairs += mpz_class(std::to_string(tables.joint_count(u, v, k)));
    }
    const mpz_class total(std::to_string(tables.total));
    mpq_class mean(singles, total);
    mean.canonicalize();
    mpq_class second(singles + 2 * pairs, total);
    second.canonicalize();
    return second - mean * mean;
}

mpq_class exact_tail(const OracleTables& tables, std::uint32_t k, const mpq_class& z) {
    const auto moments = exact_mean_var(tables, k);
    const auto dist = exact_count_distribution(tables, k);
    mpq_class tail = 0;
    for (std::uint32_t m = 0; m <= tables.n; ++m) {
        const mpq_class dev = abs(mpq_class(m) - moments.mean);
        if (dev >= z) tail += dist[m];
    }
    return tail;
}

mpq_class joint_bound(std::uint32_t d, std::uint32_t codeg) {
    mpq_class inv(1, d + 1);
    inv.canonicalize();
    return inv * inv * (1 + mpq_class(16 * codeg, 1) * inv);
}

mpq_class variance_cap(std::uint32_t n, std::uint32_t d) {
    mpq_class cap(17 * mpz_class(n), d + 1);
    cap.canonicalize();
    return cap;
}

JointRatio worst_joint_ratio(const Graph& g, const OracleTables& tables) {
    JointRatio worst;
    worst.ratio = -1;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            const auto bound = joint_bound(g.d(), codegree(g, u, v));
            for (std::uint32_t k = 0; k <= g.d(); ++k) {
                const mpq_class r = exact_joint(tables, u, v, k).value() / bound;
                if (r > worst.ratio) worst = {r, u, v, k};
            }
        }
    return worst;
}

}  // namespace irsub
