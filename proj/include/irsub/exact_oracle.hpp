#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irsub/graph.hpp"

namespace irsub {

/// Combinatorial shadow of a weight vector.
///
/// Writing x_i = 1/2 + s_i * v_i with v_i = |x_i - 1/2|, the rule
/// x_i + x_j >= 1 depends only on the signs and on the relative order of the
/// v's. `rank[i]` is the position of v_i in increasing order (0 = closest to
/// 1/2) and `positive[i]` is x_i > 1/2. Under i.i.d. uniform weights all
/// n! * 2^n order types are equally likely.
struct OrderType {
    std::vector<std::uint32_t> rank;
    std::vector<bool> positive;
};

/// Order type of a concrete weight vector (ties broken by index).
OrderType order_type_of(std::span<const double> x);

/// Exact probability in lowest terms.
class ExactProbability {
public:
    ExactProbability() = default;
    explicit ExactProbability(mpq_class value);
    ExactProbability(std::uint64_t numerator, std::uint64_t denominator);

    const mpq_class& value() const noexcept { return value_; }
    std::string numerator() const { return value_.get_num().get_str(); }
    std::string denominator() const { return value_.get_den().get_str(); }
    /// "numerator/denominator", e.g. "1/4" or "1/1".
    std::string str() const;
    double to_double() const { return value_.get_d(); }

    friend bool operator==(const ExactProbability& a, const ExactProbability& b) {
        return a.value_ == b.value_;
    }
    friend auto operator<=>(const ExactProbability& a, const ExactProbability& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

struct OracleOptions {
    std::uint32_t cap = 8;
    unsigned threads = 1;
};

inline constexpr std::uint32_t kMaxOracleCap = 12;

/// n! * 2^n.
std::uint64_t order_type_count(std::uint32_t n);

/// Rough basic-operation count n! * 2^n * n * d, for cost warnings.
double enumeration_cost(std::uint32_t n, std::uint32_t d);

/// Throws CapExceeded (with the cost estimate in the message) when n > cap.
void check_oracle_cap(const Graph& g, std::uint32_t cap);

/// Edge (i, j) is kept iff both positive, or the positive one has larger rank.
std::vector<std::uint32_t> degrees_of_order_type(const Graph& g, const OrderType& ot,
                                                 std::uint32_t cap = 8);

/// Raw counts from one pass over every order type; all exact quantities
/// below are ratios of these counts to `total`.
struct OracleTables {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t total = 0;
    /// vertex_degree[v * (d+1) + k] = #{order types with deg_H(v) = k}
    std::vector<std::uint64_t> vertex_degree;
    /// joint[(u * n + v) * (d+1) + k] = #{deg_H(u) = deg_H(v) = k}, stored for u < v
    std::vector<std::uint64_t> joint;
    /// count_distribution[k * (n+1) + m] = #{m(H,k) = m}
    std::vector<std::uint64_t> count_distribution;

    std::uint64_t vertex_count(Vertex v, std::uint32_t k) const {
        return vertex_degree[std::size_t{v} * (d + 1) + k];
    }
    std::uint64_t joint_count(Vertex u, Vertex v, std::uint32_t k) const;
    std::uint64_t distribution_count(std::uint32_t k, std::uint32_t m) const {
        return count_distribution[std::size_t{k} * (n + 1) + m];
    }
};

/// Enumerates all order types: sign vectors outer (split across workers),
/// rank permutations inner in lexicographic order.
OracleTables enumerate_order_types(const Graph& g, const OracleOptions& options = {});

std::vector<ExactProbability> exact_degree_pmf(const OracleTables& tables, Vertex v);
std::vector<ExactProbability> exact_degree_pmf(const Graph& g, Vertex v, const OracleOptions& options = {});

/// E[I_u I_v] for degree k.
ExactProbability exact_joint(const OracleTables& tables, Vertex u, Vertex v, std::uint32_t k);
ExactProbability exact_joint(const Graph& g, Vertex u, Vertex v, std::uint32_t k,
                             const OracleOptions& options = {});

struct ExactMoments {
    mpq_class mean;
    mpq_class variance;
};

/// Mean and variance of X = m(H, k) from the exact distribution of X.
ExactMoments exact_mean_var(const OracleTables& tables, std::uint32_t k);
ExactMoments exact_mean_var(const Graph& g, std::uint32_t k, const OracleOptions& options = {});

/// Second route to the variance through the pair expansion
/// Var X = sum_v P(I_v) + sum_{u != v} E[I_u I_v] - (E X)^2.
mpq_class variance_from_joints(const OracleTables& tables, std::uint32_t k);

/// P[m(H,k) = m] for m = 0..n.
std::vector<mpq_class> exact_count_distribution(const OracleTables& tables, std::uint32_t k);

/// P[|X - E X| >= z] computed exactly from the distribution.
mpq_class exact_tail(const OracleTables& tables, std::uint32_t k, const mpq_class& z);

/// (1/(d+1)^2) * (1 + 16 codeg / (d+1)).
mpq_class joint_bound(std::uint32_t d, std::uint32_t codeg);

/// 17 n / (d+1).
mpq_class variance_cap(std::uint32_t n, std::uint32_t d);

/// Largest E[I_u I_v] / joint_bound over pairs and k. Reported only.
struct JointRatio {
    mpq_class ratio;
    Vertex u = 0;
    Vertex v = 0;
    std::uint32_t k = 0;
};
JointRatio worst_joint_ratio(const Graph& g, const OracleTables& tables);

std::string fraction_string(const mpq_class& q);

}  // namespace irsub
