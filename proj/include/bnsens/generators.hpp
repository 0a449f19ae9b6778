#pragma once

#include "bnsens/boolexpr.hpp"
#include "bnsens/network.hpp"

#include <cstdint>

namespace bnsens {

/// SplitMix64. Small, fully specified, so seeded suites are reproducible
/// across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, n); n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool coin() { return next() >> 63; }
    /// a/b with 1 <= b <= max_den and 0 <= a <= b, uniform over (a, b) pairs.
    Rational probability(std::uint64_t max_den);

private:
    std::uint64_t state_;
};

/// Seed for the index-th instance of a suite started from `seed`.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

/// The root is an operator unless max_depth is 0. Below it each node is a leaf
/// with probability 1/4 (always at max_depth), otherwise an operator uniform
/// over not/and/or. Leaf variables are uniform over V1..V(num_vars).
BoolExpr random_formula(Rng& rng, std::size_t num_vars, std::size_t max_depth);

/// n uniform in [1, max_vars], existential prefix length uniform in [0, n].
EMajsatInstance random_emajsat(Rng& rng, std::size_t max_vars, std::size_t max_depth);

/// n uniform in [1, max_vars], m in [1, max_clauses], clause width in [1, min(3, n)]
/// over distinct variables with random polarity; k uniform in [1, m].
MaxsatInstance random_cnf(Rng& rng, std::size_t max_vars, std::size_t max_clauses);

struct NetworkShape {
    std::size_t num_vars = 6;
    std::size_t max_parents = 3;
    std::size_t max_cardinality = 2;
    /// CPT rows are normalized integer weights in [0, max_weight]; zero
    /// weights appear, so deterministic entries and zero-probability evidence occur.
    std::size_t max_weight = 4;
};

/// Random DAG over variables X0..X(n-1), each with parents drawn from earlier variables.
Network random_network(Rng& rng, const NetworkShape& shape);

} // namespace bnsens
