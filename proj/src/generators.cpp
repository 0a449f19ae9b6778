#include "bnsens/generators.hpp"

#include "bnsens/error.hpp"

#include <algorithm>

namespace bnsens {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("Rng::below needs a positive bound");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % n;
}

Rational Rng::probability(std::uint64_t max_den) {
    std::uint64_t b = between(1, max_den);
    std::uint64_t a = below(b + 1);
    return ratio(static_cast<unsigned long>(a), static_cast<unsigned long>(b));
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (index * 0xd1b54a32d192ed03ULL));
    r.next();
    return r.next();
}

namespace {

BoolExpr random_subformula(Rng& rng, std::size_t num_vars, std::size_t depth, std::size_t max_depth) {
    const bool leaf = depth == max_depth || (depth > 0 && rng.below(4) == 0);
    if (leaf) return BoolExpr::variable(rng.between(1, num_vars));
    switch (rng.below(3)) {
    case 0: return BoolExpr::negation(random_subformula(rng, num_vars, depth + 1, max_depth));
    case 1: {
        BoolExpr l = random_subformula(rng, num_vars, depth + 1, max_depth);
        return BoolExpr::conjunction(l, random_subformula(rng, num_vars, depth + 1, max_depth));
    }
    default: {
        BoolExpr l = random_subformula(rng, num_vars, depth + 1, max_depth);
        return BoolExpr::disjunction(l, random_subformula(rng, num_vars, depth + 1, max_depth));
    }
    }
}

} // namespace

BoolExpr random_formula(Rng& rng, std::size_t num_vars, std::size_t max_depth) {
    if (num_vars == 0) throw InvalidArgument("formula needs at least one variable");
    return random_subformula(rng, num_vars, 0, max_depth);
}

EMajsatInstance random_emajsat(Rng& rng, std::size_t max_vars, std::size_t max_depth) {
    EMajsatInstance inst;
    inst.num_vars = rng.between(1, max_vars);
    inst.num_exists = rng.between(0, inst.num_vars);
    inst.formula = random_formula(rng, inst.num_vars, max_depth);
    return inst;
}

MaxsatInstance random_cnf(Rng& rng, std::size_t max_vars, std::size_t max_clauses) {
    MaxsatInstance inst;
    inst.num_vars = rng.between(1, max_vars);
    const std::size_t m = rng.between(1, max_clauses);
    std::vector<int> vars(inst.num_vars);
    for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<int>(i + 1);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t width = rng.between(1, std::min<std::size_t>(3, inst.num_vars));
        // Partial Fisher-Yates picks `width` distinct variables.
        for (std::size_t i = 0; i < width; ++i) std::swap(vars[i], vars[i + rng.below(vars.size() - i)]);
        std::vector<int> clause;
        for (std::size_t i = 0; i < width; ++i) clause.push_back(rng.coin() ? vars[i] : -vars[i]);
        inst.clauses.push_back(std::move(clause));
    }
    inst.k = rng.between(1, m);
    return inst;
}

Network random_network(Rng& rng, const NetworkShape& shape) {
    Network net("random");
    for (std::size_t v = 0; v < shape.num_vars; ++v) {
        const std::size_t card = rng.between(2, std::max<std::size_t>(2, shape.max_cardinality));
        std::vector<std::string> values;
        for (std::size_t i = 0; i < card; ++i) values.push_back("s" + std::to_string(i));
        net.add_variable("X" + std::to_string(v), values);

        std::vector<std::size_t> candidates(v);
        for (std::size_t i = 0; i < v; ++i) candidates[i] = i;
        const std::size_t k = rng.between(0, std::min(shape.max_parents, v));
        for (std::size_t i = 0; i < k; ++i) std::swap(candidates[i], candidates[i + rng.below(v - i)]);
        std::vector<std::size_t> parents(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(parents.begin(), parents.end());
        net.set_parents(v, parents);

        std::size_t rows = 1;
        for (std::size_t p : parents) rows *= net.cardinality(p);
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<std::uint64_t> w(card);
            std::uint64_t total = 0;
            while (total == 0) {
                total = 0;
                for (auto& x : w) total += (x = rng.below(shape.max_weight + 1));
            }
            std::vector<Rational> row;
            for (auto x : w) {
                row.push_back(ratio(static_cast<unsigned long>(x), static_cast<unsigned long>(total)));
            }
            net.set_row(v, r, row);
        }
    }
    return net;
}

} // namespace bnsens
