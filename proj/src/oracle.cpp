#include "bnsens/oracle.hpp"

#include "bnsens/error.hpp"

namespace bnsens {

namespace {

void check_free(std::size_t free, const OracleLimits& limits) {
    if (free > limits.max_free_vars)
        throw CapExceeded(std::to_string(free) + " free variables exceed the oracle cap of " +
                          std::to_string(limits.max_free_vars));
}

// Bit i of `bits` is the value of the i-th free variable.
void fill(std::vector<bool>& values, const std::vector<std::size_t>& free, std::uint64_t bits) {
    for (std::size_t i = 0; i < free.size(); ++i) values[free[i]] = (bits >> i) & 1U;
}

} // namespace

std::uint64_t count_satisfying(const BoolExpr& f, std::size_t num_vars, const TruthAssignment& fixed,
                               const OracleLimits& limits) {
    if (f.max_variable() > num_vars) throw InvalidArgument("formula mentions variables beyond num_vars");
    std::vector<bool> values(num_vars, false);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < num_vars; ++i) {
        auto it = fixed.find(i + 1);
        if (it == fixed.end())
            free.push_back(i);
        else
            values[i] = it->second;
    }
    for (const auto& [var, value] : fixed)
        if (var == 0 || var > num_vars) throw InvalidArgument("fixed variable V" + std::to_string(var) + " out of range");
    check_free(free.size(), limits);
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
        fill(values, free, bits);
        if (f.evaluate(values)) ++count;
    }
    return count;
}

EmajsatVerdict decide_emajsat(const EMajsatInstance& inst, const OracleLimits& limits) {
    validate_emajsat(inst);
    check_free(inst.num_vars, limits);
    const std::size_t k = inst.num_exists;
    const std::size_t majority = inst.num_vars - k;
    EmajsatVerdict verdict;
    bool first = true;
    // Lexicographic over V1..Vk with V1 most significant and false < true.
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        TruthAssignment fixed;
        for (std::size_t i = 0; i < k; ++i) fixed[i + 1] = (bits >> (k - 1 - i)) & 1U;
        std::uint64_t count = count_satisfying(inst.formula, inst.num_vars, fixed, limits);
        if (first || count > verdict.best_count) {
            verdict.best_count = count;
            verdict.witness = fixed;
            first = false;
        }
    }
    // count >= 2^(|V_M| - 1), i.e. 2 * count >= 2^|V_M|; for |V_M| = 0 that is count >= 1.
    verdict.satisfiable = 2 * verdict.best_count >= (std::uint64_t{1} << majority);
    return verdict;
}

MaxsatVerdict solve_maxsat(const MaxsatInstance& inst, const OracleLimits& limits) {
    validate_maxsat(inst);
    check_free(inst.num_vars, limits);
    MaxsatVerdict verdict;
    std::vector<bool> values(inst.num_vars);
    bool first = true;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inst.num_vars); ++bits) {
        for (std::size_t i = 0; i < inst.num_vars; ++i) values[i] = (bits >> (inst.num_vars - 1 - i)) & 1U;
        std::size_t sat = satisfied_clauses(inst, values);
        if (first || sat > verdict.max_satisfied) {
            verdict.max_satisfied = sat;
            verdict.witness.clear();
            for (std::size_t i = 0; i < inst.num_vars; ++i) verdict.witness[i + 1] = values[i];
            first = false;
        }
    }
    return verdict;
}

GridOracleResult grid_tune_oracle(const Network& net, const std::vector<ParameterRef>& params, const Evidence& c,
                                  const Evidence& e, const Rational& h, const OracleLimits& limits) {
    if (params.size() > limits.max_grid_params)
        throw CapExceeded(std::to_string(params.size()) + " parameters exceed the grid oracle cap of " +
                          std::to_string(limits.max_grid_params));
    if (h <= 0 || h > 1 || h.get_num() != 1) throw InvalidArgument("grid resolution must be 1/m for a positive integer m");
    const std::size_t m = h.get_den().get_ui();
    const Evidence joint = merge_evidence(c, e);

    GridOracleResult result;
    bool have = false;
    std::vector<std::size_t> digits(params.size(), 0);
    while (true) {
        ParameterAssignment x;
        std::vector<Rational> point;
        for (std::size_t i = 0; i < params.size(); ++i) {
            point.push_back(ratio(digits[i], m));
            x[params[i]] = point.back();
        }
        const Network nx = apply_assignment(net, x);
        const Rational pe = marginal(nx, e);
        if (pe == 0) {
            ++result.zero_evidence;
        } else {
            Rational value = marginal(nx, joint) / pe;
            ++result.evaluated;
            if (!have || value > result.max) {
                result.max = value;
                result.argmax = point;
            }
            if (!have || value < result.min) {
                result.min = value;
                result.argmin = point;
            }
            have = true;
        }
        std::size_t k = params.size();
        while (k > 0 && digits[k - 1] == m) digits[--k] = 0;
        if (k == 0) break;
        ++digits[k - 1];
    }
    if (!have) throw ZeroEvidence("every grid point gives the evidence probability zero");
    return result;
}

} // namespace bnsens
