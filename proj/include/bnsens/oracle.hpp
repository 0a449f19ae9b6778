#pragma once

#include "bnsens/boolexpr.hpp"
#include "bnsens/inference.hpp"
#include "bnsens/network.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace bnsens {

/// Formula variable (1-based) -> truth value.
using TruthAssignment = std::map<std::size_t, bool>;

struct OracleLimits {
    std::size_t max_free_vars = 24;
    std::size_t max_grid_params = 4;
};

/// Extensions of `fixed` to V1..V(num_vars) that satisfy f.
std::uint64_t count_satisfying(const BoolExpr& f, std::size_t num_vars, const TruthAssignment& fixed = {},
                               const OracleLimits& limits = {});

struct EmajsatVerdict {
    bool satisfiable = false;
    TruthAssignment witness;       ///< a maximizing V_E assignment (lexicographically first)
    std::uint64_t best_count = 0;  ///< satisfying V_M extensions under the witness
};

EmajsatVerdict decide_emajsat(const EMajsatInstance& inst, const OracleLimits& limits = {});

struct MaxsatVerdict {
    std::size_t max_satisfied = 0;
    TruthAssignment witness;
};

MaxsatVerdict solve_maxsat(const MaxsatInstance& inst, const OracleLimits& limits = {});

struct GridOracleResult {
    Rational max, min;
    std::vector<Rational> argmax, argmin; ///< coordinates in parameter order
    std::size_t evaluated = 0;
    std::size_t zero_evidence = 0;
};

/// Extremes of Pr_x(c|e) over {0, h, ..., 1}^|params| using plain inference.
/// h must be 1/m for a positive integer m. Throws CapExceeded above the
/// parameter cap and ZeroEvidence when every grid point has Pr_x(e) = 0.
GridOracleResult grid_tune_oracle(const Network& net, const std::vector<ParameterRef>& params, const Evidence& c,
                                  const Evidence& e, const Rational& h, const OracleLimits& limits = {});

} // namespace bnsens
