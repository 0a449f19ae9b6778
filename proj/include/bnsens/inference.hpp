#pragma once

#include "bnsens/network.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace bnsens {

/// Runtime limit on brute-force joint enumeration.
struct InferenceLimits {
    std::uint64_t max_joint_states = std::uint64_t{1} << 20;
};

/// Value index for every variable of a network, in variable order.
using JointAssignment = std::vector<std::size_t>;

struct QueryResult {
    Rational value;
    Rational normalizer; ///< Pr(e)
};

/// Product of the CPT entries selected by a total assignment.
Rational joint_probability(const Network& net, std::span<const std::size_t> assignment);

/// Pr(partial), summed over all total extensions by variable elimination.
/// Variables that are not ancestors of the evidence are pruned first; the
/// remaining ones are eliminated in min-degree order on the interaction graph.
Rational marginal(const Network& net, const Evidence& partial);

/// Pr(target | e). Throws ZeroEvidence when Pr(e) = 0 and InvalidArgument
/// when target and e share a variable.
QueryResult conditional(const Network& net, const Evidence& target, const Evidence& e);

/// Pr(var = value) >= q, compared exactly.
bool decide_inference(const Network& net, std::size_t var, std::size_t value, const Rational& q);

/// Number of joint states, saturating at UINT64_MAX.
std::uint64_t joint_state_count(const Network& net);

/// Visits every total assignment in odometer order (last variable fastest).
/// Throws StateSpaceTooLarge above the cap.
void for_each_joint(const Network& net, const InferenceLimits& limits,
                    const std::function<void(std::span<const std::size_t>, const Rational&)>& visit);

std::vector<std::pair<JointAssignment, Rational>> enumerate_joint(const Network& net, const InferenceLimits& limits = {});

} // namespace bnsens
