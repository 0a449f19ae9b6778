#pragma once

#include "bnsens/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bnsens {

/// A discrete variable. Value order is canonical: it fixes row layout in
/// CPTs, serialization order and mode tie-breaking.
struct Variable {
    std::string name;
    std::vector<std::string> values;

    std::optional<std::size_t> value_index(std::string_view value) const;
    std::size_t cardinality() const { return values.size(); }

    bool operator==(const Variable&) const = default;
};

/// Addresses a single CPT entry Pr(variable = value | row's parent configuration).
struct ParameterRef {
    std::size_t variable = 0;
    std::size_t row = 0;
    std::size_t value = 0;

    auto operator<=>(const ParameterRef&) const = default;
};

/// Joint value for a set of parameters. At most one entry per (variable, row).
using ParameterAssignment = std::map<ParameterRef, Rational>;

/// Observed values, variable index -> value index.
using Evidence = std::map<std::size_t, std::size_t>;

/// Discrete Bayesian network with exact rational CPTs.
///
/// The class is a plain value: it stores whatever it is given, so a
/// partially specified or inconsistent network can be represented and then
/// diagnosed by validate_network(). Rows of a variable are laid out
/// row-major over the parent value indices, the last parent varying fastest.
/// A row that was never set is empty.
class Network {
public:
    Network() = default;
    explicit Network(std::string name) : name_(std::move(name)) {}

    /// Adds a variable with no parents and one (empty) row. Names must be
    /// unique identifiers; a variable needs at least two distinct values.
    std::size_t add_variable(std::string name, std::vector<std::string> values);

    /// Replaces the parent list of `var`, discarding its rows.
    void set_parents(std::size_t var, std::vector<std::size_t> parents);

    void set_row(std::size_t var, std::size_t row, std::vector<Rational> entries);
    void set_entry(std::size_t var, std::size_t row, std::size_t value, Rational p);

    const std::string& name() const { return name_; }
    std::size_t size() const { return vars_.size(); }
    const Variable& variable(std::size_t v) const { return vars_.at(v); }
    std::span<const Variable> variables() const { return vars_; }
    const std::vector<std::size_t>& parents(std::size_t v) const { return parents_.at(v); }
    std::size_t cardinality(std::size_t v) const { return vars_.at(v).values.size(); }

    std::size_t row_count(std::size_t v) const { return cpts_.at(v).size(); }
    const std::vector<Rational>& row(std::size_t v, std::size_t r) const { return cpts_.at(v).at(r); }
    const Rational& entry(const ParameterRef& p) const { return cpts_.at(p.variable).at(p.row).at(p.value); }

    /// Row index for a full parent configuration given as value indices in parent order.
    std::size_t row_index(std::size_t v, std::span<const std::size_t> parent_values) const;
    /// Inverse of row_index.
    std::vector<std::size_t> row_parent_values(std::size_t v, std::size_t row) const;

    std::optional<std::size_t> find_variable(std::string_view name) const;
    /// Like find_variable but throws InvalidArgument for unknown names.
    std::size_t index_of(std::string_view name) const;

    std::vector<std::size_t> children(std::size_t v) const;
    std::vector<std::pair<std::size_t, std::size_t>> arcs() const;

    bool operator==(const Network&) const = default;

private:
    void reset_rows(std::size_t v);

    std::string name_;
    std::vector<Variable> vars_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::vector<Rational>>> cpts_;
};

/// Every violated invariant of a network, in a stable order.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate_network(const Network& net);

/// Throws ValidationError carrying the report summary when the network is invalid.
void require_valid(const Network& net);

/// Variables ordered so that parents precede children. Throws ValidationError on a cycle.
std::vector<std::size_t> topological_order(const Network& net);

/// True iff the underlying undirected graph of a valid network is acyclic.
bool is_polytree(const Network& net);

struct CovariationResult {
    Network network;
    /// Set when the varied entry was 1 in a row with three or more values and
    /// the freed mass had to be shared uniformly among the siblings.
    bool redistributed_uniformly = false;
};

/// Sets one CPT entry to `x` and rescales its siblings so their mutual
/// proportions are kept: new(b_j) = old(b_j) * (1 - x) / (1 - old(b_i)).
CovariationResult set_parameter_with_covariation(const Network& net, const ParameterRef& p, const Rational& x);

/// Applies every parameter of `a` with covariation. Throws InvalidArgument if
/// two parameters address the same conditional distribution.
Network apply_assignment(const Network& net, const ParameterAssignment& a);

/// Resolves a parameter by names. `parent_config` must assign every parent.
ParameterRef resolve_parameter(const Network& net, std::string_view variable, std::string_view value,
                               const std::map<std::string, std::string, std::less<>>& parent_config = {});

/// Parses "B=b" or "B=b|A=a,C=c".
ParameterRef parse_parameter(const Network& net, std::string_view spec);

/// Renders a parameter as "B=b|A=a,C=c" (or "B=b" for root variables).
std::string describe(const Network& net, const ParameterRef& p);

/// Parses "A=a,B=b"; an empty string gives empty evidence.
Evidence parse_evidence(const Network& net, std::string_view spec);
std::string describe(const Network& net, const Evidence& e);

/// Union of two evidence sets. Throws InvalidArgument when they disagree on a variable.
Evidence merge_evidence(const Evidence& a, const Evidence& b);

/// Throws InvalidArgument unless each variable/value index exists.
void check_evidence(const Network& net, const Evidence& e);

} // namespace bnsens
