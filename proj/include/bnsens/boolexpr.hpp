#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bnsens {

/// Boolean formula over variables V1..Vn with unary NOT and binary AND/OR.
/// Nodes are stored children-first; the root is the last node.
class BoolExpr {
public:
    enum class Kind { Var, Not, And, Or };

    struct Node {
        Kind kind = Kind::Var;
        std::size_t var = 0;   ///< 1-based variable index for Var nodes
        std::size_t left = 0;  ///< child node index (Not, And, Or)
        std::size_t right = 0; ///< second child (And, Or)
        bool operator==(const Node&) const = default;
    };

    static BoolExpr variable(std::size_t index);
    static BoolExpr negation(const BoolExpr& child);
    static BoolExpr conjunction(const BoolExpr& left, const BoolExpr& right);
    static BoolExpr disjunction(const BoolExpr& left, const BoolExpr& right);

    std::size_t root() const { return nodes_.size() - 1; }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    std::span<const Node> nodes() const { return nodes_; }

    /// Largest variable index mentioned.
    std::size_t max_variable() const;
    std::size_t operator_count() const;

    /// values[i] is the truth value of V(i+1).
    bool evaluate(const std::vector<bool>& values) const;

    bool operator==(const BoolExpr&) const = default;

private:
    static BoolExpr combine(Kind kind, const BoolExpr& left, const BoolExpr* right);

    std::vector<Node> nodes_;
};

/// S-expression grammar: `V<i>` (i >= 1), `(not e)`, `(and e e)`, `(or e e)`.
/// And/or must be strictly binary. Throws ParseError with the column.
BoolExpr parse_bool_expr(std::string_view text);
std::string to_string(const BoolExpr& e);

/// CNF with signed DIMACS literals and a MAXSAT threshold k.
struct MaxsatInstance {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::size_t k = 1;

    bool operator==(const MaxsatInstance&) const = default;
};

/// Throws InvalidArgument unless 1 <= k <= m, no clause is empty, no clause
/// holds both polarities of a variable and literals stay within num_vars.
void validate_maxsat(const MaxsatInstance& inst);

/// Standard "p cnf n m" DIMACS; k defaults to m.
MaxsatInstance parse_dimacs(std::string_view text);
std::string to_dimacs(const MaxsatInstance& inst);

/// Number of clauses satisfied by values (values[i] is V(i+1)).
std::size_t satisfied_clauses(const MaxsatInstance& inst, const std::vector<bool>& values);

/// Formula with an existential prefix V1..Vk and majority suffix V(k+1)..Vn.
struct EMajsatInstance {
    BoolExpr formula;
    std::size_t num_vars = 0;
    std::size_t num_exists = 0;
};

/// Throws InvalidArgument when num_exists > num_vars or the formula mentions a variable above num_vars.
void validate_emajsat(const EMajsatInstance& inst);

} // namespace bnsens
