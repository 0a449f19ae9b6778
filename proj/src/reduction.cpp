#include "bnsens/reduction.hpp"

#include "bnsens/error.hpp"

#include <algorithm>

namespace bnsens {

namespace {

const std::vector<std::string> kTruth{"true", "false"};
constexpr std::size_t kTrue = 0;
constexpr std::size_t kFalse = 1;

std::vector<Rational> uniform(std::size_t n) { return std::vector<Rational>(n, ratio(1, n)); }

std::vector<Rational> point_mass(std::size_t n, std::size_t at) {
    std::vector<Rational> row(n, Rational(0));
    row[at] = 1;
    return row;
}

std::size_t add_root(Network& net, const std::string& name) {
    std::size_t v = net.add_variable(name, kTruth);
    net.set_row(v, 0, uniform(2));
    return v;
}

// Deterministic node whose CPT is the truth table of `fn` over the parents.
template <class Fn>
std::size_t add_gate(Network& net, const std::string& name, std::vector<std::size_t> parents, Fn fn) {
    std::size_t v = net.add_variable(name, kTruth);
    net.set_parents(v, parents);
    std::size_t rows = 1;
    for (std::size_t p : parents) rows *= net.cardinality(p);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<std::size_t> pv = net.row_parent_values(v, r);
        net.set_row(v, r, point_mass(2, fn(pv) ? kTrue : kFalse));
    }
    return v;
}

std::string gate_name(BoolExpr::Kind kind, std::size_t& counter) {
    const char* prefix = kind == BoolExpr::Kind::Not ? "NOT" : kind == BoolExpr::Kind::And ? "AND" : "OR";
    return prefix + std::to_string(++counter);
}

ParameterRef prior_true(std::size_t v) { return ParameterRef{v, 0, kTrue}; }

} // namespace

TuningProblem CompiledInstance::problem() const {
    TuningProblem p;
    p.net = net;
    p.params = params;
    p.output = query;
    p.output_value = query_value;
    p.evidence = evidence;
    p.evidence2 = evidence2;
    p.q = q;
    p.variant = variant;
    return p;
}

CompiledInstance compile_emajsat(const EMajsatInstance& inst, Variant variant) {
    validate_emajsat(inst);
    const BoolExpr& f = inst.formula;
    CompiledInstance ci;
    ci.variant = variant;
    ci.q = Rational(1, 2);
    ci.net = Network("emajsat");
    Network& net = ci.net;

    std::vector<std::size_t> roots;
    for (std::size_t i = 1; i <= inst.num_vars; ++i) roots.push_back(add_root(net, "V" + std::to_string(i)));

    // Network node realizing each formula node. A gate whose two operands are
    // the same network node gets that node once as its only parent.
    std::vector<std::size_t> realized(f.nodes().size());
    std::size_t counter = 0;
    for (std::size_t i = 0; i < f.nodes().size(); ++i) {
        const auto& n = f.node(i);
        if (n.kind == BoolExpr::Kind::Var) {
            realized[i] = roots[n.var - 1];
            continue;
        }
        const std::string name = i == f.root() ? std::string("Vphi") : gate_name(n.kind, counter);
        if (n.kind == BoolExpr::Kind::Not) {
            realized[i] = add_gate(net, name, {realized[n.left]},
                                   [](const std::vector<std::size_t>& pv) { return pv[0] != kTrue; });
            continue;
        }
        const std::size_t a = realized[n.left], b = realized[n.right];
        const bool conj = n.kind == BoolExpr::Kind::And;
        std::vector<std::size_t> parents{a};
        if (b != a) parents.push_back(b);
        realized[i] = add_gate(net, name, parents, [conj](const std::vector<std::size_t>& pv) {
            const bool x = pv[0] == kTrue, y = pv.back() == kTrue;
            return conj ? (x && y) : (x || y);
        });
    }
    const std::size_t phi = realized[f.root()];

    for (std::size_t i = 0; i < inst.num_exists; ++i) {
        ci.params.push_back(prior_true(roots[i]));
        ci.decode.push_back(i + 1);
    }

    const auto and_gate = [](const std::vector<std::size_t>& pv) { return pv[0] == kTrue && pv[1] == kTrue; };
    switch (variant) {
    case Variant::Tuning:
        ci.query = phi;
        break;
    case Variant::EvidenceRange:
    case Variant::EvidenceMode: {
        const std::size_t e = add_root(net, "E");
        ci.query = add_gate(net, "C", {e, phi}, and_gate);
        ci.evidence = {{e, kTrue}};
        ci.evidence2 = {{e, kFalse}};
        break;
    }
    default: {
        const std::size_t s = add_root(net, "S");
        ci.query = add_gate(net, "C", {s, phi}, and_gate);
        ci.params.push_back(prior_true(s));
        ci.decode.push_back(0);
        break;
    }
    }
    ci.query_value = kTrue;
    require_valid(net);
    return ci;
}

CompiledInstance compile_maxsat(const MaxsatInstance& inst) {
    validate_maxsat(inst);
    const std::size_t n = inst.num_vars;
    const std::size_t m = inst.clauses.size();
    CompiledInstance ci;
    ci.variant = Variant::Range;
    ci.q = ratio(inst.k, m);
    ci.net = Network("maxsat");
    Network& net = ci.net;

    // Assigning `value` to V(var) satisfies clause j (0-based).
    auto satisfies = [&](std::size_t var, bool value, std::size_t j) {
        const int lit = static_cast<int>(var) * (value ? 1 : -1);
        return std::find(inst.clauses[j].begin(), inst.clauses[j].end(), lit) != inst.clauses[j].end();
    };

    std::vector<std::size_t> roots;
    for (std::size_t i = 1; i <= n; ++i) roots.push_back(add_root(net, "V" + std::to_string(i)));

    // Every chain node, S0 included, ranges over c0..cm. S0 puts no mass on c0,
    // which keeps it uniform over the clauses and well formed when m = 1.
    std::vector<std::string> chain_values;
    for (std::size_t j = 0; j <= m; ++j) chain_values.push_back("c" + std::to_string(j));

    std::size_t prev = net.add_variable("S0", chain_values);
    std::vector<Rational> selector = uniform(m);
    selector.insert(selector.begin(), Rational(0));
    net.set_row(prev, 0, selector);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t s = net.add_variable("S" + std::to_string(i), chain_values);
        net.set_parents(s, {roots[i - 1], prev});
        for (std::size_t r = 0; r < net.row_count(s); ++r) {
            const auto pv = net.row_parent_values(s, r);
            const bool value = pv[0] == kTrue;
            const std::size_t from = pv[1];
            std::size_t to = from;
            if (from != 0 && satisfies(i, value, from - 1)) to = 0;
            net.set_row(s, r, point_mass(m + 1, to));
        }
        prev = s;
    }
    const std::size_t vs = add_root(net, "VS");
    const std::size_t c = add_gate(net, "C", {vs, prev},
                                   [](const std::vector<std::size_t>& pv) { return pv[0] == kTrue && pv[1] == 0; });

    for (std::size_t i = 0; i < n; ++i) {
        ci.params.push_back(prior_true(roots[i]));
        ci.decode.push_back(i + 1);
    }
    ci.params.push_back(prior_true(vs));
    ci.decode.push_back(0);
    ci.query = c;
    ci.query_value = kTrue;
    require_valid(net);
    return ci;
}

std::map<std::size_t, bool> decode_witness(const CompiledInstance& ci, const ParameterAssignment& x) {
    std::map<std::size_t, bool> values;
    for (std::size_t i = 0; i < ci.params.size(); ++i) {
        auto it = x.find(ci.params[i]);
        if (it == x.end())
            throw InvalidArgument("witness does not set " + describe(ci.net, ci.params[i]));
        if (it->second != 0 && it->second != 1)
            throw InvalidArgument("parameter " + describe(ci.net, ci.params[i]) + " = " + to_string(it->second) +
                                  " does not encode a truth value");
        if (ci.decode[i] != 0) values[ci.decode[i]] = it->second == 1;
    }
    return values;
}

ParameterAssignment encode_assignment(const CompiledInstance& ci, const std::map<std::size_t, bool>& values,
                                      bool selector) {
    ParameterAssignment x;
    for (std::size_t i = 0; i < ci.params.size(); ++i) {
        bool bit = selector;
        if (ci.decode[i] != 0) {
            auto it = values.find(ci.decode[i]);
            bit = it != values.end() && it->second;
        }
        x[ci.params[i]] = bit ? 1 : 0;
    }
    return x;
}

} // namespace bnsens
