#include "bnsens/inference.hpp"

#include "bnsens/error.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>

namespace bnsens {

namespace {

// Dense table over `scope` (ascending variable indices), last variable fastest.
struct Factor {
    std::vector<std::size_t> scope;
    std::vector<std::size_t> card;
    std::vector<Rational> table;

    std::size_t size() const {
        std::size_t n = 1;
        for (auto c : card) n *= c;
        return n;
    }
};

// Strides of `f`'s variables inside the odometer over `scope`; zero for
// variables of `scope` that `f` does not mention.
std::vector<std::size_t> strides_in(const Factor& f, const std::vector<std::size_t>& scope) {
    std::vector<std::size_t> own(f.scope.size());
    std::size_t stride = 1;
    for (std::size_t k = f.scope.size(); k-- > 0;) {
        own[k] = stride;
        stride *= f.card[k];
    }
    std::vector<std::size_t> out(scope.size(), 0);
    for (std::size_t i = 0; i < scope.size(); ++i) {
        auto it = std::lower_bound(f.scope.begin(), f.scope.end(), scope[i]);
        if (it != f.scope.end() && *it == scope[i]) out[i] = own[static_cast<std::size_t>(it - f.scope.begin())];
    }
    return out;
}

Factor multiply(const Factor& a, const Factor& b) {
    Factor out;
    std::set_union(a.scope.begin(), a.scope.end(), b.scope.begin(), b.scope.end(), std::back_inserter(out.scope));
    for (auto v : out.scope) {
        auto it = std::lower_bound(a.scope.begin(), a.scope.end(), v);
        if (it != a.scope.end() && *it == v) {
            out.card.push_back(a.card[static_cast<std::size_t>(it - a.scope.begin())]);
        } else {
            auto jt = std::lower_bound(b.scope.begin(), b.scope.end(), v);
            out.card.push_back(b.card[static_cast<std::size_t>(jt - b.scope.begin())]);
        }
    }
    const auto sa = strides_in(a, out.scope);
    const auto sb = strides_in(b, out.scope);
    const std::size_t n = out.size();
    out.table.resize(n);
    std::vector<std::size_t> digit(out.scope.size(), 0);
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out.table[i] = a.table[ia] * b.table[ib];
        for (std::size_t k = out.scope.size(); k-- > 0;) {
            if (++digit[k] < out.card[k]) {
                ia += sa[k];
                ib += sb[k];
                break;
            }
            digit[k] = 0;
            ia -= sa[k] * (out.card[k] - 1);
            ib -= sb[k] * (out.card[k] - 1);
        }
    }
    return out;
}

Factor sum_out(const Factor& f, std::size_t var) {
    auto pos = static_cast<std::size_t>(std::find(f.scope.begin(), f.scope.end(), var) - f.scope.begin());
    Factor out;
    for (std::size_t k = 0; k < f.scope.size(); ++k) {
        if (k == pos) continue;
        out.scope.push_back(f.scope[k]);
        out.card.push_back(f.card[k]);
    }
    std::size_t inner = 1;
    for (std::size_t k = pos + 1; k < f.card.size(); ++k) inner *= f.card[k];
    const std::size_t c = f.card[pos];
    const std::size_t outer = f.table.size() / (inner * c);
    out.table.assign(outer * inner, Rational(0));
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t v = 0; v < c; ++v)
            for (std::size_t i = 0; i < inner; ++i) out.table[o * inner + i] += f.table[(o * c + v) * inner + i];
    return out;
}

// CPT of `v` as a factor, with evidence variables fixed and dropped from the scope.
Factor cpt_factor(const Network& net, std::size_t v, const Evidence& ev) {
    std::vector<std::size_t> family = net.parents(v);
    family.push_back(v);
    Factor f;
    for (auto u : family)
        if (!ev.contains(u)) f.scope.push_back(u);
    std::sort(f.scope.begin(), f.scope.end());
    for (auto u : f.scope) f.card.push_back(net.cardinality(u));
    f.table.resize(f.size());

    const auto& ps = net.parents(v);
    std::vector<std::size_t> digit(f.scope.size(), 0);
    std::vector<std::size_t> parent_vals(ps.size());
    auto value_of = [&](std::size_t u) {
        if (auto it = ev.find(u); it != ev.end()) return it->second;
        auto k = static_cast<std::size_t>(std::lower_bound(f.scope.begin(), f.scope.end(), u) - f.scope.begin());
        return digit[k];
    };
    for (std::size_t i = 0; i < f.table.size(); ++i) {
        for (std::size_t k = 0; k < ps.size(); ++k) parent_vals[k] = value_of(ps[k]);
        f.table[i] = net.row(v, net.row_index(v, parent_vals))[value_of(v)];
        for (std::size_t k = f.scope.size(); k-- > 0;) {
            if (++digit[k] < f.card[k]) break;
            digit[k] = 0;
        }
    }
    return f;
}

std::vector<bool> ancestral_closure(const Network& net, const Evidence& ev) {
    std::vector<bool> keep(net.size(), false);
    std::vector<std::size_t> todo;
    for (auto [v, val] : ev) todo.push_back(v);
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        if (keep[v]) continue;
        keep[v] = true;
        for (auto p : net.parents(v)) todo.push_back(p);
    }
    return keep;
}

Rational eliminate(const Network& net, const Evidence& ev) {
    const auto keep = ancestral_closure(net, ev);
    std::vector<Factor> factors;
    std::set<std::size_t> remaining;
    for (std::size_t v = 0; v < net.size(); ++v) {
        if (!keep[v]) continue;
        factors.push_back(cpt_factor(net, v, ev));
        if (!ev.contains(v)) remaining.insert(v);
    }

    while (!remaining.empty()) {
        // Min-degree choice on the current interaction graph; ties go to the smallest index.
        std::size_t best = 0, best_degree = std::numeric_limits<std::size_t>::max();
        for (auto v : remaining) {
            std::set<std::size_t> neighbours;
            for (const auto& f : factors)
                if (std::binary_search(f.scope.begin(), f.scope.end(), v))
                    neighbours.insert(f.scope.begin(), f.scope.end());
            auto degree = neighbours.empty() ? 0 : neighbours.size() - 1;
            if (degree < best_degree) {
                best = v;
                best_degree = degree;
            }
        }
        remaining.erase(best);

        std::vector<Factor> rest;
        std::optional<Factor> product;
        for (auto& f : factors) {
            if (std::binary_search(f.scope.begin(), f.scope.end(), best))
                product = product ? multiply(*product, f) : std::move(f);
            else
                rest.push_back(std::move(f));
        }
        if (product) rest.push_back(sum_out(*product, best));
        factors = std::move(rest);
    }

    Rational result = 1;
    for (const auto& f : factors) result *= f.table.front();
    return result;
}

} // namespace

Rational joint_probability(const Network& net, std::span<const std::size_t> assignment) {
    if (assignment.size() != net.size()) throw InvalidArgument("joint assignment must assign every variable");
    for (std::size_t v = 0; v < net.size(); ++v)
        if (assignment[v] >= net.cardinality(v)) throw InvalidArgument("value index out of range");
    Rational p = 1;
    std::vector<std::size_t> parent_vals;
    for (std::size_t v = 0; v < net.size(); ++v) {
        const auto& ps = net.parents(v);
        parent_vals.resize(ps.size());
        for (std::size_t k = 0; k < ps.size(); ++k) parent_vals[k] = assignment[ps[k]];
        p *= net.row(v, net.row_index(v, parent_vals))[assignment[v]];
        if (p == 0) return p;
    }
    return p;
}

Rational marginal(const Network& net, const Evidence& partial) {
    require_valid(net);
    check_evidence(net, partial);
    if (partial.empty()) return 1;
    return eliminate(net, partial);
}

QueryResult conditional(const Network& net, const Evidence& target, const Evidence& e) {
    for (auto [v, val] : target)
        if (e.contains(v)) throw InvalidArgument("target and evidence share variable '" + net.variable(v).name + "'");
    Rational pe = marginal(net, e);
    if (pe == 0) throw ZeroEvidence("evidence " + describe(net, e) + " has probability zero");
    Rational joint = marginal(net, merge_evidence(target, e));
    return QueryResult{joint / pe, pe};
}

bool decide_inference(const Network& net, std::size_t var, std::size_t value, const Rational& q) {
    if (!in_unit_interval(q)) throw InvalidArgument("threshold outside [0,1]");
    return marginal(net, Evidence{{var, value}}) >= q;
}

std::uint64_t joint_state_count(const Network& net) {
    std::uint64_t n = 1;
    for (std::size_t v = 0; v < net.size(); ++v) {
        auto c = static_cast<std::uint64_t>(net.cardinality(v));
        if (n > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
        n *= c;
    }
    return n;
}

void for_each_joint(const Network& net, const InferenceLimits& limits,
                    const std::function<void(std::span<const std::size_t>, const Rational&)>& visit) {
    require_valid(net);
    const auto states = joint_state_count(net);
    if (states > limits.max_joint_states)
        throw StateSpaceTooLarge("joint state space of " + std::to_string(states) + " exceeds cap of " +
                                 std::to_string(limits.max_joint_states));
    JointAssignment w(net.size(), 0);
    for (std::uint64_t i = 0; i < states; ++i) {
        visit(w, joint_probability(net, w));
        for (std::size_t k = w.size(); k-- > 0;) {
            if (++w[k] < net.cardinality(k)) break;
            w[k] = 0;
        }
    }
}

std::vector<std::pair<JointAssignment, Rational>> enumerate_joint(const Network& net, const InferenceLimits& limits) {
    std::vector<std::pair<JointAssignment, Rational>> out;
    for_each_joint(net, limits, [&](std::span<const std::size_t> w, const Rational& p) {
        out.emplace_back(JointAssignment(w.begin(), w.end()), p);
    });
    return out;
}

} // namespace bnsens
