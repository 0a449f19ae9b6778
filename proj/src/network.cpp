#include "bnsens/network.hpp"

#include "bnsens/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace bnsens {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::pair<std::string_view, std::string_view> split_binding(std::string_view item) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("expected NAME=VALUE, got '" + std::string(item) + "'");
    return {trim(item.substr(0, eq)), trim(item.substr(eq + 1))};
}

} // namespace

std::optional<std::size_t> Variable::value_index(std::string_view value) const {
    auto it = std::find(values.begin(), values.end(), value);
    if (it == values.end()) return std::nullopt;
    return static_cast<std::size_t>(it - values.begin());
}

std::size_t Network::add_variable(std::string name, std::vector<std::string> values) {
    if (!is_identifier(name)) throw InvalidArgument("invalid variable name '" + name + "'");
    if (find_variable(name)) throw InvalidArgument("duplicate variable '" + name + "'");
    if (values.size() < 2) throw InvalidArgument("variable '" + name + "' needs at least two values");
    std::set<std::string_view> seen;
    for (const auto& v : values) {
        if (!is_identifier(v)) throw InvalidArgument("invalid value name '" + v + "' for variable '" + name + "'");
        if (!seen.insert(v).second) throw InvalidArgument("duplicate value '" + v + "' for variable '" + name + "'");
    }
    vars_.push_back(Variable{std::move(name), std::move(values)});
    parents_.emplace_back();
    cpts_.emplace_back(1);
    return vars_.size() - 1;
}

void Network::set_parents(std::size_t var, std::vector<std::size_t> parents) {
    if (var >= vars_.size()) throw InvalidArgument("variable index out of range");
    std::set<std::size_t> seen;
    for (auto p : parents) {
        if (p >= vars_.size()) throw InvalidArgument("parent index out of range");
        if (!seen.insert(p).second)
            throw InvalidArgument("duplicate parent '" + vars_[p].name + "' of '" + vars_[var].name + "'");
    }
    parents_[var] = std::move(parents);
    reset_rows(var);
}

void Network::reset_rows(std::size_t v) {
    std::size_t rows = 1;
    for (auto p : parents_[v]) rows *= vars_[p].values.size();
    cpts_[v].assign(rows, {});
}

void Network::set_row(std::size_t var, std::size_t row, std::vector<Rational> entries) {
    cpts_.at(var).at(row) = std::move(entries);
}

void Network::set_entry(std::size_t var, std::size_t row, std::size_t value, Rational p) {
    cpts_.at(var).at(row).at(value) = std::move(p);
}

std::size_t Network::row_index(std::size_t v, std::span<const std::size_t> parent_values) const {
    const auto& ps = parents_.at(v);
    if (parent_values.size() != ps.size()) throw InvalidArgument("parent configuration has wrong arity");
    std::size_t row = 0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        auto card = vars_[ps[k]].values.size();
        if (parent_values[k] >= card) throw InvalidArgument("parent value index out of range");
        row = row * card + parent_values[k];
    }
    return row;
}

std::vector<std::size_t> Network::row_parent_values(std::size_t v, std::size_t row) const {
    const auto& ps = parents_.at(v);
    std::vector<std::size_t> out(ps.size());
    for (std::size_t k = ps.size(); k-- > 0;) {
        auto card = vars_[ps[k]].values.size();
        out[k] = row % card;
        row /= card;
    }
    return out;
}

std::optional<std::size_t> Network::find_variable(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Network::index_of(std::string_view name) const {
    if (auto i = find_variable(name)) return *i;
    throw InvalidArgument("unknown variable '" + std::string(name) + "'");
}

std::vector<std::size_t> Network::children(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < parents_.size(); ++c)
        if (std::find(parents_[c].begin(), parents_[c].end(), v) != parents_[c].end()) out.push_back(c);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Network::arcs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t c = 0; c < parents_.size(); ++c)
        for (auto p : parents_[c]) out.emplace_back(p, c);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v;
    }
    return out;
}

namespace {

// Returns the variables on one directed cycle, in arc order, or empty.
std::vector<std::size_t> find_cycle(const Network& net) {
    const std::size_t n = net.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (auto [from, to] : net.arcs()) succ[from].push_back(to);

    enum class Mark { white, grey, black };
    std::vector<Mark> mark(n, Mark::white);
    std::vector<std::size_t> stack;

    // Iterative DFS keeping the grey path on `stack`.
    for (std::size_t root = 0; root < n; ++root) {
        if (mark[root] != Mark::white) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        mark[root] = Mark::grey;
        stack.push_back(root);
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < succ[v].size()) {
                auto w = succ[v][next++];
                if (mark[w] == Mark::grey) {
                    auto it = std::find(stack.begin(), stack.end(), w);
                    return {it, stack.end()};
                }
                if (mark[w] == Mark::white) {
                    mark[w] = Mark::grey;
                    stack.push_back(w);
                    frames.emplace_back(w, 0);
                }
            } else {
                mark[v] = Mark::black;
                stack.pop_back();
                frames.pop_back();
            }
        }
    }
    return {};
}

std::string row_label(const Network& net, std::size_t v, std::size_t r) {
    std::string out = "cpt " + net.variable(v).name;
    const auto& ps = net.parents(v);
    if (ps.empty()) return out;
    auto vals = net.row_parent_values(v, r);
    out += " |";
    for (std::size_t k = 0; k < ps.size(); ++k)
        out += (k ? "," : " ") + net.variable(ps[k]).name + "=" + net.variable(ps[k]).values[vals[k]];
    return out;
}

} // namespace

ValidationReport validate_network(const Network& net) {
    ValidationReport report;
    if (auto cycle = find_cycle(net); !cycle.empty()) {
        std::string names;
        for (auto v : cycle) names += (names.empty() ? "" : ",") + net.variable(v).name;
        report.violations.push_back("cycle " + names);
    }
    for (std::size_t v = 0; v < net.size(); ++v) {
        const auto card = net.cardinality(v);
        for (std::size_t r = 0; r < net.row_count(v); ++r) {
            const auto& row = net.row(v, r);
            if (row.empty()) {
                report.violations.push_back(row_label(net, v, r) + ": missing row");
                continue;
            }
            if (row.size() != card) {
                report.violations.push_back(row_label(net, v, r) + ": row has " + std::to_string(row.size()) +
                                            " entries, expected " + std::to_string(card));
                continue;
            }
            Rational sum = 0;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (!in_unit_interval(row[i]))
                    report.violations.push_back(row_label(net, v, r) + ": entry " + net.variable(v).values[i] +
                                                " = " + to_string(row[i]) + " out of [0,1]");
                sum += row[i];
            }
            if (sum != 1) report.violations.push_back(row_label(net, v, r) + ": row sums to " + to_string(sum));
        }
    }
    return report;
}

void require_valid(const Network& net) {
    auto report = validate_network(net);
    if (!report.ok()) throw ValidationError("invalid network: " + report.summary());
}

std::vector<std::size_t> topological_order(const Network& net) {
    const std::size_t n = net.size();
    std::vector<std::size_t> indegree(n);
    std::vector<std::vector<std::size_t>> succ(n);
    for (auto [from, to] : net.arcs()) {
        succ[from].push_back(to);
        ++indegree[to];
    }
    // Smallest ready index first keeps the order deterministic.
    std::set<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.insert(v);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (auto w : succ[v])
            if (--indegree[w] == 0) ready.insert(w);
    }
    if (order.size() != n) throw ValidationError("network contains a cycle");
    return order;
}

bool is_polytree(const Network& net) {
    require_valid(net);
    std::vector<std::size_t> parent(net.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [from, to] : net.arcs()) {
        auto a = find(from), b = find(to);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

// ---------------------------------------------------------------------------

CovariationResult set_parameter_with_covariation(const Network& net, const ParameterRef& p, const Rational& x) {
    if (!in_unit_interval(x)) throw InvalidArgument("parameter value " + to_string(x) + " outside [0,1]");
    const auto& old_row = net.row(p.variable, p.row);
    if (p.value >= old_row.size()) throw InvalidArgument("parameter value index out of range");
    const Rational old = old_row[p.value];

    CovariationResult result{net, false};
    if (x == old) return result;

    std::vector<Rational> row = old_row;
    row[p.value] = x;
    if (old == 1) {
        const auto siblings = row.size() - 1;
        Rational share = (1 - x) / Rational(static_cast<unsigned long>(siblings));
        for (std::size_t j = 0; j < row.size(); ++j)
            if (j != p.value) row[j] = share;
        result.redistributed_uniformly = siblings >= 2;
    } else {
        Rational scale = (1 - x) / (1 - old);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (j != p.value) row[j] *= scale;
    }
    result.network.set_row(p.variable, p.row, std::move(row));
    return result;
}

Network apply_assignment(const Network& net, const ParameterAssignment& a) {
    std::set<std::pair<std::size_t, std::size_t>> distributions;
    for (const auto& [ref, value] : a) {
        if (!distributions.insert({ref.variable, ref.row}).second)
            throw InvalidArgument("two parameters address the distribution " + describe(net, ref));
    }
    Network out = net;
    for (const auto& [ref, value] : a) out = set_parameter_with_covariation(out, ref, value).network;
    return out;
}

ParameterRef resolve_parameter(const Network& net, std::string_view variable, std::string_view value,
                               const std::map<std::string, std::string, std::less<>>& parent_config) {
    const auto v = net.index_of(variable);
    const auto& var = net.variable(v);
    auto vi = var.value_index(value);
    if (!vi) throw InvalidArgument("unknown value '" + std::string(value) + "' of variable '" + var.name + "'");
    const auto& ps = net.parents(v);
    if (parent_config.size() != ps.size())
        throw InvalidArgument("parameter of '" + var.name + "' needs a value for each of its " +
                              std::to_string(ps.size()) + " parents");
    std::vector<std::size_t> vals;
    for (auto p : ps) {
        const auto& pv = net.variable(p);
        auto it = parent_config.find(pv.name);
        if (it == parent_config.end()) throw InvalidArgument("missing value for parent '" + pv.name + "'");
        auto idx = pv.value_index(it->second);
        if (!idx) throw InvalidArgument("unknown value '" + it->second + "' of parent '" + pv.name + "'");
        vals.push_back(*idx);
    }
    return ParameterRef{v, net.row_index(v, vals), *vi};
}

ParameterRef parse_parameter(const Network& net, std::string_view spec) {
    auto bar = spec.find('|');
    auto [var, val] = split_binding(trim(spec.substr(0, bar)));
    std::map<std::string, std::string, std::less<>> config;
    if (bar != std::string_view::npos) {
        for (auto item : split(spec.substr(bar + 1), ',')) {
            auto [pn, pv] = split_binding(item);
            if (!config.emplace(std::string(pn), std::string(pv)).second)
                throw InvalidArgument("parent '" + std::string(pn) + "' given twice");
        }
    }
    return resolve_parameter(net, var, val, config);
}

std::string describe(const Network& net, const ParameterRef& p) {
    const auto& var = net.variable(p.variable);
    std::string out = var.name + "=" + var.values.at(p.value);
    const auto& ps = net.parents(p.variable);
    if (ps.empty()) return out;
    auto vals = net.row_parent_values(p.variable, p.row);
    for (std::size_t k = 0; k < ps.size(); ++k)
        out += (k ? "," : "|") + net.variable(ps[k]).name + "=" + net.variable(ps[k]).values[vals[k]];
    return out;
}

Evidence parse_evidence(const Network& net, std::string_view spec) {
    Evidence e;
    if (trim(spec).empty()) return e;
    for (auto item : split(spec, ',')) {
        auto [name, value] = split_binding(item);
        auto v = net.index_of(name);
        auto vi = net.variable(v).value_index(value);
        if (!vi) throw InvalidArgument("unknown value '" + std::string(value) + "' of variable '" + std::string(name) + "'");
        if (!e.emplace(v, *vi).second) throw InvalidArgument("variable '" + std::string(name) + "' appears twice");
    }
    return e;
}

std::string describe(const Network& net, const Evidence& e) {
    std::string out;
    for (auto [v, val] : e) {
        if (!out.empty()) out += ",";
        out += net.variable(v).name + "=" + net.variable(v).values.at(val);
    }
    return out;
}

Evidence merge_evidence(const Evidence& a, const Evidence& b) {
    Evidence out = a;
    for (auto [v, val] : b) {
        auto [it, inserted] = out.emplace(v, val);
        if (!inserted && it->second != val) throw InvalidArgument("conflicting evidence on one variable");
    }
    return out;
}

void check_evidence(const Network& net, const Evidence& e) {
    for (auto [v, val] : e) {
        if (v >= net.size()) throw InvalidArgument("evidence variable index out of range");
        if (val >= net.cardinality(v))
            throw InvalidArgument("evidence value index out of range for '" + net.variable(v).name + "'");
    }
}

} // namespace bnsens
