#include "bnsens/instance_io.hpp"

#include "bnsens/error.hpp"

#include <set>
#include <sstream>

namespace bnsens {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<Rational> parse_bound(const std::string& text) {
    if (text == "inf") return std::nullopt;
    auto q = parse_rational(text);
    if (!q) throw InvalidArgument("malformed bound");
    return q;
}

std::string bound_string(const std::optional<Rational>& b) { return b ? to_string(*b) : "inf"; }

} // namespace

InstanceFile parse_instance(std::string_view text) {
    InstanceFile inst;
    std::set<std::string> seen;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto sp = line.find_first_of(" \t");
        const std::string key = line.substr(0, sp);
        const std::string value = sp == std::string::npos ? std::string() : trim(line.substr(sp));
        auto fail = [&](const std::string& what) -> ParseError { return ParseError(line_no, 0, what); };

        const bool repeatable = key == "param" || key == "decode";
        if (!repeatable && !seen.insert(key).second) throw fail("duplicate key '" + key + "'");

        try {
            if (key == "network") {
                if (value.empty()) throw fail("empty network path");
                inst.network = value;
            } else if (key == "variant") {
                auto v = parse_variant(value);
                if (!v) throw fail("unknown variant '" + value + "'");
                inst.variant = *v;
            } else if (key == "param") {
                if (value.empty()) throw fail("empty parameter");
                inst.params.push_back(value);
            } else if (key == "query") {
                if (value.empty()) throw fail("empty query");
                inst.query = value;
            } else if (key == "evidence") {
                inst.evidence = value;
            } else if (key == "evidence2") {
                inst.evidence2 = value;
            } else if (key == "q") {
                auto q = parse_rational(value);
                if (!q) throw fail("malformed threshold '" + value + "'");
                inst.q = *q;
            } else if (key == "r") {
                inst.r = parse_bound(value);
            } else if (key == "s") {
                inst.s = parse_bound(value);
            } else if (key == "distance") {
                auto d = parse_distance_kind(value);
                if (!d) throw fail("unknown distance '" + value + "'");
                inst.distance = *d;
            } else if (key == "decode") {
                std::istringstream in(value);
                std::string spec;
                long long var = -1;
                std::string rest;
                if (!(in >> spec >> var) || var < 0 || (in >> rest)) throw fail("expected 'decode <param> <index>'");
                inst.decode.emplace_back(spec, static_cast<std::size_t>(var));
            } else {
                throw fail("unknown key '" + key + "'");
            }
        } catch (const InvalidArgument& e) {
            throw fail(std::string(e.what()) + " in '" + key + "'");
        }
    }
    for (const char* required : {"network", "variant", "query", "q"})
        if (!seen.contains(required)) throw ParseError(line_no, 0, std::string("missing key '") + required + "'");
    return inst;
}

std::string serialize_instance(const InstanceFile& inst) {
    std::ostringstream out;
    out << "network " << inst.network << "\n";
    out << "variant " << to_string(inst.variant) << "\n";
    for (const auto& p : inst.params) out << "param " << p << "\n";
    out << "query " << inst.query << "\n";
    if (!inst.evidence.empty()) out << "evidence " << inst.evidence << "\n";
    if (!inst.evidence2.empty()) out << "evidence2 " << inst.evidence2 << "\n";
    out << "q " << to_string(inst.q) << "\n";
    out << "r " << bound_string(inst.r) << "\n";
    out << "s " << bound_string(inst.s) << "\n";
    out << "distance " << to_string(inst.distance) << "\n";
    for (const auto& [spec, var] : inst.decode) out << "decode " << spec << " " << var << "\n";
    return out.str();
}

TuningProblem to_problem(const InstanceFile& inst, const Network& net) {
    TuningProblem p;
    p.net = net;
    for (const auto& spec : inst.params) p.params.push_back(parse_parameter(net, spec));
    const Evidence query = parse_evidence(net, inst.query);
    if (query.size() != 1) throw InvalidArgument("query must name exactly one variable");
    p.output = query.begin()->first;
    p.output_value = query.begin()->second;
    p.evidence = parse_evidence(net, inst.evidence);
    p.evidence2 = parse_evidence(net, inst.evidence2);
    p.q = inst.q;
    p.r = inst.r;
    p.s = inst.s;
    p.distance = inst.distance;
    p.variant = inst.variant;
    return p;
}

InstanceFile to_instance_file(const CompiledInstance& ci, const std::string& network_path) {
    InstanceFile inst;
    inst.network = network_path;
    inst.variant = ci.variant;
    for (std::size_t i = 0; i < ci.params.size(); ++i) {
        inst.params.push_back(describe(ci.net, ci.params[i]));
        inst.decode.emplace_back(inst.params.back(), ci.decode[i]);
    }
    inst.query = describe(ci.net, Evidence{{ci.query, ci.query_value}});
    inst.evidence = describe(ci.net, ci.evidence);
    inst.evidence2 = describe(ci.net, ci.evidence2);
    inst.q = ci.q;
    return inst;
}

} // namespace bnsens
