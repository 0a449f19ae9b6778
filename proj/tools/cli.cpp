#include "cli.hpp"

#include "bnsens/distance.hpp"
#include "bnsens/error.hpp"
#include "bnsens/generators.hpp"
#include "bnsens/inference.hpp"
#include "bnsens/instance_io.hpp"
#include "bnsens/network_io.hpp"
#include "bnsens/oracle.hpp"
#include "bnsens/reduction.hpp"
#include "bnsens/sensitivity.hpp"
#include "bnsens/tuning.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bnsens::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InvalidArgument("cannot write '" + path + "'");
}

Rational require_rational(const std::string& text, const std::string& what) {
    auto q = parse_rational(text);
    if (!q) throw InvalidArgument("malformed " + what + " '" + text + "'");
    return *q;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(require_rational(item, "probability"));
    return out;
}

TuningConfig tuning_config(const RunConfig& rc) {
    TuningConfig c;
    c.vertex_cap = rc.vertex_cap;
    c.grid_step = require_rational(rc.grid, "grid step");
    c.distance.precision_bits = rc.precision;
    c.distance.max_precision_bits = std::max<mpfr_prec_t>(8192, rc.precision);
    c.distance.limits.max_joint_states = rc.max_states;
    return c;
}

DistanceConfig distance_config(const RunConfig& rc) { return tuning_config(rc).distance; }

std::string describe_assignment(const Network& net, const ParameterAssignment& x) {
    std::string out;
    for (const auto& [p, v] : x) {
        if (!out.empty()) out += "; ";
        out += describe(net, p) + " := " + to_string(v);
    }
    return out.empty() ? "(no parameters)" : out;
}

Json assignment_json(const Network& net, const ParameterAssignment& x) {
    Json j = Json::object();
    for (const auto& [p, v] : x) j[describe(net, p)] = to_string(v);
    return j;
}

std::string truth_string(const TruthAssignment& t) {
    std::string out;
    for (const auto& [var, value] : t) {
        if (!out.empty()) out += ",";
        out += "V" + std::to_string(var) + "=" + (value ? "T" : "F");
    }
    return out;
}

void emit(std::ostream& out, const RunConfig& rc, const Json& record, const std::string& human) {
    if (rc.format == Format::Structured)
        out << record.dump() << "\n";
    else
        out << human;
}

// ---------------------------------------------------------------------------
// infer

struct InferArgs {
    std::string network, query, evidence, ge;
};

int cmd_infer(const InferArgs& a, const RunConfig& rc, std::ostream& out) {
    const Network net = load_network(a.network);
    const Evidence target = parse_evidence(net, a.query);
    const Evidence e = parse_evidence(net, a.evidence);
    if (target.empty()) throw InvalidArgument("empty query");
    const QueryResult r = conditional(net, target, e);
    Json j{{"command", "infer"}, {"query", a.query}, {"evidence", a.evidence}, {"value", to_string(r.value)}};
    std::string label = "Pr(" + a.query + (a.evidence.empty() ? "" : " | " + a.evidence) + ")";
    std::string human = label + " = " + to_string(r.value) + "  (~" + to_decimal(r.value, 6) + ")\n";
    if (!a.ge.empty()) {
        const Rational q = require_rational(a.ge, "threshold");
        const bool yes = r.value >= q;
        j["ge"] = to_string(q);
        j["decision"] = yes ? "yes" : "no";
        human += label + " >= " + to_string(q) + ": " + (yes ? "yes" : "no") + "\n";
    }
    emit(out, rc, j, human);
    return kOk;
}

// ---------------------------------------------------------------------------
// sensfn

struct SensArgs {
    std::string network, query, evidence;
    std::vector<std::string> params;
};

std::string subset_label(std::size_t mask, std::size_t n) {
    std::string s = "[";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(mask >> i & 1)) continue;
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "]";
}

int cmd_sensfn(const SensArgs& a, const RunConfig& rc, std::ostream& out) {
    const Network net = load_network(a.network);
    const Evidence c = parse_evidence(net, a.query);
    const Evidence e = parse_evidence(net, a.evidence);
    std::vector<ParameterRef> params;
    for (const auto& spec : a.params) params.push_back(parse_parameter(net, spec));
    const MultilinearQuotient f = fit_n_way(net, params, c, e);

    std::vector<std::pair<std::string, Rational>> coeffs;
    if (params.size() == 1) {
        const SensFn1 g = to_one_way(f);
        coeffs = {{"c1", g.c1}, {"c2", g.c2}, {"c3", g.c3}, {"c4", g.c4}};
    } else if (params.size() == 2) {
        const SensFn2 g = to_two_way(f);
        for (std::size_t i = 0; i < 8; ++i) coeffs.emplace_back("c" + std::to_string(i + 1), g.c[i]);
    } else {
        const std::size_t n = params.size();
        for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) coeffs.emplace_back("n" + subset_label(s, n), f.numerator.coefficient(s));
        for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) coeffs.emplace_back("d" + subset_label(s, n), f.denominator.coefficient(s));
    }

    Json j{{"command", "sensfn"}, {"query", a.query}, {"evidence", a.evidence}, {"params", a.params}};
    Json cj = Json::object();
    std::string human;
    for (const auto& [name, v] : coeffs) {
        cj[name] = to_string(v);
        if (!human.empty()) human += " ";
        human += name + "=" + to_string(v);
    }
    j["coefficients"] = cj;
    emit(out, rc, j, human + "\n");
    return kOk;
}

// ---------------------------------------------------------------------------
// distance

struct DistanceArgs {
    std::string network, x, y, kind = "all";
    std::vector<std::string> params;
};

int cmd_distance(const DistanceArgs& a, const RunConfig& rc, std::ostream& out) {
    const Network net = load_network(a.network);
    std::vector<ParameterRef> params;
    for (const auto& spec : a.params) params.push_back(parse_parameter(net, spec));
    const auto xs = parse_rational_list(a.x), ys = parse_rational_list(a.y);
    if (xs.size() != params.size() || ys.size() != params.size())
        throw InvalidArgument("--x and --y need one value per --param");
    ParameterAssignment x, y;
    for (std::size_t i = 0; i < params.size(); ++i) {
        x[params[i]] = xs[i];
        y[params[i]] = ys[i];
    }
    if (x.size() != params.size()) throw InvalidArgument("duplicate parameter");
    const DistanceConfig dc = distance_config(rc);
    const int digits = std::max(6, static_cast<int>(rc.precision * 30 / 100));
    const bool all = a.kind == "all";
    if (!all && !parse_distance_kind(a.kind)) throw InvalidArgument("unknown distance kind '" + a.kind + "'");

    Json j{{"command", "distance"}, {"params", a.params}, {"x", a.x}, {"y", a.y}};
    std::string human;
    if (all || a.kind == "euclidean") {
        const EuclideanDistance d = d_euclidean(x, y, dc);
        j["euclidean"] = {{"squared", to_string(d.squared)},
                          {"lower", d.lower.to_string(digits)},
                          {"upper", d.upper.to_string(digits)}};
        human += "D_E  = sqrt(" + to_string(d.squared) + ") in [" + d.lower.to_string(digits) + ", " +
                 d.upper.to_string(digits) + "]\n";
    }
    if (all || a.kind == "cd") {
        const CdDistance d = d_cd(net, x, y, dc);
        j["cd"] = {{"max_ratio", d.ratios.max_ratio ? to_string(*d.ratios.max_ratio) : "inf"},
                   {"min_ratio", to_string(d.ratios.min_ratio)},
                   {"value", d.distance.to_string(digits)}};
        human += "D_CD = " + d.distance.to_string(digits) + "  (max ratio " +
                 (d.ratios.max_ratio ? to_string(*d.ratios.max_ratio) : std::string("inf")) + ", min ratio " +
                 to_string(d.ratios.min_ratio) + ")\n";
    }
    if (all || a.kind == "kl") {
        const ExtendedValue d = d_kl(net, x, y, dc);
        j["kl"] = {{"value", d.to_string(digits)}};
        human += "D_KL = " + d.to_string(digits) + "\n";
    }
    emit(out, rc, j, human);
    return kOk;
}

// ---------------------------------------------------------------------------
// tune

struct TuneArgs {
    std::vector<std::string> files;
};

int cmd_tune(const TuneArgs& a, const RunConfig& rc, std::ostream& out) {
    if (a.files.empty() || a.files.size() > 2) throw InvalidArgument("tune takes [network] instance");
    const std::string instance_path = a.files.back();
    const InstanceFile inst = parse_instance(read_file(instance_path));
    std::string network_path;
    if (a.files.size() == 2) {
        network_path = a.files.front();
    } else {
        fs::path p(inst.network);
        network_path = p.is_absolute() ? p.string() : (fs::path(instance_path).parent_path() / p).string();
    }
    const Network net = load_network(network_path);
    const TuningProblem problem = to_problem(inst, net);
    const TuningConfig config = tuning_config(rc);
    const Decision d = solve(problem, config);

    Json j{{"command", "tune"}, {"variant", to_string(problem.variant)}, {"q", to_string(problem.q)},
           {"answer", to_string(d.answer)}};
    std::string human = "variant: " + std::string(to_string(problem.variant)) + "\nanswer: " +
                        std::string(to_string(d.answer)) + "\n";
    if (d.achieved) {
        j["achieved"] = to_string(*d.achieved);
        human += "achieved: " + to_string(*d.achieved) + "  (~" + to_decimal(*d.achieved, 6) + ")\n";
    }
    j["exact"] = d.completeness.exact;
    if (d.completeness.exact) {
        human += "completeness: exact\n";
    } else {
        j["grid_step"] = to_string(d.completeness.grid_step);
        human += "completeness: grid h=" + to_string(d.completeness.grid_step) +
                 (d.completeness.grid_step == 1 ? " (vertices only)" : "") + "\n";
    }
    Json wj = Json::array();
    for (std::size_t i = 0; i < d.witnesses.size(); ++i) {
        wj.push_back(assignment_json(net, d.witnesses[i]));
        human += "witness " + std::to_string(i + 1) + ": " + describe_assignment(net, d.witnesses[i]);
        if (i < d.witness_modes.size())
            human += "  [mode " + net.variable(problem.output).values.at(d.witness_modes[i]) + "]";
        human += "\n";
    }
    j["witnesses"] = wj;
    if (!d.witness_modes.empty()) {
        Json mj = Json::array();
        for (auto m : d.witness_modes) mj.push_back(net.variable(problem.output).values.at(m));
        j["witness_modes"] = mj;
    }
    j["zero_evidence_vertices"] = d.zero_evidence_vertices.size();
    if (!d.zero_evidence_vertices.empty())
        human += "vertices with zero evidence probability: " + std::to_string(d.zero_evidence_vertices.size()) + "\n";
    emit(out, rc, j, human);
    return d.yes() ? kOk : kNo;
}

// ---------------------------------------------------------------------------
// reduce

struct ReduceArgs {
    std::string kind, input, out, variant = "RANGE";
    std::size_t exists = 0;
    std::size_t vars = 0;
    std::size_t k = 0;
};

std::string strip_comments(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        out += line + "\n";
    }
    return out;
}

int cmd_reduce(const ReduceArgs& a, const RunConfig& rc, std::ostream& out) {
    CompiledInstance ci;
    const std::string text = read_file(a.input);
    if (a.kind == "emajsat") {
        EMajsatInstance inst;
        inst.formula = parse_bool_expr(strip_comments(text));
        inst.num_vars = a.vars ? a.vars : inst.formula.max_variable();
        inst.num_exists = a.exists;
        auto variant = parse_variant(a.variant);
        if (!variant) throw InvalidArgument("unknown variant '" + a.variant + "'");
        ci = compile_emajsat(inst, *variant);
    } else if (a.kind == "maxsat") {
        MaxsatInstance inst = parse_dimacs(text);
        if (a.k) inst.k = a.k;
        ci = compile_maxsat(inst);
    } else {
        throw InvalidArgument("reduce kind must be emajsat or maxsat");
    }

    const std::string net_path = a.out + ".bn", inst_path = a.out + ".inst";
    write_file(net_path, serialize_network(ci.net));
    write_file(inst_path, serialize_instance(to_instance_file(ci, fs::path(net_path).filename().string())));
    // Self round-trip: both files must load back to the same instance.
    const Network back = load_network(net_path);
    if (!(back == ci.net)) throw std::logic_error("emitted network does not round-trip");
    to_problem(parse_instance(read_file(inst_path)), back);

    const bool polytree = is_polytree(ci.net);
    Json j{{"command", "reduce"}, {"kind", a.kind}, {"variant", to_string(ci.variant)},
           {"nodes", ci.net.size()}, {"params", ci.params.size()}, {"q", to_string(ci.q)},
           {"polytree", polytree}, {"network", net_path}, {"instance", inst_path}};
    std::string human = "compiled " + a.kind + " (" + std::string(to_string(ci.variant)) + "): " +
                        std::to_string(ci.net.size()) + " nodes, " + std::to_string(ci.params.size()) +
                        " parameters, q = " + to_string(ci.q) + ", polytree: " + (polytree ? "yes" : "no") +
                        "\nwrote " + net_path + "\nwrote " + inst_path + "\n";
    emit(out, rc, j, human);
    return kOk;
}

// ---------------------------------------------------------------------------
// verify

bool exists_majority(const EMajsatInstance& inst, const TruthAssignment& existential) {
    const std::uint64_t count = count_satisfying(inst.formula, inst.num_vars, existential);
    return 2 * count >= (std::uint64_t{1} << (inst.num_vars - inst.num_exists));
}

// Objective the compiled network reaches at a 0/1 setting: Pr(c|e), or the
// evidence gap for the evidence variants.
Rational compiled_objective(const CompiledInstance& ci, const ParameterAssignment& x) {
    const Network nx = apply_assignment(ci.net, x);
    const Evidence c{{ci.query, ci.query_value}};
    if (!ci.evidence2.empty())
        return conditional(nx, c, ci.evidence).value - conditional(nx, c, ci.evidence2).value;
    return conditional(nx, c, ci.evidence).value;
}

struct Check {
    std::string name;
    std::string answer;
    bool ok = true;
    std::string problem;
};

Check check_emajsat_variant(const EMajsatInstance& inst, const EmajsatVerdict& oracle, Variant variant,
                            const TuningConfig& config) {
    Check c{std::string(to_string(variant)), "", true, ""};
    const CompiledInstance ci = compile_emajsat(inst, variant);
    const TuningProblem problem = ci.problem();
    const Decision d = solve(problem, config);
    c.answer = std::string(to_string(d.answer));
    auto fail = [&](const std::string& why) {
        if (c.ok) c.problem = why;
        c.ok = false;
    };
    if (d.yes() != oracle.satisfiable) fail("decision differs from oracle");
    if (variant == Variant::EvidenceRange && d.yes()) {
        // The evidence gap is multilinear here, so a positive answer must come from a vertex.
        for (const auto& w : d.witnesses)
            for (const auto& [p, v] : w)
                if (v != 0 && v != 1) fail("evidence-range witness is not a vertex");
    }
    if (d.yes()) {
        if (!verify_decision(problem, d, config)) fail("witness failed re-verification");
        bool decoded_ok = false;
        for (const auto& w : d.witnesses) {
            try {
                if (exists_majority(inst, decode_witness(ci, w))) decoded_ok = true;
            } catch (const InvalidArgument&) {
            }
        }
        if (!decoded_ok) fail("no witness decodes to a majority assignment");
    }
    if (oracle.satisfiable) {
        const Rational v = compiled_objective(ci, encode_assignment(ci, oracle.witness, true));
        if (v < ci.q) fail("oracle witness reaches only " + to_string(v) + " on the compiled network");
    }
    return c;
}

Json emajsat_record(std::size_t index, std::uint64_t seed, const SweepOptions& o, const RunConfig& rc,
                    const TuningConfig& config, bool& agree, std::string& human) {
    Rng rng(seed);
    const EMajsatInstance inst = random_emajsat(rng, o.max_vars, o.depth);
    const EmajsatVerdict oracle = decide_emajsat(inst);
    Json j{{"kind", "emajsat"}, {"index", index}, {"seed", std::to_string(seed)},
           {"formula", to_string(inst.formula)}, {"vars", inst.num_vars}, {"exists", inst.num_exists},
           {"oracle", oracle.satisfiable ? "yes" : "no"}, {"best_count", oracle.best_count},
           {"oracle_witness", truth_string(oracle.witness)}};
    Json results = Json::object();
    agree = true;
    human = "emajsat #" + std::to_string(index) + " vars=" + std::to_string(inst.num_vars) + " exists=" +
            std::to_string(inst.num_exists) + " oracle=" + (oracle.satisfiable ? "yes" : "no");
    Json problems = Json::array();
    for (const auto& tag : o.variants) {
        const Variant variant = *parse_variant(tag);
        const Check c = check_emajsat_variant(inst, oracle, variant, config);
        results[c.name] = c.answer;
        human += " " + c.name + "=" + c.answer;
        if (!c.ok) {
            agree = false;
            problems.push_back(c.name + ": " + c.problem);
        }
    }
    j["results"] = results;
    j["agree"] = agree;
    if (!agree) {
        j["problems"] = problems;
        std::string variants;
        for (const auto& v : o.variants) variants += (variants.empty() ? "" : ",") + v;
        j["repro"] = "bnsens --seed " + std::to_string(rc.seed) + " verify --kind emajsat --first " +
                     std::to_string(index) + " --count 1 --max-vars " + std::to_string(o.max_vars) + " --depth " +
                     std::to_string(o.depth) + " --variants " + variants;
        human += "  DISAGREE: " + problems.dump() + "\n  reproduce: " + j["repro"].get<std::string>();
    }
    human += "\n";
    return j;
}

Json maxsat_record(std::size_t index, std::uint64_t seed, const SweepOptions& o, const RunConfig& rc,
                   const TuningConfig& config, bool& agree, std::string& human) {
    Rng rng(seed);
    const MaxsatInstance inst = random_cnf(rng, o.max_vars, o.max_clauses);
    const MaxsatVerdict oracle = solve_maxsat(inst);
    const std::size_t m = inst.clauses.size();
    const Rational expected = ratio(oracle.max_satisfied, m);
    const CompiledInstance ci = compile_maxsat(inst);
    const TuningProblem problem = ci.problem();
    const Evidence c{{ci.query, ci.query_value}};
    const VertexExtremes ext = vertex_extremes(ci.net, ci.params, c, {}, config);
    const Decision d = solve(problem, config);
    const bool polytree = is_polytree(ci.net);

    std::vector<std::string> problems;
    if (!polytree) problems.push_back("compiled network is not a polytree");
    if (ext.max != expected) problems.push_back("vertex max " + to_string(ext.max) + " != " + to_string(expected));
    if (d.yes() != (oracle.max_satisfied >= inst.k)) problems.push_back("RANGE decision differs from oracle");
    if (d.yes() && !verify_decision(problem, d, config)) problems.push_back("witness failed re-verification");
    {
        const TruthAssignment t = decode_witness(ci, ext.argmax);
        std::vector<bool> values(inst.num_vars);
        for (const auto& [var, v] : t) values[var - 1] = v;
        if (satisfied_clauses(inst, values) != oracle.max_satisfied)
            problems.push_back("decoded argmax is not a maximum assignment");
    }
    if (compiled_objective(ci, encode_assignment(ci, oracle.witness, true)) != expected)
        problems.push_back("oracle witness does not reach max/m on the compiled network");

    agree = problems.empty();
    Json j{{"kind", "maxsat"}, {"index", index}, {"seed", std::to_string(seed)}, {"vars", inst.num_vars},
           {"clauses", m}, {"k", inst.k}, {"oracle_max", oracle.max_satisfied},
           {"oracle_witness", truth_string(oracle.witness)}, {"vertex_max", to_string(ext.max)},
           {"expected", to_string(expected)}, {"polytree", polytree}, {"RANGE", to_string(d.answer)},
           {"agree", agree}};
    human = "maxsat #" + std::to_string(index) + " vars=" + std::to_string(inst.num_vars) + " clauses=" +
            std::to_string(m) + " k=" + std::to_string(inst.k) + " max=" + std::to_string(oracle.max_satisfied) +
            " vertex_max=" + to_string(ext.max) + " RANGE=" + std::string(to_string(d.answer));
    if (!agree) {
        j["problems"] = problems;
        j["repro"] = "bnsens --seed " + std::to_string(rc.seed) + " verify --kind maxsat --first " +
                     std::to_string(index) + " --count 1 --max-vars " + std::to_string(o.max_vars) +
                     " --max-clauses " + std::to_string(o.max_clauses);
        human += "  DISAGREE: " + Json(problems).dump() + "\n  reproduce: " + j["repro"].get<std::string>();
    }
    human += "\n";
    return j;
}

} // namespace

int run_verify(const SweepOptions& o, const RunConfig& rc, std::ostream& out) {
    if (o.max_vars == 0 || o.max_vars > 24) throw CapExceeded("--max-vars must be in [1, 24]");
    if (o.max_clauses == 0) throw InvalidArgument("--max-clauses must be positive");
    for (const auto& tag : o.variants)
        if (!parse_variant(tag)) throw InvalidArgument("unknown variant '" + tag + "'");
    const TuningConfig config = tuning_config(rc);

    std::size_t checked = 0, disagreements = 0;
    for (std::size_t index = o.first; index < o.first + o.count; ++index) {
        const std::uint64_t seed = instance_seed(rc.seed, index);
        // Each family draws from its own stream so enabling one does not shift the other.
        if (o.emajsat) {
            bool agree = false;
            std::string human;
            Json j = emajsat_record(index, instance_seed(seed, 0), o, rc, config, agree, human);
            emit(out, rc, j, human);
            ++checked;
            if (!agree) ++disagreements;
        }
        if (o.maxsat) {
            bool agree = false;
            std::string human;
            Json j = maxsat_record(index, instance_seed(seed, 1), o, rc, config, agree, human);
            emit(out, rc, j, human);
            ++checked;
            if (!agree) ++disagreements;
        }
    }
    Json summary{{"summary", true}, {"seed", std::to_string(rc.seed)}, {"first", o.first}, {"count", o.count},
                 {"instances", checked}, {"disagreements", disagreements}};
    emit(out, rc, summary,
         std::to_string(checked) + " instances checked, " + std::to_string(disagreements) + " disagreements\n");
    return disagreements == 0 ? kOk : kNo;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact sensitivity analysis and parameter tuning for discrete Bayesian networks", "bnsens"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig rc;
    std::string format = "human";
    app.add_option("--precision", rc.precision, "MPFR precision in bits for logs and square roots")
        ->check(CLI::Range(16u, 1u << 16));
    app.add_option("--seed", rc.seed, "Seed for generated suites");
    app.add_option("--grid", rc.grid, "Grid step h = 1/m for non-vertex searches");
    app.add_option("--cap", rc.vertex_cap, "Maximum number of tuned parameters")->check(CLI::PositiveNumber);
    app.add_option("--max-states", rc.max_states, "Joint-state cap for enumeration")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "structured"}));

    InferArgs infer;
    auto* infer_cmd = app.add_subcommand("infer", "Exact Pr(query | evidence)");
    infer_cmd->add_option("network", infer.network)->required();
    infer_cmd->add_option("query", infer.query, "e.g. B=b or B=b,C=c")->required();
    infer_cmd->add_option("-e,--evidence", infer.evidence);
    infer_cmd->add_option("--ge", infer.ge, "Also decide Pr(query | evidence) >= q");

    SensArgs sens;
    auto* sens_cmd = app.add_subcommand("sensfn", "Sensitivity function coefficients");
    sens_cmd->add_option("network", sens.network)->required();
    sens_cmd->add_option("query", sens.query)->required();
    sens_cmd->add_option("-p,--param", sens.params, "Parameter such as B=b|A=a; repeatable")->required();
    sens_cmd->add_option("-e,--evidence", sens.evidence);

    DistanceArgs dist;
    auto* dist_cmd = app.add_subcommand("distance", "Distances between two parameter settings");
    dist_cmd->add_option("network", dist.network)->required();
    dist_cmd->add_option("-p,--param", dist.params)->required();
    dist_cmd->add_option("--x", dist.x, "Comma-separated values, one per --param")->required();
    dist_cmd->add_option("--y", dist.y, "Comma-separated values, one per --param")->required();
    dist_cmd->add_option("--kind", dist.kind)->check(CLI::IsMember({"all", "euclidean", "cd", "kl"}));

    TuneArgs tune;
    auto* tune_cmd = app.add_subcommand("tune", "Decide a tuning problem from an instance file");
    tune_cmd->add_option("files", tune.files, "[network] instance")->required()->expected(1, 2);

    ReduceArgs reduce;
    auto* reduce_cmd = app.add_subcommand("reduce", "Compile an E-MAJSAT formula or a CNF into a gadget network");
    reduce_cmd->add_option("kind", reduce.kind)->required()->check(CLI::IsMember({"emajsat", "maxsat"}));
    reduce_cmd->add_option("input", reduce.input)->required();
    reduce_cmd->add_option("-o,--out", reduce.out, "Output prefix; writes <prefix>.bn and <prefix>.inst")->required();
    reduce_cmd->add_option("--variant", reduce.variant);
    reduce_cmd->add_option("--exists", reduce.exists, "Length of the existential prefix V1..Vk");
    reduce_cmd->add_option("--vars", reduce.vars, "Number of formula variables (default: largest index)");
    reduce_cmd->add_option("--k", reduce.k, "MAXSAT threshold (default: number of clauses)");

    SweepOptions sweep;
    std::string sweep_kind = "all";
    auto* verify_cmd = app.add_subcommand("verify", "Seeded reduction-equivalence sweep against brute-force oracles");
    verify_cmd->add_option("--count", sweep.count);
    verify_cmd->add_option("--first", sweep.first);
    verify_cmd->add_option("--max-vars", sweep.max_vars);
    verify_cmd->add_option("--depth", sweep.depth);
    verify_cmd->add_option("--max-clauses", sweep.max_clauses);
    verify_cmd->add_option("--kind", sweep_kind)->check(CLI::IsMember({"all", "emajsat", "maxsat"}));
    verify_cmd->add_option("--variants", sweep.variants)->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    rc.format = format == "structured" ? Format::Structured : Format::Human;

    try {
        if (*infer_cmd) return cmd_infer(infer, rc, out);
        if (*sens_cmd) return cmd_sensfn(sens, rc, out);
        if (*dist_cmd) return cmd_distance(dist, rc, out);
        if (*tune_cmd) return cmd_tune(tune, rc, out);
        if (*reduce_cmd) return cmd_reduce(reduce, rc, out);
        if (*verify_cmd) {
            sweep.emajsat = sweep_kind != "maxsat";
            sweep.maxsat = sweep_kind != "emajsat";
            return run_verify(sweep, rc, out);
        }
    } catch (const ZeroEvidence& e) {
        err << "error: zero evidence: " << e.what() << "\n";
        return *tune_cmd ? kError : kZeroEvidence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

} // namespace bnsens::cli
