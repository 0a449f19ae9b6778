// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Every check compares against an independent oracle
// or a hand-derived value; nothing is compared with a tolerance unless it is
// an MPFR enclosure.

#include "bnsens/distance.hpp"
#include "bnsens/error.hpp"
#include "bnsens/generators.hpp"
#include "bnsens/inference.hpp"
#include "bnsens/oracle.hpp"
#include "bnsens/reduction.hpp"
#include "bnsens/sensitivity.hpp"
#include "bnsens/tuning.hpp"
#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace bnsens;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kEmajsatCount = 500;

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational pow2(std::size_t k) { return Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(k)); }

std::vector<EMajsatInstance> emajsat_suite() {
    std::vector<EMajsatInstance> suite;
    for (std::size_t i = 0; i < kEmajsatCount; ++i) {
        Rng rng(instance_seed(kSeed, i));
        suite.push_back(random_emajsat(rng, 8, 4));
    }
    return suite;
}

// Majority test for a decoded V_E assignment, by direct counting.
bool reaches_majority(const EMajsatInstance& inst, const std::map<std::size_t, bool>& decoded) {
    TruthAssignment fixed;
    for (auto [v, b] : decoded)
        if (v >= 1 && v <= inst.num_exists) fixed[v] = b;
    for (std::size_t v = 1; v <= inst.num_exists; ++v)
        if (!fixed.count(v)) fixed[v] = false;
    const auto count = count_satisfying(inst.formula, inst.num_vars, fixed);
    return Rational(2 * count) >= pow2(inst.num_vars - inst.num_exists);
}

Rational objective(const CompiledInstance& ci, const ParameterAssignment& x) {
    const Network nx = apply_assignment(ci.net, x);
    const Evidence c{{ci.query, ci.query_value}};
    if (!ci.evidence2.empty())
        return conditional(nx, c, ci.evidence).value - conditional(nx, c, ci.evidence2).value;
    return conditional(nx, c, ci.evidence).value;
}

bool is_vertex(const ParameterAssignment& x) {
    for (const auto& [p, v] : x)
        if (v != 0 && v != 1) return false;
    return true;
}

Outcome worked_example() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    EMajsatInstance inst{parse_bool_expr("(and (not (or V1 V2)) (not V3))"), 3, 2};
    auto ci = compile_emajsat(inst, Variant::Range);
    Decision d = solve(ci.problem());
    if (ci.q != Rational(1, 2)) o.fail("q is " + to_string(ci.q));
    if (d.answer != Answer::Yes) o.fail("answer " + std::string(to_string(d.answer)));
    if (!d.achieved || *d.achieved != Rational(1, 2)) o.fail("achieved gap is not 1/2");
    if (!d.witnesses.empty()) {
        const auto decoded = decode_witness(ci, d.witnesses.front());
        if (decoded != std::map<std::size_t, bool>{{1, false}, {2, false}}) o.fail("witness does not decode to V1 = V2 = false");
    } else {
        o.fail("no witness");
    }
    if (!verify_decision(ci.problem(), d)) o.fail("witness fails exact re-check");
    const double t = seconds_since(t0);
    if (t >= 1.0) o.fail("took " + std::to_string(t) + " s");
    if (o.pass) o.detail = "yes, gap 1/2, witness V1=V2=false, " + std::to_string(t) + " s";
    return o;
}

Outcome range_sweep(const std::vector<EMajsatInstance>& suite) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t yes = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& inst = suite[i];
        const std::string tag = "instance " + std::to_string(i) + " " + to_string(inst.formula) + ": ";
        const EmajsatVerdict oracle = decide_emajsat(inst);
        const auto ci = compile_emajsat(inst, Variant::Range);
        const Decision d = solve(ci.problem());
        if (d.yes() != oracle.satisfiable) o.fail(tag + "answer differs from oracle");
        if (!verify_decision(ci.problem(), d)) o.fail(tag + "decision does not verify");
        if (d.yes()) {
            ++yes;
            if (!reaches_majority(inst, decode_witness(ci, d.witnesses.front())))
                o.fail(tag + "decoded witness misses the majority");
        }
        // The oracle's own witness, pushed through the gadget, must land on its count.
        const Rational expected = Rational(oracle.best_count) / pow2(inst.num_vars - inst.num_exists);
        if (objective(ci, encode_assignment(ci, oracle.witness)) != expected)
            o.fail(tag + "encoded oracle witness gives the wrong probability");
    }
    const double t = seconds_since(t0);
    if (t >= 300) o.fail("took " + std::to_string(t) + " s");
    if (o.pass)
        o.detail = std::to_string(suite.size()) + " instances (" + std::to_string(yes) + " yes), " + std::to_string(t) + " s";
    return o;
}

Outcome variant_sweep(const std::vector<EMajsatInstance>& suite) {
    Outcome o;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& inst = suite[i];
        const bool truth = decide_emajsat(inst).satisfiable;
        for (Variant v : {Variant::Tuning, Variant::EvidenceRange, Variant::Mode}) {
            const std::string tag =
                "instance " + std::to_string(i) + " " + std::string(to_string(v)) + " " + to_string(inst.formula) + ": ";
            const auto ci = compile_emajsat(inst, v);
            const Decision d = solve(ci.problem());
            if (d.yes() != truth) o.fail(tag + "answer differs from oracle");
            if (!verify_decision(ci.problem(), d)) o.fail(tag + "decision does not verify");
            if (v == Variant::EvidenceRange && d.yes()) {
                if (d.witnesses.size() != 1 || !is_vertex(d.witnesses[0])) o.fail(tag + "yes without a vertex witness");
                else if (objective(ci, d.witnesses[0]) < ci.q) o.fail(tag + "witness below q");
            }
            if (d.yes()) {
                // For MODE the informative witness is the one whose mode is the "true" value.
                std::size_t w = 0;
                if (v == Variant::Mode)
                    while (w + 1 < d.witnesses.size() && d.witness_modes.at(w) != ci.query_value) ++w;
                if (!reaches_majority(inst, decode_witness(ci, d.witnesses[w])))
                    o.fail(tag + "decoded witness misses the majority");
            }
            ++checked;
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " decisions agree";
    return o;
}

Outcome maxsat_sweep() {
    Outcome o;
    for (std::size_t i = 0; i < 200; ++i) {
        Rng rng(instance_seed(kSeed + 1, i));
        const MaxsatInstance inst = random_cnf(rng, 6, 8);
        const std::string tag = "cnf " + std::to_string(i) + ": ";
        const auto ci = compile_maxsat(inst);
        const auto oracle = solve_maxsat(inst);
        const std::size_t m = inst.clauses.size();
        if (!is_polytree(ci.net)) o.fail(tag + "not a polytree");
        const auto ext = vertex_extremes(ci.net, ci.params, {{ci.query, ci.query_value}}, ci.evidence);
        if (ext.max != ratio(oracle.max_satisfied, m)) o.fail(tag + "vertex max " + to_string(ext.max));
        const Decision d = solve(ci.problem());
        if (d.yes() != (oracle.max_satisfied >= inst.k)) o.fail(tag + "RANGE answer differs from oracle");
    }
    // Threshold check: one variable, clauses (V1) and (not V1), k = 1. One clause
    // is always satisfiable, so the answer is yes. The gap tops out at 1/2 = k/m,
    // whereas k/n = 1 would wrongly answer no.
    MaxsatInstance two{1, {{1}, {-1}}, 1};
    auto ci = compile_maxsat(two);
    if (ci.q != Rational(1, 2)) o.fail("threshold is not k/m");
    if (!solve(ci.problem()).yes()) o.fail("k/m threshold answers no");
    auto p = ci.problem();
    p.q = ratio(two.k, two.num_vars);
    if (solve(p).yes()) o.fail("k/n threshold unexpectedly agrees");
    if (o.pass) o.detail = "200 CNFs; k/n would answer no on a satisfiable 1-variable instance";
    return o;
}

std::vector<ParameterRef> pick_params(Rng& rng, const Network& net, std::size_t count) {
    // Parameters from pairwise-distinct CPTs.
    std::vector<std::size_t> vars(net.size());
    for (std::size_t v = 0; v < net.size(); ++v) vars[v] = v;
    for (std::size_t i = vars.size(); i > 1; --i) std::swap(vars[i - 1], vars[rng.below(i)]);
    std::vector<ParameterRef> ps;
    for (std::size_t i = 0; i < count && i < vars.size(); ++i)
        ps.push_back(ParameterRef{vars[i], rng.below(net.row_count(vars[i])), rng.below(2)});
    return ps;
}

struct Query {
    Evidence c, e;
};

Query pick_query(Rng& rng, const Network& net) {
    Query q;
    const std::size_t cv = rng.below(net.size());
    q.c[cv] = rng.below(2);
    const std::size_t extra = rng.below(3);
    for (std::size_t i = 0; i < extra; ++i) {
        const std::size_t v = rng.below(net.size());
        if (v != cv) q.e[v] = rng.below(2);
    }
    return q;
}

// Compares a fitted value with conditional() after applying the point; both
// sides must agree on whether Pr_x(e) vanishes.
bool same_as_direct(const Network& net, const std::vector<ParameterRef>& ps, const std::vector<Rational>& x,
                    const Query& q, const std::function<Rational()>& fitted) {
    ParameterAssignment a;
    for (std::size_t i = 0; i < ps.size(); ++i) a[ps[i]] = x[i];
    std::optional<Rational> direct, fit;
    try {
        direct = conditional(apply_assignment(net, a), q.c, q.e).value;
    } catch (const ZeroEvidence&) {
    }
    try {
        fit = fitted();
    } catch (const ZeroEvidence&) {
    }
    return direct == fit;
}

Outcome sensitivity_exactness() {
    Outcome o;
    std::size_t probes = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        Rng rng(instance_seed(kSeed + 2, i));
        const Network net = random_network(rng, NetworkShape{rng.between(2, 10), 3, 2, 6});
        // Redraw the query until Pr(e) > 0 somewhere, so the fits exist.
        std::vector<ParameterRef> ps;
        Query q;
        std::optional<SensFn1> f1;
        std::optional<SensFn2> f2;
        for (int attempt = 0; attempt < 50 && !(f1 && f2); ++attempt) {
            ps = pick_params(rng, net, 2);
            q = pick_query(rng, net);
            f1.reset();
            f2.reset();
            try {
                f1 = fit_one_way(net, ps[0], q.c, q.e);
                f2 = fit_two_way(net, ps[0], ps[1], q.c, q.e);
            } catch (const ZeroEvidence&) {
            }
        }
        const std::string tag = "network " + std::to_string(i) + ": ";
        if (!f1 || !f2) {
            o.fail(tag + "no query with positive evidence found");
            continue;
        }
        for (int k = 0; k < 10; ++k) {
            const Rational x = rng.probability(97), y = rng.probability(97);
            if (!same_as_direct(net, {ps[0]}, {x}, q, [&] { return eval(*f1, x); }))
                o.fail(tag + "one-way mismatch at " + to_string(x));
            if (!same_as_direct(net, ps, {x, y}, q, [&] { return eval(*f2, x, y); }))
                o.fail(tag + "two-way mismatch at " + to_string(x) + ", " + to_string(y));
            probes += 2;
        }
    }
    if (o.pass) o.detail = std::to_string(probes) + " probes exact";
    return o;
}

Outcome slice_consistency() {
    Outcome o;
    std::size_t done = 0;
    for (std::size_t i = 0; done < 50 && i < 500; ++i) {
        Rng rng(instance_seed(kSeed + 3, i));
        const Network net = random_network(rng, NetworkShape{rng.between(3, 8), 3, 2, 6});
        const auto ps = pick_params(rng, net, 3);
        const Query q = pick_query(rng, net);
        const Rational a = rng.probability(31), b = rng.probability(31);
        MultilinearQuotient f;
        SensFn1 g;
        try {
            f = fit_n_way(net, ps, q.c, q.e);
            const Network fixed = apply_assignment(net, {{ps[1], a}, {ps[2], b}});
            g = fit_one_way(fixed, ps[0], q.c, q.e);
        } catch (const ZeroEvidence&) {
            continue;
        }
        if (to_one_way(f.specialize(2, b).specialize(1, a)) != g)
            o.fail("fit " + std::to_string(i) + ": slice differs from the one-way fit");
        ++done;
    }
    if (done < 50) o.fail("only " + std::to_string(done) + " usable fits");
    if (o.pass) o.detail = "50 three-parameter fits";
    return o;
}

Outcome distance_properties() {
    Outcome o;
    for (std::size_t i = 0; i < 100; ++i) {
        Rng rng(instance_seed(kSeed + 4, i));
        const Network net = random_network(rng, NetworkShape{rng.between(1, 6), 2, 2, 5});
        const auto ps = pick_params(rng, net, 2);
        ParameterAssignment x, y;
        for (const auto& p : ps) {
            x[p] = rng.probability(16);
            y[p] = rng.probability(16);
        }
        const std::string tag = "pair " + std::to_string(i) + ": ";
        const auto self_kl = d_kl(net, x, x);
        if (self_kl.infinite() || !self_kl.exact() || self_kl.value().compare(0) != 0) o.fail(tag + "D_KL(P,P) != 0");
        const auto self_cd = d_cd(net, x, x).distance;
        if (self_cd.infinite() || !self_cd.exact() || self_cd.value().compare(0) != 0) o.fail(tag + "D_CD(P,P) != 0");
        const auto kl = d_kl(net, x, y);
        if (!kl.infinite() && kl.upper().compare(0) < 0) o.fail(tag + "D_KL enclosure lies below 0");
        // Swapping the arguments inverts every ratio, so max and min trade places.
        const auto xy = d_cd(net, x, y).ratios, yx = d_cd(net, y, x).ratios;
        const bool ok_max = xy.max_ratio ? (yx.min_ratio != 0 && *xy.max_ratio == 1 / yx.min_ratio) : yx.min_ratio == 0;
        const bool ok_min = yx.max_ratio ? (xy.min_ratio != 0 && xy.min_ratio == 1 / *yx.max_ratio) : xy.min_ratio == 0;
        if (!ok_max || !ok_min) o.fail(tag + "CD ratios are not symmetric");
    }
    const ParameterRef a{0, 0, 0}, b{1, 0, 0};
    const auto e = d_euclidean({{a, 0}, {b, 1}}, {{a, 1}, {b, 0}});
    BigFloat root(128);
    mpfr_sqrt_ui(root.get(), 2, MPFR_RNDN);
    if (e.squared != 2) o.fail("squared Euclidean distance is " + to_string(e.squared));
    if (mpfr_cmp(e.lower.get(), root.get()) > 0 || mpfr_cmp(e.upper.get(), root.get()) < 0)
        o.fail("sqrt 2 not enclosed");
    if (e.lower.precision() < 128) o.fail("precision below configured 128 bits");
    if (o.pass) o.detail = "100 random pairs; D_E((0,1),(1,0))^2 = 2";
    return o;
}

Outcome restriction(const std::vector<EMajsatInstance>& suite) {
    Outcome o;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto ci = compile_emajsat(suite[i], Variant::Range);
        auto p = ci.problem();
        const Decision range = solve(p);
        for (Variant v : {Variant::MinRange, Variant::MinChangeRange}) {
            p.variant = v;
            p.r.reset();
            p.s.reset();
            const Decision d = solve(p);
            if (d.answer != range.answer || d.witnesses != range.witnesses)
                o.fail("instance " + std::to_string(i) + ": " + std::string(to_string(v)) + " differs from RANGE");
        }
    }
    if (o.pass) o.detail = std::to_string(suite.size()) + " instances, identical decisions";
    return o;
}

Rational brute_marginal(const Network& net, const Evidence& e) {
    const std::size_t n = net.size();
    Rational total = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<std::size_t> w(n);
        for (std::size_t v = 0; v < n; ++v) w[v] = (bits >> v) & 1;
        bool consistent = true;
        for (auto [v, val] : e) consistent = consistent && w[v] == val;
        if (!consistent) continue;
        Rational p = 1;
        for (std::size_t v = 0; v < n && p != 0; ++v) {
            std::vector<std::size_t> pv;
            for (auto parent : net.parents(v)) pv.push_back(w[parent]);
            p *= net.row(v, net.row_index(v, pv))[w[v]];
        }
        total += p;
    }
    return total;
}

Outcome inference_equivalence() {
    Outcome o;
    for (std::size_t i = 0; i < 200; ++i) {
        Rng rng(instance_seed(kSeed + 5, i));
        const Network net = random_network(rng, NetworkShape{rng.between(1, 10), 3, 2, 5});
        Evidence e;
        const std::size_t size = rng.below(4);
        for (std::size_t k = 0; k < size; ++k) e[rng.below(net.size())] = rng.below(2);
        if (marginal(net, e) != brute_marginal(net, e)) o.fail("network " + std::to_string(i) + ": marginals differ");
    }
    if (o.pass) o.detail = "200 networks exact";
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::string> args{"--seed", "7", "--format", "structured", "verify", "--count", "100", "--max-vars", "6"};
    std::ostringstream a, b, err;
    const int ca = cli::run(args, a, err), cb = cli::run(args, b, err);
    if (a.str() != b.str()) o.fail("reports differ");
    if (ca != 0 || cb != 0) o.fail("verify reported disagreements: " + err.str());
    if (a.str().empty()) o.fail("empty report");
    if (o.pass) o.detail = "two runs, " + std::to_string(a.str().size()) + " identical bytes";
    return o;
}

} // namespace

int main() {
    const auto suite = emajsat_suite();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"worked E-MAJSAT example compiles to a yes instance", worked_example},
        {"E-MAJSAT vs RANGE on 500 instances", [&] { return range_sweep(suite); }},
        {"TUNING, EVIDENCE_RANGE, MODE on the same suite", [&] { return variant_sweep(suite); }},
        {"MAXSAT polytree compile on 200 CNFs", maxsat_sweep},
        {"one-way and two-way fits are exact", sensitivity_exactness},
        {"three-parameter slices match one-way fits", slice_consistency},
        {"distance properties", distance_properties},
        {"MIN_RANGE and MIN_CHANGE_RANGE at infinity equal RANGE", [&] { return restriction(suite); }},
        {"variable elimination matches enumeration", inference_equivalence},
        {"verify reports are byte-identical", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.detail << ")" << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
