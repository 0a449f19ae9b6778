#include "bnsens/error.hpp"
#include "bnsens/generators.hpp"
#include "bnsens/network.hpp"
#include "bnsens/network_io.hpp"
#include "bnsens/reduction.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace bnsens;
using bnsens::test::R;

namespace {

bool mentions(const ValidationReport& r, const std::string& text) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

} // namespace

TEST(Rational, ParsesAndPrintsLowestTerms) {
    EXPECT_EQ(to_string(R("2/4")), "1/2");
    EXPECT_EQ(to_string(R("3")), "3");
    EXPECT_FALSE(parse_rational("1/0"));
    EXPECT_FALSE(parse_rational("-1/2"));
    EXPECT_FALSE(parse_rational("1/"));
    EXPECT_EQ(ratio(7, 7), Rational(1));
    EXPECT_EQ(to_decimal(R("1/3"), 4), "0.3333");
}

TEST(Validate, ChainIsValid) { EXPECT_TRUE(validate_network(test::chain()).ok()); }

TEST(Validate, ReportsRowSum) {
    Network net("n");
    auto a = net.add_variable("A", {"x", "y"});
    net.set_row(a, 0, {R("1/2"), R("1/3")});
    auto report = validate_network(net);
    EXPECT_TRUE(mentions(report, "row sums to 5/6")) << report.summary();
}

TEST(Validate, ReportsTwoCycle) {
    Network net("n");
    auto a = net.add_variable("A", {"x", "y"});
    auto b = net.add_variable("B", {"x", "y"});
    net.set_parents(a, {b});
    net.set_parents(b, {a});
    for (std::size_t r = 0; r < 2; ++r) {
        net.set_row(a, r, {R("1/2"), R("1/2")});
        net.set_row(b, r, {R("1/2"), R("1/2")});
    }
    auto report = validate_network(net);
    EXPECT_TRUE(mentions(report, "cycle A,B")) << report.summary();
    EXPECT_THROW(require_valid(net), ValidationError);
}

TEST(Validate, ReportsMissingRowAndRange) {
    Network net("n");
    auto a = net.add_variable("A", {"x", "y"});
    auto b = net.add_variable("B", {"x", "y"});
    net.set_row(a, 0, {R("3/2"), R("0")});
    net.set_parents(b, {a});
    net.set_row(b, 0, {R("1"), R("0")});
    auto report = validate_network(net);
    EXPECT_TRUE(mentions(report, "missing row"));
    EXPECT_TRUE(mentions(report, "out of [0,1]"));
}

TEST(Variables, RejectBadDeclarations) {
    Network net("n");
    EXPECT_THROW(net.add_variable("A", {"x"}), InvalidArgument);
    EXPECT_THROW(net.add_variable("A", {"x", "x"}), InvalidArgument);
    EXPECT_THROW(net.add_variable("bad name", {"x", "y"}), InvalidArgument);
    net.add_variable("A", {"x", "y"});
    EXPECT_THROW(net.add_variable("A", {"x", "y"}), InvalidArgument);
}

TEST(Polytree, CompiledConstructions) {
    MaxsatInstance cnf{2, {{1, 2}, {-1}, {-2, 1}}, 2};
    EXPECT_TRUE(is_polytree(compile_maxsat(cnf).net));
    // Every formula variable of the worked example feeds exactly one operator, so the graph is a tree.
    EXPECT_TRUE(is_polytree(compile_emajsat(test::worked_example(), Variant::Range).net));
}

TEST(Polytree, DiamondIsNot) {
    Network net = parse_network(R"(
network diamond
variable A values t f
variable B values t f
variable C values t f
variable D values t f
cpt A
  1/2 1/2
cpt B given A
  t : 1 0
  f : 0 1
cpt C given A
  t : 1 0
  f : 0 1
cpt D given B C
  t t : 1 0
  t f : 0 1
  f t : 0 1
  f f : 0 1
)");
    EXPECT_FALSE(is_polytree(net));
}

TEST(Covariation, BinaryComplement) {
    Network net = test::chain();
    auto r = set_parameter_with_covariation(net, parse_parameter(net, "B=b|A=a"), R("1/5"));
    EXPECT_EQ(r.network.row(1, 0), (std::vector<Rational>{R("1/5"), R("4/5")}));
    EXPECT_FALSE(r.redistributed_uniformly);
}

TEST(Covariation, ThreeValuedRow) {
    Network net = parse_network("network n\nvariable X values a b c\ncpt X\n  1/2 1/3 1/6\n");
    const ParameterRef p{0, 0, 0};
    EXPECT_EQ(set_parameter_with_covariation(net, p, 0).network.row(0, 0),
              (std::vector<Rational>{0, R("2/3"), R("1/3")}));
    EXPECT_EQ(set_parameter_with_covariation(net, p, R("1/2")).network, net);
    EXPECT_THROW(set_parameter_with_covariation(net, p, R("3/2")), InvalidArgument);
}

TEST(Covariation, MassOneSharesUniformly) {
    Network net = parse_network("network n\nvariable X values a b c\ncpt X\n  1 0 0\n");
    auto r = set_parameter_with_covariation(net, ParameterRef{0, 0, 0}, R("1/4"));
    EXPECT_EQ(r.network.row(0, 0), (std::vector<Rational>{R("1/4"), R("3/8"), R("3/8")}));
    EXPECT_TRUE(r.redistributed_uniformly);
}

TEST(Covariation, PropertiesOnRandomRows) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        NetworkShape shape{4, 2, 4, 5};
        Network net = random_network(rng, shape);
        const std::size_t v = rng.below(net.size());
        const std::size_t row = rng.below(net.row_count(v));
        const ParameterRef p{v, row, rng.below(net.cardinality(v))};
        const Rational x = rng.probability(64);
        const auto r = set_parameter_with_covariation(net, p, x);
        const auto& before = net.row(v, row);
        const auto& after = r.network.row(v, row);
        Rational sum = 0;
        for (const auto& e : after) sum += e;
        EXPECT_EQ(sum, 1);
        EXPECT_EQ(after[p.value], x);
        for (std::size_t j = 0; j < after.size(); ++j)
            for (std::size_t k = 0; k < after.size(); ++k)
                if (j != p.value && k != p.value && before[j] != 0 && before[k] != 0 && after[k] != 0) {
                    EXPECT_EQ(after[j] / after[k], before[j] / before[k]);
                }
        EXPECT_EQ(set_parameter_with_covariation(net, p, before[p.value]).network, net);
    }
}

TEST(ApplyAssignment, WorkedExamplePriors) {
    auto ci = compile_emajsat(test::worked_example(), Variant::Range);
    EXPECT_EQ(apply_assignment(ci.net, {}), ci.net);
    Network nx = apply_assignment(ci.net, {{ci.params[0], 0}, {ci.params[1], 0}, {ci.params[2], 1}});
    EXPECT_EQ(nx.row(nx.index_of("V1"), 0)[0], 0);
    EXPECT_EQ(nx.row(nx.index_of("V2"), 0)[0], 0);
    EXPECT_EQ(nx.row(nx.index_of("S"), 0)[0], 1);
}

TEST(ApplyAssignment, RejectsSharedDistribution) {
    Network net = parse_network("network n\nvariable X values a b c\ncpt X\n  1/2 1/3 1/6\n");
    EXPECT_THROW(apply_assignment(net, {{ParameterRef{0, 0, 0}, R("1/4")}, {ParameterRef{0, 0, 1}, R("1/4")}}),
                 InvalidArgument);
}

TEST(ApplyAssignment, OrderIndependent) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Network net = random_network(rng, NetworkShape{5, 2, 3, 4});
        ParameterAssignment a;
        std::vector<ParameterRef> refs;
        for (std::size_t v = 0; v < net.size(); ++v) {
            if (rng.coin()) continue;
            ParameterRef p{v, rng.below(net.row_count(v)), rng.below(net.cardinality(v))};
            a[p] = rng.probability(16);
            refs.push_back(p);
        }
        std::reverse(refs.begin(), refs.end());
        Network sequential = net;
        for (const auto& p : refs) sequential = set_parameter_with_covariation(sequential, p, a[p]).network;
        EXPECT_EQ(apply_assignment(net, a), sequential);
    }
}

TEST(Io, RoundTrip) {
    Network net = test::chain();
    EXPECT_EQ(parse_network(serialize_network(net)), net);
    Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        Network r = random_network(rng, NetworkShape{6, 3, 3, 6});
        EXPECT_EQ(parse_network(serialize_network(r)), r);
    }
}

TEST(Io, Errors) {
    EXPECT_THROW(parse_network("network n\nvariable A values x y\ncpt A\n  1/0 1\n"), ParseError);
    EXPECT_THROW(parse_network("network n\nvariable A values x y\ncpt A\n  1\n"), ValidationError);
    EXPECT_THROW(parse_network("variable A values x y\n"), ParseError);
    EXPECT_THROW(parse_network("network n\nvariable A values x y\ncpt B\n  1 0\n"), ParseError);
    try {
        parse_network("network n\nvariable A values x y\ncpt A\n  1/0 1\n");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(Parameters, ParseAndDescribe) {
    Network net = test::chain();
    ParameterRef p = parse_parameter(net, "B=b|A=na");
    EXPECT_EQ(p, (ParameterRef{1, 1, 0}));
    EXPECT_EQ(describe(net, p), "B=b|A=na");
    EXPECT_THROW(parse_parameter(net, "B=b"), InvalidArgument);
    EXPECT_THROW(parse_parameter(net, "B=q|A=a"), InvalidArgument);
    EXPECT_EQ(describe(net, parse_evidence(net, "B=nb,A=a")), "A=a,B=nb");
    EXPECT_THROW(merge_evidence({{0, 0}}, {{0, 1}}), InvalidArgument);
}
