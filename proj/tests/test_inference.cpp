#include "bnsens/error.hpp"
#include "bnsens/generators.hpp"
#include "bnsens/inference.hpp"
#include "bnsens/reduction.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace bnsens;
using bnsens::test::R;

namespace {

// Independent brute force: walk every total assignment and multiply CPT entries directly.
Rational brute_marginal(const Network& net, const Evidence& e) {
    const std::size_t n = net.size();
    std::vector<std::size_t> w(n, 0);
    Rational total = 0;
    while (true) {
        bool consistent = true;
        for (auto [v, val] : e) consistent = consistent && w[v] == val;
        if (consistent) {
            Rational p = 1;
            for (std::size_t v = 0; v < n && p != 0; ++v) {
                std::vector<std::size_t> pv;
                for (auto parent : net.parents(v)) pv.push_back(w[parent]);
                p *= net.row(v, net.row_index(v, pv))[w[v]];
            }
            total += p;
        }
        std::size_t k = n;
        while (k > 0 && ++w[k - 1] == net.cardinality(k - 1)) w[--k] = 0;
        if (k == 0) break;
    }
    return total;
}

Evidence random_evidence(Rng& rng, const Network& net, std::size_t max_size) {
    Evidence e;
    const std::size_t size = rng.between(0, max_size);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t v = rng.below(net.size());
        e[v] = rng.below(net.cardinality(v));
    }
    return e;
}

} // namespace

TEST(Joint, ChainProducts) {
    Network net = test::chain();
    const std::vector<std::size_t> ab{0, 0};
    EXPECT_EQ(joint_probability(net, ab), R("3/8"));
    Network det = parse_network("network d\nvariable A values x y\ncpt A\n  1 0\n");
    const std::vector<std::size_t> y{1};
    EXPECT_EQ(joint_probability(det, y), 0);
    const std::vector<std::size_t> partial{0};
    EXPECT_THROW(joint_probability(net, partial), InvalidArgument);
    const std::vector<std::size_t> t{0};
    EXPECT_EQ(joint_probability(test::coin(), t), R("1/2"));
}

TEST(Marginal, Examples) {
    Network net = test::chain();
    EXPECT_EQ(marginal(net, {}), 1);
    EXPECT_EQ(marginal(net, parse_evidence(net, "B=b")), R("1/2"));
    auto ci = compile_emajsat(test::worked_example(), Variant::Range);
    EXPECT_EQ(marginal(ci.net, parse_evidence(ci.net, "Vphi=true")), R("1/8"));
}

TEST(Conditional, Examples) {
    Network net = test::chain();
    EXPECT_EQ(conditional(net, parse_evidence(net, "B=b"), {}).value, R("1/2"));
    auto r = conditional(net, parse_evidence(net, "A=a"), parse_evidence(net, "B=b"));
    EXPECT_EQ(r.value, R("3/4"));
    EXPECT_EQ(r.normalizer, R("1/2"));
    Network det = parse_network(R"(
network d
variable A values x y
variable B values x y
cpt A
  1 0
cpt B given A
  x : 1/2 1/2
  y : 1/2 1/2
)");
    EXPECT_THROW(conditional(det, parse_evidence(det, "B=x"), parse_evidence(det, "A=y")), ZeroEvidence);
    EXPECT_THROW(conditional(net, parse_evidence(net, "A=a"), parse_evidence(net, "A=a")), InvalidArgument);
}

TEST(DecideInference, Boundaries) {
    Network c = test::coin();
    EXPECT_TRUE(decide_inference(c, 0, 0, R("1/2")));
    EXPECT_FALSE(decide_inference(c, 0, 0, R("1/2") + R("1/1000")));
    auto ci = compile_emajsat(test::worked_example(), Variant::Range);
    EXPECT_TRUE(decide_inference(ci.net, ci.net.index_of("Vphi"), 0, R("1/8")));
}

TEST(Enumerate, SmallAndCapped) {
    auto coin = enumerate_joint(test::coin());
    ASSERT_EQ(coin.size(), 2u);
    EXPECT_EQ(coin[0].second, R("1/2"));
    EXPECT_EQ(coin[1].second, R("1/2"));

    auto chain = enumerate_joint(test::chain());
    ASSERT_EQ(chain.size(), 4u);
    Rational sum = 0;
    for (const auto& [w, p] : chain) sum += p;
    EXPECT_EQ(sum, 1);

    Network big("big");
    for (int i = 0; i < 21; ++i) {
        auto v = big.add_variable("X" + std::to_string(i), {"t", "f"});
        big.set_row(v, 0, {R("1/2"), R("1/2")});
    }
    EXPECT_THROW(enumerate_joint(big), StateSpaceTooLarge);
    EXPECT_EQ(joint_state_count(big), std::uint64_t{1} << 21);
}

TEST(Marginal, MatchesBruteForceOnRandomNetworks) {
    Rng rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        NetworkShape shape{rng.between(1, 12), 3, trial % 3 == 0 ? 3u : 2u, 4};
        if (shape.max_cardinality == 3 && shape.num_vars > 9) shape.num_vars = 9;
        Network net = random_network(rng, shape);
        const Evidence e = random_evidence(rng, net, 4);
        EXPECT_EQ(marginal(net, e), brute_marginal(net, e)) << serialize_network(net);
    }
}

TEST(Conditional, DistributionSumsToOne) {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        Network net = random_network(rng, NetworkShape{6, 3, 3, 4});
        const std::size_t c = rng.below(net.size());
        Evidence e = random_evidence(rng, net, 3);
        e.erase(c);
        if (marginal(net, e) == 0) continue;
        Rational sum = 0;
        for (std::size_t v = 0; v < net.cardinality(c); ++v) sum += conditional(net, {{c, v}}, e).value;
        EXPECT_EQ(sum, 1);
    }
}

TEST(Marginal, MonotoneUnderExtension) {
    Rng rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        Network net = random_network(rng, NetworkShape{7, 3, 2, 4});
        Evidence e = random_evidence(rng, net, 3);
        Evidence f = e;
        const std::size_t v = rng.below(net.size());
        f.emplace(v, rng.below(net.cardinality(v)));
        EXPECT_LE(marginal(net, f), marginal(net, e));
    }
}
