#include "bnsens/error.hpp"
#include "bnsens/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace bnsens;
using bnsens::test::R;

TEST(Count, Examples) {
    const auto f = test::worked_example();
    EXPECT_EQ(count_satisfying(f.formula, 3, {{1, false}, {2, false}}), 1u);
    EXPECT_EQ(count_satisfying(f.formula, 3, {{1, true}}), 0u);
    EXPECT_EQ(count_satisfying(f.formula, 3), 1u);
    EXPECT_EQ(count_satisfying(parse_bool_expr("(or V1 (not V1))"), 1), 2u);
    EXPECT_EQ(count_satisfying(parse_bool_expr("(and V1 (not V1))"), 1), 0u);
    // Variables not in the formula still double the count.
    EXPECT_EQ(count_satisfying(parse_bool_expr("V1"), 3), 4u);
    OracleLimits tight;
    tight.max_free_vars = 2;
    EXPECT_THROW(count_satisfying(parse_bool_expr("V1"), 3, {}, tight), CapExceeded);
}

TEST(EMajsat, Examples) {
    auto v = decide_emajsat(test::worked_example());
    EXPECT_TRUE(v.satisfiable);
    EXPECT_EQ(v.witness, (TruthAssignment{{1, false}, {2, false}}));
    EXPECT_EQ(v.best_count, 1u);

    // No existential part: plain majority, with ties counting as satisfied.
    EXPECT_TRUE(decide_emajsat(EMajsatInstance{parse_bool_expr("V1"), 1, 0}).satisfiable);
    EXPECT_FALSE(decide_emajsat(EMajsatInstance{parse_bool_expr("(and V1 V2)"), 2, 0}).satisfiable);
    EXPECT_TRUE(decide_emajsat(EMajsatInstance{parse_bool_expr("(and V1 V2)"), 2, 1}).satisfiable);
    EXPECT_FALSE(decide_emajsat(EMajsatInstance{parse_bool_expr("(and V1 (not V1))"), 1, 1}).satisfiable);
}

TEST(EMajsat, FirstMaximumWins) {
    // Both V1 values give one of two extensions; the all-false prefix is reported.
    auto v = decide_emajsat(EMajsatInstance{parse_bool_expr("(or (and V1 V2) (and (not V1) (not V2)))"), 2, 1});
    EXPECT_TRUE(v.satisfiable);
    EXPECT_EQ(v.witness, (TruthAssignment{{1, false}}));
}

TEST(Maxsat, Examples) {
    auto two = solve_maxsat(MaxsatInstance{1, {{1}, {-1}}, 2});
    EXPECT_EQ(two.max_satisfied, 1u);
    auto three = solve_maxsat(MaxsatInstance{2, {{1, 2}, {-1}, {-2, 1}}, 1});
    EXPECT_EQ(three.max_satisfied, 2u);
    auto all = solve_maxsat(MaxsatInstance{3, {{1}, {2, 3}, {-3}}, 3});
    EXPECT_EQ(all.max_satisfied, 3u);
    EXPECT_EQ(all.witness, (TruthAssignment{{1, true}, {2, true}, {3, false}}));
}

TEST(GridOracle, CoinAndChain) {
    Network coin = test::coin();
    auto g = grid_tune_oracle(coin, {ParameterRef{0, 0, 0}}, {{0, 0}}, {}, R("1/4"));
    EXPECT_EQ(g.max, 1);
    EXPECT_EQ(g.min, 0);
    EXPECT_EQ(g.evaluated, 5u);
    EXPECT_EQ(g.argmax, (std::vector<Rational>{1}));

    Network chain = test::chain();
    auto h = grid_tune_oracle(chain, {parse_parameter(chain, "A=a")}, parse_evidence(chain, "A=a"),
                              parse_evidence(chain, "B=b"), R("1/2"));
    EXPECT_EQ(h.max, 1);
    EXPECT_EQ(h.min, 0);
    EXPECT_EQ(h.argmin, (std::vector<Rational>{0}));

    EXPECT_THROW(grid_tune_oracle(coin, {ParameterRef{0, 0, 0}}, {{0, 0}}, {}, R("2/5")), InvalidArgument);
    OracleLimits none;
    none.max_grid_params = 0;
    EXPECT_THROW(grid_tune_oracle(coin, {ParameterRef{0, 0, 0}}, {{0, 0}}, {}, R("1/2"), none), CapExceeded);
}

TEST(GridOracle, AllZeroEvidence) {
    Network net = parse_network(R"(
network z
variable A values x y
variable B values x y
cpt A
  1/2 1/2
cpt B given A
  x : 1 0
  y : 1 0
)");
    EXPECT_THROW(grid_tune_oracle(net, {ParameterRef{0, 0, 0}}, {{0, 0}}, {{1, 1}}, R("1/2")), ZeroEvidence);
}
