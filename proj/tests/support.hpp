#pragma once

#include "bnsens/boolexpr.hpp"
#include "bnsens/network.hpp"
#include "bnsens/network_io.hpp"
#include "bnsens/rational.hpp"

#include <string>

namespace bnsens::test {

inline Rational R(const char* text) {
    auto q = parse_rational(text);
    if (!q) throw std::invalid_argument(text);
    return *q;
}

// A -> B with Pr(a) = 1/2, Pr(b|a) = 3/4, Pr(b|na) = 1/4.
inline Network chain() {
    return parse_network(R"(
network chain
variable A values a na
variable B values b nb
cpt A
  1/2 1/2
cpt B given A
  a  : 3/4 1/4
  na : 1/4 3/4
)");
}

// phi = not(V1 or V2) and not V3, V_E = {V1, V2}, V_M = {V3}.
inline EMajsatInstance worked_example() {
    return EMajsatInstance{parse_bool_expr("(and (not (or V1 V2)) (not V3))"), 3, 2};
}

// One uniform binary variable.
inline Network coin(const std::string& p = "1/2") {
    return parse_network("network coin\nvariable X values t f\ncpt X\n  " + p + " " + to_string(1 - R(p.c_str())) + "\n");
}

} // namespace bnsens::test
