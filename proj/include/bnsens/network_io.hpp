#pragma once

#include "bnsens/network.hpp"

#include <string>
#include <string_view>

namespace bnsens {

// Line-oriented network text format, '#' starts a comment:
//
//   network <name>
//   variable <name> values <v1> <v2> ...
//   cpt <var> [given <p1> <p2> ...]
//     [<p1val> <p2val> :] <r1> <r2> ...
//
// One row line per parent configuration; rationals are "a/b" or integers.

/// Throws ParseError for syntax problems and ValidationError when the parsed
/// network violates an invariant reported by validate_network.
Network parse_network(std::string_view text);

/// Variables in declaration order, rows in row-major order over parent value indices.
std::string serialize_network(const Network& net);

Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

} // namespace bnsens
