#pragma once

#include "bnsens/reduction.hpp"
#include "bnsens/tuning.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bnsens {

/// Tuning instance as written on disk. One `key value` pair per line, `#`
/// comments, keys in any order:
///
///   network   fig1.bn          path, relative to the instance file
///   variant   RANGE
///   param     V1=true          repeatable; "B=b|A=a,C=c" for non-root rows
///   query     C=true           the value is ignored by the mode variants
///   evidence  A=a,B=b          optional (e, or e1)
///   evidence2 E=false          optional (e2)
///   q         1/2
///   r         inf              optional, default inf
///   s         inf              optional, default inf
///   distance  cd               euclidean | cd | kl, default cd
///   decode    V1=true 1        repeatable; param spec -> formula variable, 0 = selector
struct InstanceFile {
    std::string network;
    Variant variant = Variant::Tuning;
    std::vector<std::string> params;
    std::string query;
    std::string evidence;
    std::string evidence2;
    Rational q = 0;
    std::optional<Rational> r;
    std::optional<Rational> s;
    DistanceKind distance = DistanceKind::ChanDarwiche;
    std::vector<std::pair<std::string, std::size_t>> decode;

    bool operator==(const InstanceFile&) const = default;
};

/// Throws ParseError on unknown keys, duplicates of single-valued keys,
/// malformed values and missing network/variant/query/q.
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const InstanceFile& inst);

/// Resolves names against `net`. Throws InvalidArgument on unknown names.
TuningProblem to_problem(const InstanceFile& inst, const Network& net);

/// Sidecar for a compiled reduction whose network is stored at `network_path`.
InstanceFile to_instance_file(const CompiledInstance& ci, const std::string& network_path);

} // namespace bnsens
