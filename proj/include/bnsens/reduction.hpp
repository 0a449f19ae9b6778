#pragma once

#include "bnsens/boolexpr.hpp"
#include "bnsens/network.hpp"
#include "bnsens/tuning.hpp"

#include <map>
#include <optional>
#include <vector>

namespace bnsens {

/// A gadget network together with the tuning question it encodes.
struct CompiledInstance {
    Network net;
    std::vector<ParameterRef> params;
    std::size_t query = 0;       ///< C, or V_phi for the TUNING compile
    std::size_t query_value = 0; ///< always the "true" value
    Rational q;
    Evidence evidence;  ///< e1 = {E=true} for the evidence variants
    Evidence evidence2; ///< e2 = {E=false}
    Variant variant = Variant::Range;
    /// params[i] encodes formula variable decode[i] (1-based); 0 marks the selector X_S.
    std::vector<std::size_t> decode;

    TuningProblem problem() const;
};

/// Formula network: one uniform root per variable, one deterministic node per
/// operator. RANGE-like variants add S and C = S and V_phi; TUNING queries
/// V_phi directly; EVIDENCE_* variants use an evidence root E instead of S.
/// The MIN_* variants compile like RANGE/MODE with r = s = +inf.
CompiledInstance compile_emajsat(const EMajsatInstance& inst, Variant variant);

/// Polytree clause-selector chain. The query is C = true and q = k/m.
CompiledInstance compile_maxsat(const MaxsatInstance& inst);

/// Formula-variable truth values read off a 0/1 parameter setting, keyed by
/// 1-based variable index. Throws InvalidArgument on fractional values.
std::map<std::size_t, bool> decode_witness(const CompiledInstance& ci, const ParameterAssignment& x);

/// Inverse of decode_witness: a 0/1 setting with the given variable values and
/// the selector (when present) set to `selector`. Unlisted variables get 0.
ParameterAssignment encode_assignment(const CompiledInstance& ci, const std::map<std::size_t, bool>& values,
                                      bool selector = true);

} // namespace bnsens
