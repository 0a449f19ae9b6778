#pragma once

#include "bnsens/distance.hpp"
#include "bnsens/network.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bnsens {

enum class Variant {
    Tuning,         ///< exists x: Pr_x(c|e) >= q
    Range,          ///< exists x, x': Pr_x(c|e) - Pr_x'(c|e) >= q
    EvidenceRange,  ///< exists x: Pr_x(c|e1) - Pr_x(c|e2) >= q
    MinRange,       ///< Range with D_E(x, x') <= r
    MinChangeRange, ///< Range with D(Pr_x, Pr_x') <= s
    Mode,           ///< exists x, x': mode(Pr_x(C|e)) != mode(Pr_x'(C|e))
    EvidenceMode,   ///< exists x: mode(Pr_x(C|e1)) != mode(Pr_x(C|e2))
    MinMode,        ///< Mode with D_E(x, x') <= r
    MinChangeMode,  ///< Mode with D(Pr_x, Pr_x') <= s
};

enum class DistanceKind { Euclidean, ChanDarwiche, KullbackLeibler };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view tag);
std::string_view to_string(DistanceKind k);
std::optional<DistanceKind> parse_distance_kind(std::string_view tag);

bool is_mode_variant(Variant v);

struct TuningProblem {
    Network net;
    std::vector<ParameterRef> params;
    std::size_t output = 0;       ///< C
    std::size_t output_value = 0; ///< c; ignored by the mode variants
    Evidence evidence;            ///< e, or e1 for the evidence variants
    Evidence evidence2;           ///< e2 for the evidence variants
    Rational q = 0;
    std::optional<Rational> r;    ///< nullopt means +inf
    std::optional<Rational> s;    ///< nullopt means +inf
    DistanceKind distance = DistanceKind::ChanDarwiche;
    Variant variant = Variant::Tuning;
};

enum class Answer {
    Yes,            ///< exact positive answer
    No,             ///< exact negative answer
    YesByWitness,   ///< positive answer found by search, witness verified exactly
    NoAtResolution, ///< search exhausted at the reported grid resolution
};

std::string_view to_string(Answer a);

struct Completeness {
    bool exact = true;
    Rational grid_step = 0; ///< resolution h actually searched when not exact; 1 means vertices only
};

struct Decision {
    Answer answer = Answer::No;
    std::vector<ParameterAssignment> witnesses;
    std::optional<Rational> achieved;
    /// Mode of each witness, for the mode variants (two per witness for EvidenceMode).
    std::vector<std::size_t> witness_modes;
    Completeness completeness;
    /// 0/1 settings where the evidence (either evidence set) has probability zero.
    std::vector<ParameterAssignment> zero_evidence_vertices;

    bool yes() const { return answer == Answer::Yes || answer == Answer::YesByWitness; }
};

struct TuningConfig {
    std::size_t vertex_cap = 20;
    std::size_t grid_param_cap = 6;
    /// Grid resolution h = 1/m; must be the reciprocal of a positive integer.
    Rational grid_step{1, 16};
    /// Single-point searches coarsen h until the grid has at most this many points.
    std::size_t grid_point_budget = 4096;
    /// Pair searches coarsen h until the number of ordered pairs is at most this.
    std::size_t grid_pair_budget = 65536;
    /// Number of best grid points used as starts for critical-point refinement.
    std::size_t refinement_starts = 4;
    DistanceConfig distance;
};

struct VertexExtremes {
    Rational max, min;
    ParameterAssignment argmax, argmin;
    std::vector<ParameterAssignment> zero_evidence;
};

/// Extremes of Pr_x(c|e) over every 0/1 setting of `params`, skipping settings
/// with Pr_x(e) = 0. Ties go to the lexicographically smallest vertex (first
/// parameter most significant). Throws ZeroEvidence if no vertex has positive
/// evidence probability and CapExceeded above the vertex cap.
VertexExtremes vertex_extremes(const Network& net, std::span<const ParameterRef> params, const Evidence& c,
                               const Evidence& e, const TuningConfig& config = {});

/// Index of the most probable value; ties go to the earliest value.
std::size_t mode_of(std::span<const Rational> probabilities);

Decision solve_parameter_tuning(const TuningProblem& problem, const TuningConfig& config = {});
Decision solve_tuning_range(const TuningProblem& problem, const TuningConfig& config = {});
Decision solve_evidence_tuning_range(const TuningProblem& problem, const TuningConfig& config = {});
/// MinRange and MinChangeRange; with r (resp. s) = +inf identical to solve_tuning_range.
Decision solve_minimal_range(const TuningProblem& problem, const TuningConfig& config = {});
/// Mode, EvidenceMode, MinMode and MinChangeMode.
Decision solve_mode_tuning(const TuningProblem& problem, const TuningConfig& config = {});

/// Dispatches on problem.variant.
Decision solve(const TuningProblem& problem, const TuningConfig& config = {});

/// Re-runs every witness of a positive decision through apply_assignment and
/// conditional and checks the claimed inequality (and distance bound) exactly.
/// Negative decisions verify trivially.
bool verify_decision(const TuningProblem& problem, const Decision& decision, const TuningConfig& config = {});

} // namespace bnsens
