#include "bnsens/tuning.hpp"

#include "bnsens/error.hpp"
#include "bnsens/inference.hpp"
#include "bnsens/sensitivity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace bnsens {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 9> kVariantTags{{
    {Variant::Tuning, "TUNING"},
    {Variant::Range, "RANGE"},
    {Variant::EvidenceRange, "EVIDENCE_RANGE"},
    {Variant::MinRange, "MIN_RANGE"},
    {Variant::MinChangeRange, "MIN_CHANGE_RANGE"},
    {Variant::Mode, "MODE"},
    {Variant::EvidenceMode, "EVIDENCE_MODE"},
    {Variant::MinMode, "MIN_MODE"},
    {Variant::MinChangeMode, "MIN_CHANGE_MODE"},
}};

constexpr std::array<std::pair<DistanceKind, std::string_view>, 3> kDistanceTags{{
    {DistanceKind::Euclidean, "euclidean"},
    {DistanceKind::ChanDarwiche, "cd"},
    {DistanceKind::KullbackLeibler, "kl"},
}};

} // namespace

std::string_view to_string(Variant v) {
    for (auto [tag_v, tag] : kVariantTags)
        if (tag_v == v) return tag;
    return "?";
}

std::optional<Variant> parse_variant(std::string_view tag) {
    for (auto [v, t] : kVariantTags)
        if (t == tag) return v;
    return std::nullopt;
}

std::string_view to_string(DistanceKind k) {
    for (auto [tag_k, tag] : kDistanceTags)
        if (tag_k == k) return tag;
    return "?";
}

std::optional<DistanceKind> parse_distance_kind(std::string_view tag) {
    for (auto [k, t] : kDistanceTags)
        if (t == tag) return k;
    return std::nullopt;
}

bool is_mode_variant(Variant v) {
    return v == Variant::Mode || v == Variant::EvidenceMode || v == Variant::MinMode || v == Variant::MinChangeMode;
}

std::string_view to_string(Answer a) {
    switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::YesByWitness: return "yes-by-witness";
    case Answer::NoAtResolution: return "no-at-resolution";
    }
    return "?";
}

std::size_t mode_of(std::span<const Rational> probabilities) {
    if (probabilities.empty()) throw InvalidArgument("mode of an empty distribution");
    std::size_t best = 0;
    for (std::size_t i = 1; i < probabilities.size(); ++i)
        if (probabilities[i] > probabilities[best]) best = i;
    return best;
}

namespace {

using Point = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Parameter space helpers

void check_params(const Network& net, std::span<const ParameterRef> params, const TuningConfig& config) {
    if (params.size() > config.vertex_cap)
        throw CapExceeded(std::to_string(params.size()) + " parameters exceed the vertex cap of " +
                          std::to_string(config.vertex_cap));
    for (const auto& p : params) {
        if (p.variable >= net.size() || p.row >= net.row_count(p.variable) || p.value >= net.cardinality(p.variable))
            throw InvalidArgument("parameter does not address a CPT entry");
    }
}

ParameterAssignment to_assignment(std::span<const ParameterRef> params, std::span<const Rational> point) {
    ParameterAssignment a;
    for (std::size_t i = 0; i < params.size(); ++i) a[params[i]] = point[i];
    return a;
}

// Lexicographic vertex index (first parameter most significant) to corner mask (bit i = parameter i).
std::size_t lex_to_mask(std::size_t lex, std::size_t n) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
        if ((lex >> (n - 1 - i)) & 1) mask |= std::size_t{1} << i;
    return mask;
}

Point vertex_point(std::size_t mask, std::size_t n) {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? 1 : 0;
    return p;
}

bool is_vertex(const Point& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0 || x == 1; });
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (out > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
        out *= base;
    }
    return out;
}

// Number of grid divisions per axis: starts at 1/h and shrinks until the grid fits the budget.
std::size_t grid_divisions(const TuningConfig& config, std::size_t n, std::size_t budget) {
    if (config.grid_step <= 0 || config.grid_step > 1 || config.grid_step.get_num() != 1)
        throw InvalidArgument("grid step must be 1/m for a positive integer m");
    std::size_t m = config.grid_step.get_den().get_ui();
    while (m > 1 && saturating_pow(m + 1, n) > budget) --m;
    return m;
}

// Visits {0, 1/m, ..., 1}^n in lexicographic order.
void for_each_grid_point(std::size_t n, std::size_t m, const std::function<bool(const Point&)>& visit) {
    std::vector<std::size_t> digit(n, 0);
    Point p(n, Rational(0));
    while (true) {
        if (!visit(p)) return;
        std::size_t k = n;
        while (k-- > 0) {
            if (++digit[k] <= m) {
                p[k] = ratio(static_cast<unsigned long>(digit[k]), static_cast<unsigned long>(m));
                break;
            }
            digit[k] = 0;
            p[k] = 0;
        }
        if (k == std::numeric_limits<std::size_t>::max()) return;
    }
}

// ---------------------------------------------------------------------------
// Unnormalized quantities Pr_x(evidence set), exact at corners and multilinear in x.

struct Quantities {
    std::vector<std::vector<Rational>> corners;
    std::vector<MultilinearPolynomial> polys;

    std::vector<Rational> at_vertex(std::size_t mask) const {
        std::vector<Rational> out;
        out.reserve(corners.size());
        for (const auto& c : corners) out.push_back(c[mask]);
        return out;
    }
    std::vector<Rational> at(const Point& x) const {
        std::vector<Rational> out;
        out.reserve(polys.size());
        for (const auto& p : polys) out.push_back(p.eval(x));
        return out;
    }
    bool identically_zero(std::size_t q) const {
        return std::all_of(corners[q].begin(), corners[q].end(), [](const Rational& v) { return v == 0; });
    }
};

Quantities build_quantities(const Network& net, std::span<const ParameterRef> params, const std::vector<Evidence>& sets) {
    Quantities out;
    for (const auto& ev : sets) {
        out.corners.push_back(corner_values(net, params, ev));
        out.polys.push_back(MultilinearPolynomial::from_corners(out.corners.back()));
    }
    return out;
}

Evidence query_with(const TuningProblem& p, const Evidence& e, std::size_t value) {
    if (e.contains(p.output)) throw InvalidArgument("output variable is part of the evidence");
    return merge_evidence(Evidence{{p.output, value}}, e);
}

// Layout: [Pr(c,e), Pr(e)]
Quantities conditional_quantities(const TuningProblem& p) {
    return build_quantities(p.net, p.params, {query_with(p, p.evidence, p.output_value), p.evidence});
}

// Layout: [Pr(c,e1), Pr(e1), Pr(c,e2), Pr(e2)]
Quantities evidence_pair_quantities(const TuningProblem& p) {
    return build_quantities(p.net, p.params,
                            {query_with(p, p.evidence, p.output_value), p.evidence,
                             query_with(p, p.evidence2, p.output_value), p.evidence2});
}

// Layout: [Pr(C=v0,e) ... Pr(C=vk,e)] for each evidence set in turn.
Quantities mode_quantities(const TuningProblem& p, bool two_sets) {
    std::vector<Evidence> sets;
    const std::size_t card = p.net.cardinality(p.output);
    for (std::size_t v = 0; v < card; ++v) sets.push_back(query_with(p, p.evidence, v));
    if (two_sets)
        for (std::size_t v = 0; v < card; ++v) sets.push_back(query_with(p, p.evidence2, v));
    return build_quantities(p.net, p.params, sets);
}

std::optional<Rational> ratio_if_defined(const Rational& num, const Rational& den) {
    if (den == 0) return std::nullopt;
    return num / den;
}

// Mode of the slice [begin, begin + card) of the joint values, or nullopt if the evidence mass is zero.
std::optional<std::size_t> mode_in(const std::vector<Rational>& values, std::size_t begin, std::size_t card) {
    Rational total = 0;
    for (std::size_t v = 0; v < card; ++v) total += values[begin + v];
    if (total == 0) return std::nullopt;
    return mode_of(std::span<const Rational>(values).subspan(begin, card));
}

void check_variant(const TuningProblem& p, std::initializer_list<Variant> allowed) {
    if (std::find(allowed.begin(), allowed.end(), p.variant) == allowed.end())
        throw InvalidArgument("solver does not handle variant " + std::string(to_string(p.variant)));
}

void check_problem(const TuningProblem& p, const TuningConfig& config) {
    require_valid(p.net);
    check_params(p.net, p.params, config);
    if (p.output >= p.net.size() || p.output_value >= p.net.cardinality(p.output))
        throw InvalidArgument("output variable or value out of range");
    check_evidence(p.net, p.evidence);
    check_evidence(p.net, p.evidence2);
    if (!in_unit_interval(p.q) && !is_mode_variant(p.variant)) throw InvalidArgument("threshold q outside [0,1]");
    if ((p.r && *p.r < 0) || (p.s && *p.s < 0)) throw InvalidArgument("distance bounds must be non-negative");
}

void ensure_verified(const TuningProblem& p, const Decision& d, const TuningConfig& config) {
    if (!verify_decision(p, d, config)) throw std::logic_error("tuning witness failed exact re-verification");
}

Completeness grid_completeness(std::size_t m) {
    return Completeness{false, ratio(1UL, static_cast<unsigned long>(m))};
}

// ---------------------------------------------------------------------------
// Vertex extremes

VertexExtremes extremes_from(const Quantities& qs, std::span<const ParameterRef> params) {
    const std::size_t n = params.size();
    VertexExtremes out;
    bool found = false;
    for (std::size_t lex = 0; lex < (std::size_t{1} << n); ++lex) {
        const std::size_t mask = lex_to_mask(lex, n);
        const Rational& den = qs.corners[1][mask];
        const Point point = vertex_point(mask, n);
        if (den == 0) {
            out.zero_evidence.push_back(to_assignment(params, point));
            continue;
        }
        Rational value = qs.corners[0][mask] / den;
        if (!found || value > out.max) {
            out.max = value;
            out.argmax = to_assignment(params, point);
        }
        if (!found || value < out.min) {
            out.min = value;
            out.argmin = to_assignment(params, point);
        }
        found = true;
    }
    if (!found) throw ZeroEvidence("evidence has probability zero at every vertex");
    return out;
}

Decision range_decision(const TuningProblem& p, const TuningConfig& config) {
    auto ext = extremes_from(conditional_quantities(p), p.params);
    Decision d;
    Rational gap = ext.max - ext.min;
    d.answer = gap >= p.q ? Answer::Yes : Answer::No;
    d.achieved = gap;
    if (d.yes()) d.witnesses = {ext.argmax, ext.argmin};
    d.zero_evidence_vertices = std::move(ext.zero_evidence);
    (void)config;
    return d;
}

// Exact mode search over vertices; the mode variants without a distance bound.
Decision vertex_mode_decision(const TuningProblem& p) {
    const std::size_t n = p.params.size();
    const std::size_t card = p.net.cardinality(p.output);
    const Quantities qs = mode_quantities(p, false);
    Decision d;
    std::optional<std::pair<Point, std::size_t>> first;
    bool any = false;
    for (std::size_t lex = 0; lex < (std::size_t{1} << n); ++lex) {
        const std::size_t mask = lex_to_mask(lex, n);
        const Point point = vertex_point(mask, n);
        auto mode = mode_in(qs.at_vertex(mask), 0, card);
        if (!mode) {
            d.zero_evidence_vertices.push_back(to_assignment(p.params, point));
            continue;
        }
        any = true;
        if (!first) {
            first.emplace(point, *mode);
        } else if (*mode != first->second && !d.yes()) {
            d.answer = Answer::Yes;
            d.witnesses = {to_assignment(p.params, first->first), to_assignment(p.params, point)};
            d.witness_modes = {first->second, *mode};
        }
    }
    if (!any) throw ZeroEvidence("evidence has probability zero at every vertex");
    return d;
}

// ---------------------------------------------------------------------------
// Distance bound for the minimal variants

std::optional<Rational> distance_bound(const TuningProblem& p) {
    switch (p.variant) {
    case Variant::MinRange:
    case Variant::MinMode: return p.r;
    case Variant::MinChangeRange:
    case Variant::MinChangeMode: return p.s;
    default: return std::nullopt;
    }
}

DistanceKind distance_kind(const TuningProblem& p) {
    if (p.variant == Variant::MinRange || p.variant == Variant::MinMode) return DistanceKind::Euclidean;
    return p.distance;
}

bool within_bound(const TuningProblem& p, const TuningConfig& config, const ParameterAssignment& x,
                  const ParameterAssignment& x2) {
    auto bound = distance_bound(p);
    if (!bound) return true;
    switch (distance_kind(p)) {
    case DistanceKind::Euclidean: return d_euclidean(x, x2, config.distance).squared <= *bound * *bound;
    case DistanceKind::ChanDarwiche: return cd_within(p.net, x, x2, *bound, config.distance);
    case DistanceKind::KullbackLeibler: return kl_within(p.net, x, x2, *bound, config.distance);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Pair search for the distance-bounded variants

struct Candidate {
    Point point;
    Rational value;      // Pr_x(c|e) for range variants
    std::size_t mode{};  // for mode variants
    bool vertex = false;
};

Decision pair_search(const TuningProblem& p, const TuningConfig& config) {
    const bool mode = is_mode_variant(p.variant);
    const std::size_t n = p.params.size();
    const std::size_t card = p.net.cardinality(p.output);
    const Quantities qs = mode ? mode_quantities(p, false) : conditional_quantities(p);

    auto make = [&](const Point& x, const std::vector<Rational>& vals) -> std::optional<Candidate> {
        Candidate c{x, 0, 0, is_vertex(x)};
        if (mode) {
            auto m = mode_in(vals, 0, card);
            if (!m) return std::nullopt;
            c.mode = *m;
        } else {
            auto v = ratio_if_defined(vals[0], vals[1]);
            if (!v) return std::nullopt;
            c.value = *v;
        }
        return c;
    };
    auto qualifies = [&](const Candidate& a, const Candidate& b) {
        return mode ? a.mode != b.mode : a.value - b.value >= p.q;
    };

    Decision d;
    std::vector<Candidate> vertices;
    for (std::size_t lex = 0; lex < (std::size_t{1} << n); ++lex) {
        const std::size_t mask = lex_to_mask(lex, n);
        const Point x = vertex_point(mask, n);
        if (auto c = make(x, qs.at_vertex(mask)))
            vertices.push_back(std::move(*c));
        else
            d.zero_evidence_vertices.push_back(to_assignment(p.params, x));
    }
    if (vertices.empty()) throw ZeroEvidence("evidence has probability zero at every vertex");

    auto accept = [&](const Candidate& a, const Candidate& b) {
        if (!qualifies(a, b)) return false;
        auto xa = to_assignment(p.params, a.point), xb = to_assignment(p.params, b.point);
        if (!within_bound(p, config, xa, xb)) return false;
        d.answer = Answer::YesByWitness;
        d.witnesses = {std::move(xa), std::move(xb)};
        if (mode)
            d.witness_modes = {a.mode, b.mode};
        else
            d.achieved = a.value - b.value;
        return true;
    };

    const std::size_t root_budget = static_cast<std::size_t>(std::sqrt(static_cast<double>(config.grid_pair_budget)));
    const bool use_grid = n <= config.grid_param_cap;
    const std::size_t m = use_grid ? grid_divisions(config, n, std::max<std::size_t>(root_budget, 1)) : 1;
    d.completeness = grid_completeness(m);

    for (const auto& a : vertices)
        for (const auto& b : vertices)
            if (accept(a, b)) return d;

    if (use_grid && m > 1) {
        std::vector<Candidate> grid;
        for_each_grid_point(n, m, [&](const Point& x) {
            if (auto c = make(x, qs.at(x))) grid.push_back(std::move(*c));
            return true;
        });
        for (const auto& a : grid)
            for (const auto& b : grid) {
                if (a.vertex && b.vertex) continue;
                if (accept(a, b)) return d;
            }
    }
    d.answer = Answer::NoAtResolution;
    return d;
}

// ---------------------------------------------------------------------------
// Single-point search with critical-point refinement (EvidenceRange)

struct Scored {
    Rational value;
    Point point;
};

// Keeps the k best points; ties keep the earlier one.
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) {}
    void offer(const Rational& value, const Point& point) {
        if (k_ == 0) return;
        if (items_.size() == k_ && value <= items_.back().value) return;
        auto it = std::find_if(items_.begin(), items_.end(), [&](const Scored& s) { return value > s.value; });
        items_.insert(it, Scored{value, point});
        if (items_.size() > k_) items_.pop_back();
    }
    const std::vector<Scored>& items() const { return items_; }

private:
    std::size_t k_;
    std::vector<Scored> items_;
};

std::optional<Rational> evidence_gap(const std::vector<Rational>& v) {
    if (v[1] == 0 || v[3] == 0) return std::nullopt;
    return v[0] / v[1] - v[2] / v[3];
}

// Rational approximation of a real number held by MPFR.
Rational approximate(const BigFloat& x) { return x.to_rational(); }

// Stationary points in (0,1) of t -> N1(t)/D1(t) - N2(t)/D2(t) with each
// quantity linear in t. The derivative's numerator is
// K1*D2(t)^2 - K2*D1(t)^2 with K = N'D - ND', a quadratic in t.
std::vector<Rational> stationary_points(const std::vector<Rational>& at0, const std::vector<Rational>& at1,
                                        mpfr_prec_t prec) {
    auto slope = [&](std::size_t i) { return at1[i] - at0[i]; };
    const Rational k1 = slope(0) * at0[1] - at0[0] * slope(1);
    const Rational k2 = slope(2) * at0[3] - at0[2] * slope(3);
    const Rational c1 = at0[1], d1 = slope(1), c2 = at0[3], d2 = slope(3);
    const Rational a = k1 * d2 * d2 - k2 * d1 * d1;
    const Rational b = 2 * (k1 * c2 * d2 - k2 * c1 * d1);
    const Rational c = k1 * c2 * c2 - k2 * c1 * c1;

    std::vector<Rational> roots;
    if (a == 0) {
        if (b != 0) roots.push_back(-c / b);
    } else {
        const Rational disc = b * b - 4 * a * c;
        if (disc >= 0) {
            BigFloat sq = BigFloat::from_rational(disc, prec, MPFR_RNDN);
            mpfr_sqrt(sq.get(), sq.get(), MPFR_RNDN);
            Rational root = approximate(sq);
            // Exact when the discriminant is a rational square.
            mpz_class num_root, den_root;
            mpz_sqrt(num_root.get_mpz_t(), disc.get_num().get_mpz_t());
            mpz_sqrt(den_root.get_mpz_t(), disc.get_den().get_mpz_t());
            if (num_root * num_root == disc.get_num() && den_root * den_root == disc.get_den())
                root = ratio(num_root, den_root);
            roots.push_back((-b + root) / (2 * a));
            roots.push_back((-b - root) / (2 * a));
        }
    }
    std::vector<Rational> out;
    for (auto& t : roots) {
        t.canonicalize();
        if (t > 0 && t < 1) out.push_back(t);
    }
    return out;
}

Decision evidence_range_search(const TuningProblem& p, const TuningConfig& config) {
    const std::size_t n = p.params.size();
    const Quantities qs = evidence_pair_quantities(p);
    if (qs.identically_zero(1) || qs.identically_zero(3))
        throw ZeroEvidence("an evidence set has probability zero for every parameter setting");

    Decision d;
    const bool use_grid = n <= config.grid_param_cap;
    const std::size_t m = use_grid ? grid_divisions(config, n, config.grid_point_budget) : 1;
    d.completeness = grid_completeness(m);

    std::optional<Scored> best;
    TopK starts(config.refinement_starts);
    auto consider = [&](const Rational& value, const Point& x) {
        if (!best || value > best->value) best = Scored{value, x};
        starts.offer(value, x);
        if (value >= p.q) {
            d.answer = Answer::YesByWitness;
            d.witnesses = {to_assignment(p.params, x)};
            d.achieved = value;
            return true;
        }
        return false;
    };

    for (std::size_t lex = 0; lex < (std::size_t{1} << n); ++lex) {
        const std::size_t mask = lex_to_mask(lex, n);
        const Point x = vertex_point(mask, n);
        auto g = evidence_gap(qs.at_vertex(mask));
        if (!g) {
            d.zero_evidence_vertices.push_back(to_assignment(p.params, x));
            continue;
        }
        if (consider(*g, x)) return d;
    }

    if (use_grid && m > 1) {
        bool done = false;
        for_each_grid_point(n, m, [&](const Point& x) {
            if (is_vertex(x)) return true;
            if (auto g = evidence_gap(qs.at(x)); g && consider(*g, x)) {
                done = true;
                return false;
            }
            return true;
        });
        if (done) return d;
    }

    // Coordinate ascent through exact stationary points of each one-dimensional slice.
    for (const auto& start : starts.items()) {
        Point x = start.point;
        Rational value = start.value;
        for (std::size_t round = 0; round < 2 * n + 2; ++round) {
            bool improved = false;
            for (std::size_t i = 0; i < n; ++i) {
                Point lo = x, hi = x;
                lo[i] = 0;
                hi[i] = 1;
                const auto at0 = qs.at(lo), at1 = qs.at(hi);
                for (const auto& t : stationary_points(at0, at1, config.distance.precision_bits)) {
                    Point y = x;
                    y[i] = t;
                    auto g = evidence_gap(qs.at(y));
                    if (!g || *g <= value) continue;
                    value = *g;
                    x = std::move(y);
                    improved = true;
                    if (consider(value, x)) return d;
                }
            }
            if (!improved) break;
        }
    }

    d.answer = Answer::NoAtResolution;
    if (best) d.achieved = best->value;
    return d;
}

// EvidenceMode: a single x with different modes under e1 and e2.
Decision evidence_mode_search(const TuningProblem& p, const TuningConfig& config) {
    const std::size_t n = p.params.size();
    const std::size_t card = p.net.cardinality(p.output);
    const Quantities qs = mode_quantities(p, true);

    Decision d;
    const bool use_grid = n <= config.grid_param_cap;
    const std::size_t m = use_grid ? grid_divisions(config, n, config.grid_point_budget) : 1;
    d.completeness = grid_completeness(m);

    auto consider = [&](const Point& x, const std::vector<Rational>& vals) {
        auto m1 = mode_in(vals, 0, card), m2 = mode_in(vals, card, card);
        if (!m1 || !m2 || *m1 == *m2) return false;
        d.answer = Answer::YesByWitness;
        d.witnesses = {to_assignment(p.params, x)};
        d.witness_modes = {*m1, *m2};
        return true;
    };

    bool any = false;
    for (std::size_t lex = 0; lex < (std::size_t{1} << n); ++lex) {
        const std::size_t mask = lex_to_mask(lex, n);
        const Point x = vertex_point(mask, n);
        auto vals = qs.at_vertex(mask);
        if (!mode_in(vals, 0, card) || !mode_in(vals, card, card)) {
            d.zero_evidence_vertices.push_back(to_assignment(p.params, x));
            continue;
        }
        any = true;
        if (consider(x, vals)) return d;
    }
    if (!any && qs.polys.size() == 2 * card) {
        bool e1_dead = true, e2_dead = true;
        for (std::size_t v = 0; v < card; ++v) {
            e1_dead = e1_dead && qs.identically_zero(v);
            e2_dead = e2_dead && qs.identically_zero(card + v);
        }
        if (e1_dead || e2_dead) throw ZeroEvidence("an evidence set has probability zero for every parameter setting");
    }
    if (use_grid && m > 1) {
        bool done = false;
        for_each_grid_point(n, m, [&](const Point& x) {
            if (is_vertex(x)) return true;
            if (consider(x, qs.at(x))) {
                done = true;
                return false;
            }
            return true;
        });
        if (done) return d;
    }
    d.answer = Answer::NoAtResolution;
    return d;
}

// ---------------------------------------------------------------------------
// Verification through direct inference

std::optional<Rational> conditional_at(const TuningProblem& p, const ParameterAssignment& x, const Evidence& e) {
    try {
        return conditional(apply_assignment(p.net, x), Evidence{{p.output, p.output_value}}, e).value;
    } catch (const ZeroEvidence&) {
        return std::nullopt;
    }
}

std::optional<std::size_t> mode_at(const TuningProblem& p, const ParameterAssignment& x, const Evidence& e) {
    const Network net = apply_assignment(p.net, x);
    if (marginal(net, e) == 0) return std::nullopt;
    std::vector<Rational> probs;
    for (std::size_t v = 0; v < net.cardinality(p.output); ++v)
        probs.push_back(marginal(net, merge_evidence(Evidence{{p.output, v}}, e)));
    return mode_of(probs);
}

bool is_vertex_assignment(const ParameterAssignment& x) {
    return std::all_of(x.begin(), x.end(), [](const auto& kv) { return kv.second == 0 || kv.second == 1; });
}

} // namespace

VertexExtremes vertex_extremes(const Network& net, std::span<const ParameterRef> params, const Evidence& c,
                               const Evidence& e, const TuningConfig& config) {
    require_valid(net);
    check_params(net, params, config);
    check_evidence(net, c);
    check_evidence(net, e);
    return extremes_from(build_quantities(net, params, {merge_evidence(c, e), e}), params);
}

Decision solve_parameter_tuning(const TuningProblem& p, const TuningConfig& config) {
    check_variant(p, {Variant::Tuning});
    check_problem(p, config);
    auto ext = extremes_from(conditional_quantities(p), p.params);
    Decision d;
    d.answer = ext.max >= p.q ? Answer::Yes : Answer::No;
    d.achieved = ext.max;
    if (d.yes()) d.witnesses = {ext.argmax};
    d.zero_evidence_vertices = std::move(ext.zero_evidence);
    ensure_verified(p, d, config);
    return d;
}

Decision solve_tuning_range(const TuningProblem& p, const TuningConfig& config) {
    check_variant(p, {Variant::Range});
    check_problem(p, config);
    Decision d = range_decision(p, config);
    ensure_verified(p, d, config);
    return d;
}

Decision solve_evidence_tuning_range(const TuningProblem& p, const TuningConfig& config) {
    check_variant(p, {Variant::EvidenceRange});
    check_problem(p, config);
    Decision d = evidence_range_search(p, config);
    ensure_verified(p, d, config);
    return d;
}

Decision solve_minimal_range(const TuningProblem& p, const TuningConfig& config) {
    check_variant(p, {Variant::MinRange, Variant::MinChangeRange});
    check_problem(p, config);
    Decision d = distance_bound(p) ? pair_search(p, config) : range_decision(p, config);
    ensure_verified(p, d, config);
    return d;
}

Decision solve_mode_tuning(const TuningProblem& p, const TuningConfig& config) {
    check_variant(p, {Variant::Mode, Variant::EvidenceMode, Variant::MinMode, Variant::MinChangeMode});
    check_problem(p, config);
    Decision d;
    if (p.variant == Variant::EvidenceMode)
        d = evidence_mode_search(p, config);
    else if (distance_bound(p))
        d = pair_search(p, config);
    else
        d = vertex_mode_decision(p);
    ensure_verified(p, d, config);
    return d;
}

Decision solve(const TuningProblem& p, const TuningConfig& config) {
    switch (p.variant) {
    case Variant::Tuning: return solve_parameter_tuning(p, config);
    case Variant::Range: return solve_tuning_range(p, config);
    case Variant::EvidenceRange: return solve_evidence_tuning_range(p, config);
    case Variant::MinRange:
    case Variant::MinChangeRange: return solve_minimal_range(p, config);
    case Variant::Mode:
    case Variant::EvidenceMode:
    case Variant::MinMode:
    case Variant::MinChangeMode: return solve_mode_tuning(p, config);
    }
    throw InvalidArgument("unknown variant");
}

bool verify_decision(const TuningProblem& p, const Decision& d, const TuningConfig& config) {
    if (!d.yes()) return true;
    const auto& w = d.witnesses;
    auto pair_gap = [&]() -> bool {
        if (w.size() != 2) return false;
        auto a = conditional_at(p, w[0], p.evidence), b = conditional_at(p, w[1], p.evidence);
        return a && b && *a - *b >= p.q;
    };
    auto pair_modes = [&]() -> bool {
        if (w.size() != 2) return false;
        auto a = mode_at(p, w[0], p.evidence), b = mode_at(p, w[1], p.evidence);
        return a && b && *a != *b;
    };
    switch (p.variant) {
    case Variant::Tuning: {
        if (w.size() != 1) return false;
        auto v = conditional_at(p, w[0], p.evidence);
        return v && *v >= p.q;
    }
    case Variant::Range: return pair_gap() && is_vertex_assignment(w[0]) && is_vertex_assignment(w[1]);
    case Variant::EvidenceRange: {
        if (w.size() != 1) return false;
        auto a = conditional_at(p, w[0], p.evidence), b = conditional_at(p, w[0], p.evidence2);
        return a && b && *a - *b >= p.q;
    }
    case Variant::MinRange:
    case Variant::MinChangeRange: return pair_gap() && within_bound(p, config, w[0], w[1]);
    case Variant::Mode: return pair_modes();
    case Variant::MinMode:
    case Variant::MinChangeMode: return pair_modes() && within_bound(p, config, w[0], w[1]);
    case Variant::EvidenceMode: {
        if (w.size() != 1) return false;
        auto a = mode_at(p, w[0], p.evidence), b = mode_at(p, w[0], p.evidence2);
        return a && b && *a != *b;
    }
    }
    return false;
}

} // namespace bnsens
