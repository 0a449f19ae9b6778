#pragma once

#include "bnsens/bigfloat.hpp"
#include "bnsens/inference.hpp"
#include "bnsens/network.hpp"

#include <optional>
#include <string>

namespace bnsens {

struct DistanceConfig {
    mpfr_prec_t precision_bits = 128;
    /// Interval comparisons double the precision up to this bound.
    mpfr_prec_t max_precision_bits = 8192;
    InferenceLimits limits;
};

/// Either +inf or a finite value enclosed by [lower, upper].
class ExtendedValue {
public:
    static ExtendedValue infinity();
    static ExtendedValue exact_zero(mpfr_prec_t precision);
    ExtendedValue(BigFloat lower, BigFloat upper);

    bool infinite() const { return infinite_; }
    const BigFloat& lower() const { return lower_; }
    const BigFloat& upper() const { return upper_; }
    /// Midpoint of the enclosure.
    BigFloat value() const;
    /// Half-width of the enclosure, rounded up: |true - value()| <= error_bound().
    BigFloat error_bound() const;
    /// True when the enclosure is a single point.
    bool exact() const;
    std::string to_string(int digits = 20) const;

private:
    ExtendedValue() = default;
    bool infinite_ = false;
    BigFloat lower_, upper_;
};

struct EuclideanDistance {
    Rational squared;
    BigFloat lower, upper; ///< directed-rounding enclosure of the square root
};

/// Ratio extremes of Pr_x(w) / Pr_x'(w) over joint states; states with 0/0 are skipped.
struct RatioSummary {
    std::optional<Rational> max_ratio; ///< nullopt encodes +inf
    Rational min_ratio;
    JointAssignment argmax;
    JointAssignment argmin;
};

struct CdDistance {
    RatioSummary ratios;
    ExtendedValue distance;
};

/// Throws InvalidArgument when the key sets differ.
EuclideanDistance d_euclidean(const ParameterAssignment& x, const ParameterAssignment& x2,
                              const DistanceConfig& config = {});

/// Kullback-Leibler divergence of Pr_x from Pr_x', natural logarithm.
ExtendedValue d_kl(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2,
                   const DistanceConfig& config = {});

CdDistance d_cd(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2,
                const DistanceConfig& config = {});

/// D_CD(Pr_x, Pr_x') <= s, decided as max_ratio <= e^s * min_ratio with
/// interval bounds on e^s. Throws PrecisionExhausted if still ambiguous at
/// the maximum precision.
bool cd_within(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2, const Rational& s,
               const DistanceConfig& config = {});

/// D_KL(Pr_x, Pr_x') <= s by refining the enclosure; throws PrecisionExhausted like cd_within.
bool kl_within(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2, const Rational& s,
               const DistanceConfig& config = {});

/// Interval test on ratios alone, exposed for callers that already hold a summary.
bool ratios_within(const RatioSummary& ratios, const Rational& s, const DistanceConfig& config = {});

} // namespace bnsens
