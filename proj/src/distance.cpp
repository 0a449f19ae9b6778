#include "bnsens/distance.hpp"

#include "bnsens/error.hpp"

#include <utility>
#include <vector>

namespace bnsens {

ExtendedValue ExtendedValue::infinity() {
    ExtendedValue v;
    v.infinite_ = true;
    mpfr_set_inf(v.lower_.get(), 1);
    mpfr_set_inf(v.upper_.get(), 1);
    return v;
}

ExtendedValue ExtendedValue::exact_zero(mpfr_prec_t precision) {
    return ExtendedValue(BigFloat::zero(precision), BigFloat::zero(precision));
}

ExtendedValue::ExtendedValue(BigFloat lower, BigFloat upper) : lower_(std::move(lower)), upper_(std::move(upper)) {}

BigFloat ExtendedValue::value() const {
    BigFloat mid(upper_.precision());
    if (infinite_) {
        mpfr_set_inf(mid.get(), 1);
        return mid;
    }
    mpfr_add(mid.get(), lower_.get(), upper_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    return mid;
}

BigFloat ExtendedValue::error_bound() const {
    BigFloat err(upper_.precision());
    if (infinite_) return err;
    // Both halves are rounded up so the bound covers the rounded midpoint too.
    BigFloat mid = value();
    BigFloat a(upper_.precision()), b(upper_.precision());
    mpfr_sub(a.get(), upper_.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(b.get(), mid.get(), lower_.get(), MPFR_RNDU);
    mpfr_max(err.get(), a.get(), b.get(), MPFR_RNDU);
    return err;
}

bool ExtendedValue::exact() const { return !infinite_ && mpfr_equal_p(lower_.get(), upper_.get()); }

std::string ExtendedValue::to_string(int digits) const {
    if (infinite_) return "inf";
    if (exact()) return lower_.to_string(digits);
    return value().to_string(digits) + " +- " + error_bound().to_string(3);
}

namespace {

// Enclosure of ln(q) for a positive rational q.
std::pair<BigFloat, BigFloat> log_enclosure(const Rational& q, mpfr_prec_t prec) {
    BigFloat lo = BigFloat::from_rational(q, prec, MPFR_RNDD);
    BigFloat hi = BigFloat::from_rational(q, prec, MPFR_RNDU);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

struct KlTerms {
    bool infinite = false;
    std::vector<std::pair<Rational, Rational>> weighted_ratios; ///< (Pr_x(w), Pr_x(w)/Pr_x'(w)), ratio != 1
};

KlTerms collect_kl_terms(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2,
                         const DistanceConfig& config) {
    const Network px = apply_assignment(net, x);
    const Network py = apply_assignment(net, x2);
    KlTerms terms;
    for_each_joint(px, config.limits, [&](std::span<const std::size_t> w, const Rational& p) {
        if (p == 0 || terms.infinite) return;
        Rational q = joint_probability(py, w);
        if (q == 0) {
            terms.infinite = true;
            return;
        }
        Rational ratio = p / q;
        if (ratio != 1) terms.weighted_ratios.emplace_back(p, std::move(ratio));
    });
    return terms;
}

ExtendedValue kl_enclosure(const KlTerms& terms, mpfr_prec_t prec) {
    if (terms.infinite) return ExtendedValue::infinity();
    BigFloat lo = BigFloat::zero(prec), hi = BigFloat::zero(prec);
    BigFloat t(prec);
    for (const auto& [p, ratio] : terms.weighted_ratios) {
        auto [log_lo, log_hi] = log_enclosure(ratio, prec);
        BigFloat p_lo = BigFloat::from_rational(p, prec, MPFR_RNDD);
        BigFloat p_hi = BigFloat::from_rational(p, prec, MPFR_RNDU);
        // p > 0: the lower product takes the larger weight when the log is negative.
        mpfr_mul(t.get(), mpfr_sgn(log_lo.get()) >= 0 ? p_lo.get() : p_hi.get(), log_lo.get(), MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), mpfr_sgn(log_hi.get()) >= 0 ? p_hi.get() : p_lo.get(), log_hi.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
    return ExtendedValue(std::move(lo), std::move(hi));
}

RatioSummary summarize_ratios(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2,
                              const DistanceConfig& config) {
    const Network px = apply_assignment(net, x);
    const Network py = apply_assignment(net, x2);
    RatioSummary s;
    bool have_max = false, have_min = false, max_infinite = false;
    Rational max_ratio, min_ratio;
    for_each_joint(px, config.limits, [&](std::span<const std::size_t> w, const Rational& p) {
        Rational q = joint_probability(py, w);
        if (p == 0 && q == 0) return;
        if (q == 0) {
            if (!max_infinite) {
                max_infinite = true;
                s.argmax.assign(w.begin(), w.end());
            }
            return;
        }
        Rational ratio = p / q;
        if (!max_infinite && (!have_max || ratio > max_ratio)) {
            max_ratio = ratio;
            have_max = true;
            s.argmax.assign(w.begin(), w.end());
        }
        if (!have_min || ratio < min_ratio) {
            min_ratio = ratio;
            have_min = true;
            s.argmin.assign(w.begin(), w.end());
        }
    });
    if (!max_infinite) s.max_ratio = max_ratio;
    // Every state with p > 0 had q = 0: the minimum over finite ratios is empty.
    s.min_ratio = have_min ? min_ratio : Rational(0);
    return s;
}

} // namespace

EuclideanDistance d_euclidean(const ParameterAssignment& x, const ParameterAssignment& x2,
                              const DistanceConfig& config) {
    if (x.size() != x2.size()) throw InvalidArgument("parameter assignments have different key sets");
    Rational squared = 0;
    for (auto it = x.begin(), jt = x2.begin(); it != x.end(); ++it, ++jt) {
        if (it->first != jt->first) throw InvalidArgument("parameter assignments have different key sets");
        Rational d = it->second - jt->second;
        squared += d * d;
    }
    BigFloat lo = BigFloat::from_rational(squared, config.precision_bits, MPFR_RNDD);
    BigFloat hi = BigFloat::from_rational(squared, config.precision_bits, MPFR_RNDU);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return EuclideanDistance{squared, std::move(lo), std::move(hi)};
}

ExtendedValue d_kl(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2,
                   const DistanceConfig& config) {
    return kl_enclosure(collect_kl_terms(net, x, x2, config), config.precision_bits);
}

CdDistance d_cd(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2,
                const DistanceConfig& config) {
    RatioSummary ratios = summarize_ratios(net, x, x2, config);
    if (!ratios.max_ratio || ratios.min_ratio == 0) return {std::move(ratios), ExtendedValue::infinity()};
    Rational spread = *ratios.max_ratio / ratios.min_ratio;
    if (spread == 1) return {std::move(ratios), ExtendedValue::exact_zero(config.precision_bits)};
    auto [lo, hi] = log_enclosure(spread, config.precision_bits);
    return {std::move(ratios), ExtendedValue(std::move(lo), std::move(hi))};
}

bool ratios_within(const RatioSummary& ratios, const Rational& s, const DistanceConfig& config) {
    if (s < 0) throw InvalidArgument("distance bound must be non-negative");
    if (!ratios.max_ratio || ratios.min_ratio == 0) return false;
    const Rational spread = *ratios.max_ratio / ratios.min_ratio;
    if (spread == 1) return true;
    for (mpfr_prec_t prec = config.precision_bits; prec <= config.max_precision_bits; prec *= 2) {
        BigFloat lo = BigFloat::from_rational(s, prec, MPFR_RNDD);
        BigFloat hi = BigFloat::from_rational(s, prec, MPFR_RNDU);
        mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
        mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
        if (lo.compare(spread) >= 0) return true;
        if (hi.compare(spread) < 0) return false;
    }
    throw PrecisionExhausted("D_CD comparison against " + to_string(s) + " undecided at " +
                             std::to_string(config.max_precision_bits) + " bits");
}

bool cd_within(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2, const Rational& s,
               const DistanceConfig& config) {
    return ratios_within(summarize_ratios(net, x, x2, config), s, config);
}

bool kl_within(const Network& net, const ParameterAssignment& x, const ParameterAssignment& x2, const Rational& s,
               const DistanceConfig& config) {
    if (s < 0) throw InvalidArgument("distance bound must be non-negative");
    const KlTerms terms = collect_kl_terms(net, x, x2, config);
    if (terms.infinite) return false;
    for (mpfr_prec_t prec = config.precision_bits; prec <= config.max_precision_bits; prec *= 2) {
        ExtendedValue kl = kl_enclosure(terms, prec);
        if (kl.upper().compare(s) <= 0) return true;
        if (kl.lower().compare(s) > 0) return false;
    }
    throw PrecisionExhausted("D_KL comparison against " + to_string(s) + " undecided at " +
                             std::to_string(config.max_precision_bits) + " bits");
}

} // namespace bnsens
