#pragma once

#include "bnsens/network.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bnsens {

/// f(X) = (c1*X + c2) / (c3*X + c4)
struct SensFn1 {
    Rational c1, c2, c3, c4;
    bool operator==(const SensFn1&) const = default;
};

/// f(X1, X2) = (c1*X1*X2 + c2*X1 + c3*X2 + c4) / (c5*X1*X2 + c6*X1 + c7*X2 + c8)
/// c[0] holds c1, c[7] holds c8.
struct SensFn2 {
    std::array<Rational, 8> c;
    bool operator==(const SensFn2&) const = default;
};

/// Multilinear polynomial in `arity` variables. coefficients[S] multiplies the
/// monomial over the variables whose bits are set in S (bit i = variable i).
class MultilinearPolynomial {
public:
    MultilinearPolynomial() : coefficients_{Rational(0)} {}
    MultilinearPolynomial(std::size_t arity, std::vector<Rational> coefficients);

    /// Recovers coefficients from the values at the 2^n corners of the unit
    /// cube (corner mask bit i = variable i at 1) by Moebius inversion.
    static MultilinearPolynomial from_corners(std::vector<Rational> corners);

    std::size_t arity() const { return arity_; }
    const std::vector<Rational>& coefficients() const { return coefficients_; }
    const Rational& coefficient(std::size_t subset) const { return coefficients_.at(subset); }

    Rational eval(std::span<const Rational> x) const;
    /// Fixes variable `index` to `value`; the remaining variables keep their order.
    MultilinearPolynomial specialize(std::size_t index, const Rational& value) const;

    bool operator==(const MultilinearPolynomial&) const = default;

private:
    std::size_t arity_ = 0;
    std::vector<Rational> coefficients_;
};

struct MultilinearQuotient {
    MultilinearPolynomial numerator;   ///< Pr_x(c, e)
    MultilinearPolynomial denominator; ///< Pr_x(e)

    std::size_t arity() const { return numerator.arity(); }
    MultilinearQuotient specialize(std::size_t index, const Rational& value) const {
        return {numerator.specialize(index, value), denominator.specialize(index, value)};
    }
    bool operator==(const MultilinearQuotient&) const = default;
};

struct SensitivityLimits {
    std::size_t max_parameters = 10;
};

/// Pr_x(evidence) at every 0/1 setting of `params` (mask bit i = params[i] at 1).
/// Parameters must lie in pairwise-distinct distributions.
std::vector<Rational> corner_values(const Network& net, std::span<const ParameterRef> params, const Evidence& evidence);

SensFn1 fit_one_way(const Network& net, const ParameterRef& p, const Evidence& c, const Evidence& e);
SensFn2 fit_two_way(const Network& net, const ParameterRef& p1, const ParameterRef& p2, const Evidence& c,
                    const Evidence& e);
MultilinearQuotient fit_n_way(const Network& net, std::span<const ParameterRef> params, const Evidence& c,
                              const Evidence& e, const SensitivityLimits& limits = {});

/// Reads one- and two-way coefficient forms off a quotient of matching arity.
SensFn1 to_one_way(const MultilinearQuotient& f);
SensFn2 to_two_way(const MultilinearQuotient& f);

// Evaluation throws InvalidArgument for arguments outside [0,1] and
// ZeroEvidence when the denominator vanishes at the point.
Rational eval(const SensFn1& f, const Rational& x);
Rational eval(const SensFn2& f, const Rational& x1, const Rational& x2);
Rational eval(const MultilinearQuotient& f, std::span<const Rational> x);

} // namespace bnsens
