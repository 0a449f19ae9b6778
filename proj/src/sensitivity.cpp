#include "bnsens/sensitivity.hpp"

#include "bnsens/error.hpp"
#include "bnsens/inference.hpp"

#include <set>

namespace bnsens {

MultilinearPolynomial::MultilinearPolynomial(std::size_t arity, std::vector<Rational> coefficients)
    : arity_(arity), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != (std::size_t{1} << arity_))
        throw InvalidArgument("multilinear polynomial needs 2^arity coefficients");
}

MultilinearPolynomial MultilinearPolynomial::from_corners(std::vector<Rational> corners) {
    std::size_t arity = 0;
    while ((std::size_t{1} << arity) < corners.size()) ++arity;
    if ((std::size_t{1} << arity) != corners.size()) throw InvalidArgument("corner count is not a power of two");
    for (std::size_t i = 0; i < arity; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t mask = 0; mask < corners.size(); ++mask)
            if (mask & bit) corners[mask] -= corners[mask ^ bit];
    }
    return MultilinearPolynomial(arity, std::move(corners));
}

Rational MultilinearPolynomial::eval(std::span<const Rational> x) const {
    if (x.size() != arity_) throw InvalidArgument("wrong number of arguments");
    std::vector<Rational> work = coefficients_;
    for (std::size_t i = arity_; i-- > 0;) {
        const std::size_t half = std::size_t{1} << i;
        // After contracting bits above i only masks below 2^(i+1) are live.
        for (std::size_t mask = 0; mask < half; ++mask) work[mask] += x[i] * work[mask | half];
    }
    return work[0];
}

MultilinearPolynomial MultilinearPolynomial::specialize(std::size_t index, const Rational& value) const {
    if (index >= arity_) throw InvalidArgument("specialized index out of range");
    const std::size_t low = (std::size_t{1} << index) - 1;
    std::vector<Rational> out(coefficients_.size() / 2);
    for (std::size_t m = 0; m < out.size(); ++m) {
        const std::size_t base = (m & low) | ((m & ~low) << 1);
        out[m] = coefficients_[base] + value * coefficients_[base | (std::size_t{1} << index)];
    }
    return MultilinearPolynomial(arity_ - 1, std::move(out));
}

namespace {

void check_distinct_distributions(std::span<const ParameterRef> params) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& p : params)
        if (!seen.insert({p.variable, p.row}).second)
            throw InvalidArgument("parameters must come from distinct conditional distributions");
}

void check_query(const Network& net, const Evidence& c, const Evidence& e) {
    check_evidence(net, c);
    check_evidence(net, e);
    for (auto [v, val] : c)
        if (e.contains(v)) throw InvalidArgument("query and evidence share variable '" + net.variable(v).name + "'");
}

void check_unit(const Rational& x) {
    if (!in_unit_interval(x)) throw InvalidArgument("argument " + to_string(x) + " outside [0,1]");
}

Rational divide_checked(const Rational& num, const Rational& den) {
    if (den == 0) throw ZeroEvidence("sensitivity function denominator is zero at this point");
    return num / den;
}

MultilinearQuotient fit_quotient(const Network& net, std::span<const ParameterRef> params, const Evidence& c,
                                 const Evidence& e) {
    check_query(net, c, e);
    auto den_corners = corner_values(net, params, e);
    bool all_zero = true;
    for (const auto& d : den_corners) all_zero = all_zero && d == 0;
    if (all_zero) throw ZeroEvidence("evidence has probability zero for every parameter setting");
    auto num_corners = corner_values(net, params, merge_evidence(c, e));
    return {MultilinearPolynomial::from_corners(std::move(num_corners)),
            MultilinearPolynomial::from_corners(std::move(den_corners))};
}

} // namespace

std::vector<Rational> corner_values(const Network& net, std::span<const ParameterRef> params, const Evidence& evidence) {
    check_distinct_distributions(params);
    const std::size_t corners = std::size_t{1} << params.size();
    std::vector<Rational> out(corners);
    for (std::size_t mask = 0; mask < corners; ++mask) {
        ParameterAssignment a;
        for (std::size_t i = 0; i < params.size(); ++i) a[params[i]] = (mask >> i) & 1 ? 1 : 0;
        out[mask] = marginal(apply_assignment(net, a), evidence);
    }
    return out;
}

SensFn1 fit_one_way(const Network& net, const ParameterRef& p, const Evidence& c, const Evidence& e) {
    const ParameterRef params[] = {p};
    return to_one_way(fit_quotient(net, params, c, e));
}

SensFn2 fit_two_way(const Network& net, const ParameterRef& p1, const ParameterRef& p2, const Evidence& c,
                    const Evidence& e) {
    const ParameterRef params[] = {p1, p2};
    return to_two_way(fit_quotient(net, params, c, e));
}

MultilinearQuotient fit_n_way(const Network& net, std::span<const ParameterRef> params, const Evidence& c,
                              const Evidence& e, const SensitivityLimits& limits) {
    if (params.size() > limits.max_parameters)
        throw CapExceeded(std::to_string(params.size()) + " parameters exceed the n-way cap of " +
                          std::to_string(limits.max_parameters));
    return fit_quotient(net, params, c, e);
}

SensFn1 to_one_way(const MultilinearQuotient& f) {
    if (f.arity() != 1) throw InvalidArgument("one-way form needs exactly one parameter");
    const auto& n = f.numerator;
    const auto& d = f.denominator;
    return SensFn1{n.coefficient(1), n.coefficient(0), d.coefficient(1), d.coefficient(0)};
}

SensFn2 to_two_way(const MultilinearQuotient& f) {
    if (f.arity() != 2) throw InvalidArgument("two-way form needs exactly two parameters");
    const auto& n = f.numerator;
    const auto& d = f.denominator;
    return SensFn2{{n.coefficient(3), n.coefficient(1), n.coefficient(2), n.coefficient(0), d.coefficient(3),
                    d.coefficient(1), d.coefficient(2), d.coefficient(0)}};
}

Rational eval(const SensFn1& f, const Rational& x) {
    check_unit(x);
    return divide_checked(f.c1 * x + f.c2, f.c3 * x + f.c4);
}

Rational eval(const SensFn2& f, const Rational& x1, const Rational& x2) {
    check_unit(x1);
    check_unit(x2);
    const auto& c = f.c;
    Rational x12 = x1 * x2;
    return divide_checked(c[0] * x12 + c[1] * x1 + c[2] * x2 + c[3], c[4] * x12 + c[5] * x1 + c[6] * x2 + c[7]);
}

Rational eval(const MultilinearQuotient& f, std::span<const Rational> x) {
    for (const auto& xi : x) check_unit(xi);
    return divide_checked(f.numerator.eval(x), f.denominator.eval(x));
}

} // namespace bnsens
