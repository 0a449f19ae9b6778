#pragma once

#include "bnsens/rational.hpp"

#include <mpfr.h>

#include <string>

namespace bnsens {

/// Owning MPFR value with value semantics.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision = 128);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat from_rational(const Rational& q, mpfr_prec_t precision, mpfr_rnd_t rounding);
    static BigFloat zero(mpfr_prec_t precision);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Exact value of the binary float.
    Rational to_rational() const;
    /// Scientific-free decimal with `digits` significant digits.
    std::string to_string(int digits = 20) const;

    /// Compares with an exact rational: negative, zero or positive like mpfr_cmp_q.
    int compare(const Rational& q) const;

private:
    mpfr_t value_;
};

} // namespace bnsens
