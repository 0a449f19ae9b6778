#include "bnsens/bigfloat.hpp"

#include <cstdlib>
#include <vector>

namespace bnsens {

BigFloat::BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_rational(const Rational& q, mpfr_prec_t precision, mpfr_rnd_t rounding) {
    BigFloat out(precision);
    mpfr_set_q(out.value_, q.get_mpq_t(), rounding);
    return out;
}

BigFloat BigFloat::zero(mpfr_prec_t precision) { return BigFloat(precision); }

Rational BigFloat::to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
}

std::string BigFloat::to_string(int digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return std::string(buf.data());
}

int BigFloat::compare(const Rational& q) const { return mpfr_cmp_q(value_, q.get_mpq_t()); }

} // namespace bnsens
