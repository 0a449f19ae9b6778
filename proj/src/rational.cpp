#include "bnsens/rational.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace bnsens {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class scaled_num = q.get_num() * scale;
    // Round half away from zero.
    mpz_class twice = 2 * scaled_num + (q >= 0 ? q.get_den() : mpz_class(-q.get_den()));
    mpz_class rounded = twice / (2 * q.get_den());
    bool negative = rounded < 0;
    if (negative) rounded = -rounded;
    std::string digits_str = rounded.get_str();
    if (static_cast<int>(digits_str.size()) <= digits)
        digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
    std::string out = digits_str.substr(0, digits_str.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + digits_str.substr(digits_str.size() - static_cast<std::size_t>(digits));
    return negative ? "-" + out : out;
}

} // namespace bnsens
