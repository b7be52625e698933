#include "ncd/rational.hpp"

#include <cctype>
#include <cmath>

#include "ncd/errors.hpp"

namespace ncd {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Rational parse_integer(std::string_view s)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        throw InvalidInput("malformed integer '" + std::string(s) + "'");
    }
    mpz_class z(std::string(digits), 10);
    if (!s.empty() && s.front() == '-') {
        z = -z;
    }
    return Rational(z);
}

Rational pow10(long e)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e < 0) {
        return Rational(mpz_class(1), p);
    }
    return Rational(p);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw InvalidInput("empty rational literal");
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(text.substr(0, slash));
        Rational den = parse_integer(text.substr(slash + 1));
        if (den == 0) {
            throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        }
        Rational r = num / den;
        r.canonicalize();
        return r;
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        Rational ex = parse_integer(text.substr(e + 1));
        if (!ex.get_num().fits_slong_p() || std::abs(ex.get_num().get_si()) > 4096) {
            throw InvalidInput("exponent out of range in '" + std::string(text) + "'");
        }
        exponent = ex.get_num().get_si();
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view ip = mantissa.substr(0, dot);
        std::string_view fp = mantissa.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
            throw InvalidInput("malformed decimal '" + std::string(text) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<long>(fp.size());
    } else {
        if (!all_digits(mantissa)) {
            throw InvalidInput("malformed number '" + std::string(text) + "'");
        }
        digits = std::string(mantissa);
    }
    if (digits.empty()) {
        digits = "0";
    }
    Rational r(mpz_class(digits, 10));
    r *= pow10(exponent - frac_digits);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational &value)
{
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational approximate_rational(double x, long max_den)
{
    bool negative = x < 0;
    double v = std::fabs(x);
    // Convergents h/k.
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(v));
    mpz_class k_prev = 0, k = 1;
    double frac = v - std::floor(v);
    for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
        double inv = 1.0 / frac;
        double a = std::floor(inv);
        frac = inv - a;
        mpz_class ai = static_cast<long>(a);
        mpz_class h_next = ai * h + h_prev;
        mpz_class k_next = ai * k + k_prev;
        if (k_next > max_den) {
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    Rational r(h, k);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

} // namespace ncd
