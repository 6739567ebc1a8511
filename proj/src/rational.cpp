// SPDX-License-Identifier: MIT
#include "posbid/rational.hpp"

#include "posbid/errors.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace posbid {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void bad_text(std::string_view text, std::size_t pos, const char* why) {
    std::ostringstream os;
    os << "cannot parse rational \"" << std::string(text) << "\": " << why
       << " at position " << pos;
    throw ValidationError(os.str());
}

// Reads an optional sign followed by one-or-more digits starting at *pos.
// Returns the digits as a BigInt with the sign applied and advances *pos.
BigInt read_signed_digits(std::string_view text, std::size_t* pos) {
    bool negative = false;
    std::size_t i = *pos;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = (text[i] == '-');
        ++i;
    }
    std::size_t start = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    if (i == start) bad_text(text, i, "expected a digit");
    BigInt value(std::string(text.substr(start, i - start)));
    *pos = i;
    return negative ? BigInt(-value) : value;
}

BigInt pow10(std::size_t n) {
    BigInt p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= 10;
    return p;
}

}  // namespace

Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw DomainError("rational denominator must be nonzero");
    if (den < 0) {  // the backend requires a positive denominator
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

Rational parse_rational(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::string_view body = text.substr(begin, end - begin);
    if (body.empty()) bad_text(text, begin, "empty value");

    std::size_t pos = 0;
    bool negative = false;
    if (body[pos] == '+' || body[pos] == '-') {
        negative = (body[pos] == '-');
        ++pos;
    }
    std::size_t int_start = pos;
    while (pos < body.size() && is_digit(body[pos])) ++pos;
    std::size_t int_len = pos - int_start;

    Rational result;
    if (pos < body.size() && body[pos] == '.') {
        ++pos;
        std::size_t frac_start = pos;
        while (pos < body.size() && is_digit(body[pos])) ++pos;
        std::size_t frac_len = pos - frac_start;
        if (int_len == 0 && frac_len == 0) bad_text(body, frac_start, "expected a digit");
        BigInt int_part = int_len ? BigInt(std::string(body.substr(int_start, int_len))) : BigInt(0);
        BigInt frac_part = frac_len ? BigInt(std::string(body.substr(frac_start, frac_len))) : BigInt(0);
        BigInt scale = pow10(frac_len);
        result = Rational(int_part * scale + frac_part, scale);
    } else if (pos < body.size() && body[pos] == '/') {
        if (int_len == 0) bad_text(body, int_start, "expected a digit");
        BigInt num(std::string(body.substr(int_start, int_len)));
        ++pos;
        BigInt den = read_signed_digits(body, &pos);
        result = make_rational(std::move(num), std::move(den));
    } else {
        if (int_len == 0) bad_text(body, int_start, "expected a digit");
        result = Rational(BigInt(std::string(body.substr(int_start, int_len))));
    }
    if (pos != body.size()) bad_text(body, pos, "unexpected trailing character");
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    std::string out = num.str();
    if (den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

std::string format_decimal(const Rational& value, int places) {
    if (places < 0) throw DomainError("decimal places must be >= 0");
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    const bool negative = num < 0;
    BigInt scaled_num = (negative ? BigInt(-num) : num) * pow10(static_cast<std::size_t>(places));
    BigInt quot = scaled_num / den;
    BigInt rem = scaled_num % den;
    if (2 * rem >= den) ++quot;  // round half away from zero

    BigInt scale = pow10(static_cast<std::size_t>(places));
    BigInt int_part = quot / scale;
    BigInt frac_part = quot % scale;

    std::string out;
    if (negative && quot != 0) out += '-';
    out += int_part.str();
    if (places > 0) {
        std::string frac = frac_part.str();
        out += '.';
        out.append(static_cast<std::size_t>(places) - frac.size(), '0');
        out += frac;
    }
    return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt floor_int(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den;          // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

BigInt ceil_int(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

Rational strict_floor_multiple(const Rational& value, const Rational& unit) {
    if (unit <= 0) throw DomainError("strict_floor_multiple requires a positive unit");
    const BigInt steps = ceil_int(Rational(value / unit)) - 1;
    return Rational(unit * steps);
}

BigInt strict_floor(const Rational& value) { return ceil_int(value) - 1; }

long to_long_checked(const BigInt& value) {
    if (value < (std::numeric_limits<long>::min)() || value > (std::numeric_limits<long>::max)())
        throw DomainError("integer value out of range for long");
    return value.convert_to<long>();
}

}  // namespace posbid
