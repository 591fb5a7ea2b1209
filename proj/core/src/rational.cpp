#include "groupgames/rational.hpp"

#include "groupgames/errors.hpp"

#include <boost/multiprecision/integer.hpp>

namespace gg {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    return Rat(num, den);
}

Int parse_int(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) throw ValidationError("empty integer literal: '" + text + "'");
    Int value = 0;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c < '0' || c > '9') throw ValidationError("bad integer literal: '" + text + "'");
        value = value * 10 + (c - '0');
    }
    return neg ? Int(-value) : value;
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ValidationError("bad rational literal (zero denominator): '" + text + "'");
    return Rat(num, den);
}

std::string int_to_string(const Int& value) { return value.str(); }

std::string rat_to_string(const Rat& value) {
    Int num = numerator(value);
    Int den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rat_to_double(const Rat& value) { return value.convert_to<double>(); }

std::string rat_to_decimal_string(const Rat& value, int digits) {
    Int num = numerator(value);
    Int den = denominator(value);
    bool neg = num < 0;
    if (neg) num = -num;
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // round half to even on scaled value
    Int scaled_num = num * scale;
    Int q = scaled_num / den;
    Int r = scaled_num % den;
    Int twice = r * 2;
    if (twice > den || (twice == den && (q % 2) != 0)) ++q;
    Int ipart = q / scale;
    Int fpart = q % scale;
    std::string frac = fpart.str();
    if ((int)frac.size() < digits) frac.insert(frac.begin(), digits - frac.size(), '0');
    // trim trailing zeros but keep at least one digit
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    std::string out = (neg && (ipart != 0 || fpart != 0)) ? "-" : "";
    out += ipart.str();
    out += ".";
    out += frac;
    return out;
}

Int floor_div(const Int& value, const Int& modulus) {
    if (modulus <= 0) throw ValidationError("floor_div requires a positive modulus");
    Int q = value / modulus;
    Int r = value % modulus;
    if (r < 0) --q;
    return q;
}

Int mod_floor(const Int& value, const Int& modulus) {
    if (modulus <= 0) throw ValidationError("mod_floor requires a positive modulus");
    Int r = value % modulus;
    if (r < 0) r += modulus;
    return r;
}

std::int64_t mod_floor_i64(std::int64_t value, std::int64_t modulus) {
    std::int64_t r = value % modulus;
    if (r < 0) r += modulus;
    return r;
}

Int rat_floor(const Rat& value) {
    Int num = numerator(value);
    Int den = denominator(value);
    return floor_div(num, den);
}

Rat frac_mod1(const Rat& value) {
    Rat result = value - Rat(rat_floor(value));
    return result;
}

Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
    Int l = boost::multiprecision::lcm(Int(a), Int(b));
    if (l > Int(std::int64_t(1) << 40)) throw ValidationError("period lcm too large");
    return l.convert_to<std::int64_t>();
}

}  // namespace gg
