#include "nilrigid/rational.hpp"

#include <cctype>

namespace nilrigid {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw FormatError("empty rational literal");
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(s)) throw FormatError("bad rational literal '" + text + "'");
        return Rational(BigInt(s));
    }
    std::string num = strip(s.substr(0, slash));
    std::string den = strip(s.substr(slash + 1));
    if (!is_integer_token(num) || !is_integer_token(den))
        throw FormatError("bad rational literal '" + text + "'");
    BigInt d(den);
    if (d == 0) throw FormatError("zero denominator in '" + text + "'");
    return Rational(BigInt(num), d);
}

std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

} // namespace nilrigid
