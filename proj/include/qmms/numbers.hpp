#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qmms {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt int_pow(const BigInt& base, unsigned exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

inline BigInt factorial(unsigned n) {
    BigInt result = 1;
    for (unsigned i = 2; i <= n; ++i) result *= i;
    return result;
}

// Parses a rational from "num/den" or plain integer text; throws on malformed
// input or zero denominator.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (text.empty()) throw std::invalid_argument("empty");
        if (slash == std::string::npos) return Rational(BigInt(text));
        std::string num_text = text.substr(0, slash);
        std::string den_text = text.substr(slash + 1);
        if (num_text.empty() || den_text.empty()) throw std::invalid_argument("empty part");
        BigInt num(num_text);
        BigInt den(den_text);
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

inline std::string rational_to_string(const Rational& r) {
    return r.str();
}

}  // namespace qmms
