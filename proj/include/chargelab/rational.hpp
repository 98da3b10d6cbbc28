#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <stdexcept>
#include <string>

namespace chargelab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::rational<Int>;

inline std::string to_string(const Rational& r) {
    std::string s = r.numerator().str();
    if (r.denominator() != 1) {
        s += "/";
        s += r.denominator().str();
    }
    return s;
}

/// Parses "p" or "p/q" with q > 0.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text), 1);
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

// 2^-n as a rational, n >= 0.
inline Rational pow2_inv(unsigned n) {
    Int den = Int(1) << n;
    return Rational(1, den);
}

inline Rational pow2(unsigned n) { return Rational(Int(1) << n, 1); }

}  // namespace chargelab
