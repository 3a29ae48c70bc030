#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "pqha/common.hpp"

namespace pqha {

// Exact arithmetic backing for metric exponents and ladder-coefficient
// polynomials. cpp_int/cpp_rational never overflow, so recurrence solving and
// k-th power identities can be compared with zero tolerance.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Canonical text form "num/den", denominator always printed (e.g. "3/2", "-1/1", "0/1").
inline std::string rational_str(const Rational& r) {
    return rational_num(r).str() + "/" + rational_den(r).str();
}

// Accepts "a/b", "a", optional sign, surrounding whitespace not allowed.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal '" + text + "'");
    }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace pqha
