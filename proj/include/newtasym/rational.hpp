#ifndef NEWTASYM_RATIONAL_HPP
#define NEWTASYM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/integer/common_factor_rt.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace newtasym {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Largest integer <= q.
inline BigInt floor_int(const Rational& q) {
    BigInt n = num(q), d = den(q);
    BigInt t = n / d;
    if (n < 0 && n % d != 0) --t;
    return t;
}

inline bool is_integer(const Rational& q) { return den(q) == 1; }

/// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(n, d);
}

inline double to_double(const Rational& q) { return static_cast<double>(q); }

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::integer::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::integer::lcm(a, b); }

} // namespace newtasym

#endif
