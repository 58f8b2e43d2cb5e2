#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace rrflow {

// All numeric quantities in the library are exact rationals. mpq keeps
// values canonical (lowest terms, positive denominator) automatically.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// Parses "<int>" or "<int>/<int>". Throws Error on malformed input or
// nonpositive denominator.
inline Rational parse_rational(const std::string& token) {
    if (token.empty())
        throw Error("empty rational token");
    auto slash = token.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Integer(token));
        Integer num(token.substr(0, slash));
        Integer den(token.substr(slash + 1));
        if (den <= 0)
            throw Error("nonpositive denominator in '" + token + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw Error("bad rational token '" + token + "': " + e.what());
    }
}

// Canonical form: integers without denominator, otherwise "p/q".
inline std::string format_rational(const Rational& r) {
    return r.str();
}

inline bool is_integer(const Rational& r) {
    return denominator(r) == 1;
}

inline bool is_half_integral(const Rational& r) {
    return denominator(r) == 1 || denominator(r) == 2;
}

} // namespace rrflow
