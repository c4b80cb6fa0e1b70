#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ocha {

// Ground field: exact rationals. mpq_class keeps values reduced with a
// positive denominator after arithmetic; only the (num, den) constructor
// needs an explicit canonicalize, so all construction goes through here.
using Scalar = mpq_class;

inline Scalar rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p/q" etc. Exact only; anything with '.' or exponent is rejected.
inline Scalar parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char ch : s)
        if (!(std::isdigit((unsigned char)ch) || ch == '/' || ch == '-' || ch == '+'))
            throw std::invalid_argument("bad rational literal: " + s);
    Scalar q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline Scalar factorial(int n) {
    Scalar r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Scalar binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Scalar r = 1;
    for (int i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
    return r;
}

} // namespace ocha
