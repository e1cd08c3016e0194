#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qnahm {

/* Exact rational scalar. mpq_class keeps values canonical (lowest terms,
 * positive denominator) under arithmetic; parsing goes through
 * canonicalize() explicitly. */
using Rational = mpq_class;
using Integer = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

inline Rational rat(long num, long den = 1)
{
    if (den == 0)
        throw ParseError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/* gmpxx has no long long overloads; scaled exponents are long long. */
inline Rational rat_ll(long long v)
{
    return Rational(static_cast<long>(v));
}

/* Accepts "p", "-p", "p/q"; used by the JSON wire format and the CLI. */
inline Rational parse_rational(const std::string &s)
{
    if (s.empty())
        throw ParseError("empty rational literal");
    for (char c : s)
        if (!(std::isdigit((unsigned char)c) || c == '-' || c == '+' || c == '/'))
            throw ParseError("bad rational literal: " + s);
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw ParseError("bad rational literal: " + s);
    if (r.get_den() == 0)
        throw ParseError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

inline bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

/* Exact floor of p/q as a machine integer; values stay tiny in practice. */
inline long long floor_to_ll(const Rational &r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p())
        throw Error("rational floor out of machine range");
    return q.get_si();
}

inline long long ceil_to_ll(const Rational &r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p())
        throw Error("rational ceil out of machine range");
    return q.get_si();
}

inline long long to_ll_exact(const Rational &r)
{
    if (!is_integer(r))
        throw Error("expected integer, got " + to_string(r));
    if (!r.get_num().fits_slong_p())
        throw Error("integer out of machine range");
    return r.get_num().get_si();
}

inline long long lcm_ll(long long a, long long b)
{
    return std::lcm(a, b);
}

/* Smallest D > 0 with D*r integral. */
inline long long denominator_of(const Rational &r)
{
    if (!r.get_den().fits_slong_p())
        throw Error("denominator out of machine range");
    return r.get_den().get_si();
}

} // namespace qnahm
