#pragma once

#include "qseries.hpp"

namespace qnahm {

struct NonTruncating : Error {
    using Error::Error;
};
struct Divergent : Error {
    using Error::Error;
};

/* c * q^e. Specialized parameters (u, v, w, z, rho, a, b) are all monomials. */
struct Monomial {
    Rational coeff;
    Rational exp;

    Monomial() : coeff(0), exp(0) {}
    Monomial(Rational c, Rational e) : coeff(std::move(c)), exp(std::move(e)) {}

    static Monomial q_power(const Rational &e) { return {Rational(1), e}; }
    static Monomial constant(const Rational &c) { return {c, Rational(0)}; }

    bool is_zero() const { return coeff == 0; }
    bool is_one() const { return coeff == 1 && exp == 0; }

    Monomial operator*(const Monomial &o) const { return {coeff * o.coeff, exp + o.exp}; }
    Monomial operator/(const Monomial &o) const
    {
        if (o.coeff == 0)
            throw Error("division by zero monomial");
        return {coeff / o.coeff, exp - o.exp};
    }
    Monomial pow(long long n) const
    {
        Monomial r{Rational(1), Rational(0)};
        Monomial b = *this;
        bool invert = n < 0;
        unsigned long long m = invert ? -(unsigned long long)n : (unsigned long long)n;
        for (; m; m >>= 1) {
            if (m & 1)
                r = r * b;
            b = b * b;
        }
        if (invert)
            return Monomial{Rational(1), Rational(0)} / r;
        return r;
    }

    friend bool operator==(const Monomial &a, const Monomial &b)
    {
        return a.coeff == b.coeff && a.exp == b.exp;
    }
};

inline long long scale_for(std::initializer_list<Rational> xs, long long base_scale = 1)
{
    long long d = base_scale;
    for (const auto &x : xs)
        d = lcm_ll(d, denominator_of(x));
    QSeries::check_scale(d);
    return d;
}

/* Exact scaled exponent of a rational q-exponent on lattice D. */
inline long long scaled_exp(const Rational &e, long long scale)
{
    return to_ll_exact(e * rat_ll(scale));
}

inline QSeries monomial_series(const Monomial &m, long long scale = 1,
                               long long hi = QSeries::kInfOrder)
{
    long long d = scale_for({m.exp}, scale);
    return QSeries::monomial_term(m.coeff, scaled_exp(m.exp, d), d, hi);
}

/* (a;q^base)_n = prod_{k=0}^{n-1} (1 - a q^{base k}), an exact (Laurent)
 * polynomial; a.exp may be negative. An optional order truncates the build
 * (degree grows like n^2, so long products should pass one). */
inline QSeries pochhammer_finite(const Monomial &a, const Rational &base, long long n,
                                 std::optional<Rational> order = {})
{
    if (n < 0)
        throw Error("pochhammer_finite needs n >= 0");
    long long d = scale_for({a.exp, base});
    if (order)
        d = lcm_ll(d, denominator_of(*order));
    QSeries f = QSeries::one(d);
    if (a.coeff == 0)
        return f;
    long long e0 = scaled_exp(a.exp, d);
    long long step = scaled_exp(base, d);
    long long cap = QSeries::kInfOrder;
    for (long long k = 0; k < n; ++k) {
        QSeries factor = QSeries::one(d);
        factor.set_coeff(e0 + step * k, factor.coeff(e0 + step * k) - a.coeff);
        f *= factor;
        if (f.is_zero())
            break; // a factor (1-1) annihilated the product
        if (order && e0 + step * k >= 0) {
            /* Later factors only raise exponents from here on, so terms the
             * remaining product cannot pull below the order are dead weight.
             * f.lo accounts for the Laurent head already multiplied in. */
            cap = scaled_exp(*order, d) - std::min(f.lo(), 0LL);
            f = f.truncated(cap);
            if (f.is_zero())
                break;
        }
    }
    if (order)
        f.set_hi(cap);
    return f;
}

/* (a;q^base)_infty truncated below q^order. Factors with exponent at or
 * above the bound contribute exactly 1 there; finitely many factors with
 * nonpositive exponent make this a Laurent series, which is fine when
 * a.coeff is +-1 (constants or exact Laurent factors). Anything else with
 * a.exp <= 0 has no formal-series meaning here. */
inline QSeries pochhammer_infinite(const Monomial &a, const Rational &base,
                                   const Rational &order)
{
    if (base <= 0)
        throw Error("pochhammer_infinite needs base > 0");
    if (a.exp <= 0 && !(a.coeff == 1 || a.coeff == -1))
        throw NonTruncating("infinite product with nonpositive exponent and coefficient not ±1");
    long long d = scale_for({a.exp, base, order});
    long long hi = scaled_exp(order, d);
    long long e0 = scaled_exp(a.exp, d);
    long long step = scaled_exp(base, d);
    if (a.coeff == 0)
        return QSeries::one(d, hi);

    /* Head: the finitely many factors with exponent <= 0, an exact Laurent
     * polynomial. Its negative valuation widens the window the tail must
     * fill: head terms at v < 0 lift tail terms from below hi - v into the
     * output window. */
    QSeries head = QSeries::one(d);
    long long k = 0;
    for (; e0 + step * k <= 0; ++k) {
        long long e = e0 + step * k;
        QSeries factor = QSeries::one(d);
        factor.set_coeff(e, factor.coeff(e) - a.coeff);
        head *= factor;
        if (head.is_zero())
            return QSeries::zero(d, hi);
    }
    long long stretch = hi - std::min(head.lo(), 0LL);
    QSeries f = QSeries::one(d, stretch);
    for (; e0 + step * k < stretch; ++k) {
        QSeries factor = QSeries::one(d, stretch);
        factor.set_coeff(e0 + step * k, -a.coeff);
        f *= factor;
    }
    return (head * f).truncated(hi);
}

/* Jacobi triple product sum: sum_{n in Z} (-1)^n q^{base n(n-1)/2} z^n,
 * equal to (q^base, z, q^base/z; q^base)_infty. */
inline QSeries theta_jtp(const Monomial &z, const Rational &base, const Rational &order)
{
    if (z.coeff == 0)
        throw Error("theta_jtp needs z != 0");
    if (base <= 0)
        throw Divergent("theta exponent is not eventually increasing");
    long long d = scale_for({z.exp, base, order});
    long long hi = scaled_exp(order, d);
    long long b = scaled_exp(base, d);
    long long ze = scaled_exp(z.exp, d);
    QSeries f(d, hi);
    auto exponent = [&](long long n) { return b * (n * (n - 1) / 2) + ze * n; };
    auto zpow = [&](long long n) {
        Rational c(1);
        for (long long i = 0; i < std::abs(n); ++i) {
            if (n >= 0)
                c *= z.coeff;
            else
                c /= z.coeff;
        }
        return c;
    };
    for (long long n = 0;; ++n) {
        bool in_window = false;
        for (long long s : {n, -n}) {
            long long e = exponent(s);
            if (e < hi) {
                in_window = true;
                Rational c = (s % 2 == 0) ? zpow(s) : -zpow(s);
                f.set_coeff(e, f.coeff(e) + c);
            }
            if (n == 0)
                break;
        }
        /* Past the parabola vertex on both branches and out of the window. */
        if (!in_window && n > 1 && exponent(n) > exponent(n - 1) && exponent(-n) > exponent(-(n - 1)))
            break;
        if (n > 4 * (hi + std::abs(ze) + b) + 8)
            throw Divergent("theta exponent is not eventually increasing");
    }
    return f;
}

/* sum_{n in Z} (wl*n + wc) q^{qa n^2 + qb n}: the weighted bilateral sums the
 * Bailey chains terminate in (e.g. sum (2n+1) q^{3n^2+n}). */
inline QSeries weighted_theta(const Rational &wl, const Rational &wc, const Rational &qa,
                              const Rational &qb, const Rational &order)
{
    if (qa <= 0)
        throw Divergent("weighted theta needs qa > 0");
    long long d = scale_for({qa, qb, order});
    long long hi = scaled_exp(order, d);
    long long a = scaled_exp(qa, d);
    long long b = scaled_exp(qb, d);
    QSeries f(d, hi);
    for (long long n = 0;; ++n) {
        bool in_window = false;
        for (long long s : {n, -n}) {
            long long e = a * s * s + b * s;
            if (e < hi) {
                in_window = true;
                Rational w = wl * rat_ll(s) + wc;
                if (w != 0)
                    f.set_coeff(e, f.coeff(e) + w);
            }
            if (n == 0)
                break;
        }
        if (!in_window && a * (2 * n + 1) > std::abs(b))
            break;
    }
    return f;
}

} // namespace qnahm
