#pragma once

#include "pochhammer.hpp"

namespace qnahm {

struct InsufficientTerms : Error {
    using Error::Error;
};

/* One-index sum  sum_{n>=0} c0 * cr^n * q^{quad n^2 + lin n}
 *                      * prod_f (a_f; q^{base_f})_{mult_f n + off_f}^{power_f},
 * the common shape of the single-sum identities (Slater list, Ramanujan
 * entries, the classical summations after lowering). */
struct QSumSpec {
    Rational coeff0 = Rational(1);
    Rational coeff_ratio = Rational(1);
    Rational quad = Rational(0);
    Rational lin = Rational(0);

    struct Factor {
        Monomial a;
        Rational base;
        long long mult = 1;
        long long offset = 0;
        int power = 1; // +1 numerator, -1 denominator
    };
    std::vector<Factor> factors;

    QSumSpec &weight(const Rational &c0) { coeff0 = c0; return *this; }
    QSumSpec &ratio(const Rational &cr) { coeff_ratio = cr; return *this; }
    QSumSpec &exponent(const Rational &q2, const Rational &q1)
    {
        quad = q2;
        lin = q1;
        return *this;
    }
    QSumSpec &num(Monomial a, Rational base, long long mult = 1, long long offset = 0)
    {
        factors.push_back({std::move(a), std::move(base), mult, offset, 1});
        return *this;
    }
    QSumSpec &den(Monomial a, Rational base, long long mult = 1, long long offset = 0)
    {
        factors.push_back({std::move(a), std::move(base), mult, offset, -1});
        return *this;
    }

    /* Valuation of (a;q^b)_N: negative-exponent head factors only. */
    static Rational poch_valuation(const Monomial &a, const Rational &base, long long N)
    {
        if (a.coeff == 0 || a.exp >= 0)
            return Rational(0);
        Rational v(0);
        for (long long k = 0; k < N; ++k) {
            Rational e = a.exp + base * rat_ll(k);
            if (e >= 0)
                break;
            v += e;
        }
        return v;
    }

    Rational term_valuation(long long n) const
    {
        Rational v = quad * rat_ll(n) * rat_ll(n) + lin * rat_ll(n);
        for (const auto &f : factors) {
            Rational pv = poch_valuation(f.a, f.base, f.mult * n + f.offset);
            v += f.power > 0 ? pv : -pv;
        }
        return v;
    }

    QSeries evaluate(const Rational &order) const
    {
        long long d = lcm_ll(denominator_of(order), lcm_ll(denominator_of(quad), denominator_of(lin)));
        for (const auto &f : factors)
            d = lcm_ll(d, lcm_ll(denominator_of(f.a.exp), denominator_of(f.base)));
        QSeries::check_scale(d);
        long long hi = to_ll_exact(order * rat_ll(d));

        QSeries total = QSeries::zero(d, hi);
        Rational cn = coeff0;
        long long grown = 0;
        for (long long n = 0;; ++n) {
            Rational val = term_valuation(n);
            if (val >= order) {
                if (++grown >= 3 && term_valuation(n) > term_valuation(n - 1))
                    break;
            } else {
                grown = 0;
                if (cn != 0)
                    total += term(n, cn, order, d);
            }
            cn *= coeff_ratio;
            if (n > 8 * hi + 64)
                throw InsufficientTerms("sum terms do not leave the truncation window");
        }
        return total;
    }

private:
    QSeries term(long long n, const Rational &cn, const Rational &order, long long d) const
    {
        Rational e = quad * rat_ll(n) * rat_ll(n) + lin * rat_ll(n);
        /* Working window: coefficients of the factor product matter only up
         * to order - e, stretched by the Laurent heads. */
        Rational slack(0);
        for (const auto &f : factors)
            slack += abs(poch_valuation(f.a, f.base, f.mult * n + f.offset));
        Rational need = order - e + 2 * slack + 2;
        QSeries num_part = QSeries::one(d);
        QSeries den_part = QSeries::one(d);
        for (const auto &f : factors) {
            long long N = f.mult * n + f.offset;
            if (N < 0)
                throw Error("negative Pochhammer subscript in sum term");
            QSeries p = pochhammer_finite(f.a, f.base, N, need + slack);
            QSeries &side = f.power > 0 ? num_part : den_part;
            side *= p;
            long long sd = side.scale();
            side = side.truncated(to_ll_exact(need * rat_ll(sd)) + std::abs(side.lo()) + sd);
        }
        if (den_part.is_zero())
            throw Error("sum term divides by a vanishing Pochhammer");
        QSeries part = num_part;
        if (den_part.term_count() != 1 || den_part.coeff(den_part.lo()) != 1 ||
            den_part.lo() != 0) {
            /* Cut the exact denominator polynomial generously; the series
             * bound arithmetic keeps the rest honest. */
            long long dd = den_part.scale();
            long long lo = den_part.lo();
            long long cut = to_ll_exact((order - e) * rat_ll(dd)) + 3 * std::abs(lo) -
                            std::min(num_part.lo(), 0LL) * (dd / num_part.scale()) + dd;
            part = num_part * den_part.truncated(cut).inverse();
        }
        long long dd = lcm_ll(lcm_ll(part.scale(), d), denominator_of(e));
        part = part.rescaled(dd);
        QSeries shifted = part.shifted(to_ll_exact(e * rat_ll(dd)), cn);
        long long hi_final = to_ll_exact(order * rat_ll(dd));
        if (shifted.hi() < hi_final)
            throw Error("internal: sum term lost exactness before the bound");
        return shifted.truncated(hi_final);
    }
};

/* The basic hypergeometric series r_phi_s(a_1..a_r; b_1..b_s; q^base, z):
 * term n carries ((-1)^n q^{base*binom(n,2)})^{1+s-r} z^n. */
inline QSumSpec hypergeom_phi(const std::vector<Monomial> &upper,
                              const std::vector<Monomial> &lower, const Rational &base,
                              const Monomial &z)
{
    QSumSpec s;
    long long w = 1 + static_cast<long long>(lower.size()) - static_cast<long long>(upper.size());
    s.coeff_ratio = (w % 2 == 0 ? Rational(1) : Rational(-1)) * z.coeff;
    s.quad = rat_ll(w) * base / 2;
    s.lin = -rat_ll(w) * base / 2 + z.exp;
    for (const auto &a : upper)
        s.num(a, base);
    s.den(Monomial::q_power(base), base);
    for (const auto &b : lower)
        s.den(b, base);
    return s;
}

} // namespace qnahm
