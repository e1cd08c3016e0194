#pragma once

#include <optional>

#include "pochhammer.hpp"

namespace qnahm {

struct DivisionByZeroSeries : Error {
    using Error::Error;
};
struct PoleAtUnit : Error {
    using Error::Error;
};
struct InsufficientLength : Error {
    using Error::Error;
};

/* A finite stretch of a Bailey pair relative to the monomial a, living in
 * q^base: beta_n = sum_{k<=n} alpha_k / ((q;q)_{n-k} (aq;q)_{n+k}) with every
 * Pochhammer in q^base. Entries are exact series below q^order. */
struct BaileySeqPair {
    Monomial a;
    Rational base = Rational(1);
    Rational order = Rational(0);
    std::vector<QSeries> alpha;
    std::vector<QSeries> beta;

    long long n_max() const { return static_cast<long long>(alpha.size()) - 1; }
};

/* rho argument of Bailey's lemma: a monomial or the infinite limit. */
struct RhoParam {
    std::optional<Monomial> value;
    static RhoParam infinity() { return {}; }
    static RhoParam finite(Monomial m) { return {std::move(m)}; }
    bool is_infinite() const { return !value.has_value(); }
};

namespace detail {

inline QSeries truncate_q(const QSeries &f, const Rational &order)
{
    long long d = lcm_ll(f.scale(), denominator_of(order));
    return f.rescaled(d).truncated(to_ll_exact(order * rat_ll(d)));
}

/* 1 - a q^{base*k} as an exact polynomial. */
inline QSeries one_minus(const Monomial &a, const Rational &base, long long k)
{
    Monomial m{a.coeff, a.exp + base * rat_ll(k)};
    long long d = scale_for({m.exp});
    long long e = scaled_exp(m.exp, d);
    QSeries f = QSeries::one(d);
    f.set_coeff(e, f.coeff(e) - m.coeff);
    return f;
}

inline QSeries monomial_factor(const Monomial &m)
{
    long long d = denominator_of(m.exp);
    return QSeries::monomial_term(m.coeff, to_ll_exact(m.exp * rat_ll(d)), d);
}

inline Rational lo_q(const QSeries &f)
{
    if (f.is_zero())
        return Rational(0);
    return rat_ll(f.lo()) / rat_ll(f.scale());
}

/* f / g below q^order: truncate the exact polynomial g far enough that the
 * quotient is still exact at order, letting the bound arithmetic verify. */
inline QSeries divide_poly(const QSeries &f, const QSeries &g, const Rational &order)
{
    if (g.is_zero())
        throw DivisionByZeroSeries("division by a vanishing polynomial");
    Rational cut =
        order + std::max(Rational(0), Rational(-lo_q(f))) + 3 * abs(lo_q(g)) + 4;
    QSeries q = f * truncate_q(g, cut).inverse();
    long long d = lcm_ll(q.scale(), denominator_of(order));
    if (q.rescaled(d).hi() < to_ll_exact(order * rat_ll(d)))
        throw Error("internal: polynomial division lost exactness");
    return truncate_q(q, order);
}

} // namespace detail

/* Build the pair from alpha by the defining relation. */
inline BaileySeqPair beta_from_alpha(std::vector<QSeries> alpha, const Monomial &a,
                                     const Rational &base, const Rational &order)
{
    BaileySeqPair p;
    p.a = a;
    p.base = base;
    p.order = order;
    p.alpha = std::move(alpha);
    Monomial aq{a.coeff, a.exp + base};
    for (long long n = 0; n <= p.n_max(); ++n) {
        QSeries s = QSeries::zero(1, 1);
        for (long long k = 0; k <= n; ++k) {
            QSeries den = pochhammer_finite(Monomial::q_power(base), base, n - k) *
                          pochhammer_finite(aq, base, n + k);
            QSeries term = detail::divide_poly(p.alpha[static_cast<std::size_t>(k)], den, order);
            s = (k == 0) ? term : s + term;
        }
        p.beta.push_back(s);
    }
    return p;
}

/* Defining-relation re-verification: recompute beta from alpha and compare. */
inline bool verify_pair(const BaileySeqPair &p)
{
    BaileySeqPair q = beta_from_alpha(p.alpha, p.a, p.base, p.order);
    for (long long n = 0; n <= p.n_max(); ++n)
        if (!agree_below_bound(p.beta[static_cast<std::size_t>(n)],
                               q.beta[static_cast<std::size_t>(n)]))
            return false;
    return true;
}

/* Bailey's lemma, producing (alpha', beta') relative to the same a. The
 * rho -> infinity limits are dedicated paths with
 *   (rho;q)_n (aq/rho)^n -> (-1)^n q^{base n(n-1)/2} (aq)^n,
 *   (aq/rho;q)_n -> 1,   (aq/rho1rho2;q)_{n-k} -> 1,
 * so that with both rho infinite alpha'_n = a^n q^{base n^2} alpha_n. */
inline BaileySeqPair apply_bailey_lemma(const BaileySeqPair &p, const RhoParam &rho1,
                                        const RhoParam &rho2)
{
    const Rational &b = p.base;
    Monomial aq{p.a.coeff, p.a.exp + b};
    Monomial aq_inv = Monomial{Rational(1), Rational(0)} / aq;
    BaileySeqPair out;
    out.a = p.a;
    out.base = b;
    out.order = p.order;

    struct Rho {
        bool inf;
        Monomial rho;  // finite only
        Monomial d;    // aq/rho, finite only
    };
    std::vector<Rho> rhos;
    for (const RhoParam *r : {&rho1, &rho2}) {
        if (r->is_infinite())
            rhos.push_back({true, {}, {}});
        else {
            Monomial d = aq / *r->value;
            if (d.is_one())
                throw DivisionByZeroSeries("denominator Pochhammer (aq/rho;q)_n vanishes");
            rhos.push_back({false, *r->value, d});
        }
    }
    bool both_finite = !rhos[0].inf && !rhos[1].inf;

    /* carried monomial of index k: prod_fin (aq/rho)^k * prod_inf limit * (aq)^{-k} */
    auto index_monomial = [&](long long k) {
        Monomial m{Rational(1), Rational(0)};
        for (const auto &r : rhos) {
            if (r.inf) {
                m.coeff *= (k % 2 == 0) ? 1 : -1;
                m.exp += b * rat_ll(k) * rat_ll(k - 1) / 2;
                m = m * aq.pow(k);
            } else {
                m = m * r.d.pow(k);
            }
        }
        return m * aq_inv.pow(k);
    };

    for (long long n = 0; n <= p.n_max(); ++n) {
        QSeries t = p.alpha[static_cast<std::size_t>(n)] *
                    detail::monomial_factor(index_monomial(n));
        for (const auto &r : rhos) {
            if (r.inf)
                continue;
            t *= pochhammer_finite(r.rho, b, n);
            t = detail::divide_poly(t, pochhammer_finite(r.d, b, n), p.order);
        }
        out.alpha.push_back(detail::truncate_q(t, p.order));
    }

    for (long long n = 0; n <= p.n_max(); ++n) {
        QSeries s = QSeries::zero(1, 1);
        for (long long k = 0; k <= n; ++k) {
            QSeries t = p.beta[static_cast<std::size_t>(k)] *
                        detail::monomial_factor(index_monomial(k));
            for (const auto &r : rhos)
                if (!r.inf)
                    t *= pochhammer_finite(r.rho, b, k);
            if (both_finite) {
                Monomial arg = (rhos[0].d * rhos[1].d) / aq; // aq/(rho1 rho2)
                t *= pochhammer_finite(arg, b, n - k);
            }
            t = detail::divide_poly(t, pochhammer_finite(Monomial::q_power(b), b, n - k),
                                    p.order);
            s = (k == 0) ? t : s + t;
        }
        for (const auto &r : rhos)
            if (!r.inf)
                s = detail::divide_poly(s, pochhammer_finite(r.d, b, n), p.order);
        out.beta.push_back(detail::truncate_q(s, p.order));
    }
    return out;
}

/* a -> aq lift (the b -> 0 form): beta fixed,
 * alpha'_n = (1 - a q^{2n+1}) a^n q^{n^2} / (1 - aq) * sum_{r<=n} a^{-r} q^{-r^2} alpha_r. */
inline BaileySeqPair shift_a_up(const BaileySeqPair &p)
{
    const Rational &b = p.base;
    BaileySeqPair out;
    out.a = Monomial{p.a.coeff, p.a.exp + b};
    out.base = b;
    out.order = p.order;
    out.beta = p.beta;

    QSeries denom = detail::one_minus(p.a, b, 1); // 1 - a q^b
    QSeries partial = QSeries::zero(1, 1);
    for (long long n = 0; n <= p.n_max(); ++n) {
        Monomial down = p.a.pow(-n);
        down.exp -= b * rat_ll(n) * rat_ll(n); // a^{-n} q^{-b n^2}
        QSeries t = p.alpha[static_cast<std::size_t>(n)] * detail::monomial_factor(down);
        partial = (n == 0) ? t : partial + t;
        Monomial up = p.a.pow(n);
        up.exp += b * rat_ll(n) * rat_ll(n);
        QSeries pre = detail::one_minus(p.a, b, 2 * n + 1) * detail::monomial_factor(up);
        out.alpha.push_back(detail::divide_poly(pre * partial, denom, p.order));
    }
    return out;
}

/* a -> a/q (the McLaughlin shift): beta fixed, alpha'_0 = alpha_0,
 * alpha'_n = (1-a)(alpha_n/(1-aq^{2n}) - a q^{2n-2} alpha_{n-1}/(1-aq^{2n-2})). */
inline BaileySeqPair shift_a_down(const BaileySeqPair &p)
{
    const Rational &b = p.base;
    for (long long n = 1; n <= p.n_max(); ++n) {
        Monomial m{p.a.coeff, p.a.exp + b * rat_ll(2 * n)};
        if (m.is_one())
            throw PoleAtUnit("1 - a q^{2n} vanishes identically");
        Monomial m2{p.a.coeff, p.a.exp + b * rat_ll(2 * n - 2)};
        if (m2.is_one())
            throw PoleAtUnit("1 - a q^{2n-2} vanishes identically");
    }
    BaileySeqPair out;
    out.a = Monomial{p.a.coeff, p.a.exp - b};
    out.base = b;
    out.order = p.order;
    out.beta = p.beta;
    out.alpha.push_back(p.alpha[0]);
    QSeries one_minus_a = detail::one_minus(p.a, b, 0);
    for (long long n = 1; n <= p.n_max(); ++n) {
        QSeries t1 = detail::divide_poly(p.alpha[static_cast<std::size_t>(n)],
                                         detail::one_minus(p.a, b, 2 * n), p.order);
        Monomial sh{p.a.coeff, p.a.exp + b * rat_ll(2 * n - 2)}; // a q^{2n-2}
        QSeries t2 = detail::divide_poly(
            p.alpha[static_cast<std::size_t>(n - 1)] * detail::monomial_factor(sh),
            detail::one_minus(p.a, b, 2 * n - 2), p.order);
        out.alpha.push_back(detail::truncate_q(one_minus_a * (t1 - t2), p.order));
    }
    return out;
}

struct LimitReport {
    bool pass = false;
    std::optional<Rational> mismatch_exponent;
};

namespace detail {

inline LimitReport compare(const QSeries &lhs, const QSeries &rhs, const Rational &order)
{
    QSeries l = truncate_q(lhs, order), r = truncate_q(rhs, order);
    auto mism = first_mismatch(l, r);
    LimitReport rep;
    rep.pass = !mism.has_value();
    if (mism)
        rep.mismatch_exponent = rat_ll(*mism) / rat_ll(lcm_ll(l.scale(), r.scale()));
    return rep;
}

} // namespace detail

/* sum a^n q^{n^2} beta_n  vs  (1/(aq;q)_inf) sum a^n q^{n^2} alpha_n; needs
 * base*n_max^2 >= order so the omitted terms lie beyond the window. */
inline LimitReport limit_identity(const BaileySeqPair &p, const Rational &order)
{
    const Rational &b = p.base;
    if (b * rat_ll(p.n_max()) * rat_ll(p.n_max()) < order)
        throw InsufficientLength("n_max^2 below the requested order");
    QSeries lhs = QSeries::zero(1, 1), rhs_sum = QSeries::zero(1, 1);
    for (long long n = 0; n <= p.n_max(); ++n) {
        Monomial an = p.a.pow(n);
        an.exp += b * rat_ll(n) * rat_ll(n);
        QSeries w = detail::monomial_factor(an);
        QSeries lt = detail::truncate_q(w * p.beta[static_cast<std::size_t>(n)], order);
        QSeries rt = detail::truncate_q(w * p.alpha[static_cast<std::size_t>(n)], order);
        lhs = (n == 0) ? lt : lhs + lt;
        rhs_sum = (n == 0) ? rt : rhs_sum + rt;
    }
    Monomial aq{p.a.coeff, p.a.exp + b};
    Rational stretch = std::max(Rational(0), Rational(-detail::lo_q(rhs_sum)));
    QSeries rhs = rhs_sum * pochhammer_infinite(aq, b, order + stretch).inverse();
    return detail::compare(lhs, rhs, order);
}

/* The n -> infinity limit of the general Bailey identity with one finite rho
 * (the other sent to infinity):
 *   sum_j (rho;q)_j q^{binom(j,2)} (-aq/rho)^j beta_j
 *     = ((aq/rho;q)_inf / (aq;q)_inf) sum_r (rho;q)_r / (aq/rho;q)_r
 *           q^{binom(r,2)} (-aq/rho)^r alpha_r;
 * the w-specializations are instances of this. */
inline LimitReport limit_identity_general(const BaileySeqPair &p, const Monomial &rho,
                                          const Rational &order)
{
    const Rational &b = p.base;
    Monomial aq{p.a.coeff, p.a.exp + b};
    Monomial d = aq / rho;
    if (d.is_one())
        throw DivisionByZeroSeries("aq/rho = 1");
    QSeries lhs = QSeries::zero(1, 1), rhs_sum = QSeries::zero(1, 1);
    for (long long n = 0; n <= p.n_max(); ++n) {
        Monomial w = d.pow(n);
        w.coeff *= (n % 2 == 0) ? 1 : -1;
        w.exp += b * rat_ll(n) * rat_ll(n - 1) / 2;
        QSeries wf = pochhammer_finite(rho, b, n) * detail::monomial_factor(w);
        QSeries lt = detail::truncate_q(wf * p.beta[static_cast<std::size_t>(n)], order);
        QSeries rt = detail::divide_poly(wf * p.alpha[static_cast<std::size_t>(n)],
                                         pochhammer_finite(d, b, n), order);
        lhs = (n == 0) ? lt : lhs + lt;
        rhs_sum = (n == 0) ? rt : rhs_sum + rt;
    }
    Rational stretch = std::max(Rational(0), Rational(-detail::lo_q(rhs_sum)));
    QSeries rhs = rhs_sum * pochhammer_infinite(d, b, order + stretch) *
                  pochhammer_infinite(aq, b, order + stretch).inverse();
    return detail::compare(lhs, rhs, order);
}

} // namespace qnahm
