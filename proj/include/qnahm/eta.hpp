#pragma once

#include <optional>

#include "pochhammer.hpp"

namespace qnahm {

struct ZeroSeries : Error {
    using Error::Error;
};
struct WindowTooSmall : Error {
    using Error::Error;
};

/* Formal product of J_m, J_{a,m}, Jbar_{a,m} factors with integer exponents
 * and a monomial prefactor, where
 *   J_m       = (q^m;q^m)_inf
 *   J_{a,m}   = (q^a, q^{m-a}, q^m; q^m)_inf
 *   Jbar_{a,m} = (-q^a, -q^{m-a}, q^m; q^m)_inf.
 */
struct EtaQuotientSpec {
    struct Pure {
        Rational m;
        long long exp;
        friend bool operator==(const Pure &, const Pure &) = default;
    };
    struct General {
        Rational a;
        Rational m;
        long long exp;
        bool barred = false;
        friend bool operator==(const General &, const General &) = default;
    };

    Monomial prefactor{Rational(1), Rational(0)};
    std::vector<Pure> pure;
    std::vector<General> general;

    bool empty() const { return pure.empty() && general.empty() && prefactor.is_one(); }

    EtaQuotientSpec &J(const Rational &m, long long e = 1)
    {
        if (e != 0)
            pure.push_back({m, e});
        return *this;
    }
    EtaQuotientSpec &Jam(const Rational &a, const Rational &m, long long e = 1)
    {
        if (e != 0)
            general.push_back({a, m, e, false});
        return *this;
    }
    EtaQuotientSpec &Jbar(const Rational &a, const Rational &m, long long e = 1)
    {
        if (e != 0)
            general.push_back({a, m, e, true});
        return *this;
    }
    EtaQuotientSpec &times(const Monomial &mono)
    {
        prefactor = prefactor * mono;
        return *this;
    }
};

namespace detail {

/* Index shifts: J_{a+m,m} = -q^{-a} J_{a,m} and J_{-a,m} = -q^{-a} J_{a,m};
 * the barred versions shift without the sign. Returns the spec with every
 * general index in [0, m) and the extracted monomial folded into prefactor. */
inline EtaQuotientSpec normalize_indices(const EtaQuotientSpec &spec)
{
    EtaQuotientSpec out;
    out.prefactor = spec.prefactor;
    out.pure = spec.pure;
    for (const auto &g : spec.general) {
        if (g.m <= 0)
            throw Error("eta factor needs m > 0");
        Rational a = g.a;
        Monomial unit{Rational(1), Rational(0)};
        while (a < 0) {
            /* J_{a,m} = (-1) q^{a} J_{a+m,m} reversed: from J_{-b,m} = -q^{-b} J_{b,m} */
            a += g.m;
            unit = unit * Monomial(g.barred ? Rational(1) : Rational(-1), a - g.m);
        }
        while (a >= g.m) {
            a -= g.m;
            unit = unit * Monomial(g.barred ? Rational(1) : Rational(-1), -a);
        }
        /* 'unit' collected the factor for ONE power of the shifted J. */
        out.prefactor = out.prefactor * unit.pow(g.exp);
        out.general.push_back({a, g.m, g.exp, g.barred});
    }
    return out;
}

inline Rational bernoulli_like(const Rational &x)
{
    return x * x - x + rat(1, 6); // B(x) = x^2 - x + 1/6
}

} // namespace detail

/* Exact truncated expansion of prefactor * all factors. */
inline QSeries expand_eta_quotient(const EtaQuotientSpec &raw, const Rational &order)
{
    EtaQuotientSpec spec = detail::normalize_indices(raw);
    /* Split into numerator/denominator infinite products (a.coeff, exp, base). */
    struct Factor {
        Monomial a;
        Rational base;
    };
    std::vector<Factor> num, den;
    auto push = [&](const Monomial &a, const Rational &base, long long e) {
        for (long long i = 0; i < std::abs(e); ++i)
            (e > 0 ? num : den).push_back({a, base});
    };
    for (const auto &p : spec.pure)
        push(Monomial::q_power(p.m), p.m, p.exp);
    for (const auto &g : spec.general) {
        Rational sign = g.barred ? -1 : 1;
        if (g.a == 0 && g.barred) {
            /* Jbar_{0,m} = (-1,-q^m,q^m;q^m) = 2 J_{2m}^2 / J_m */
            push(Monomial::q_power(2 * g.m), 2 * g.m, 2 * g.exp);
            push(Monomial::q_power(g.m), g.m, -g.exp);
            Monomial two = Monomial::constant(rat(2));
            spec.prefactor = spec.prefactor * two.pow(g.exp);
            continue;
        }
        if (g.a == 0) {
            long long d0 = denominator_of(order);
            return QSeries::zero(d0, to_ll_exact(order * rat_ll(d0))); // J_{0,m} contains (1-1)
        }
        push(Monomial(sign, g.a), g.m, g.exp);
        push(Monomial(sign, g.m - g.a), g.m, g.exp);
        push(Monomial::q_power(g.m), g.m, g.exp);
    }

    /* After index normalization every factor has entries in (0,m] (or a
     * constant 2 from a=0 barred heads), so each truncated product below is
     * exact at work_order and plain multiplication keeps exactness. */
    Rational pre_exp = spec.prefactor.exp;
    Rational work_order = order - pre_exp;
    QSeries top = QSeries::one(1);
    for (const auto &f : num)
        top *= pochhammer_infinite(f.a, f.base, work_order);
    QSeries bottom = QSeries::one(1);
    for (const auto &f : den)
        bottom *= pochhammer_infinite(f.a, f.base, work_order);
    QSeries result = top;
    if (!den.empty())
        result = top * bottom.inverse();
    result = spec.prefactor.coeff * result;
    if (pre_exp != 0) {
        long long d = lcm_ll(result.scale(), denominator_of(pre_exp));
        result = result.rescaled(d).shifted(to_ll_exact(pre_exp * rat_ll(d)));
    }
    long long d = lcm_ll(result.scale(), denominator_of(order));
    return result.rescaled(d).truncated(to_ll_exact(order * rat_ll(d)));
}

/* The constant C with q^C * (expansion) a weight-`weight` modular form,
 * computed on the unbarred normal form:
 *   C = sum_pure e*m/24 + sum_general e*(m*B(a/m)/2 + m/24),  B(x)=x^2-x+1/6,
 * with Jbar rewritten through Jbar_{a,m} = J_m^2 J_{2a,2m} / (J_{a,m} J_{2m})
 * first. A non-unit prefactor exponent s shifts C by -s.
 */
inline std::pair<Rational, Rational> prefactor_C(const EtaQuotientSpec &raw)
{
    EtaQuotientSpec spec = detail::normalize_indices(raw);
    Rational C(0), eta_count(0);
    auto add_pure = [&](const Rational &m, long long e) {
        C += rat_ll(e) * m / 24;
        eta_count += rat_ll(e);
    };
    auto add_general = [&](const Rational &a, const Rational &m, long long e) {
        C += rat_ll(e) * (m * detail::bernoulli_like(a / m) / 2 + m / 24);
        eta_count += rat_ll(e);
    };
    for (const auto &p : spec.pure)
        add_pure(p.m, p.exp);
    for (const auto &g : spec.general) {
        if (!g.barred) {
            if (g.a == 0)
                throw Error("prefactor of a vanishing J_{0,m} factor");
            add_general(g.a, g.m, g.exp);
            continue;
        }
        if (g.a == 0) {
            /* Jbar_{0,m} = 2 J_{2m}^2 / J_m */
            add_pure(2 * g.m, 2 * g.exp);
            add_pure(g.m, -g.exp);
            continue;
        }
        /* Jbar_{a,m} = J_m^2 J_{2a,2m} / (J_{a,m} J_{2m}); 2a may need its own
         * index reduction into [0, 2m). */
        add_pure(g.m, 2 * g.exp);
        add_pure(2 * g.m, -g.exp);
        add_general(g.a, g.m, -g.exp);
        Rational a2 = 2 * g.a;
        Rational shift(0);
        if (a2 >= 2 * g.m) { // J_{a2,2m} = -q^{-(a2-2m)} J_{a2-2m,2m}
            a2 -= 2 * g.m;
            shift = -a2;
        }
        if (a2 == 0)
            throw Error("prefactor of a vanishing J_{0,m} factor");
        add_general(a2, 2 * g.m, g.exp);
        C -= rat_ll(g.exp) * shift; // C(q^s f) = C(f) - s
    }
    C -= spec.prefactor.exp;
    return {C, eta_count / 2};
}

/* Exponent sequence e_1..e_N with f = c0 q^{lo/D} prod_{n>=1} (1-q^{n/D})^{-e_n}
 * on the window; read off by the log-free peeling recursion. */
struct ProductExponents {
    std::vector<Rational> entries; // entries[n-1] is e_n
    long long scale = 1;
    Monomial normalization{Rational(1), Rational(0)};
};

inline ProductExponents recognize_product(const QSeries &f, long long window)
{
    if (f.is_zero())
        throw ZeroSeries("cannot recognize the zero series");
    long long lo = f.lo();
    if (f.hi() - lo <= window)
        throw WindowTooSmall("series is not exact through the requested window");
    Rational c0 = f.coeff(lo);

    std::vector<Rational> g(static_cast<std::size_t>(window) + 1);
    for (const auto &[k, c] : f.terms())
        if (k - lo <= window)
            g[static_cast<std::size_t>(k - lo)] = c / c0;

    ProductExponents out;
    out.scale = f.scale();
    out.normalization = Monomial(c0, rat_ll(lo) / rat_ll(f.scale()));
    out.entries.resize(static_cast<std::size_t>(window));
    for (long long n = 1; n <= window; ++n) {
        Rational e = g[static_cast<std::size_t>(n)];
        out.entries[static_cast<std::size_t>(n - 1)] = e;
        if (e == 0)
            continue;
        /* multiply g by (1-x^n)^e, generalized binomial in x^n */
        std::vector<Rational> binom;
        Rational b(1);
        for (long long j = 0; j * n <= window; ++j) {
            binom.push_back(j % 2 == 0 ? b : -b);
            b = b * (e - rat_ll(j)) / rat_ll(j + 1);
        }
        for (long long k = window; k >= n; --k) {
            Rational s = g[static_cast<std::size_t>(k)];
            for (long long j = 1; j * n <= k; ++j)
                s += binom[static_cast<std::size_t>(j)] *
                     g[static_cast<std::size_t>(k - j * n)];
            g[static_cast<std::size_t>(k)] = s;
        }
    }
    return out;
}

/* Reconstruction oracle used by the round-trip property:
 * norm * prod (1-x^n)^{-e_n} with (1-u)^{-e} = sum_j binom(-e,j)(-u)^j. */
inline QSeries reconstruct_product(const ProductExponents &pe, long long window)
{
    long long d = pe.scale;
    QSeries f = QSeries::one(d, window + 1);
    for (long long n = 1; n <= window; ++n) {
        Rational e = pe.entries[static_cast<std::size_t>(n - 1)];
        if (e == 0)
            continue;
        QSeries factor(d, window + 1);
        Rational b(1);
        for (long long j = 0; j * n <= window; ++j) {
            factor.set_coeff(j * n, j % 2 == 0 ? b : -b);
            b = b * (-e - rat_ll(j)) / rat_ll(j + 1);
        }
        f *= factor;
    }
    QSeries norm = monomial_series(pe.normalization);
    long long dc = lcm_ll(f.scale(), norm.scale());
    long long shift_k = to_ll_exact(pe.normalization.exp * rat_ll(dc));
    return (norm * f).truncated((window + 1) * (dc / d) + shift_k);
}

/* Smallest p <= max_period with e_{n+p} = e_n for all n in the tail. */
inline std::optional<long long> find_period(const ProductExponents &pe, long long max_period,
                                            long long tail_skip)
{
    long long n_entries = static_cast<long long>(pe.entries.size());
    if (n_entries - tail_skip < 2 * max_period)
        throw WindowTooSmall("window leaves fewer than two periods after the tail skip");
    for (long long p = 1; p <= max_period; ++p) {
        bool ok = true;
        for (long long n = std::max<long long>(tail_skip, 1); n + p <= n_entries && ok; ++n)
            ok = pe.entries[static_cast<std::size_t>(n - 1)] ==
                 pe.entries[static_cast<std::size_t>(n + p - 1)];
        if (ok)
            return p;
    }
    return std::nullopt;
}

/* Express one period of residues as J_{a,m} factors and compute C.
 * Requires e_a = e_{p-a} (an eta quotient pairs the residues), integer
 * exponents, and exact periodicity over the whole window: a pattern that is
 * only eventually periodic differs from its quotient by finite correction
 * factors, so its C would be a guess. The normalization exponent lo/D
 * contributes -lo/D to C. */
inline std::optional<std::pair<EtaQuotientSpec, Rational>>
fit_C(const ProductExponents &pe, long long period, long long tail_skip = 10)
{
    long long p = period;
    long long n_entries = static_cast<long long>(pe.entries.size());
    long long start = ((tail_skip + p) / p) * p; // first full period past the skip
    if (start + p > n_entries)
        return std::nullopt;
    std::vector<Rational> per(static_cast<std::size_t>(p) + 1);
    for (long long a = 1; a <= p; ++a)
        per[static_cast<std::size_t>(a)] = pe.entries[static_cast<std::size_t>(start + a - 1)];
    for (long long n = 1; n <= n_entries; ++n)
        if (pe.entries[static_cast<std::size_t>(n - 1)] !=
            per[static_cast<std::size_t>((n - 1) % p + 1)])
            return std::nullopt;
    for (long long a = 1; a < p; ++a)
        if (per[static_cast<std::size_t>(a)] != per[static_cast<std::size_t>(p - a)])
            return std::nullopt;
    for (long long a = 1; a <= p; ++a)
        if (!is_integer(per[static_cast<std::size_t>(a)]))
            return std::nullopt;

    long long D = pe.scale;
    Rational m = rat_ll(p) / rat_ll(D);
    EtaQuotientSpec spec;
    /* Residue-0 balance: J_{a,m} carries J_m^1, and (q^{m/2};q^m)=J_{m/2}/J_m
     * touches residue 0 through both of its halves. */
    Rational pure_m = -per[static_cast<std::size_t>(p)];
    for (long long a = 1; 2 * a < p; ++a) {
        long long e = to_ll_exact(per[static_cast<std::size_t>(a)]);
        if (e == 0)
            continue;
        spec.Jam(rat_ll(a) / rat_ll(D), m, -e);
        pure_m += rat_ll(e);
    }
    if (p % 2 == 0) {
        long long e = to_ll_exact(per[static_cast<std::size_t>(p / 2)]);
        if (e != 0) {
            spec.J(m / 2, -e);
            pure_m += rat_ll(e);
        }
    }
    if (pure_m != 0)
        spec.J(m, to_ll_exact(pure_m));

    auto [C, weight] = prefactor_C(spec);
    (void)weight;
    C -= pe.normalization.exp; // q^{lo/D} pulled out during recognition
    return std::make_pair(spec, C);
}

} // namespace qnahm
