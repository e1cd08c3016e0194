#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <thread>

#include "bailey.hpp"
#include "eta.hpp"
#include "nahm.hpp"
#include "qsum.hpp"

namespace qnahm {

struct UnboundParameter : Error {
    using Error::Error;
};

/* One verifiable identity: both sides build exactly below q^order for any
 * requested order. default_order is in scaled exponent units of `scale`
 * (i.e. the check runs to q^(default_order/scale)). */
struct IdentityEntry {
    std::string name;
    std::string note;
    long long default_order = 120;
    long long scale = 1;
    std::function<QSeries(const Rational &)> lhs;
    std::function<QSeries(const Rational &)> rhs;
    bool diagnostic = false; // fault-injection fixtures; skipped by verify-all
};

struct VerifyReport {
    std::string name;
    bool pass = false;
    long long order = 0; // scaled units the check ran at
    long long scale = 1;
    std::optional<Rational> mismatch_exponent;
    std::string lhs_coeff, rhs_coeff;
};

inline VerifyReport verify(const IdentityEntry &e, std::optional<long long> order_scaled = {})
{
    long long n = order_scaled.value_or(e.default_order);
    Rational order = rat_ll(n) / rat_ll(e.scale);
    QSeries lhs = e.lhs(order);
    QSeries rhs = e.rhs(order);
    VerifyReport r;
    r.name = e.name;
    r.order = n;
    r.scale = e.scale;
    auto mism = first_mismatch(lhs, rhs);
    r.pass = !mism.has_value();
    if (mism) {
        long long d = lcm_ll(lhs.scale(), rhs.scale());
        Rational me = rat_ll(*mism) / rat_ll(d);
        r.mismatch_exponent = me;
        r.lhs_coeff = to_string(lhs.coeff_q(me));
        r.rhs_coeff = to_string(rhs.coeff_q(me));
    }
    return r;
}

namespace reg {

using Builder = std::function<QSeries(const Rational &)>;

inline Monomial qp(const Rational &e) { return Monomial::q_power(e); }
inline Monomial qm(const Rational &c, const Rational &e) { return Monomial(c, e); }

/* LHS helper: sum over N^3 with the displayed exponent polynomial
 * qii i^2 + ... + qjk jk + li i + lj j + lk k over (q^base;q^base) factorials. */
inline Builder sum3(Rational qii, Rational qjj, Rational qkk, Rational qij, Rational qik,
                    Rational qjk, Rational li, Rational lj, Rational lk, Rational base)
{
    RatMatrix half = {{qii, qij, qik}, {qij, qjj, qjk}, {qik, qjk, qkk}};
    RatVector lin = {li, lj, lk};
    return [=](const Rational &order) { return quad_exponent_sum(half, lin, base, order); };
}

inline Builder sum2(Rational qii, Rational qjj, Rational qij, Rational li, Rational lj,
                    Rational base)
{
    RatMatrix half = {{qii, qij}, {qij, qjj}};
    RatVector lin = {li, lj};
    return [=](const Rational &order) { return quad_exponent_sum(half, lin, base, order); };
}

inline Builder eta(EtaQuotientSpec spec)
{
    return [spec = std::move(spec)](const Rational &order) {
        return expand_eta_quotient(spec, order);
    };
}

inline Builder qsum(QSumSpec spec)
{
    return [spec = std::move(spec)](const Rational &order) { return spec.evaluate(order); };
}

inline Builder scaled(Rational c, Builder b)
{
    return [=](const Rational &order) { return c * b(order); };
}

inline Builder plus(Builder a, Builder b)
{
    return [=](const Rational &order) { return a(order) + b(order); };
}

inline Builder plus(Builder a, Builder b, Builder c)
{
    return plus(std::move(a), plus(std::move(b), std::move(c)));
}

inline Builder minus(Builder a, Builder b)
{
    return [=](const Rational &order) { return a(order) - b(order); };
}

/* multiply by c q^e; the partner builder is evaluated at order - e to keep
 * the result exact below order */
inline Builder shifted(Rational c, Rational e, Builder b)
{
    return [=](const Rational &order) {
        QSeries f = b(order - e);
        long long d = lcm_ll(f.scale(), denominator_of(e));
        return f.rescaled(d).shifted(to_ll_exact(e * rat_ll(d)), c);
    };
}

/* f / (q^m;q^m)_inf */
inline Builder over_pure(Builder b, Rational m)
{
    return [=](const Rational &order) {
        QSeries f = b(order);
        Rational stretch = f.is_zero() ? Rational(0)
                                       : std::max(Rational(0), Rational(-rat_ll(f.lo()) / rat_ll(f.scale())));
        return f * pochhammer_infinite(qp(m), m, order + stretch).inverse();
    };
}

/* bilateral theta sum_{n in Z} q^{qa n^2 + qb n} */
inline Builder theta_sum(Rational qa, Rational qb)
{
    return [=](const Rational &order) { return weighted_theta(0, 1, qa, qb, order); };
}

inline Builder wtheta_sum(Rational wl, Rational wc, Rational qa, Rational qb)
{
    return [=](const Rational &order) { return weighted_theta(wl, wc, qa, qb, order); };
}

/* product of pochhammer_infinite factors (monomial, base, power) */
struct PochProduct {
    struct F {
        Monomial a;
        Rational base;
        int power;
    };
    std::vector<F> fs;
    PochProduct &num(Monomial a, Rational base)
    {
        fs.push_back({std::move(a), std::move(base), 1});
        return *this;
    }
    PochProduct &den(Monomial a, Rational base)
    {
        fs.push_back({std::move(a), std::move(base), -1});
        return *this;
    }
};

inline Builder poch_product(PochProduct p)
{
    return [p = std::move(p)](const Rational &order) {
        QSeries top = QSeries::one(1);
        QSeries bottom = QSeries::one(1);
        Rational stretch(0);
        for (const auto &f : p.fs)
            if (f.a.exp < 0)
                stretch += -f.a.exp;
        for (const auto &f : p.fs)
            (f.power > 0 ? top : bottom) *= pochhammer_infinite(f.a, f.base, order + stretch);
        if (bottom.term_count() == 1 && bottom.coeff(0) == 1)
            return detail::truncate_q(top, order);
        return detail::truncate_q(top * bottom.inverse(), order);
    };
}

/* The rank-2 sums of Zagier's first example family. Constraint a > 1/2,
 * a != 1 (the identity degenerates at a = 1, and the quadratic form needs
 * a > 1/2). */
inline void validate_example1_binding(const Rational &a)
{
    if (a <= rat(1, 2) || a == 1)
        throw UnboundParameter("example-1 family needs a > 1/2 and a != 1, got a = " +
                               to_string(a));
}

inline Builder vz_rank2_lhs(const Rational &a, const Rational &b1, const Rational &b2)
{
    validate_example1_binding(a);
    return sum2(a / 2, a / 2, 1 - a, b1, b2, 1);
}

} // namespace reg

/* The identity catalog. Names are stable CLI keys; notes say where each
 * identity lives in the classical literature. */
inline const std::vector<IdentityEntry> &registry()
{
    using namespace reg;
    static const std::vector<IdentityEntry> entries = [] {
        std::vector<IdentityEntry> v;
        auto add = [&](std::string name, std::string note, long long order, long long scale,
                       Builder lhs, Builder rhs, bool diagnostic = false) {
            v.push_back({std::move(name), std::move(note), order, scale, std::move(lhs),
                         std::move(rhs), diagnostic});
        };

        /* ---- Rogers-Ramanujan ---- */
        {
            QSumSpec s1;
            s1.exponent(1, 0).den(qp(1), 1);
            EtaQuotientSpec r1;
            r1.J(5).Jam(1, 5, -1);
            add("rr-1", "first Rogers-Ramanujan identity", 160, 1, qsum(s1), eta(r1));
            QSumSpec s2;
            s2.exponent(1, 1).den(qp(1), 1);
            EtaQuotientSpec r2;
            r2.J(5).Jam(2, 5, -1);
            add("rr-2", "second Rogers-Ramanujan identity", 160, 1, qsum(s2), eta(r2));

            // fault-injection fixture: rr-1 with the right side perturbed by +q^5
            add("selftest-fault", "diagnostic fixture, must fail at exponent 5", 160, 1,
                qsum(s1), plus(eta(r1), shifted(1, 5, [](const Rational &o) {
                                  return QSeries::one(1, to_ll_exact(o * 1));
                              })),
                true);
        }

        /* ---- classical summations, three bindings each ---- */
        auto add_qbinom = [&](int i, Monomial a, Monomial z) {
            QSumSpec s;
            s.ratio(z.coeff).exponent(0, z.exp).num(a, 1).den(qp(1), 1);
            PochProduct p;
            p.num(a * z, 1).den(z, 1);
            add("q-binomial-" + std::to_string(i), "q-binomial theorem", 120, 1, qsum(s),
                poch_product(p));
        };
        add_qbinom(1, qm(1, 2), qm(1, 1));
        add_qbinom(2, qm(-1, 1), qm(1, 2));
        add_qbinom(3, qm(2, 3), qm(-3, 1));

        auto add_euler1 = [&](int i, Monomial z) {
            QSumSpec s;
            s.ratio(z.coeff).exponent(0, z.exp).den(qp(1), 1);
            PochProduct p;
            p.den(z, 1);
            add("euler-1-" + std::to_string(i), "Euler q-exponential", 120, 1, qsum(s),
                poch_product(p));
        };
        add_euler1(1, qm(1, 1));
        add_euler1(2, qm(-2, 2));
        add_euler1(3, qm(rat(1, 2), 3));

        auto add_euler2 = [&](int i, Monomial z) {
            QSumSpec s;
            s.ratio(z.coeff).exponent(rat(1, 2), z.exp - rat(1, 2)).den(qp(1), 1);
            PochProduct p;
            p.num(Monomial(-z.coeff, z.exp), 1);
            add("euler-2-" + std::to_string(i), "second Euler q-exponential", 120, 1, qsum(s),
                poch_product(p));
        };
        add_euler2(1, qm(1, 1));
        add_euler2(2, qm(5, 1));
        add_euler2(3, qm(-1, 2));

        auto add_qgauss = [&](int i, Monomial a, Monomial b, Monomial c) {
            Monomial z = c / (a * b);
            QSumSpec s = hypergeom_phi({a, b}, {c}, 1, z);
            PochProduct p;
            p.num(c / a, 1).num(c / b, 1).den(c, 1).den(z, 1);
            add("q-gauss-" + std::to_string(i), "q-Gauss summation", 120, 1, qsum(s),
                poch_product(p));
        };
        add_qgauss(1, qm(1, 1), qm(1, 1), qm(1, 3));
        add_qgauss(2, qm(-1, 1), qm(1, 2), qm(1, 4));
        add_qgauss(3, qm(2, 1), qm(3, 1), qm(1, 3));

        auto add_phi11 = [&](int i, Monomial a, Monomial c) {
            QSumSpec s = hypergeom_phi({a}, {c}, 1, c / a);
            PochProduct p;
            p.num(c / a, 1).den(c, 1);
            add("phi11-" + std::to_string(i), "1phi1 summation", 120, 1, qsum(s),
                poch_product(p));
        };
        add_phi11(1, qm(1, 1), qm(1, 3));
        add_phi11(2, qm(-1, 0), qm(1, 2));
        add_phi11(3, qm(2, 1), qm(-1, 2));

        auto add_b2phi2 = [&](int i, Monomial a, Monomial b) {
            Monomial q1 = qp(1);
            QSumSpec s = hypergeom_phi({a, q1 / a}, {qm(-1, 1), b}, 1, Monomial(-b.coeff, b.exp));
            PochProduct p;
            p.num(a * b, 2).num((b * q1) / a, 2).den(b, 1);
            add("bailey-2phi2-" + std::to_string(i), "q-analogue of Bailey's 2F1(-1)", 120, 1,
                qsum(s), poch_product(p));
        };
        add_b2phi2(1, qm(-1, 1), qm(1, 2));
        add_b2phi2(2, qm(2, 1), qm(1, 3));
        add_b2phi2(3, qm(-1, 0), qm(1, 1));

        auto add_g2phi2 = [&](int i, Monomial a, Monomial b) {
            // 2phi2(a^2, b^2; abq^{1/2}, -abq^{1/2}; q, -q)
            Monomial a2 = a * a, b2 = b * b, ab = a * b;
            Monomial m1(ab.coeff, ab.exp + rat(1, 2)), m2(-ab.coeff, ab.exp + rat(1, 2));
            QSumSpec s = hypergeom_phi({a2, b2}, {m1, m2}, 1, qm(-1, 1));
            PochProduct p;
            p.num(Monomial(a2.coeff, a2.exp + 1), 2)
                .num(Monomial(b2.coeff, b2.exp + 1), 2)
                .den(qp(1), 2)
                .den(Monomial(a2.coeff * b2.coeff, a2.exp + b2.exp + 1), 2);
            add("gauss-2phi2-" + std::to_string(i), "q-analogue of Gauss' 2F1(-1)", 120, 2,
                qsum(s), poch_product(p));
        };
        add_g2phi2(1, qm(1, rat(1, 2)), qm(1, rat(3, 2)));
        add_g2phi2(2, qm(-1, 1), qm(1, 1));
        add_g2phi2(3, qm(1, 1), qm(2, 2));

        /* ---- Slater's list ---- */
        {
            QSumSpec s;
            s.exponent(1, 0).num(qm(-1, 1), 2).den(qp(4), 4);
            EtaQuotientSpec r;
            r.J(2).Jam(3, 6).J(1, -1).J(4, -1);
            add("s25", "Slater 25", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.exponent(rat(1, 2), rat(1, 2)).den(qp(1), 1).den(qp(1), 2, 1, 1);
            EtaQuotientSpec r;
            r.J(2).J(14, 3).J(1, -1).Jam(1, 14, -1).Jam(4, 14, -1).Jam(6, 14, -1);
            add("s80", "Slater 80", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.exponent(rat(1, 2), rat(1, 2)).den(qp(1), 1).den(qp(1), 2);
            EtaQuotientSpec r;
            r.J(2).J(14, 3).J(1, -1).Jam(2, 14, -1).Jam(3, 14, -1).Jam(4, 14, -1);
            add("s81", "Slater 81", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.exponent(rat(1, 2), rat(3, 2)).den(qp(1), 1).den(qp(1), 2, 1, 1);
            EtaQuotientSpec r;
            r.J(2).J(14, 3).J(1, -1).Jam(2, 14, -1).Jam(5, 14, -1).Jam(6, 14, -1);
            add("s82", "Slater 82", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.exponent(1, 0).den(qp(1), 2).den(qp(4), 4);
            EtaQuotientSpec r;
            r.J(2).J(14).Jam(3, 28).Jam(11, 28).J(1, -1).J(28, -1).Jam(4, 28, -1).Jam(12, 28, -1);
            add("s117", "Slater 117", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.exponent(1, 2).den(qp(1), 2).den(qp(4), 4);
            EtaQuotientSpec r;
            r.J(2).Jam(1, 14).Jam(12, 28).J(1, -1).J(4, -1).J(28, -1);
            add("s118", "Slater 118", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.exponent(1, 2).den(qp(1), 1, 2, 1).den(qm(-1, 2), 2);
            EtaQuotientSpec r;
            r.J(2).Jam(5, 14).Jam(4, 28).J(1, -1).J(4, -1).J(28, -1);
            add("s119", "Slater 119", 140, 1, qsum(s), eta(r));
        }

        /* ---- Ramanujan's Lost Notebook entries ---- */
        {
            QSumSpec s;
            s.ratio(-1).exponent(1, 0).den(qp(4), 4).den(qm(-1, 1), 2);
            EtaQuotientSpec r;
            r.Jam(1, 14).Jam(5, 14).J(7).Jam(2, 14, -1).Jam(4, 14, -1).J(14, -1);
            add("ab-354", "Andrews-Berndt entry 3.5.4", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.ratio(-1).exponent(1, 2).den(qp(4), 4).den(qm(-1, 1), 2);
            EtaQuotientSpec r;
            r.Jam(3, 14).Jam(5, 14).J(7).Jam(4, 14, -1).Jam(6, 14, -1).J(14, -1);
            add("ab-355", "Andrews-Berndt entry 3.5.5", 140, 1, qsum(s), eta(r));
        }
        {
            QSumSpec s;
            s.ratio(-1).exponent(1, 2).den(qp(4), 4).den(qm(-1, 1), 2, 1, 1);
            EtaQuotientSpec r;
            r.Jam(1, 14).Jam(3, 14).J(7).Jam(2, 14, -1).Jam(6, 14, -1).J(14, -1);
            add("ab-356", "Andrews-Berndt entry 3.5.6", 140, 1, qsum(s), eta(r));
        }
        {
            EtaQuotientSpec r;
            r.J(2).J(3, 2).J(1, -2).J(6, -1);
            QSumSpec s8;
            s8.exponent(1, 0).num(qm(-1, 0), 1).den(qp(1), 1).den(qp(1), 2);
            add("ab-428", "Andrews-Berndt entry 4.2.8", 140, 1, qsum(s8), eta(r));
            QSumSpec s9;
            s9.exponent(1, 0).num(qm(-1, 1), 1).den(qp(1), 1).den(qp(1), 2, 1, 1);
            add("ab-429", "Andrews-Berndt entry 4.2.9", 140, 1, qsum(s9), eta(r));
        }
        {
            QSumSpec s;
            s.ratio(-1).exponent(1, 2).num(qp(1), 2).den(qp(4), 4);
            EtaQuotientSpec r;
            r.J(1).J(6, 2).Jam(2, 12).J(2, -2).Jam(1, 6, -1).J(12, -1);
            add("ab-4211", "Andrews-Berndt entry 4.2.11", 140, 1, qsum(s), eta(r));
        }
        for (int i = 0; i < 3; ++i) {
            // Entry 5.3.1 with a = q^t
            long t = i; // 0, 1, 2
            QSumSpec s;
            s.exponent(2, 0).num(qm(-1, 1 + t), 2).num(qm(-1, 1 - t), 2).den(qp(2), 2, 2, 0);
            PochProduct p;
            p.num(qm(-1, 3 + t), 6).num(qm(-1, 3 - t), 6).num(qp(6), 6).den(qp(2), 2);
            add("ab-531-" + std::to_string(i + 1), "Andrews-Berndt entry 5.3.1, a = q^" +
                                                        std::to_string(t),
                140, 1, qsum(s), poch_product(p));
        }
        {
            // Entry 5.2.4 at three monomial bindings (x, rho1, rho2)
            auto add_524 = [&](int i, Monomial x, Monomial r1, Monomial r2) {
                Monomial z = (qp(2) / r1) / r2; // q^2/(rho1 rho2)
                QSumSpec lhs;
                lhs.ratio(z.coeff)
                    .exponent(0, z.exp)
                    .num(Monomial(-x.coeff, x.exp), 1, 1, 1)
                    .num(Monomial(-(Rational(1) / x.coeff), 1 - x.exp), 1)
                    .num(r1, 1)
                    .num(r2, 1)
                    .den(qp(1), 1, 2, 1);
                QSumSpec up; // x^{n+1} branch
                up.weight(x.coeff)
                    .ratio(z.coeff * x.coeff)
                    .exponent(rat(1, 2), rat(1, 2) + z.exp + x.exp)
                    .num(r1, 1)
                    .num(r2, 1)
                    .den(qp(2) / r1, 1)
                    .den(qp(2) / r2, 1);
                QSumSpec dn; // x^{-n} branch
                dn.ratio(z.coeff / x.coeff)
                    .exponent(rat(1, 2), rat(1, 2) + z.exp - x.exp)
                    .num(r1, 1)
                    .num(r2, 1)
                    .den(qp(2) / r1, 1)
                    .den(qp(2) / r2, 1);
                PochProduct pre;
                pre.num(qp(2) / r1, 1).num(qp(2) / r2, 1).den(qp(1), 1).den(z, 1);
                Builder rhs = [pre_b = poch_product(pre), up, dn, x](const Rational &order) {
                    Rational st = Rational(abs(x.exp)) + 2;
                    /* x^{n+1} = x * x^n: the loose factor x lands here as a
                     * monomial shift of the x^n branch. */
                    QSeries u = up.evaluate(order + st);
                    long long d = lcm_ll(u.scale(), denominator_of(x.exp));
                    u = u.rescaled(d).shifted(to_ll_exact(x.exp * rat_ll(d)));
                    QSeries s = u + dn.evaluate(order + st);
                    return detail::truncate_q(pre_b(order + st) * s, order);
                };
                add("ab-524-" + std::to_string(i), "Andrews-Berndt entry 5.2.4", 120, 1,
                    qsum(lhs), rhs);
            };
            add_524(1, qm(1, 1), qm(-1, 0), qm(1, 1));
            add_524(2, qm(1, 2), qm(2, 1), qm(-1, 0));
            add_524(3, qm(1, 1), qm(2, 1), qm(-1, 0));
        }
        {
            // Entry 5.2.4 with rho1, rho2 -> infinity, the reduction used for
            // the odd part of the scale-4 search matrix sums:
            //   sum (-x;q)_{n+1}(-q/x;q)_n q^{n^2+n}/(q;q)_{2n+1}
            //     = (1/(q;q)_inf) sum (x^{n+1}+x^{-n}) q^{3(n^2+n)/2}
            auto add_524lim = [&](int i, Monomial x) {
                QSumSpec lhs;
                lhs.exponent(1, 1)
                    .num(Monomial(-x.coeff, x.exp), 1, 1, 1)
                    .num(Monomial(-(Rational(1) / x.coeff), 1 - x.exp), 1)
                    .den(qp(1), 1, 2, 1);
                QSumSpec up;
                up.weight(x.coeff).ratio(x.coeff).exponent(rat(3, 2), rat(3, 2) + x.exp);
                QSumSpec dn;
                dn.ratio(Rational(1) / x.coeff).exponent(rat(3, 2), rat(3, 2) - x.exp);
                Builder rhs = [up, dn, x](const Rational &order) {
                    Rational st = abs(x.exp) + 1;
                    QSeries s = up.evaluate(order + st);
                    long long d = lcm_ll(s.scale(), denominator_of(x.exp));
                    s = s.rescaled(d).shifted(to_ll_exact(x.exp * rat_ll(d)), 1);
                    s = s + dn.evaluate(order + st);
                    QSeries inv = pochhammer_infinite(qp(1), 1, order + st).inverse();
                    return detail::truncate_q(s * inv, order);
                };
                add("ab-524-lim-" + std::to_string(i), "entry 5.2.4, rho -> infinity limit",
                    120, 1, qsum(lhs), rhs);
            };
            add_524lim(1, qm(1, 1));
            add_524lim(2, qm(1, 2));
            add_524lim(3, qm(1, 3));
        }

        /* ---- rank-2 sums of the first Zagier family ---- */
        {
            auto add_vz1 = [&](int i, Rational a, Rational b, long long scale) {
                Builder lhs = vz_rank2_lhs(a, b, -b);
                Builder rhs = over_pure(theta_sum(a / 2, b), 1);
                add("vz-rank2-1-" + std::to_string(i), "two-variable theta expansion, B=(b,-b)",
                    140, scale, lhs, rhs);
            };
            add_vz1(1, rat(3, 2), 0, 4);
            add_vz1(2, 2, rat(1, 2), 2);
            add_vz1(3, 3, 1, 2);

            auto add_vz2 = [&](int i, Rational a, long long scale) {
                Builder lhs = vz_rank2_lhs(a, rat(-1, 2), rat(-1, 2));
                Builder rhs = scaled(2, over_pure(theta_sum(a / 2, rat(1, 2)), 1));
                add("vz-rank2-2-" + std::to_string(i), "two-variable theta expansion, B=(-1/2,-1/2)",
                    140, scale, lhs, rhs);
            };
            add_vz2(1, rat(3, 2), 4);
            add_vz2(2, 2, 2);
            add_vz2(3, 3, 2);

            auto add_vz3 = [&](int i, Rational a, long long scale) {
                // displayed exponent reads (1 - a/2) i + (a/2) j per the B_3 vector
                Builder lhs = vz_rank2_lhs(a, 1 - a / 2, a / 2);
                Builder rhs = scaled(rat(1, 2), over_pure(theta_sum(a / 2, a / 2), 1));
                add("vz-rank2-3-" + std::to_string(i), "two-variable theta expansion, B=(1-a/2,a/2)",
                    140, scale, lhs, rhs);
            };
            add_vz3(1, rat(3, 2), 4);
            add_vz3(2, 2, 2);
            add_vz3(3, 3, 2);
        }

        /* ---- the rank-3 family with parameters (m, nu) ---- */
        {
            auto jbar = [](Rational aa, Rational mm, long long e = 1) {
                EtaQuotientSpec s;
                s.Jbar(aa, mm, e);
                return s;
            };
            auto add_thm1 = [&](int i, Rational m, Rational nu, long long scale) {
                Rational M = 4 * (4 * m + 1);
                // id-1
                {
                    Builder lhs = sum3(2 * m + 1, 2 * m + 1, 2, 2 - 4 * m, -2, -2, nu, -nu, 0, 4);
                    EtaQuotientSpec t1 = jbar(2 * (4 * m + nu + 1), M);
                    t1.J(4, 3).J(2, -2).J(8, -2);
                    EtaQuotientSpec t2 = jbar(-2 * nu, M);
                    t2.J(8, 2).J(4, -3);
                    Builder rhs = plus(eta(t1), shifted(2, 2 * m + nu + 1, eta(t2)));
                    add("thm1-1-" + std::to_string(i),
                        "rank-3 theta expansion, general (m, nu) family, first identity", 160,
                        scale, lhs, rhs);
                }
                // id-2
                {
                    Builder lhs = sum3(2 * m + 1, 2 * m + 1, 2, 2 - 4 * m, -2, -2, 0, 0, -2, 4);
                    EtaQuotientSpec t1 = jbar(8 * m, M);
                    t1.J(8, 2).J(4, -3);
                    EtaQuotientSpec t2 = jbar(2, M);
                    t2.J(4, 3).J(2, -2).J(8, -2);
                    Builder rhs = plus(scaled(4, eta(t1)), shifted(2, 2 * m - 1, eta(t2)));
                    add("thm1-2-" + std::to_string(i),
                        "rank-3 theta expansion, general (m, nu) family, second identity", 160,
                        scale, lhs, rhs);
                }
                // id-3
                {
                    Builder lhs = sum3(2 * m + 1, 2 * m + 1, 2, 2 - 4 * m, -2, -2, 1, -1, 2, 4);
                    EtaQuotientSpec t1 = jbar(8 * m + 2, M);
                    t1.J(8, 2).J(4, -3);
                    EtaQuotientSpec t2;
                    t2.J(4, 3).J(32 * m + 8, 2).J(2, -2).J(8, -2).J(M, -1);
                    Builder rhs = plus(eta(t1), shifted(1, 2 * m, eta(t2)));
                    add("thm1-3-" + std::to_string(i),
                        "rank-3 theta expansion, general (m, nu) family, third identity", 160,
                        scale, lhs, rhs);
                }
            };
            add_thm1(1, rat(1, 2), 0, 1);
            add_thm1(2, rat(1, 2), 1, 1);
            add_thm1(3, 1, 0, 1);
            add_thm1(4, rat(3, 4), rat(1, 2), 2);
        }

        /* ---- the A3 Cartan-form family ---- */
        {
            EtaQuotientSpec a1, a2, a3;
            a1.J(4, 6).J(28, 3).J(2, -6).Jam(4, 28, -1).Jam(6, 28, -1).Jam(8, 28, -1);
            a2.J(1, 5).J(7).Jam(1, 14).Jam(3, 14).J(2, -5).Jam(2, 14, -1).Jam(6, 14, -1).J(14, -1);
            a3.J(2, 11).Jam(5, 14).Jam(4, 28).J(1, -6).J(4, -6).J(28, -1);
            add("thm3-1", "A3 Cartan-form sum, first identity", 120, 1,
                sum3(2, 2, 2, -2, -2, 0, -2, 2, 0, 2),
                plus(scaled(4, eta(a1)), scaled(rat(-1, 2), eta(a2)), scaled(rat(-1, 2), eta(a3))));

            EtaQuotientSpec b1, b2, b3;
            b1.J(2, 11).Jam(1, 14).Jam(12, 28).J(1, -6).J(4, -6).J(28, -1);
            b2.J(1, 5).J(7).Jam(3, 14).Jam(5, 14).J(2, -5).Jam(4, 14, -1).Jam(6, 14, -1).J(14, -1);
            b3.J(4, 6).J(28, 3).J(2, -6).Jam(4, 28, -1).Jam(10, 28, -1).Jam(12, 28, -1);
            add("thm3-2", "A3 Cartan-form sum, second identity", 120, 1,
                sum3(2, 2, 2, -2, -2, 0, 0, 0, 0, 2),
                plus(scaled(rat(1, 2), eta(b1)), scaled(rat(1, 2), eta(b2)),
                     shifted(-4, 2, eta(b3))));

            EtaQuotientSpec c1, c2, c3;
            c1.J(2, 11).J(14).Jam(3, 28).Jam(11, 28).J(1, -6).J(4, -5).J(28, -1).Jam(4, 28, -1).Jam(12, 28, -1);
            c2.J(1, 5).J(7).Jam(1, 14).Jam(5, 14).J(2, -5).Jam(2, 14, -1).Jam(4, 14, -1).J(14, -1);
            c3.J(4, 6).J(28, 3).J(2, -6).Jam(2, 28, -1).Jam(8, 28, -1).Jam(12, 28, -1);
            add("thm3-3", "A3 Cartan-form sum, third identity", 120, 1,
                sum3(2, 2, 2, -2, -2, 0, -2, 2, 2, 2),
                plus(shifted(rat(1, 2), -1, eta(c1)), shifted(rat(-1, 2), -1, eta(c2)),
                     scaled(-4, eta(c3))));
        }

        /* ---- the symmetric 3x3 family from the half-integer matrix ---- */
        {
            EtaQuotientSpec t1, t2, t3;
            t1.J(6, 5).Jam(28, 60).J(3, -2).J(4, -2).J(12, -2);
            t2.J(2, 2).J(3).J(12).Jam(12, 60).J(1, -1).J(4, -3).J(6, -1);
            t3.J(6, 5).Jam(8, 60).J(3, -2).J(4, -2).J(12, -2);
            add("thm-lift-11-1", "symmetric rank-3 sum, no linear term", 200, 1,
                sum3(3, 3, 3, -2, -2, -2, 0, 0, 0, 4),
                plus(eta(t1), shifted(2, 3, eta(t2)), shifted(-1, 4, eta(t3))));

            EtaQuotientSpec u1, u2, u3;
            u1.J(2, 2).J(3).J(12).Jam(24, 60).J(1, -1).J(4, -3).J(6, -1);
            u2.J(6, 5).Jam(16, 60).J(3, -2).J(4, -2).J(12, -2);
            u3.J(6, 5).Jam(4, 60).J(3, -2).J(4, -2).J(12, -2);
            add("thm-lift-11-2", "symmetric rank-3 sum with linear term", 200, 1,
                sum3(3, 3, 3, -2, -2, -2, -2, 2, -2, 4),
                plus(scaled(2, eta(u1)), shifted(1, 1, eta(u2)), shifted(1, 5, eta(u3))));
        }

        /* ---- the hexagonal rank-2 double sums and their dissection ---- */
        {
            EtaQuotientSpec s0;
            s0.Jam(21, 45).J(3, -1);
            EtaQuotientSpec s0b;
            s0b.Jam(6, 45).J(3, -1);
            EtaQuotientSpec s1;
            s1.Jam(9, 45).J(3, -1);
            Builder Sfull = sum2(2, 2, 2, 0, 0, 3);
            add("vz-exam10-1", "hexagonal double sum, no linear term", 120, 1, Sfull,
                plus(eta(s0), shifted(-1, 3, eta(s0b)), shifted(2, 2, eta(s1))));

            EtaQuotientSpec t0;
            t0.Jam(18, 45).J(3, -1);
            EtaQuotientSpec t1;
            t1.Jam(12, 45).J(3, -1);
            EtaQuotientSpec t2;
            t2.Jam(3, 45).J(3, -1);
            Builder Tfull = sum2(2, 2, 2, -2, -1, 3);
            add("vz-exam10-2", "hexagonal double sum with linear term", 120, 1, Tfull,
                plus(scaled(2, eta(t0)), shifted(1, 1, eta(t1)), shifted(1, 4, eta(t2))));

            auto dissected = [](Builder b, long long m, long long r) {
                return Builder([=](const Rational &order) { return dissect(b(order), m, r); });
            };
            add("dissect-s0", "residue-0 part of the hexagonal sum", 120, 1,
                dissected(Sfull, 3, 0), plus(eta(s0), shifted(-1, 3, eta(s0b))));
            add("dissect-s1", "residue-2 part (both off-diagonal classes)", 120, 1,
                dissected(Sfull, 3, 2), shifted(2, 2, eta(s1)));
            add("dissect-t01", "residue-0 part of the shifted hexagonal sum", 120, 1,
                dissected(Tfull, 3, 0), scaled(2, eta(t0)));
            add("dissect-tm1", "residue-1 part of the shifted hexagonal sum", 120, 1,
                dissected(Tfull, 3, 1), plus(shifted(1, 1, eta(t1)), shifted(1, 4, eta(t2))));
        }

        /* ---- the a = 3/2 instance: lifted rank-3 identities ---- */
        {
            // the displayed quadratic with cross terms 2ij+4ik+4jk; the other
            // ordering printed alongside these fails numerically (see ledger)
            auto L = [&](Rational li, Rational lj, Rational lk) {
                return sum3(3, 3, 4, 2, 4, 4, li, lj, lk, 4);
            };
            auto add_liftvz1 = [&](int i, Rational c, long long scale) {
                PochProduct p;
                p.num(qm(-1, 3 + c), 6).num(qm(-1, 3 - c), 6).num(qp(6), 6).den(qp(4), 4);
                add("lift-vz32-1-" + std::to_string(i), "lifted theta form, B = (c,-c,0)/4",
                    160, scale, L(c, -c, 0), poch_product(p));
            };
            add_liftvz1(1, 0, 1);
            add_liftvz1(2, 1, 1);
            add_liftvz1(3, rat(1, 2), 2);

            PochProduct p2;
            p2.num(qm(-1, 1), 6).num(qm(-1, 5), 6).num(qp(6), 6).den(qp(4), 4);
            add("lift-vz32-2", "lifted theta form, B = -(1/2,1/2,1)", 160, 1,
                L(-2, -2, -4), scaled(2, poch_product(p2)));

            PochProduct p3;
            p3.num(qm(-1, 6), 6).num(qm(-1, 6), 6).num(qp(6), 6).den(qp(4), 4);
            add("lift-vz32-3", "lifted theta form, B = (1/4,3/4,1)", 160, 1,
                L(1, 3, 4), poch_product(p3));
        }

        /* ---- the distinct-parts family ---- */
        for (int i = 0; i < 4; ++i) {
            long t = std::vector<long>{0, -1, 1, 2}[static_cast<std::size_t>(i)];
            PochProduct p;
            p.num(qm(-1, 1 + t), 2);
            add("thm62-" + std::to_string(i + 1),
                "distinct-parts product, u = q^" + std::to_string(t), 160, 1,
                reg::sum3(3, 3, 4, 2, 4, 4, rat(t), rat(t - 2), rat(2 * t), 4),
                poch_product(p));
        }

        /* ---- the nonmodular pair and its relatives ---- */
        {
            EtaQuotientSpec w1; // J1^2 J4 / J2
            w1.J(1, 2).J(4).J(2, -1);
            EtaQuotientSpec w2; // J2^2 J3 J12 / (J1 J4^2 J6)
            w2.J(2, 2).J(3).J(12).J(1, -1).J(4, -2).J(6, -1);
            add("nonmod-1", "weight-mixing sum, B = (1/2,1/2,0)", 120, 1,
                sum3(3, 3, 4, 2, 4, 4, 2, 2, 0, 4),
                plus(scaled(rat(1, 3), eta(w1)), scaled(rat(2, 3), eta(w2))));
            add("nonmod-2", "weight-mixing sum, B = (1,1,1)", 120, 1,
                sum3(3, 3, 4, 2, 4, 4, 4, 4, 4, 4),
                plus(shifted(rat(-1, 3), -1, eta(w1)), shifted(rat(1, 3), -1, eta(w2))));
            add("nonmod-relation", "difference relation tying the two sums", 140, 1,
                minus(sum3(3, 3, 4, 2, 4, 4, 2, -2, 0, 4), sum3(3, 3, 4, 2, 4, 4, 2, 2, 0, 4)),
                shifted(1, 1, sum3(3, 3, 4, 2, 4, 4, 4, 4, 4, 4)));

            EtaQuotientSpec w3; // J1^2 J4^2 / J2
            w3.J(1, 2).J(4, 2).J(2, -1);
            EtaQuotientSpec w4; // J2^2 J3 J12 / (J1 J4 J6)
            w4.J(2, 2).J(3).J(12).J(1, -1).J(4, -1).J(6, -1);
            add("wang-234", "weighted theta as an eta combination", 160, 1,
                wtheta_sum(1, 1, 3, 2),
                plus(scaled(rat(1, 3), eta(w3)), scaled(rat(2, 3), eta(w4))));

            QSumSpec k1;
            k1.exponent(1, 0).num(qm(-1, 0), 1).num(qm(-1, 0), 1).den(qp(1), 1, 2, 0);
            EtaQuotientSpec k1a; // J2 J3^2/(J1^2 J6)
            k1a.J(2).J(3, 2).J(1, -2).J(6, -1);
            EtaQuotientSpec k1b; // J1^4/J2^2
            k1b.J(1, 4).J(2, -2);
            add("key-1", "doubled distinct-parts sum", 140, 1, qsum(k1),
                plus(scaled(rat(4, 3), eta(k1a)), scaled(rat(-1, 3), eta(k1b))));

            QSumSpec k2;
            k2.exponent(2, 2).num(qm(-1, 1), 2).num(qm(-1, 1), 2).den(qp(2), 2, 2, 1);
            EtaQuotientSpec k2a; // J1^2 J4^2/J2^2
            k2a.J(1, 2).J(4, 2).J(2, -2);
            EtaQuotientSpec k2b; // J2 J3 J12/(J1 J4 J6)
            k2b.J(2).J(3).J(12).J(1, -1).J(4, -1).J(6, -1);
            add("key-2", "odd-indexed companion sum", 140, 1, qsum(k2),
                plus(scaled(rat(1, 3), eta(k2a)), scaled(rat(2, 3), eta(k2b))));
        }

        /* ---- the dual-matrix family at a = 3/2 ---- */
        {
            auto Ld = [&](Rational li, Rational lj, Rational lk) {
                return sum3(2, 2, 2, 0, -2, -2, li, lj, lk, 4);
            };
            for (int i = 0; i < 3; ++i) {
                long t = i + 1; // a = 1, 2, 3
                PochProduct p;
                p.num(qm(-1, 0), 2).num(qm(-1, t), 2);
                add("thm63-1-" + std::to_string(i + 1),
                    "dual-matrix product form, a = q^" + std::to_string(t), 140, 1,
                    Ld(0, -2, rat(t)), poch_product(p));
            }
            {
                EtaQuotientSpec r; // J2^2 J6^2/(J1 J3 J4^2)
                r.J(2, 2).J(6, 2).J(1, -1).J(3, -1).J(4, -2);
                add("thm63-3", "dual-matrix sum, linear (1,-1,2)", 140, 1, Ld(1, -1, 2), eta(r));
            }
            for (int i = 0; i < 3; ++i) {
                Rational c(i); // c = 0, 1, 2
                EtaQuotientSpec t1;
                t1.Jbar(2 + c, 4).Jbar(6 + c, 12).J(4, -2);
                EtaQuotientSpec t2;
                t2.Jbar(-c, 4).Jbar(c, 12).J(4, -2);
                add("thm63-4-" + std::to_string(i + 1),
                    "dual-matrix theta pair, c = " + std::to_string(i), 140, 1,
                    Ld(-c, c, 0), plus(eta(t1), shifted(1, 2, eta(t2))));
            }
            // base q^2 members
            auto Lh = [&](Rational li, Rational lj, Rational lk) {
                return sum3(1, 1, 1, 0, -1, -1, li, lj, lk, 2);
            };
            EtaQuotientSpec core; // J3^3/(J1 J2^2)
            core.J(3, 3).J(1, -1).J(2, -2);
            add("thm63-5", "triangular-number form, linear (0,0,-1)", 140, 1, Lh(0, 0, -1),
                scaled(6, eta(core)));
            add("thm63-6", "triangular-number form, linear (1,1,-1)", 140, 1, Lh(1, 1, -1),
                scaled(2, eta(core)));
            add("thm63-7", "triangular-number form, linear (1,1,0)", 140, 1, Lh(1, 1, 0),
                eta(core));

            // auxiliary single sums behind the proofs
            {
                QSumSpec s2; // add-id-2
                s2.exponent(2, 2).num(qm(-1, 1), 2).den(qp(1), 2, 1, 1).den(qp(4), 4);
                EtaQuotientSpec r2;
                r2.Jbar(1, 6).J(2, -1);
                add("add-id-2", "odd companion of the doubled sum", 140, 1, qsum(s2), eta(r2));

                QSumSpec s3; // add-id-3
                s3.exponent(2, -2).num(qm(-1, 1), 2).den(qp(1), 2).den(qp(4), 4);
                add("add-id-3", "even companion, twice the odd one", 140, 1, qsum(s3),
                    scaled(2, eta(r2)));
            }
            {
                EtaQuotientSpec r4a; // 2 J2^5 J3 J12/(J1^3 J4^3 J6)
                r4a.J(2, 5).J(3).J(12).J(1, -3).J(4, -3).J(6, -1);
                EtaQuotientSpec r4b; // 4 J4^3 J6^2/(J2^4 J12)
                r4b.J(4, 3).J(6, 2).J(2, -4).J(12, -1);
                add("add-id-4", "triangular form as a two-term eta combination", 140, 1,
                    Lh(0, 0, -1), plus(scaled(2, eta(r4a)), scaled(4, eta(r4b))));
                add("add-id-5", "mixed linear term collapses to the triangular core", 140, 1,
                    Lh(-1, 1, 0), scaled(3, eta(core)));
            }
        }

        /* ---- 3-core generating function identities ---- */
        {
            EtaQuotientSpec l1; // J3^3/J1
            l1.J(3, 3).J(1, -1);
            EtaQuotientSpec r1a; // J4^3 J6^2/(J2^2 J12)
            r1a.J(4, 3).J(6, 2).J(2, -2).J(12, -1);
            EtaQuotientSpec r1b; // J12^3/J4
            r1b.J(12, 3).J(4, -1);
            add("3core-1", "3-core generating function split", 160, 1, eta(l1),
                plus(eta(r1a), shifted(1, 1, eta(r1b))));

            EtaQuotientSpec l2; // J3/J1^3
            l2.J(3).J(1, -3);
            EtaQuotientSpec r2a; // J4^6 J6^3/(J2^9 J12^2)
            r2a.J(4, 6).J(6, 3).J(2, -9).J(12, -2);
            EtaQuotientSpec r2b; // J4^2 J6 J12^2/J2^7
            r2b.J(4, 2).J(6).J(12, 2).J(2, -7);
            add("3core-2", "reciprocal 3-core split", 160, 1, eta(l2),
                plus(eta(r2a), shifted(3, 1, eta(r2b))));
        }

        return v;
    }();
    return entries;
}

inline const IdentityEntry *find_entry(const std::string &name)
{
    for (const auto &e : registry())
        if (e.name == name)
            return &e;
    return nullptr;
}

/* Run every non-diagnostic entry, optionally on several worker threads.
 * Reports come back sorted by entry name regardless of scheduling. */
inline std::vector<VerifyReport> verify_all(unsigned jobs = 1,
                                            std::optional<long long> order_scaled = {})
{
    std::vector<const IdentityEntry *> todo;
    for (const auto &e : registry())
        if (!e.diagnostic)
            todo.push_back(&e);
    std::vector<VerifyReport> reports(todo.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < todo.size(); ++i)
            reports[i] = verify(*todo[i], order_scaled);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < todo.size(); i = next.fetch_add(1))
                reports[i] = verify(*todo[i], order_scaled);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    std::sort(reports.begin(), reports.end(),
              [](const VerifyReport &a, const VerifyReport &b) { return a.name < b.name; });
    return reports;
}

} // namespace qnahm
