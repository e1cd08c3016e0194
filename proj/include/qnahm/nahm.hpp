#pragma once

#include <functional>

#include "linalg.hpp"
#include "pochhammer.hpp"

namespace qnahm {

struct NotPositiveDefinite : Error {
    using Error::Error;
};

/* Rational symmetric matrix A, vector B, scalar C: the data of the sum
 * f_{A,B,C}(q) = sum_{n in N^r} q^{n^T A n / 2 + B.n + C} / prod (q;q)_{n_i}. */
struct NahmTriple {
    RatMatrix A;
    RatVector B;
    Rational C;

    std::size_t rank() const { return A.size(); }

    void validate() const
    {
        require_symmetric(A);
        if (B.size() != A.size())
            throw RankMismatch("B length does not match the rank of A");
    }
};

/* Rank 2 -> 3 embedding preserving the Nahm sum at C = 0. */
inline NahmTriple lift2to3(const NahmTriple &t)
{
    t.validate();
    if (t.rank() != 2)
        throw RankMismatch("lift is defined for rank-2 triples only");
    const Rational &a1 = t.A[0][0], &a2 = t.A[0][1], &a3 = t.A[1][1];
    const Rational &b1 = t.B[0], &b2 = t.B[1];
    NahmTriple out;
    out.A = {{a1, a2 + 1, a1 + a2},
             {a2 + 1, a3, a2 + a3},
             {a1 + a2, a2 + a3, a1 + 2 * a2 + a3}};
    out.B = {b1, b2, b1 + b2};
    out.C = t.C;
    return out;
}

/* (A,B,C) -> (A^{-1}, A^{-1}B, B^T A^{-1} B / 2 - r/24 - C); an involution. */
inline NahmTriple dual(const NahmTriple &t)
{
    t.validate();
    RatMatrix ainv;
    try {
        ainv = inverse(t.A);
    } catch (const Singular &) {
        throw Singular("dual of a triple with singular A");
    }
    NahmTriple out;
    out.A = ainv;
    out.B = mat_vec(ainv, t.B);
    out.C = dot(t.B, out.B) / 2 - rat(static_cast<long>(t.rank()), 24) - t.C;
    return out;
}

/* Lattice sum with a general quadratic exponent: evaluates
 *     sum_{n in N^r} q^{n^T M n / 2 + L.n + c} / prod (q^base; q^base)_{n_i}
 * exactly below q^order. The quadratic part must be positive definite.
 *
 * Enumeration walks coordinates depth-first with the exact continuous
 * minimum of the remaining exponent as a per-level lower bound (completion
 * of squares bottom-up, i.e. the LDL^T Schur complements), so no lattice
 * point below the bound is missed and no box padding is needed.
 */
class LatticeSummer {
public:
    LatticeSummer(RatMatrix M, RatVector L, Rational c, Rational base)
        : M_(std::move(M)), L_(std::move(L)), c_(std::move(c)), base_(std::move(base))
    {
        require_symmetric(M_);
        if (L_.size() != M_.size())
            throw RankMismatch("linear term length does not match the matrix");
        if (base_ <= 0)
            throw Error("denominator base must be positive");
        r_ = M_.size();
        build_tail_minima();
    }

    QSeries evaluate(const Rational &order) const
    {
        long long d = working_scale(order);
        long long hi = scaled_exp(order, d);

        /* floor of the global continuous minimum: safe dense lower edge */
        long long gmin = tails_[0].c == 0 ? 0 : floor_to_ll(tails_[0].c * rat_ll(d));
        gmin = std::min(gmin, 0LL);
        if (hi <= gmin)
            return QSeries::zero(d, hi);

        std::vector<Rational> dense(static_cast<std::size_t>(hi - gmin));
        std::vector<QSeries> inv_poch;
        auto inv_poch_at = [&](std::size_t n) -> const QSeries & {
            while (inv_poch.size() <= n) {
                long long nn = static_cast<long long>(inv_poch.size());
                Rational cut = rat_ll(hi - gmin) / rat_ll(d);
                QSeries p = pochhammer_finite(Monomial::q_power(base_), base_, nn, cut)
                                .rescaled(d)
                                .truncated(hi - gmin);
                inv_poch.push_back(p.inverse().truncated(hi - gmin));
            }
            return inv_poch[n];
        };

        RatVector prefix(r_, Rational(0));
        std::function<void(std::size_t, const QSeries &)> descend =
            [&](std::size_t depth, const QSeries &partial) {
                if (depth == r_) {
                    Rational e = exponent_at(prefix);
                    long long ke = to_ll_exact(e * rat_ll(d));
                    for (const auto &[k, v] : partial.terms()) {
                        long long kk = k + ke;
                        if (kk < hi)
                            dense[static_cast<std::size_t>(kk - gmin)] += v;
                    }
                    return;
                }
                for (long long v = 0;; ++v) {
                    prefix[depth] = rat_ll(v);
                    Rational lb = tail_lower_bound(depth + 1, prefix);
                    if (lb * rat_ll(d) >= rat_ll(hi)) {
                        prefix[depth] = rat_ll(v + 1);
                        Rational lb2 = tail_lower_bound(depth + 1, prefix);
                        prefix[depth] = rat_ll(v);
                        if (lb2 >= lb)
                            break; // past the parabola vertex and out of window
                        continue;
                    }
                    long long room = hi - floor_to_ll(lb * rat_ll(d));
                    QSeries next = (partial.truncated(room) *
                                    inv_poch_at(static_cast<std::size_t>(v)))
                                       .truncated(room);
                    descend(depth + 1, next);
                }
                prefix[depth] = Rational(0);
            };
        descend(0, QSeries::one(d, hi - gmin));

        QSeries out(d, hi);
        for (long long k = gmin; k < hi; ++k) {
            Rational &v = dense[static_cast<std::size_t>(k - gmin)];
            if (v != 0)
                out.set_coeff(k, v);
        }
        return out;
    }

    /* min over real completions; used by tests probing the bound logic */
    Rational global_min() const { return tails_[0].c; }

private:
    struct TailForm {
        RatMatrix S;
        RatVector T;
        Rational c;
    };

    /* Minimizing out the trailing variable of (S,T,c) needs its pivot
     * positive; collecting all pivots is exactly the positive-definiteness
     * test for the quadratic part. */
    void build_tail_minima()
    {
        tails_.assign(r_ + 1, {});
        TailForm cur{M_, L_, c_};
        tails_[r_] = cur;
        for (std::size_t g = r_; g > 0; --g) {
            const Rational piv = cur.S[g - 1][g - 1];
            if (piv <= 0)
                throw NotPositiveDefinite("quadratic part is not positive definite");
            TailForm next;
            next.S.assign(g - 1, RatVector(g - 1, Rational(0)));
            next.T.assign(g - 1, Rational(0));
            for (std::size_t i = 0; i + 1 < g; ++i)
                for (std::size_t j = 0; j + 1 < g; ++j)
                    next.S[i][j] = cur.S[i][j] - cur.S[i][g - 1] * cur.S[g - 1][j] / piv;
            for (std::size_t i = 0; i + 1 < g; ++i)
                next.T[i] = cur.T[i] - cur.S[i][g - 1] * cur.T[g - 1] / piv;
            next.c = cur.c - cur.T[g - 1] * cur.T[g - 1] / (2 * piv);
            tails_[g - 1] = next;
            cur = std::move(next);
        }
    }

    /* Exact exponent at a full lattice point. */
    Rational exponent_at(const RatVector &n) const
    {
        Rational e = c_;
        for (std::size_t i = 0; i < r_; ++i) {
            e += L_[i] * n[i];
            e += M_[i][i] * n[i] * n[i] / 2;
            for (std::size_t j = i + 1; j < r_; ++j)
                e += M_[i][j] * n[i] * n[j];
        }
        return e;
    }

    /* Continuous minimum of the exponent over the free tail, first f
     * coordinates fixed; a valid lower bound for every descendant since the
     * nonnegativity constraint only raises the minimum. */
    Rational tail_lower_bound(std::size_t f, const RatVector &n) const
    {
        const TailForm &t = tails_[f];
        Rational e = t.c;
        for (std::size_t i = 0; i < f; ++i) {
            e += t.T[i] * n[i];
            e += t.S[i][i] * n[i] * n[i] / 2;
            for (std::size_t j = i + 1; j < f; ++j)
                e += t.S[i][j] * n[i] * n[j];
        }
        return e;
    }

    long long working_scale(const Rational &order) const
    {
        long long dd = lcm_ll(denominator_of(base_), denominator_of(c_));
        dd = lcm_ll(dd, denominator_of(order));
        for (std::size_t i = 0; i < r_; ++i) {
            dd = lcm_ll(dd, denominator_of(L_[i]));
            dd = lcm_ll(dd, denominator_of(M_[i][i] / 2));
            for (std::size_t j = i + 1; j < r_; ++j)
                dd = lcm_ll(dd, denominator_of(M_[i][j]));
        }
        QSeries::check_scale(dd);
        return dd;
    }

    RatMatrix M_;
    RatVector L_;
    Rational c_;
    Rational base_;
    std::size_t r_ = 0;
    std::vector<TailForm> tails_;
};

/* The Nahm sum of a triple, exact below q^order, including the q^C
 * prefactor (the working scale stretches to cover den(C), guarded by the
 * scale cap). */
inline QSeries eval_nahm(const NahmTriple &t, const Rational &order)
{
    t.validate();
    LatticeSummer s(t.A, t.B, t.C, Rational(1));
    return s.evaluate(order);
}

/* Sum with explicitly written exponent polynomial: coefficient qii of i^2,
 * qij of i*j, ... and denominators (q^base;q^base)_{n_i}; the shape such
 * sums are usually displayed in. Exponent = n^T M n/2 with M_ii = 2*qii. */
inline QSeries quad_exponent_sum(const RatMatrix &half_coeffs, const RatVector &linear,
                                 const Rational &base, const Rational &order)
{
    std::size_t r = half_coeffs.size();
    RatMatrix M(r, RatVector(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            M[i][j] = i == j ? 2 * half_coeffs[i][i] : half_coeffs[i][j];
    LatticeSummer s(M, linear, Rational(0), base);
    return s.evaluate(order);
}

} // namespace qnahm
