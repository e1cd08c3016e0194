#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace qnahm {

struct ZeroLeadingTerm : Error {
    using Error::Error;
};
struct ScaleMismatch : Error {
    using Error::Error;
};
struct ScaleOverflow : Error {
    using Error::Error;
};

/* Truncated sparse formal series in q^(1/D) with exact rational coefficients.
 *
 * Stored terms are pairs (k, c) meaning c*q^(k/D), kept sorted by k with no
 * zero coefficients. hi is an exclusive truncation bound on scaled exponents:
 * every coefficient strictly below hi is exact. Exact polynomials carry
 * hi = kInfOrder so they never tighten a partner's bound.
 */
class QSeries {
public:
    static constexpr long long kInfOrder = std::numeric_limits<long long>::max() / 4;
    static constexpr long long kScaleCap = 1'000'000;

    QSeries() : scale_(1), hi_(kInfOrder) {}

    QSeries(long long scale, long long hi) : scale_(scale), hi_(hi)
    {
        check_scale(scale);
    }

    static QSeries zero(long long scale = 1, long long hi = kInfOrder)
    {
        return QSeries(scale, hi);
    }

    static QSeries one(long long scale = 1, long long hi = kInfOrder)
    {
        QSeries f(scale, hi);
        f.set_coeff(0, Rational(1));
        return f;
    }

    /* c * q^(k/D), exact. */
    static QSeries monomial_term(const Rational &c, long long k, long long scale = 1,
                                 long long hi = kInfOrder)
    {
        QSeries f(scale, hi);
        if (k < hi)
            f.set_coeff(k, c);
        return f;
    }

    long long scale() const { return scale_; }
    long long hi() const { return hi_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<std::pair<long long, Rational>> &terms() const { return terms_; }

    /* Least stored scaled exponent; hi when the series has no terms. */
    long long lo() const { return terms_.empty() ? hi_ : terms_.front().first; }

    Rational coeff(long long k) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const auto &t, long long x) { return t.first < x; });
        if (it != terms_.end() && it->first == k)
            return it->second;
        return Rational(0);
    }

    /* Coefficient of q^e for rational e; zero when e is off this lattice. */
    Rational coeff_q(const Rational &e) const
    {
        Rational k = e * Rational(static_cast<long>(scale_));
        if (!is_integer(k))
            return Rational(0);
        return coeff(to_ll_exact(k));
    }

    void set_coeff(long long k, const Rational &c)
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const auto &t, long long x) { return t.first < x; });
        if (it != terms_.end() && it->first == k) {
            if (c == 0)
                terms_.erase(it);
            else
                it->second = c;
        } else if (c != 0) {
            terms_.insert(it, {k, c});
        }
    }

    void set_hi(long long hi)
    {
        hi_ = hi;
        drop_at_or_above(hi);
    }

    QSeries truncated(long long hi) const
    {
        QSeries f = *this;
        f.set_hi(std::min(hi_, hi));
        return f;
    }

    /* Rescale to a multiple D' of the current scale; exponents multiply by D'/D. */
    QSeries rescaled(long long new_scale) const
    {
        if (new_scale == scale_)
            return *this;
        if (new_scale % scale_ != 0)
            throw ScaleMismatch("rescale target must be a multiple of the current scale");
        check_scale(new_scale);
        long long m = new_scale / scale_;
        QSeries f(new_scale, hi_ >= kInfOrder ? kInfOrder : hi_ * m);
        f.terms_.reserve(terms_.size());
        for (const auto &[k, c] : terms_)
            f.terms_.emplace_back(k * m, c);
        return f;
    }

    /* Drop trailing factors of the scale shared by every exponent and hi. */
    QSeries normalized_scale() const
    {
        long long g = scale_;
        for (const auto &[k, c] : terms_)
            g = std::gcd(g, std::abs(k));
        if (hi_ < kInfOrder)
            g = std::gcd(g, hi_);
        if (g <= 1)
            return *this;
        QSeries f(scale_ / g, hi_ >= kInfOrder ? kInfOrder : hi_ / g);
        f.terms_.reserve(terms_.size());
        for (const auto &[k, c] : terms_)
            f.terms_.emplace_back(k / g, c);
        return f;
    }

    QSeries operator-() const
    {
        QSeries f = *this;
        for (auto &[k, c] : f.terms_)
            c = -c;
        return f;
    }

    friend QSeries operator+(const QSeries &a, const QSeries &b)
    {
        auto [x, y] = common(a, b);
        QSeries r(x.scale_, std::min(x.hi_, y.hi_));
        r.terms_.reserve(x.terms_.size() + y.terms_.size());
        auto ia = x.terms_.begin(), ib = y.terms_.begin();
        while (ia != x.terms_.end() || ib != y.terms_.end()) {
            if (ib == y.terms_.end() || (ia != x.terms_.end() && ia->first < ib->first)) {
                if (ia->first < r.hi_)
                    r.terms_.push_back(*ia);
                ++ia;
            } else if (ia == x.terms_.end() || ib->first < ia->first) {
                if (ib->first < r.hi_)
                    r.terms_.push_back(*ib);
                ++ib;
            } else {
                Rational c = ia->second + ib->second;
                if (c != 0 && ia->first < r.hi_)
                    r.terms_.emplace_back(ia->first, c);
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    friend QSeries operator-(const QSeries &a, const QSeries &b) { return a + (-b); }

    friend QSeries operator*(const QSeries &a, const QSeries &b)
    {
        auto [x, y] = common(a, b);
        /* Unknown terms of x start at x.hi; against y's lowest known term
         * they first pollute exponent x.hi + y.lo, and symmetrically. An
         * exact polynomial (hi = inf) has no unknowns at all. */
        long long hi;
        if (x.hi_ >= kInfOrder && y.hi_ >= kInfOrder)
            hi = kInfOrder;
        else if (x.hi_ >= kInfOrder)
            hi = y.hi_ + x.lo();
        else if (y.hi_ >= kInfOrder)
            hi = x.hi_ + y.lo();
        else
            hi = std::min(x.hi_ + y.lo(), y.hi_ + x.lo());
        hi = std::min(hi, kInfOrder);
        QSeries r(x.scale_, hi);
        if (x.terms_.empty() || y.terms_.empty())
            return r;

        /* Dense scratch over the reachable exponent window; the window is
         * small (hundreds to a few thousand entries) at the orders this
         * library runs at. */
        long long lo = x.lo() + y.lo();
        long long top = std::min(hi, x.terms_.back().first + y.terms_.back().first + 1);
        if (top <= lo)
            return r;
        std::vector<Rational> dense(static_cast<std::size_t>(top - lo));
        for (const auto &[ka, ca] : x.terms_) {
            if (ka + y.lo() >= top)
                break;
            for (const auto &[kb, cb] : y.terms_) {
                long long k = ka + kb;
                if (k >= top)
                    break;
                dense[static_cast<std::size_t>(k - lo)] += ca * cb;
            }
        }
        for (long long k = lo; k < top; ++k) {
            Rational &c = dense[static_cast<std::size_t>(k - lo)];
            if (c != 0)
                r.terms_.emplace_back(k, std::move(c));
        }
        return r;
    }

    QSeries &operator+=(const QSeries &b) { return *this = *this + b; }
    QSeries &operator-=(const QSeries &b) { return *this = *this - b; }
    QSeries &operator*=(const QSeries &b) { return *this = *this * b; }

    friend QSeries operator*(const Rational &c, const QSeries &f)
    {
        QSeries r = f;
        if (c == 0) {
            r.terms_.clear();
            return r;
        }
        for (auto &[k, v] : r.terms_)
            v *= c;
        return r;
    }

    /* Multiply by c*q^(k/D) where k is on this lattice. */
    QSeries shifted(long long k, const Rational &c = Rational(1)) const
    {
        QSeries r(scale_, hi_ >= kInfOrder ? kInfOrder : hi_ + k);
        if (c == 0)
            return r;
        r.terms_.reserve(terms_.size());
        for (const auto &[e, v] : terms_)
            r.terms_.emplace_back(e + k, c * v);
        return r;
    }

    /* Multiplicative inverse: f*g = 1 below the common bound. The leading
     * coefficient must be nonzero; g starts at -lo. */
    QSeries inverse() const
    {
        if (terms_.empty())
            throw ZeroLeadingTerm("cannot invert a series with no terms below its bound");
        if (hi_ >= kInfOrder)
            throw ZeroLeadingTerm("cannot invert an untruncated polynomial; truncate first");
        long long lo = terms_.front().first;
        const Rational &c0 = terms_.front().second;
        long long len = hi_ - lo; // exact coefficient count of the normalized input
        /* b_0 = 1/c0, b_n = -(1/c0) * sum_{k>=1} a_k b_{n-k} on the shifted series. */
        std::vector<Rational> b(static_cast<std::size_t>(len));
        b[0] = Rational(1) / c0;
        for (long long n = 1; n < len; ++n) {
            Rational s(0);
            for (const auto &[k, v] : terms_) {
                long long d = k - lo;
                if (d == 0)
                    continue;
                if (d > n)
                    break;
                s += v * b[static_cast<std::size_t>(n - d)];
            }
            if (s != 0)
                b[static_cast<std::size_t>(n)] = -s / c0;
        }
        QSeries g(scale_, hi_ - 2 * lo);
        for (long long n = 0; n < len; ++n)
            if (b[static_cast<std::size_t>(n)] != 0)
                g.terms_.emplace_back(n - lo, std::move(b[static_cast<std::size_t>(n)]));
        return g;
    }

    /* f(q^k) for rational k > 0, exact; the scale adjusts so exponents stay
     * on an integer lattice. */
    QSeries substituted_power(const Rational &k) const
    {
        if (k <= 0)
            throw Error("substitute_power needs a positive exponent");
        long long p = to_ll_exact(Rational(k.get_num()));
        long long q = to_ll_exact(Rational(k.get_den()));
        long long new_scale = scale_ * q;
        check_scale(new_scale);
        QSeries f(new_scale, 1);
        f.hi_ = hi_ >= kInfOrder ? kInfOrder : mul_guarded(hi_, p);
        f.terms_.reserve(terms_.size());
        for (const auto &[e, c] : terms_)
            f.terms_.emplace_back(mul_guarded(e, p), c);
        return f.normalized_scale();
    }

    /* Terms whose unscaled exponent is congruent to residue mod modulus. */
    QSeries dissected(long long modulus, long long residue) const
    {
        if (modulus <= 0)
            throw Error("dissect needs a positive modulus");
        long long md = modulus * scale_;
        long long rd = ((residue * scale_) % md + md) % md;
        QSeries f(scale_, hi_);
        for (const auto &[k, c] : terms_)
            if (((k % md) + md) % md == rd)
                f.terms_.emplace_back(k, c);
        return f;
    }

    bool is_zero() const { return terms_.empty(); }

    /* Exact equality below the common bound; returns the first differing
     * scaled exponent (on the common lattice) if any. */
    friend std::optional<long long> first_mismatch(const QSeries &a, const QSeries &b)
    {
        auto [x, y] = common(a, b);
        long long hi = std::min(x.hi_, y.hi_);
        auto ia = x.terms_.begin(), ib = y.terms_.begin();
        while (true) {
            while (ia != x.terms_.end() && ia->first >= hi)
                ++ia;
            while (ib != y.terms_.end() && ib->first >= hi)
                ++ib;
            bool ea = ia == x.terms_.end(), eb = ib == y.terms_.end();
            if (ea && eb)
                return std::nullopt;
            if (eb || (!ea && ia->first < ib->first)) {
                return ia->first;
            }
            if (ea || ib->first < ia->first) {
                return ib->first;
            }
            if (ia->second != ib->second)
                return ia->first;
            ++ia;
            ++ib;
        }
    }

    friend bool agree_below_bound(const QSeries &a, const QSeries &b)
    {
        return !first_mismatch(a, b).has_value();
    }

    /* Both operands on the lcm lattice. */
    static std::pair<QSeries, QSeries> common(const QSeries &a, const QSeries &b)
    {
        long long d = lcm_ll(a.scale_, b.scale_);
        return {a.rescaled(d), b.rescaled(d)};
    }

    static void check_scale(long long scale)
    {
        if (scale <= 0)
            throw ScaleMismatch("scale must be positive");
        if (scale > kScaleCap)
            throw ScaleOverflow("required scale exceeds the configured cap");
    }

private:
    static long long mul_guarded(long long a, long long b)
    {
        long long r;
        if (__builtin_mul_overflow(a, b, &r) || r >= kInfOrder || r <= -kInfOrder)
            throw ScaleOverflow("scaled exponent overflow");
        return r;
    }

    void drop_at_or_above(long long hi)
    {
        while (!terms_.empty() && terms_.back().first >= hi)
            terms_.pop_back();
    }

    long long scale_;
    long long hi_;
    std::vector<std::pair<long long, Rational>> terms_;
};

inline QSeries inverse(const QSeries &f) { return f.inverse(); }

inline QSeries substitute_power(const QSeries &f, const Rational &k)
{
    return f.substituted_power(k);
}

inline QSeries dissect(const QSeries &f, long long modulus, long long residue)
{
    return f.dissected(modulus, residue);
}

} // namespace qnahm
