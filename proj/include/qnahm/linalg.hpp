#pragma once

#include <vector>

#include "rational.hpp"

namespace qnahm {

struct NotSymmetric : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct RankMismatch : Error {
    using Error::Error;
};

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

inline bool is_square(const RatMatrix &a)
{
    for (const auto &row : a)
        if (row.size() != a.size())
            return false;
    return true;
}

inline void require_symmetric(const RatMatrix &a)
{
    if (!is_square(a))
        throw NotSymmetric("matrix is not square");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i][j] != a[j][i])
                throw NotSymmetric("matrix is not symmetric");
}

/* Bareiss fraction-free elimination on the denominator-cleared integer
 * matrix; exact for any rational input. */
inline Rational det(const RatMatrix &a)
{
    if (!is_square(a))
        throw NotSymmetric("determinant needs a square matrix");
    std::size_t n = a.size();
    if (n == 0)
        return Rational(1);
    Integer clear(1);
    for (const auto &row : a)
        for (const auto &x : row)
            clear = lcm(clear, x.get_den());
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = a[i][j] * Rational(clear);
            m[i][j] = v.get_num();
        }
    Integer prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return Rational(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    Rational d(sign * m[n - 1][n - 1]);
    Rational scale(clear);
    for (std::size_t i = 0; i < n; ++i)
        d /= scale;
    return d;
}

inline RatMatrix inverse(const RatMatrix &a)
{
    if (!is_square(a))
        throw Singular("inverse needs a square matrix");
    std::size_t n = a.size();
    RatMatrix m = a;
    RatMatrix inv(n, RatVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            throw Singular("matrix is singular");
        std::swap(m[c], m[p]);
        std::swap(inv[c], inv[p]);
        Rational piv = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

inline RatVector mat_vec(const RatMatrix &a, const RatVector &v)
{
    RatVector r(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r[i] += a[i][j] * v[j];
    return r;
}

inline Rational dot(const RatVector &a, const RatVector &b)
{
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/* Leading-principal-minor test via the LDL^T pivots. */
inline bool is_positive_definite(const RatMatrix &a)
{
    require_symmetric(a);
    RatMatrix m = a;
    std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] <= 0)
            return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] -= m[i][k] * m[k][j] / m[k][k];
    }
    return true;
}

} // namespace qnahm
